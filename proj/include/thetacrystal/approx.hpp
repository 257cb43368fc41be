#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cfloat>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace tc {

using BigFloat = boost::multiprecision::mpfr_float;

inline unsigned digits_to_bits(unsigned digits) { return unsigned(std::ceil(digits * 3.3219280948873623)) + 4; }

inline void sync_default_precision(unsigned bits) {
    unsigned digits10 = unsigned(std::ceil(bits * 0.30102999566398120)) + 1;
    BigFloat::default_precision(digits10);
}

// Process-wide working precision. Set it before spawning workers.
inline unsigned& working_bits_ref() {
    static unsigned bits = [] {
        sync_default_precision(212);
        return 212u;
    }();
    return bits;
}
inline unsigned working_bits() { return working_bits_ref(); }
inline const unsigned initial_working_bits = working_bits();

inline void set_working_bits(unsigned bits) {
    working_bits_ref() = bits;
    sync_default_precision(bits);
}

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(working_bits()) { set_working_bits(bits); }
    ~PrecisionScope() { set_working_bits(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// upward-biased double helpers for error radii
inline double up(double x) { return x * (1.0 + 4 * DBL_EPSILON) + DBL_MIN; }
inline double mag_up(const BigFloat& x) {
    double d = std::fabs(x.convert_to<double>());
    return up(d);
}
inline double unit_roundoff() { return std::ldexp(1.0, 1 - int(working_bits())); }

inline BigFloat big_pi() {
    BigFloat p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

// Complex ball: (re + i im) with |exact - value| <= err.
struct ApproxComplex {
    BigFloat re, im;
    double err = 0;
    unsigned prec = working_bits();

    ApproxComplex() : re(0), im(0) {}
    ApproxComplex(long long v) : re(v), im(0) {}
    ApproxComplex(BigFloat r, BigFloat i, double e = 0) : re(std::move(r)), im(std::move(i)), err(e) {}

    static ApproxComplex exact(const Rational& r) {
        ApproxComplex z;
        if (r.is_small()) {
            z.re = BigFloat(r.small_num());
            if (r.small_den() != 1) {
                z.re /= BigFloat(r.small_den());
                z.err = mag_up(z.re) * unit_roundoff();
            }
        } else {
            mpfr_set_q(z.re.backend().data(), r.to_mpq().get_mpq_t(), MPFR_RNDN);
            z.err = mag_up(z.re) * unit_roundoff();
        }
        return z;
    }

    // e^{2 pi i num/den}, correctly rounded components
    static ApproxComplex root_of_unity(long long num, long long den) {
        long long j = mod(num, den);
        if (j == 0) return ApproxComplex(1);
        if (2 * j == den) return ApproxComplex(-1);
        if (4 * j == den) return ApproxComplex(BigFloat(0), BigFloat(1));
        if (4 * j == 3 * den) return ApproxComplex(BigFloat(0), BigFloat(-1));
        unsigned bits = working_bits();
        mpfr_t t;
        mpfr_init2(t, bits + 32);
        mpfr_const_pi(t, MPFR_RNDN);
        mpfr_mul_si(t, t, 2 * j, MPFR_RNDN);
        mpfr_div_si(t, t, den, MPFR_RNDN);
        ApproxComplex z;
        mpfr_sin_cos(z.im.backend().data(), z.re.backend().data(), t, MPFR_RNDN);
        mpfr_clear(t);
        z.err = unit_roundoff();
        return z;
    }

    double mag() const { return up(mag_up(re) + mag_up(im)); }
    double radius_upper() const { return up(mag() + err); }

    std::complex<double> to_cd() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

    ApproxComplex conj() const {
        ApproxComplex z(re, -im, err);
        return z;
    }

    friend ApproxComplex operator+(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex z(a.re + b.re, a.im + b.im);
        z.err = up(a.err + b.err + z.mag() * unit_roundoff());
        return z;
    }
    friend ApproxComplex operator-(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex z(a.re - b.re, a.im - b.im);
        z.err = up(a.err + b.err + z.mag() * unit_roundoff());
        return z;
    }
    ApproxComplex operator-() const { return ApproxComplex(-re, -im, err); }
    friend ApproxComplex operator*(const ApproxComplex& a, const ApproxComplex& b) {
        ApproxComplex z(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
        double ma = a.mag(), mb = b.mag();
        z.err = up(ma * b.err + mb * a.err + a.err * b.err + 4 * ma * mb * unit_roundoff());
        return z;
    }
    friend ApproxComplex operator*(const ApproxComplex& a, const BigFloat& s) {
        ApproxComplex z(a.re * s, a.im * s);
        double ms = mag_up(s);
        z.err = up(a.err * ms + 2 * a.mag() * ms * unit_roundoff());
        return z;
    }
    ApproxComplex inv() const {
        BigFloat n = re * re + im * im;
        ApproxComplex z(re / n, -im / n);
        // |1/x - 1/y| <= |x-y| / (|y| (|y| - |x-y|))
        double lo = std::sqrt(n.convert_to<double>()) * (1 - 1e-14);
        if (lo <= err) throw std::domain_error("ApproxComplex: inverse of a ball containing zero");
        z.err = up(err / (lo * (lo - err)) + 4 * z.mag() * unit_roundoff());
        return z;
    }
    friend ApproxComplex operator/(const ApproxComplex& a, const ApproxComplex& b) { return a * b.inv(); }
    ApproxComplex& operator+=(const ApproxComplex& o) { return *this = *this + o; }
    ApproxComplex& operator-=(const ApproxComplex& o) { return *this = *this - o; }
    ApproxComplex& operator*=(const ApproxComplex& o) { return *this = *this * o; }

    bool contains_zero() const {
        BigFloat a = re * re + im * im;
        double r = std::sqrt(a.convert_to<double>());
        return r * (1 - 1e-14) <= err;
    }
    // |this - other| bound (upper)
    double distance_upper(const ApproxComplex& o) const {
        BigFloat dr = re - o.re, di = im - o.im;
        BigFloat d = sqrt(dr * dr + di * di);
        return up(mag_up(d) + err + o.err);
    }
    // true if the balls are compatible with the same exact value within extra slack
    bool overlaps(const ApproxComplex& o, double slack = 0) const {
        BigFloat dr = re - o.re, di = im - o.im;
        BigFloat d = sqrt(dr * dr + di * di);
        return d.convert_to<double>() * (1 - 1e-14) <= err + o.err + slack;
    }

    std::string re_str(int digits = 0) const { return big_str(re, digits); }
    std::string im_str(int digits = 0) const { return big_str(im, digits); }
    static std::string big_str(const BigFloat& x, int digits = 0) {
        if (digits <= 0) digits = int(prec_digits());
        return x.str(digits, std::ios_base::scientific);
    }
    static unsigned prec_digits() { return unsigned(working_bits() * 0.30102999566398120); }
    std::string str(int digits = 20) const {
        std::string s = big_str(re, digits);
        s += im < 0 ? " - " : " + ";
        s += big_str(abs(im), digits) + "i";
        char buf[32];
        std::snprintf(buf, sizeof buf, " +/- %.3g", err);
        return s + buf;
    }
};

inline ApproxComplex embed(const Rational& r) { return ApproxComplex::exact(r); }

inline ApproxComplex embed(const QuadElem& q) {
    // x + y (1 + i sqrt7)/2
    ApproxComplex x = ApproxComplex::exact(q.x), y = ApproxComplex::exact(q.y);
    BigFloat s7 = sqrt(BigFloat(7)) / 2;
    ApproxComplex a(BigFloat(1) / 2, s7, mag_up(s7) * 2 * unit_roundoff());
    return x + y * a;
}

inline ApproxComplex embed(const CycElem& c) {
    ApproxComplex acc;
    const auto& co = c.coeffs();
    for (size_t j = 0; j < co.size(); ++j) {
        if (co[j].is_zero()) continue;
        acc += ApproxComplex::exact(co[j]) * ApproxComplex::root_of_unity((long long)j, c.order());
    }
    return acc;
}

inline BigFloat round_to_working(const BigFloat& x) {
    BigFloat r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

// Evaluate at `bits` precision: computed with 64 guard bits, then rounded once,
// so that err <= 2^(1-bits) |value| unless the exact value is 0 (err 0 then).
template <class T>
ApproxComplex embed(const T& x, unsigned bits) {
    ApproxComplex hi;
    {
        PrecisionScope guard(bits + 64);
        hi = embed(x);
    }
    PrecisionScope guard(bits);
    ApproxComplex z(round_to_working(hi.re), round_to_working(hi.im));
    z.prec = bits;
    if (hi.err == 0 && z.re == hi.re && z.im == hi.im) return z;
    BigFloat dr = z.re - hi.re, di = z.im - hi.im;
    z.err = up(mag_up(dr) + mag_up(di) + hi.err);
    return z;
}

inline std::complex<double> to_cd(const CycElem& c) {
    std::complex<double> acc = 0;
    const auto& co = c.coeffs();
    for (size_t j = 0; j < co.size(); ++j)
        if (!co[j].is_zero()) acc += co[j].to_double() * std::polar(1.0, 2 * M_PI * double(j) / double(c.order()));
    return acc;
}

}  // namespace tc
