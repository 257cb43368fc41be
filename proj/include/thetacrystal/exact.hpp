#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tc {

// Rational number with an int64 fast path. Values that overflow are promoted
// to mpq_class and demoted again whenever they fit.
class Rational {
public:
    Rational() = default;
    Rational(long long v) : n_(v), d_(1) {}
    Rational(int v) : n_(v), d_(1) {}
    Rational(long long n, long long d) { set_small(n, d); }
    explicit Rational(const mpq_class& q) { set_big(q); }
    explicit Rational(const mpz_class& z) { set_big(mpq_class(z)); }

    static Rational parse(const std::string& s) {
        mpq_class q;
        auto slash = s.find('/');
        auto dot = s.find('.');
        if (dot != std::string::npos && slash == std::string::npos) {
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            bool neg = !ip.empty() && ip[0] == '-';
            if (neg) ip = ip.substr(1);
            if (ip.empty()) ip = "0";
            mpz_class den = 1;
            for (size_t i = 0; i < fp.size(); ++i) den *= 10;
            mpz_class num(ip + fp, 10);
            q = mpq_class(num, den);
            q.canonicalize();
            if (neg) q = -q;
        } else if (q.set_str(s, 10) != 0) {
            throw std::invalid_argument("not a rational: " + s);
        } else {
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
            q.canonicalize();
        }
        return Rational(q);
    }

    bool is_small() const { return !big_; }
    bool is_zero() const { return big_ ? sgn(*big_) == 0 : n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }

    mpq_class to_mpq() const {
        if (big_) return *big_;
        return mpq_class(mpz_from(n_), mpz_from(d_));
    }
    mpz_class num() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(n_); }
    mpz_class den() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(d_); }
    long long small_num() const { return n_; }
    long long small_den() const { return d_; }

    long long to_int64() const {
        if (!is_integer()) throw std::domain_error("Rational is not an integer");
        if (big_) {
            mpz_class z = big_->get_num();
            if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in int64");
            return z.get_si();
        }
        return n_;
    }
    double to_double() const { return big_ ? big_->get_d() : double(n_) / double(d_); }

    std::string str() const {
        if (big_) return big_->get_str();
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.d_ == b.d_) return from128((__int128)a.n_ + b.n_, a.d_);
            return from128((__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.d_ == b.d_) return from128((__int128)a.n_ - b.n_, a.d_);
            return from128((__int128)a.n_ * b.d_ - (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
        }
        return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) {
            if (a.n_ == 0 || b.n_ == 0) return Rational();
            if (a.d_ == 1 && b.d_ == 1) return from128((__int128)a.n_ * b.n_, 1);
            return from128((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_) {
            __int128 n = (__int128)a.n_ * b.d_, d = (__int128)a.d_ * b.n_;
            if (d < 0) { n = -n; d = -d; }
            return from128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }
    Rational operator-() const {
        if (!big_ && n_ != INT64_MIN) return Rational(-n_, d_, raw_tag{});
        return Rational(mpq_class(-to_mpq()));
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: a big value never fits in int64
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return (__int128)a.n_ * b.d_ < (__int128)b.n_ * a.d_;
        return a.to_mpq() < b.to_mpq();
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inv() const { return Rational(1) / *this; }

    // floor as integer Rational
    Rational floor() const {
        if (big_) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
            return Rational(f);
        }
        long long q = n_ / d_;
        if ((n_ % d_ != 0) && (n_ < 0)) --q;
        return Rational(q);
    }

private:
    struct raw_tag {};
    Rational(long long n, long long d, raw_tag) : n_(n), d_(d) {}

    static mpz_class mpz_from(long long v) {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), v);
        return z;
    }
    static mpz_class mpz_from128(__int128 v) {
        bool neg = v < 0;
        unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
        mpz_class hi, lo;
        mpz_set_ui(hi.get_mpz_t(), (unsigned long)(u >> 64));
        mpz_set_ui(lo.get_mpz_t(), (unsigned long)(u & ~(unsigned long)0));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    }
    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
        while (b) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
    static Rational from128(__int128 n, __int128 d) {
        if (n == 0) return Rational();
        unsigned __int128 an = n < 0 ? (unsigned __int128)(-(n + 1)) + 1 : (unsigned __int128)n;
        unsigned __int128 g = d == 1 ? 1 : gcd128(an, (unsigned __int128)d);
        if (g > 1) {
            n /= (__int128)g;
            d /= (__int128)g;
        }
        if (n >= INT64_MIN + 1 && n <= INT64_MAX && d <= INT64_MAX) return Rational((long long)n, (long long)d, raw_tag{});
        mpq_class q(mpz_from128(n), mpz_from128(d));
        Rational r;
        r.big_ = std::make_shared<const mpq_class>(std::move(q));
        return r;
    }
    void set_small(long long n, long long d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) { *this = from128(-(__int128)n, -(__int128)d); return; }
        *this = from128(n, d);
    }
    void set_big(mpq_class q) {
        q.canonicalize();
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != LONG_MIN) {
            n_ = q.get_num().get_si();
            d_ = q.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_shared<const mpq_class>(std::move(q));
        }
    }

    long long n_ = 0, d_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

// Jacobi symbol (a/n), n odd positive.
inline int jacobi(long long a, long long n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd positive");
    a = mod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

// x + y*alpha, alpha = (1 + i sqrt7)/2, alpha^2 = alpha - 2
struct QuadElem {
    Rational x, y;

    QuadElem() = default;
    QuadElem(Rational x_) : x(std::move(x_)) {}
    QuadElem(long long v) : x(v) {}
    QuadElem(int v) : x(v) {}
    QuadElem(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}

    static QuadElem alpha() { return {0, 1}; }
    static QuadElem alpha_bar() { return {1, -1}; }

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    bool is_real() const { return y.is_zero(); }
    bool is_integral() const;

    QuadElem conj() const { return {x + y, -y}; }
    Rational norm() const { return x * x + x * y + Rational(2) * y * y; }
    Rational trace() const { return Rational(2) * x + y; }

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) { return {a.x + b.x, a.y + b.y}; }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) { return {a.x - b.x, a.y - b.y}; }
    QuadElem operator-() const { return {-x, -y}; }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        Rational yy = a.y * b.y;
        return {a.x * b.x - Rational(2) * yy, a.x * b.y + a.y * b.x + yy};
    }
    QuadElem inv() const {
        Rational n = norm();
        QuadElem c = conj();
        return {c.x / n, c.y / n};
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inv(); }
    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }
    friend bool operator<(const QuadElem& a, const QuadElem& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }

    std::string str() const {
        if (y.is_zero()) return x.str();
        std::string s = x.is_zero() ? "" : x.str() + (y.sign() > 0 ? "+" : "");
        if (y == Rational(1)) return s + "a";
        if (y == Rational(-1)) return s + "-a";
        return s + y.str() + "*a";
    }
    friend std::ostream& operator<<(std::ostream& os, const QuadElem& q) { return os << q.str(); }
};

// O = Z[alpha] has basis {1, alpha}
inline bool QuadElem::is_integral() const { return x.is_integer() && y.is_integer(); }

// a divides b in Z[alpha]
inline bool divides(const QuadElem& a, const QuadElem& b) {
    if (a.is_zero()) return b.is_zero();
    return (b / a).is_integral();
}

// Rational polynomial helpers (coefficient vectors, low degree first)
namespace poly {
using Poly = std::vector<long long>;

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division of monic integer polynomials
inline Poly div_exact(Poly a, const Poly& b) {
    size_t db = b.size() - 1;
    Poly q(a.size() - db, 0);
    for (size_t i = a.size(); i-- > db;) {
        long long c = a[i];
        q[i - db] = c;
        for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

inline void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}
}  // namespace poly

inline long long euler_phi(long long n) {
    long long r = n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

// Data for Q(zeta_n): Phi_n and the reduction of x^j, 0 <= j < n, to the power basis.
struct CycField {
    long long n;
    int deg;
    poly::Poly phi;
    std::vector<std::vector<long long>> xpow;  // xpow[j] has length deg

    static const CycField& get(long long n) {
        static std::mutex mu;
        static std::map<long long, std::unique_ptr<CycField>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& p = cache[n];
        if (!p) p.reset(new CycField(n));
        return *p;
    }

    static poly::Poly cyclotomic(long long n) {
        poly::Poly xn(n + 1, 0);
        xn[0] = -1;
        xn[n] = 1;
        for (long long d = 1; d < n; ++d)
            if (n % d == 0) xn = poly::div_exact(xn, cyclotomic(d));
        poly::trim(xn);
        return xn;
    }

private:
    explicit CycField(long long n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
        phi = cyclotomic(n);
        deg = int(phi.size()) - 1;
        xpow.assign(n, std::vector<long long>(deg, 0));
        std::vector<long long> cur(deg, 0);
        if (deg > 0) cur[0] = 1;
        for (long long j = 0; j < n; ++j) {
            xpow[j] = cur;
            // multiply by x and reduce
            long long top = cur[deg - 1];
            for (int i = deg - 1; i > 0; --i) cur[i] = cur[i - 1] - top * phi[i];
            cur[0] = -top * phi[0];
        }
    }
};

// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^(phi(n)-1).
class CycElem {
public:
    CycElem() : n_(1), c_(1) {}
    explicit CycElem(long long n) : n_(n), c_(CycField::get(n).deg) {}
    CycElem(long long n, const Rational& r) : CycElem(n) { c_[0] = r; }

    static CycElem zeta(long long n, long long j = 1) {
        const auto& F = CycField::get(n);
        CycElem e(n);
        const auto& v = F.xpow[mod(j, n)];
        for (int i = 0; i < F.deg; ++i) e.c_[i] = Rational(v[i]);
        return e;
    }

    // sum of coeff * zeta_n^exp over the raw list
    static CycElem reduce(const std::vector<std::pair<long long, Rational>>& raw, long long n) {
        const auto& F = CycField::get(n);
        std::vector<Rational> acc(n);
        for (const auto& [e, c] : raw) acc[mod(e, n)] += c;
        return from_exponent_table(acc, n, F);
    }

    // sum_j table[j] zeta_n^j with integer multiplicities (a histogram of exponents)
    static CycElem from_histogram(const std::vector<long long>& hist, long long n) {
        const auto& F = CycField::get(n);
        std::vector<long long> c(F.deg, 0);
        for (long long j = 0; j < n; ++j) {
            if (!hist[j]) continue;
            const auto& v = F.xpow[j];
            for (int i = 0; i < F.deg; ++i) c[i] += hist[j] * v[i];
        }
        CycElem e(n);
        for (int i = 0; i < F.deg; ++i) e.c_[i] = Rational(c[i]);
        return e;
    }

    long long order() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    Rational rational_part() const { return c_[0]; }

    // re-express in Q(zeta_m), n | m
    CycElem promote(long long m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw std::invalid_argument("promote: order must divide target");
        const auto& F = CycField::get(m);
        long long s = m / n_;
        std::vector<Rational> acc(m);
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) acc[i * s] += c_[i];
        return from_exponent_table(acc, m, F);
    }

    CycElem conj() const {
        const auto& F = CycField::get(n_);
        std::vector<Rational> acc(n_);
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) acc[mod(-(long long)i, n_)] += c_[i];
        return from_exponent_table(acc, n_, F);
    }

    // Galois automorphism zeta -> zeta^j, gcd(j, n) = 1
    CycElem galois(long long j) const {
        const auto& F = CycField::get(n_);
        std::vector<Rational> acc(n_);
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) acc[mod((long long)i * j, n_)] += c_[i];
        return from_exponent_table(acc, n_, F);
    }

    // multiply by zeta_n^j
    CycElem mul_zeta(long long j) const {
        const auto& F = CycField::get(n_);
        CycElem r(n_);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            const auto& v = F.xpow[mod((long long)i + j, n_)];
            for (int t = 0; t < F.deg; ++t)
                if (v[t]) r.c_[t] += c_[i] * Rational(v[t]);
        }
        return r;
    }

    friend CycElem operator+(const CycElem& a, const CycElem& b) {
        if (a.n_ != b.n_) return binop_promoted(a, b, [](const CycElem& x, const CycElem& y) { return x + y; });
        CycElem r(a);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend CycElem operator-(const CycElem& a, const CycElem& b) {
        if (a.n_ != b.n_) return binop_promoted(a, b, [](const CycElem& x, const CycElem& y) { return x - y; });
        CycElem r(a);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    CycElem operator-() const {
        CycElem r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend CycElem operator*(const CycElem& a, const CycElem& b) {
        if (a.n_ != b.n_) return binop_promoted(a, b, [](const CycElem& x, const CycElem& y) { return x * y; });
        const auto& F = CycField::get(a.n_);
        int d = F.deg;
        std::vector<Rational> prod(2 * d - 1);
        bool any = false;
        for (int i = 0; i < d; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j < d; ++j)
                if (!b.c_[j].is_zero()) {
                    prod[i + j] += a.c_[i] * b.c_[j];
                    any = true;
                }
        }
        CycElem r(a.n_);
        if (!any) return r;
        for (int i = 0; i < d; ++i) r.c_[i] = prod[i];
        for (int i = d; i < 2 * d - 1; ++i) {
            if (prod[i].is_zero()) continue;
            const auto& v = F.xpow[i % a.n_];
            for (int t = 0; t < d; ++t)
                if (v[t]) r.c_[t] += prod[i] * Rational(v[t]);
        }
        return r;
    }
    friend CycElem operator*(const CycElem& a, const Rational& s) {
        CycElem r(a);
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend CycElem operator*(const Rational& s, const CycElem& a) { return a * s; }
    friend CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inv(); }
    CycElem& operator+=(const CycElem& o) { return *this = *this + o; }
    CycElem& operator-=(const CycElem& o) { return *this = *this - o; }
    CycElem& operator*=(const CycElem& o) { return *this = *this * o; }

    // inverse by solving the multiplication-by-self linear system over Q
    CycElem inv() const;

    friend bool operator==(const CycElem& a, const CycElem& b) {
        if (a.n_ != b.n_) {
            long long m = std::lcm(a.n_, b.n_);
            return a.promote(m).c_ == b.promote(m).c_;
        }
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0) os << c_[i];
            else os << "(" << c_[i] << ")*z" << n_ << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const CycElem& e) { return os << e.str(); }

private:
    static CycElem from_exponent_table(const std::vector<Rational>& acc, long long n, const CycField& F) {
        CycElem e(n);
        for (long long j = 0; j < n; ++j) {
            if (acc[j].is_zero()) continue;
            const auto& v = F.xpow[j];
            for (int i = 0; i < F.deg; ++i)
                if (v[i]) e.c_[i] += acc[j] * Rational(v[i]);
        }
        return e;
    }
    template <class Op>
    static CycElem binop_promoted(const CycElem& a, const CycElem& b, Op op) {
        long long m = std::lcm(a.n_, b.n_);
        return op(a.promote(m), b.promote(m));
    }

    long long n_;
    std::vector<Rational> c_;
};

inline CycElem CycElem::inv() const {
    if (is_zero()) throw std::domain_error("CycElem: inverse of zero");
    const auto& F = CycField::get(n_);
    int d = F.deg;
    // columns: self * zeta^j
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d + 1));
    for (int j = 0; j < d; ++j) {
        CycElem col = mul_zeta(j);
        for (int i = 0; i < d; ++i) A[i][j] = col.c_[i];
    }
    A[0][d] = Rational(1);
    for (int col = 0, row = 0; col < d; ++col, ++row) {
        int piv = row;
        while (A[piv][col].is_zero()) ++piv;
        std::swap(A[piv], A[row]);
        Rational p = A[row][col];
        for (int t = col; t <= d; ++t) A[row][t] /= p;
        for (int r = 0; r < d; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            Rational f = A[r][col];
            for (int t = col; t <= d; ++t) A[r][t] -= f * A[row][t];
        }
    }
    CycElem r(n_);
    for (int i = 0; i < d; ++i) r.c_[i] = A[i][d];
    return r;
}

}  // namespace tc
