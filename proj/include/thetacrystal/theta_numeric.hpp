#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "approx.hpp"
#include "hilbert.hpp"
#include "parallel.hpp"
#include "symplectic.hpp"
#include "theta_rep.hpp"

namespace tc {

// q^x = e^{2 pi i tau x} (Tau), or the principal power of q = -e^{-pi sqrt7} (Principal)
enum class QBranch { Tau, Principal };

struct TruncationParams {
    Rational cutoff{7, 2};  // keep u with B[u]/(2k) <= cutoff
    unsigned bits = 212;
    QBranch branch = QBranch::Tau;
};

// ---- the quadratic form ----

// n(u) = 4 B[u] is integral
inline const Mat3i& form4B() {
    static const Mat3i Q = [] {
        Mat3i q{};
        const Mat3R& B = period_data().B;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q[i][j] = (B[i][j] * Rational(4)).to_int64();
        return q;
    }();
    return Q;
}

inline long long form_value(const std::array<int, 3>& u) {
    const Mat3i& Q = form4B();
    long long s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += Q[i][j] * u[i] * u[j];
    return s;
}

// lower bound for the smallest eigenvalue of B
inline Rational lambda_min_lower() { return Rational(1878, 10000); }

// Sylvester: B - l I positive definite
inline bool lambda_min_certified(const Rational& l) {
    Mat3R M = period_data().B;
    for (int i = 0; i < 3; ++i) M[i][i] -= l;
    Rational m1 = M[0][0], m2 = M[0][0] * M[1][1] - M[0][1] * M[1][0], m3 = det3(M);
    return m1.sign() > 0 && m2.sign() > 0 && m3.sign() > 0;
}

struct LatticePoint {
    std::array<int, 3> u;
    long long n;  // 4 B[u]
};

// all u with 4B[u] <= nmax, sorted by n then lexicographically
inline std::vector<LatticePoint> enumerate_form(long long nmax) {
    Mat3R Qi = inverse3(to_rat(form4B()));
    std::array<int, 3> U;
    for (int i = 0; i < 3; ++i) U[i] = int(std::floor(std::sqrt(double(nmax) * Qi[i][i].to_double()))) + 1;
    std::vector<LatticePoint> out;
    for (int a = -U[0]; a <= U[0]; ++a)
        for (int b = -U[1]; b <= U[1]; ++b)
            for (int c = -U[2]; c <= U[2]; ++c) {
                std::array<int, 3> u{a, b, c};
                long long n = form_value(u);
                if (n <= nmax) out.push_back({u, n});
            }
    std::sort(out.begin(), out.end(), [](const LatticePoint& x, const LatticePoint& y) {
        return x.n != y.n ? x.n < y.n : x.u < y.u;
    });
    return out;
}

// n limit for B[u]/(2k) <= c
inline long long exponent_limit(int k, const Rational& c) { return (c * Rational(8LL * k)).floor().to_int64(); }

inline std::vector<LatticePoint> enumerate_lattice(int k, const Rational& c) { return enumerate_form(exponent_limit(k, c)); }

// N(c) ~ (4 pi / 3) (2 k c)^{3/2} / sqrt(det B)
inline double asymptotic_count(int k, double c) {
    double detB = det3(period_data().B).to_double();
    return 4 * M_PI / 3 * std::pow(2 * k * c, 1.5) / std::sqrt(detB);
}

// ---- elementary values ----

// q^x under the chosen branch
inline ApproxComplex q_power(const Rational& x, QBranch br) {
    unsigned hb = working_bits() + 32;
    mpfr_t pi, s7, t, m, a, s, c;
    for (auto* p : {&pi, &s7, &t, &m, &a, &s, &c}) mpfr_init2(*p, hb);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_sqrt_ui(s7, 7, MPFR_RNDN);
    mpq_class xq = x.to_mpq();
    mpfr_set_q(t, xq.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(m, pi, s7, MPFR_RNDN);
    mpfr_mul(m, m, t, MPFR_RNDN);
    mpfr_neg(m, m, MPFR_RNDN);
    mpfr_exp(m, m, MPFR_RNDN);
    mpfr_mul(a, pi, t, MPFR_RNDN);
    if (br == QBranch::Tau) mpfr_mul_ui(a, a, 3, MPFR_RNDN);
    mpfr_sin_cos(s, c, a, MPFR_RNDN);
    mpfr_mul(c, c, m, MPFR_RNDN);
    mpfr_mul(s, s, m, MPFR_RNDN);
    ApproxComplex z;
    mpfr_set(z.re.backend().data(), c, MPFR_RNDN);
    mpfr_set(z.im.backend().data(), s, MPFR_RNDN);
    for (auto* p : {&pi, &s7, &t, &m, &a, &s, &c}) mpfr_clear(*p);
    z.err = up(3 * z.mag() * unit_roundoff());
    return z;
}

// e^{2 pi i v}
inline ApproxComplex exp_2pi_i(const ApproxComplex& v) {
    unsigned hb = working_bits() + 32;
    mpfr_t pi, m, a, s, c;
    for (auto* p : {&pi, &m, &a, &s, &c}) mpfr_init2(*p, hb);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul_ui(pi, pi, 2, MPFR_RNDN);
    mpfr_mul(m, pi, v.im.backend().data(), MPFR_RNDN);
    mpfr_neg(m, m, MPFR_RNDN);
    mpfr_exp(m, m, MPFR_RNDN);
    mpfr_mul(a, pi, v.re.backend().data(), MPFR_RNDN);
    mpfr_sin_cos(s, c, a, MPFR_RNDN);
    mpfr_mul(c, c, m, MPFR_RNDN);
    mpfr_mul(s, s, m, MPFR_RNDN);
    ApproxComplex z;
    mpfr_set(z.re.backend().data(), c, MPFR_RNDN);
    mpfr_set(z.im.backend().data(), s, MPFR_RNDN);
    for (auto* p : {&pi, &m, &a, &s, &c}) mpfr_clear(*p);
    double mag = z.mag();
    z.err = up(3 * mag * unit_roundoff());
    // |d/dv e^{2 pi i v}| = 2 pi |e^{2 pi i v}|
    if (v.err > 0) z.err = up(z.err + 2 * M_PI * v.err * mag * std::exp(2 * M_PI * v.err) * (1 + 1e-12));
    return z;
}

inline ApproxComplex two_pi_i() {
    BigFloat p = 2 * big_pi();
    return ApproxComplex(BigFloat(0), p, up(mag_up(p) * 2 * unit_roundoff()));
}

inline ApproxComplex apow(const ApproxComplex& x, int e) {
    ApproxComplex r(1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// ---- truncated theta-type series ----

// Sum over u in Z^3 (4B[u]/scale-limited) of coef[u mod modulus] q^{scale * 4B[u]} e^{2 pi i v.u}.
// A theta series of level k has scale = 1/(8k), modulus = k.
class SeriesEvaluator {
public:
    struct Result {
        ApproxComplex value;              // full series: err includes the tail bound
        std::array<ApproxComplex, 3> du;  // sum of u_j * term
        ApproxComplex trunc;              // the truncated sum itself: err is rounding only
        std::array<ApproxComplex, 3> du_trunc;
        double rounding_err = 0;
        double tail = 0;                  // tail bound for value
        double tail_du = 0;               // tail bound for each du_j
    };

    int modulus;
    Rational scale, cutoff;
    QBranch branch;
    long long nmax, nmax_band;
    std::size_t total_terms = 0;  // lattice vectors within the cutoff, zero coefficients included
    std::array<int, 3> max_abs{0, 0, 0};

    SeriesEvaluator(int modulus_, const Rational& scale_, const std::vector<ApproxComplex>& coef, const Rational& cutoff_,
                    QBranch br)
        : modulus(modulus_), scale(scale_), cutoff(cutoff_), branch(br) {
        if ((long long)coef.size() != (long long)modulus * modulus * modulus)
            throw std::invalid_argument("SeriesEvaluator: coefficient vector has the wrong length");
        nmax = (cutoff / scale).floor().to_int64();
        // explicit tail band out to 2c + 10; the analytic bound covers the rest
        nmax_band = ((Rational(2) * cutoff + Rational(10)) / scale).floor().to_int64();
        coef_mag_.resize(coef.size());
        for (std::size_t i = 0; i < coef.size(); ++i) {
            bool zero = coef[i].err == 0 && coef[i].re == 0 && coef[i].im == 0;
            coef_mag_[i] = zero ? 0.0 : coef[i].radius_upper();
        }
        coef_max_ = *std::max_element(coef_mag_.begin(), coef_mag_.end());
        auto all = enumerate_form(nmax_band);
        std::map<long long, ApproxComplex> qp;
        for (const auto& p : all) {
            int r = residue(p.u);
            if (p.n <= nmax) {
                ++total_terms;
                for (int j = 0; j < 3; ++j) max_abs[j] = std::max(max_abs[j], std::abs(p.u[j]));
                if (coef_mag_[r] == 0) continue;
                auto it = qp.find(p.n);
                if (it == qp.end()) it = qp.emplace(p.n, q_power(scale * Rational(p.n), branch)).first;
                ApproxComplex cq = coef[r] * it->second;
                pts_.push_back(p);
                cq_re_.push_back(cq.re);
                cq_im_.push_back(cq.im);
                cq_mag_.push_back(cq.mag());
                cq_err_.push_back(cq.err);
            } else if (coef_mag_[r] > 0) {
                band_.push_back(p);
            }
        }
    }

    std::size_t active_terms() const { return pts_.size(); }

    Result eval(const std::array<ApproxComplex, 3>& v, bool derivs) const {
        const double u_round = unit_roundoff();
        // phase tables e^{2 pi i v_j n}, |n| <= max_abs_j
        std::array<std::vector<ApproxComplex>, 3> P;
        std::array<int, 3> off{};
        double rel_phase = 0;
        for (int j = 0; j < 3; ++j) {
            int U = max_abs[j];
            off[j] = U;
            P[j].assign(2 * U + 1, ApproxComplex(1));
            ApproxComplex w = exp_2pi_i(v[j]), wi = exp_2pi_i(-v[j]);
            for (int n = 1; n <= U; ++n) {
                P[j][U + n] = P[j][U + n - 1] * w;
                P[j][U - n] = P[j][U - n + 1] * wi;
            }
            for (const auto& x : P[j]) {
                double m = x.mag();
                rel_phase = std::max(rel_phase, m > 0 ? x.err / m : 1.0);
            }
        }
        std::array<std::vector<double>, 3> Pm;
        for (int j = 0; j < 3; ++j)
            for (const auto& x : P[j]) Pm[j].push_back(x.radius_upper());

        BigFloat re12, im12, re3, im3, tre, tim, sre(0), sim(0), x;
        std::array<BigFloat, 3> dre{BigFloat(0), BigFloat(0), BigFloat(0)}, dim{BigFloat(0), BigFloat(0), BigFloat(0)};
        double abs_sum = 0, in_err = 0;
        std::array<double, 3> abs_du{0, 0, 0}, in_err_du{0, 0, 0};
        for (std::size_t t = 0; t < pts_.size(); ++t) {
            const auto& u = pts_[t].u;
            const auto& a = P[0][u[0] + off[0]];
            const auto& b = P[1][u[1] + off[1]];
            const auto& c = P[2][u[2] + off[2]];
            cmul(re12, im12, a.re, a.im, b.re, b.im);
            cmul(re3, im3, re12, im12, c.re, c.im);
            cmul(tre, tim, re3, im3, cq_re_[t], cq_im_[t]);
            mpfr_add(sre.backend().data(), sre.backend().data(), tre.backend().data(), MPFR_RNDN);
            mpfr_add(sim.backend().data(), sim.backend().data(), tim.backend().data(), MPFR_RNDN);
            double pm = Pm[0][u[0] + off[0]] * Pm[1][u[1] + off[1]] * Pm[2][u[2] + off[2]];
            double m = pm * cq_mag_[t], e = pm * cq_err_[t];
            abs_sum += m;
            in_err += e;
            if (derivs)
                for (int j = 0; j < 3; ++j) {
                    if (!u[j]) continue;
                    mpfr_mul_si(x.backend().data(), tre.backend().data(), u[j], MPFR_RNDN);
                    mpfr_add(dre[j].backend().data(), dre[j].backend().data(), x.backend().data(), MPFR_RNDN);
                    mpfr_mul_si(x.backend().data(), tim.backend().data(), u[j], MPFR_RNDN);
                    mpfr_add(dim[j].backend().data(), dim[j].backend().data(), x.backend().data(), MPFR_RNDN);
                    abs_du[j] += m * std::abs(u[j]);
                    in_err_du[j] += e * std::abs(u[j]);
                }
        }
        abs_sum = up(abs_sum * (1 + 1e-12));
        double N = double(pts_.size()) + 2;
        // coefficient errors, then relative errors of the three phases and three products, then accumulation
        double rel = 3 * rel_phase + 12 * u_round;
        double round_err = up((in_err + abs_sum * (rel + N * u_round)) * (1 + 1e-9));
        Result r;
        r.tail = tail_bound(v, 0);
        r.rounding_err = round_err;
        r.value = ApproxComplex(sre, sim, up(round_err + r.tail));
        r.trunc = ApproxComplex(sre, sim, round_err);
        if (derivs) {
            r.tail_du = tail_bound(v, 1);
            for (int j = 0; j < 3; ++j) {
                double e = up((in_err_du[j] + abs_du[j] * (rel + (N + 1) * u_round)) * (1 + 1e-9));
                r.du[j] = ApproxComplex(dre[j], dim[j], up(e + r.tail_du));
                r.du_trunc[j] = ApproxComplex(dre[j], dim[j], e);
            }
        }
        return r;
    }

    // Bound for sum over u beyond the cutoff of |coef| |u|^p |q^{scale n}| |e^{2 pi i v.u}|, with |u|^p
    // read as max_j |u_j| for p = 1. Explicit band, then an analytic bound.
    double tail_bound(const std::array<ApproxComplex, 3>& v, int p) const {
        std::array<double, 3> im;
        double b2 = 0;
        for (int j = 0; j < 3; ++j) {
            im[j] = v[j].im.convert_to<double>();
            double a = std::abs(im[j]) + v[j].err;
            b2 += a * a;
        }
        const double a = M_PI * std::sqrt(7.0) * scale.to_double() * (1 - 1e-12);
        double s = 0;
        for (const auto& q : band_) {
            double e = -a * double(q.n);
            for (int j = 0; j < 3; ++j) e -= 2 * M_PI * im[j] * q.u[j];
            e += 2 * M_PI * (std::abs(q.u[0]) + std::abs(q.u[1]) + std::abs(q.u[2])) * 1e-15;
            double w = coef_mag_[residue(q.u)] * std::exp(e);
            if (p == 1) w *= std::max({std::abs(q.u[0]), std::abs(q.u[1]), std::abs(q.u[2])});
            s += w;
        }
        s = up(s * (1 + 1e-9));
        // n > nmax_band, in shells (n_j, n_j + h]: |u| <= sqrt(n / (4 lambda)),
        // #{u : n(u) <= X} <= (4 pi/3)(sqrt(X/(4 lambda)) + sqrt3/2)^3, and
        // f(n) = e^{-a n + b sqrt(n/(4 lambda))} is unimodal with its peak at n* = b^2 / (16 lambda a^2)
        const double lam = lambda_min_lower().to_double() * (1 - 1e-12);
        const double b = 2 * M_PI * std::sqrt(b2) * (1 + 1e-12);
        const double nstar = b * b / (16 * lam * a * a);
        const double h = std::max(1.0, 1 / scale.to_double());
        double prev = HUGE_VAL, total = 0;
        for (int j = 0; j < 1000000; ++j) {
            double lo = double(nmax_band) + j * h, hi = lo + h;
            double r = std::sqrt(hi / (4 * lam));
            double cnt = 4 * M_PI / 3 * std::pow(r + 0.8660254037844387, 3);
            double nm = std::clamp(nstar, lo, hi);
            double f = coef_max_ * std::exp(-a * nm + b * std::sqrt(nm / (4 * lam))) * (p == 1 ? r : 1.0);
            double term = f * cnt;
            total += term;
            if (lo > nstar && (term == 0 || (term < 1e-30 * total && term < 0.5 * prev))) {
                total += 2 * term;
                break;
            }
            prev = term;
        }
        return up((s + total) * (1 + 1e-9));
    }

private:
    std::vector<LatticePoint> pts_, band_;
    std::vector<BigFloat> cq_re_, cq_im_;
    std::vector<double> cq_mag_, cq_err_, coef_mag_;
    double coef_max_ = 0;

    int residue(const std::array<int, 3>& u) const {
        int k = modulus;
        return ((int)mod(u[0], k) * k + (int)mod(u[1], k)) * k + (int)mod(u[2], k);
    }

    // (zr + i zi) = (ar + i ai)(br + i bi), one rounding per component
    static void cmul(BigFloat& zr, BigFloat& zi, const BigFloat& ar, const BigFloat& ai, const BigFloat& br, const BigFloat& bi) {
        mpfr_fmms(zr.backend().data(), ar.backend().data(), br.backend().data(), ai.backend().data(), bi.backend().data(),
                  MPFR_RNDN);
        mpfr_fmma(zi.backend().data(), ar.backend().data(), bi.backend().data(), ai.backend().data(), br.backend().data(),
                  MPFR_RNDN);
    }
};

inline std::vector<ApproxComplex> embed_row(const std::vector<CycElem>& row) {
    std::vector<ApproxComplex> out;
    out.reserve(row.size());
    for (const auto& x : row) out.push_back(x.is_zero() ? ApproxComplex(0) : embed(x, working_bits()));
    return out;
}

// theta_{m,k}(v) = sum_{u = k m mod k} q^{B[u]/(2k)} e^{2 pi i u.v}
inline SeriesEvaluator::Result theta_eval(const CharIndex& m, const std::array<ApproxComplex, 3>& v, const TruncationParams& p,
                                          bool derivs = false) {
    int k = m.k;
    std::vector<ApproxComplex> coef(std::size_t(k) * k * k, ApproxComplex(0));
    coef[m.index()] = ApproxComplex(1);
    SeriesEvaluator S(k, Rational(1, 8LL * k), coef, p.cutoff, p.branch);
    return S.eval(v, derivs);
}

// ---- the invariants phi_0 .. phi_3 ----

struct InvariantTheta {
    int index;
    int k;
    CharIndex xi;
    std::vector<CycElem> row;  // Reynolds row r^{(k)}_{xi, m}
};

inline std::vector<std::array<Rational, 3>> invariant_xi() {
    return {{Rational(0), Rational(0), Rational(0)},
            {Rational(0), Rational(0), Rational(1, 2)},
            {Rational(1, 4), Rational(1, 4), Rational(0)},
            {Rational(2, 8), Rational(1, 8), Rational(1, 8)}};
}
inline std::array<int, 4> invariant_degrees() { return {2, 2, 4, 8}; }

inline const std::vector<InvariantTheta>& invariant_thetas() {
    static const std::vector<InvariantTheta> all = [] {
        std::vector<InvariantTheta> v;
        auto xs = invariant_xi();
        auto ks = invariant_degrees();
        std::map<int, std::unique_ptr<ThetaRep<CycElem>>> reps;
        for (int i = 0; i < 4; ++i) {
            int k = ks[i];
            if (!reps.count(k)) reps[k] = std::make_unique<ThetaRep<CycElem>>(k);
            CharIndex xi = CharIndex::from_rational(k, xs[i]);
            v.push_back({i, k, xi, reps[k]->reynolds_row(xi)});
        }
        return v;
    }();
    return all;
}

struct EvalPoint {
    ApproxComplex t;
    std::array<ApproxComplex, 3> v;
};

// evaluator for phi~ = t^k sum_u r_{xi, u mod k} q^{B[u]/(2k)} e^{2 pi i v.u}
inline SeriesEvaluator invariant_evaluator(const std::vector<ApproxComplex>& row, int k, const TruncationParams& p) {
    return SeriesEvaluator(k, Rational(1, 8LL * k), row, p.cutoff, p.branch);
}

inline ApproxComplex fiber_value(const SeriesEvaluator& S, int k, const EvalPoint& x) {
    return apow(x.t, k) * S.eval(x.v, false).value;
}

// (d/dt, d/dv1, d/dv2, d/dv3) of phi~ with d/dt = t_factor * k * t^{k-1} * sum, d/dv_j = 2 pi i t^k sum u_j (...)
// With truncated_only the error radii cover rounding in the truncated sums but not the tails.
inline std::array<ApproxComplex, 4> phi_partials(const SeriesEvaluator& S, int k, const EvalPoint& x, int t_factor,
                                                 bool truncated_only = false) {
    auto r = S.eval(x.v, true);
    const ApproxComplex& v = truncated_only ? r.trunc : r.value;
    const auto& du = truncated_only ? r.du_trunc : r.du;
    ApproxComplex tk1 = apow(x.t, k - 1), tk = tk1 * x.t, c = two_pi_i() * tk;
    return {ApproxComplex(t_factor * k) * tk1 * v, c * du[0], c * du[1], c * du[2]};
}

template <std::size_t N>
ApproxComplex det_leibniz(const std::array<std::array<ApproxComplex, N>, N>& M) {
    std::array<int, N> p;
    std::iota(p.begin(), p.end(), 0);
    ApproxComplex s(0);
    do {
        int inv = 0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) inv += p[i] > p[j];
        ApproxComplex t(1);
        for (std::size_t i = 0; i < N; ++i) t = t * M[i][p[i]];
        s = (inv % 2) ? s - t : s + t;
    } while (std::next_permutation(p.begin(), p.end()));
    return s;
}

struct JacobianReport {
    ApproxComplex J_2k;         // d/dt with factor 2k_i
    ApproxComplex J_k;               // d/dt with factor k_i
    ApproxComplex q72_tau, q72_principal;
    std::array<std::size_t, 4> term_counts{};
    std::array<int, 3> block3{};     // max |u_j| over the k = 8 terms
    ApproxComplex J_truncated;       // same centre as J_2k, radius from rounding only
    bool nonzero = false;            // J_2k ball excludes 0
};

inline EvalPoint jacobian_point() {
    return {ApproxComplex(1), {ApproxComplex::exact(Rational(1, 8)), ApproxComplex::exact(Rational(1, 16)), ApproxComplex::exact(Rational(1, 4))}};
}

inline JacobianReport jacobian_certificate(const TruncationParams& p, const EvalPoint& x0 = jacobian_point()) {
    PrecisionScope scope(p.bits);
    const auto& inv = invariant_thetas();
    JacobianReport rep;
    std::array<std::array<ApproxComplex, 4>, 4> M2, M1, MT;
    for (int i = 0; i < 4; ++i) {
        int k = inv[i].k;
        SeriesEvaluator S = invariant_evaluator(embed_row(inv[i].row), k, p);
        rep.term_counts[i] = S.total_terms;
        if (i == 3) rep.block3 = S.max_abs;
        M2[i] = phi_partials(S, k, x0, 2);
        M1[i] = phi_partials(S, k, x0, 1);
        MT[i] = phi_partials(S, k, x0, 2, true);
    }
    rep.J_2k = det_leibniz(M2);
    rep.J_k = det_leibniz(M1);
    rep.J_truncated = det_leibniz(MT);
    rep.nonzero = !rep.J_2k.contains_zero();
    rep.q72_tau = q_power(Rational(7, 2), QBranch::Tau);
    rep.q72_principal = q_power(Rational(7, 2), QBranch::Principal);
    return rep;
}

// ---- sampling and numerical rank ----

inline double unit_double(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

// |t| = 1, |v_j| <= 1/4; the generator is used bit-exactly so points are reproducible everywhere
inline std::vector<EvalPoint> sample_points(int count, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::vector<EvalPoint> out;
    for (int s = 0; s < count; ++s) {
        EvalPoint x;
        double th = 2 * M_PI * unit_double(g);
        x.t = ApproxComplex(BigFloat(std::cos(th)), BigFloat(std::sin(th)));
        for (int j = 0; j < 3; ++j) {
            double r = 0.25 * std::sqrt(unit_double(g)), a = 2 * M_PI * unit_double(g);
            x.v[j] = ApproxComplex(BigFloat(r * std::cos(a)), BigFloat(r * std::sin(a)));
        }
        out.push_back(x);
    }
    return out;
}

struct SvdReport {
    std::vector<double> sigma;  // descending, after row and column scaling
    double floor = 0;           // bound on the perturbation of every singular value
    int rank = 0;               // singular values above 1e3 * floor
    double gap = 0;             // sigma_rank / max(sigma_{rank+1}, floor)
    std::vector<ApproxComplex> kernel;  // right singular vector of the smallest singular value (unscaled)
};

// Rows and columns are scaled by powers of two (exact); by Weyl, each singular value moves by at most
// the Frobenius norm of the entry errors plus the SVD's own backward error.
inline SvdReport numerical_svd(const std::vector<std::vector<ApproxComplex>>& A, bool want_kernel) {
    int m = int(A.size()), n = int(A.front().size());
    std::vector<int> rexp(m, 0), cexp(n, 0);
    for (int i = 0; i < m; ++i) {
        double mx = 0;
        for (int j = 0; j < n; ++j) mx = std::max(mx, A[i][j].mag());
        if (mx > 0) std::frexp(mx, &rexp[i]);
    }
    for (int j = 0; j < n; ++j) {
        double mx = 0;
        for (int i = 0; i < m; ++i) mx = std::max(mx, std::ldexp(A[i][j].mag(), -rexp[i]));
        if (mx > 0) std::frexp(mx, &cexp[j]);
    }
    using MatB = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;
    MatB R(2 * m, 2 * n);
    double e2 = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            int sh = -rexp[i] - cexp[j];
            BigFloat re = ldexp(A[i][j].re, sh), im = ldexp(A[i][j].im, sh);
            R(i, j) = re;
            R(i, n + j) = -im;
            R(m + i, j) = im;
            R(m + i, n + j) = re;
            double e = std::ldexp(A[i][j].err, sh);
            e2 += e * e;
        }
    Eigen::JacobiSVD<MatB> svd(R, want_kernel ? Eigen::ComputeThinV : 0);
    const auto& sv = svd.singularValues();
    SvdReport rep;
    for (int j = 0; j < n; ++j) rep.sigma.push_back(sv(2 * j).template convert_to<double>());
    double smax = rep.sigma.front();
    rep.floor = up(std::sqrt(e2) * (1 + 1e-9) + 64.0 * (m + n) * smax * unit_roundoff());
    for (double s : rep.sigma)
        if (s > 1e3 * rep.floor) ++rep.rank;
    if (rep.rank > 0) {
        double next = rep.rank < n ? std::max(rep.sigma[rep.rank], rep.floor) : rep.floor;
        rep.gap = rep.sigma[rep.rank - 1] / next;
    }
    if (want_kernel) {
        const auto& V = svd.matrixV();
        int c = 2 * n - 1;
        for (int j = 0; j < n; ++j) {
            BigFloat re = ldexp(BigFloat(V(j, c)), -cexp[j]), im = ldexp(BigFloat(V(n + j, c)), -cexp[j]);
            rep.kernel.push_back(ApproxComplex(re, im));
        }
    }
    return rep;
}

inline ApproxComplex monomial(const std::vector<ApproxComplex>& vals, const std::vector<int>& e) {
    ApproxComplex r(1);
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int a = 0; a < e[i]; ++a) r = r * vals[i];
    return r;
}

struct RankParams {
    TruncationParams trunc{Rational(24), 212, QBranch::Tau};
    int samples = 70;
    std::uint64_t seed = 20240607;
};

struct RankReport {
    int degree = 0;
    int monomials = 0;
    SvdReport svd;
    bool pass = false;  // rank == monomials and gap >= 1e6
};

// values of phi~_0..phi~_3 at the sample points
inline std::vector<std::vector<ApproxComplex>> invariant_samples(const RankParams& rp) {
    PrecisionScope scope(rp.trunc.bits);
    const auto& inv = invariant_thetas();
    std::vector<SeriesEvaluator> ev;
    for (const auto& t : inv) ev.push_back(invariant_evaluator(embed_row(t.row), t.k, rp.trunc));
    auto pts = sample_points(rp.samples, rp.seed);
    std::vector<std::vector<ApproxComplex>> vals(pts.size());
    parallel_for(int(pts.size()), [&](int s) {
        std::vector<ApproxComplex> row;
        for (int i = 0; i < 4; ++i) row.push_back(fiber_value(ev[i], inv[i].k, pts[s]));
        vals[s] = std::move(row);
    });
    return vals;
}

// rank of the evaluation matrix of all monomials of the given weighted degree in the leading
// phi~_i (weights 1,1,2,4 cover all four; 1,1,2 leaves out phi~_3)
inline RankReport independence_rank(int degree, const RankParams& rp,
                                    const std::vector<std::vector<ApproxComplex>>* cached = nullptr,
                                    const std::vector<int>& weights = {1, 1, 2, 4}) {
    if (rp.samples < 40) throw std::invalid_argument("independence_rank: need at least 40 samples");
    if (weights.empty() || weights.size() > 4) throw std::invalid_argument("independence_rank: 1 to 4 weights");
    PrecisionScope scope(rp.trunc.bits);
    std::vector<std::vector<ApproxComplex>> vals = cached ? *cached : invariant_samples(rp);
    auto mons = weighted_monomials(weights, degree);
    std::vector<std::vector<ApproxComplex>> A;
    for (const auto& row : vals) {
        std::vector<ApproxComplex> r;
        for (const auto& e : mons) r.push_back(monomial(row, e));
        A.push_back(r);
    }
    RankReport rep;
    rep.degree = degree;
    rep.monomials = int(mons.size());
    rep.svd = numerical_svd(A, false);
    rep.pass = rep.svd.rank == rep.monomials && rep.svd.gap >= 1e6;
    return rep;
}

// ---- the degree-14 candidate phi_4 ----

// theta_{mu,7}^2 = sum_{n in {0,1}^3} c_n theta_{mu + n/2, 14}, c_n = sum_{d in n + 2Z^3} q^{(7/4) B[d]};
// returns the level-14 coefficient vector for mu = nu/7
inline std::vector<ApproxComplex> square_level7(const std::array<int, 3>& nu, const TruncationParams& p) {
    std::vector<ApproxComplex> x(14 * 14 * 14, ApproxComplex(0));
    std::array<ApproxComplex, 3> zero{ApproxComplex(0), ApproxComplex(0), ApproxComplex(0)};
    for (int n = 0; n < 8; ++n) {
        std::array<int, 3> b{n >> 2 & 1, n >> 1 & 1, n & 1};
        std::vector<ApproxComplex> ind(8, ApproxComplex(0));
        ind[(b[0] * 2 + b[1]) * 2 + b[2]] = ApproxComplex(1);
        // exponent (7/4) B[d] = (7/16) n(d)
        SeriesEvaluator S(2, Rational(7, 16), ind, p.cutoff, p.branch);
        ApproxComplex c = S.eval(zero, false).value;
        std::array<int, 3> s;
        for (int j = 0; j < 3; ++j) s[j] = int(mod(2 * nu[j] + 7 * b[j], 14));
        x[(s[0] * 14 + s[1]) * 14 + s[2]] = c;
    }
    return x;
}

struct RelationReport {
    enum class Status { Found, Inconclusive } status = Status::Inconclusive;
    std::string note;
    SvdReport svd;
    int kernel_dim = 0;
    double kernel_gap = 0;       // sigma_36 / sigma_37
    double c0_relative = 0;      // |coefficient of phi_3^2| / max |coefficient|
    double phi4_relative = 0;    // max(|phi_0 phi_4|, |phi_1 phi_4|) coefficient / max
    std::vector<std::vector<int>> monomials;
};

inline std::vector<std::vector<int>> relation_monomials() {
    auto mons = weighted_monomials({1, 1, 2, 4, 7}, 8);
    std::vector<std::vector<int>> a, b;
    for (auto& e : mons) (e[4] ? b : a).push_back(e);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline RelationReport relation_nullspace(const RankParams& rp) {
    if (rp.samples < 60) throw std::invalid_argument("relation_nullspace: need at least 60 samples");
    PrecisionScope scope(rp.trunc.bits);
    RelationReport rep;
    rep.monomials = relation_monomials();
    ThetaRep<ApproxComplex> R14(14);
    auto row4 = R14.reynolds_vector(square_level7({2, 1, 1}, rp.trunc));
    bool vanishes = true;
    for (const auto& c : row4)
        if (!c.contains_zero()) {
            vanishes = false;
            break;
        }
    if (vanishes) {
        rep.note = "Reynolds average of theta_{mu3,7}^2 vanishes";
        return rep;
    }
    SeriesEvaluator S4 = invariant_evaluator(row4, 14, rp.trunc);
    auto base = invariant_samples(rp);
    auto pts = sample_points(rp.samples, rp.seed);
    std::vector<ApproxComplex> phi4(pts.size());
    parallel_for(int(pts.size()), [&](int s) { phi4[s] = fiber_value(S4, 14, pts[s]); });
    std::vector<std::vector<ApproxComplex>> A;
    for (std::size_t s = 0; s < pts.size(); ++s) {
        auto vals = base[s];
        vals.push_back(phi4[s]);
        std::vector<ApproxComplex> r;
        for (const auto& e : rep.monomials) r.push_back(monomial(vals, e));
        A.push_back(r);
    }
    rep.svd = numerical_svd(A, true);
    int n = int(rep.monomials.size());
    rep.kernel_dim = n - rep.svd.rank;
    rep.kernel_gap = rep.svd.sigma[n - 2] / std::max(rep.svd.sigma[n - 1], rep.svd.floor);
    double mx = 0;
    for (const auto& c : rep.svd.kernel) mx = std::max(mx, c.mag());
    int i33 = -1;
    for (int j = 0; j < n; ++j)
        if (rep.monomials[j] == std::vector<int>{0, 0, 0, 2, 0}) i33 = j;
    rep.c0_relative = rep.svd.kernel[i33].mag() / mx;
    rep.phi4_relative = std::max(rep.svd.kernel[n - 2].mag(), rep.svd.kernel[n - 1].mag()) / mx;
    rep.status = RelationReport::Status::Found;
    return rep;
}

}  // namespace tc
