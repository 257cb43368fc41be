#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "exact.hpp"
#include "matrix.hpp"
#include "theta_rep.hpp"

namespace tc {

// ---- truncated power series ----

struct PowerSeries {
    std::vector<Rational> c;  // coefficients of t^0 .. t^{order-1}

    PowerSeries() = default;
    explicit PowerSeries(int order) : c(order, Rational(0)) {}
    PowerSeries(std::vector<Rational> coeffs) : c(std::move(coeffs)) {}

    int order() const { return int(c.size()); }
    Rational operator[](int i) const { return i >= 0 && i < order() ? c[i] : Rational(0); }

    static PowerSeries poly(const std::vector<long long>& p, int order) {
        PowerSeries s(order);
        for (int i = 0; i < order && i < int(p.size()); ++i) s.c[i] = Rational(p[i]);
        return s;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries s(std::min(a.order(), b.order()));
        for (int i = 0; i < s.order(); ++i) s.c[i] = a.c[i] + b.c[i];
        return s;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries s(std::min(a.order(), b.order()));
        for (int i = 0; i < s.order(); ++i) s.c[i] = a.c[i] - b.c[i];
        return s;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries s(std::min(a.order(), b.order()));
        for (int i = 0; i < s.order(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (int j = 0; i + j < s.order(); ++j) s.c[i + j] += a.c[i] * b.c[j];
        }
        return s;
    }

    // multiply by 1/(1 - t^w) in place
    PowerSeries& divide_one_minus(int w) {
        if (w <= 0) throw std::invalid_argument("weight must be positive");
        for (int i = w; i < order(); ++i) c[i] += c[i - w];
        return *this;
    }

    // a/b for b(0) != 0
    static PowerSeries quotient(const PowerSeries& a, const PowerSeries& b) {
        if (b[0].is_zero()) throw std::domain_error("series quotient: b(0) = 0");
        int n = std::min(a.order(), b.order());
        PowerSeries q(n);
        Rational inv = b.c[0].inv();
        for (int i = 0; i < n; ++i) {
            Rational s = a.c[i];
            for (int j = 1; j <= i; ++j) s -= b.c[j] * q.c[i - j];
            q.c[i] = s * inv;
        }
        return q;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c == b.c; }
};

// prod 1/(1 - t^w)
inline PowerSeries free_weighted_series(const std::vector<int>& weights, int order) {
    if (weights.empty()) throw std::invalid_argument("free_weighted_series: no weights");
    PowerSeries s(order);
    if (order > 0) s.c[0] = Rational(1);
    for (int w : weights) s.divide_one_minus(w);
    return s;
}

// exponent vectors of weighted degree d, lexicographically descending in the first weight
inline std::vector<std::vector<int>> weighted_monomials(const std::vector<int>& weights, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(weights.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == weights.size()) {
            if (left == 0) out.push_back(e);
            return;
        }
        for (int a = left / weights[i]; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a * weights[i]);
        }
        e[i] = 0;
    };
    rec(rec, 0, d);
    return out;
}

// ---- integer polynomials (for exact rational-function identities) ----

using IPoly = std::vector<long long>;

inline IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
    IPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline IPoly ipoly_one_minus(int w, long long sign = 1) {
    IPoly p(w + 1, 0);
    p[0] = 1;
    p[w] = -sign;
    return p;
}

inline IPoly ipoly_trim(IPoly p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

// p(s) -> p(-s)
inline IPoly ipoly_negate_var(IPoly p) {
    for (std::size_t i = 1; i < p.size(); i += 2) p[i] = -p[i];
    return p;
}

// ---- Veronese series ----

// (1 + t^4) / ((1-t)^2 (1-t^2) (1-t^7))
inline PowerSeries veronese_series(int order) {
    PowerSeries s = PowerSeries::poly({1, 0, 0, 0, 1}, order);
    for (int w : {1, 1, 2, 7}) s.divide_one_minus(w);
    return s;
}

inline long long veronese_hilbert(int p) {
    if (p < 0) throw std::invalid_argument("veronese_hilbert: p < 0");
    return veronese_series(p + 1).c[p].to_int64();
}

// (1+t^4)/((1-t)^2(1-t^2)(1-t^7)) equals the even part of H(s) = 1/D(s), D = (1-s)(1-s^2)(1-s^4)(1-s^7), t = s^2.
// Even part = (D(s) + D(-s)) / (2 D(s) D(-s)); cross-multiplied in Z[s].
inline bool veronese_identity_holds() {
    IPoly D = {1};
    for (int w : {1, 2, 4, 7}) D = ipoly_mul(D, ipoly_one_minus(w));
    IPoly Dm = ipoly_negate_var(D);
    IPoly num(std::max(D.size(), Dm.size()), 0);
    for (std::size_t i = 0; i < D.size(); ++i) num[i] += D[i] + Dm[i];
    for (auto& x : num) {
        if (x % 2) return false;
        x /= 2;
    }
    // left: num(s) * (1-s^2)^2 (1-s^4) (1-s^14); right: (1+s^8) D(s) D(-s)
    IPoly lhs = num;
    for (int w : {2, 2, 4, 14}) lhs = ipoly_mul(lhs, ipoly_one_minus(w));
    IPoly rhs = ipoly_mul(ipoly_mul(IPoly{1, 0, 0, 0, 0, 0, 0, 0, 1}, D), Dm);
    return ipoly_trim(lhs) == ipoly_trim(rhs);
}

// ---- invariant Hilbert function h(k/2) = dim H^0(L^k)^G ----

inline Rational invariant_hilbert_formula(int k) {
    if (k == 0) return Rational(1);
    require_even_degree(k);
    long long K = k;
    long long s = K * K * K + 21 * K * K + 140 * K + 294 + ((k / 2) % 2 == 0 ? 42 : -42) + 48 * legendre7(K);
    return Rational(s, 336);
}

// (1/|G|) sum |Cl| chi over the 12 representatives
inline CycElem class_average(const std::vector<CycElem>& chi) {
    auto cls = Group::instance().conjugacy_classes();
    if (chi.size() != cls.size()) throw std::invalid_argument("class_average: need 12 values");
    CycElem s(chi.front().order());
    for (std::size_t i = 0; i < cls.size(); ++i) s += chi[i] * Rational(cls[i].size);
    return s * Rational(1, Group::instance().size());
}

inline cd class_average(const std::vector<cd>& chi) {
    auto cls = Group::instance().conjugacy_classes();
    if (chi.size() != cls.size()) throw std::invalid_argument("class_average: need 12 values");
    cd s = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) s += chi[i] * double(cls[i].size);
    return s / double(Group::instance().size());
}

inline Rational invariant_hilbert_table(int k) {
    if (k == 0) return Rational(1);
    CycElem a = class_average(character_table_values(k));
    if (!a.is_rational()) throw std::logic_error("table average is not rational");
    return a.rational_part();
}

// characters on the 12 representatives from traces of rho_k: exact word products for k <= 4,
// the lift method in double precision otherwise
inline std::vector<cd> traced_characters(int k) {
    require_even_degree(k);
    auto cls = Group::instance().conjugacy_classes();
    std::vector<cd> out;
    if (k <= 4) {
        ThetaRep<CycElem> R(k);
        for (auto& c : cls) out.push_back(to_cd(R.trace_word(c.word)));
    } else {
        ThetaRep<cd> R(k);
        for (auto& c : cls) out.push_back(character_lift(R, c.rep).value);
    }
    return out;
}

struct TracedHilbert {
    long long value;     // nearest integer
    double distance;     // |average - value|
};

inline TracedHilbert invariant_hilbert_traces(int k) {
    if (k == 0) return {1, 0.0};
    cd a = class_average(traced_characters(k));
    double r = std::round(a.real());
    return {(long long)r, std::abs(a - cd(r, 0))};
}

// ---- quasi-polynomials ----

struct QuasiPolynomial {
    int degree = 0, period = 1;
    std::vector<std::vector<Rational>> coeffs;  // coeffs[r][j]: coefficient of k^j for k = r mod period

    Rational eval(long long k) const {
        const auto& row = coeffs[mod(k, period)];
        Rational s(0), kp(1);
        for (int j = 0; j <= degree; ++j) {
            s += row[j] * kp;
            kp *= Rational(k);
        }
        return s;
    }
    friend bool operator==(const QuasiPolynomial& a, const QuasiPolynomial& b) {
        return a.degree == b.degree && a.period == b.period && a.coeffs == b.coeffs;
    }
};

// Fits values[k] (k = 0, 1, ...) residue class by residue class. With `leading` pinned,
// each class needs degree points, otherwise degree + 1. Throws if the data are inconsistent.
inline QuasiPolynomial fit_quasipolynomial(const std::vector<Rational>& values, int degree, int period,
                                           std::optional<Rational> leading = std::nullopt) {
    if (degree < 0 || period < 1) throw std::invalid_argument("fit_quasipolynomial: bad shape");
    int unknowns = leading ? degree : degree + 1;
    QuasiPolynomial q{degree, period, {}};
    for (int r = 0; r < period; ++r) {
        std::vector<long long> ks;
        for (long long k = r; k < (long long)values.size(); k += period) ks.push_back(k);
        if ((int)ks.size() < unknowns) throw std::invalid_argument("fit_quasipolynomial: not enough values");
        std::vector<Rational> row(degree + 1, Rational(0));
        if (leading) row[degree] = *leading;
        if (unknowns > 0) {
            Mat<Rational> A(unknowns, unknowns, Rational(0)), b(unknowns, 1, Rational(0));
            for (int i = 0; i < unknowns; ++i) {
                Rational kp(1), K(ks[i]);
                for (int j = 0; j < unknowns; ++j) {
                    A(i, j) = kp;
                    kp *= K;
                }
                b(i, 0) = values[ks[i]] - (leading ? *leading * kp : Rational(0));
            }
            auto x = solve(A, b);
            if (!x) throw std::logic_error("fit_quasipolynomial: singular system");
            for (int j = 0; j < unknowns; ++j) row[j] = (*x)(j, 0);
        }
        q.coeffs.push_back(row);
    }
    for (long long k = 0; k < (long long)values.size(); ++k)
        if (q.eval(k) != values[k]) throw std::domain_error("fit_quasipolynomial: inconsistent data at k = " + std::to_string(k));
    return q;
}

inline QuasiPolynomial fit_quasipolynomial(const std::vector<long long>& values, int degree, int period,
                                           std::optional<Rational> leading = std::nullopt) {
    std::vector<Rational> v(values.begin(), values.end());
    return fit_quasipolynomial(v, degree, period, leading);
}

}  // namespace tc
