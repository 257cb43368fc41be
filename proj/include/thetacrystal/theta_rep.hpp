#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "approx.hpp"
#include "exact.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "symplectic.hpp"

namespace tc {

// ---- characteristics m = nu/k, nu in {0..k-1}^3, lexicographic ----

struct CharIndex {
    int k;
    std::array<int, 3> nu;

    int index() const { return (nu[0] * k + nu[1]) * k + nu[2]; }
    static CharIndex from_index(int k, int i) { return {k, {i / (k * k), (i / k) % k, i % k}}; }
    // m given by rational coordinates with denominators dividing k
    static CharIndex from_rational(int k, const std::array<Rational, 3>& m) {
        CharIndex c{k, {0, 0, 0}};
        for (int j = 0; j < 3; ++j) {
            Rational t = m[j] * Rational(k);
            if (!t.is_integer()) throw std::invalid_argument("characteristic not in (1/k)Z^3");
            c.nu[j] = int(mod(t.to_int64(), k));
        }
        return c;
    }
};

inline void require_even_degree(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("theta degree k must be even and >= 2");
}

// ---- scalar fields used for the representation ----

template <class S>
struct Field;

// Exact: Q(zeta_N), N = lcm(2k, 4) so that i is available.
template <>
struct Field<CycElem> {
    int k;
    long long N;
    explicit Field(int k_) : k(k_), N(std::lcm(2LL * k_, 4LL)) {}
    CycElem zero() const { return CycElem(N); }
    CycElem one() const { return CycElem(N, Rational(1)); }
    CycElem from_rational(const Rational& r) const { return CycElem(N, r); }
    // multiply by zeta_{2k}^e
    CycElem rot(const CycElem& x, long long e) const { return x.mul_zeta(e * (N / (2 * k))); }
    CycElem scale(const CycElem& x, const Rational& r) const { return x * r; }
    // sum_t x_t zeta_{2k}^{e_t}
    CycElem rot_sum(const std::vector<const CycElem*>& xs, const std::vector<long long>& es) const {
        const auto& F = CycField::get(N);
        std::vector<Rational> acc(N);
        long long s = N / (2 * k);
        bool any = false;
        for (std::size_t t = 0; t < xs.size(); ++t) {
            const auto& c = xs[t]->coeffs();
            for (std::size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero()) {
                    acc[mod((long long)i + es[t] * s, N)] += c[i];
                    any = true;
                }
        }
        CycElem r(N);
        if (!any) return r;
        std::vector<std::pair<long long, Rational>> raw;
        for (long long j = 0; j < N; ++j)
            if (!acc[j].is_zero()) raw.emplace_back(j, acc[j]);
        (void)F;
        return CycElem::reduce(raw, N);
    }
    CycElem from_histogram(const std::vector<long long>& h) const {
        std::vector<long long> big(N, 0);
        long long s = N / (2 * k);
        for (long long e = 0; e < 2 * k; ++e) big[e * s] += h[e];
        return CycElem::from_histogram(big, N);
    }
};

template <>
struct Field<ApproxComplex> {
    int k;
    std::vector<ApproxComplex> roots;  // zeta_{2k}^j
    explicit Field(int k_) : k(k_) {
        for (int j = 0; j < 2 * k; ++j) roots.push_back(ApproxComplex::root_of_unity(j, 2 * k));
    }
    ApproxComplex zero() const { return ApproxComplex(0); }
    ApproxComplex one() const { return ApproxComplex(1); }
    ApproxComplex from_rational(const Rational& r) const { return ApproxComplex::exact(r); }
    ApproxComplex rot(const ApproxComplex& x, long long e) const {
        long long j = mod(e, 2 * k);
        if (j == 0) return x;
        if (2 * j == 2 * k) return -x;
        return x * roots[j];
    }
    ApproxComplex scale(const ApproxComplex& x, const Rational& r) const { return x * ApproxComplex::exact(r); }
    ApproxComplex rot_sum(const std::vector<const ApproxComplex*>& xs, const std::vector<long long>& es) const {
        // group by exponent first: one multiplication per distinct root
        std::vector<ApproxComplex> acc(2 * k);
        std::vector<char> used(2 * k, 0);
        for (std::size_t t = 0; t < xs.size(); ++t) {
            long long j = mod(es[t], 2 * k);
            if (used[j]) acc[j] += *xs[t];
            else {
                acc[j] = *xs[t];
                used[j] = 1;
            }
        }
        ApproxComplex r(0);
        for (int j = 0; j < 2 * k; ++j)
            if (used[j]) r += rot(acc[j], j);
        return r;
    }
    ApproxComplex from_histogram(const std::vector<long long>& h) const {
        ApproxComplex r(0);
        for (int e = 0; e < 2 * k; ++e)
            if (h[e]) r += roots[e] * ApproxComplex::exact(Rational((long long)h[e]));
        return r;
    }
};

using cd = std::complex<double>;

template <>
struct Field<cd> {
    int k;
    std::vector<cd> roots;
    explicit Field(int k_) : k(k_) {
        for (int j = 0; j < 2 * k; ++j) roots.push_back(std::polar(1.0, M_PI * j / k));
    }
    cd zero() const { return 0; }
    cd one() const { return 1; }
    cd from_rational(const Rational& r) const { return r.to_double(); }
    cd rot(const cd& x, long long e) const { return x * roots[mod(e, 2 * k)]; }
    cd scale(const cd& x, const Rational& r) const { return x * r.to_double(); }
    cd rot_sum(const std::vector<const cd*>& xs, const std::vector<long long>& es) const {
        cd r = 0;
        for (std::size_t t = 0; t < xs.size(); ++t) r += *xs[t] * roots[mod(es[t], 2 * k)];
        return r;
    }
    cd from_histogram(const std::vector<long long>& h) const {
        cd r = 0;
        for (int e = 0; e < 2 * k; ++e) r += double(h[e]) * roots[e];
        return r;
    }
};

// ---- the transformation data of one lift at degree k ----

inline long long qform(const Mat3i& M, const std::array<int, 3>& v) {
    long long s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += M[i][j] * v[i] * v[j];
    return s;
}

class ThetaTransform {
public:
    int k;
    int n;  // k^3
    SymplecticLift lift;
    std::vector<int> bt;           // b~[nu] mod 2k
    std::vector<int> ct;           // c~[mu] mod 2k
    std::vector<int> d_perm;       // index of d nu' mod k
    std::vector<int> dTinv_perm;   // index of (d^T)^-1 mu' mod k
    bool block_diagonal;

    ThetaTransform(const SymplecticLift& s, int k_) : k(k_), n(k_ * k_ * k_), lift(s) {
        require_even_degree(k);
        long long dd = det3(s.d);
        if (dd != 1 && dd != -1) throw std::invalid_argument("det d must be +-1");
        block_diagonal = all_zero(s.b) && all_zero(s.c);
        Mat3i dTinv = inverse_unimodular(transpose(s.d));
        bt.resize(n);
        ct.resize(n);
        d_perm.resize(n);
        dTinv_perm.resize(n);
        for (int i = 0; i < n; ++i) {
            auto v = CharIndex::from_index(k, i).nu;
            bt[i] = int(mod(qform(s.b_t, v), 2 * k));
            ct[i] = int(mod(qform(s.c_t, v), 2 * k));
            d_perm[i] = apply_mod(s.d, v);
            dTinv_perm[i] = apply_mod(dTinv, v);
        }
    }

    int apply_mod(const Mat3i& M, const std::array<int, 3>& v) const {
        CharIndex c{k, {0, 0, 0}};
        for (int i = 0; i < 3; ++i) {
            long long s = 0;
            for (int j = 0; j < 3; ++j) s += M[i][j] * v[j];
            c.nu[i] = int(mod(s, k));
        }
        return c.index();
    }

    // exponent histogram (mod 2k) of Qhat[w] = sum_mu zeta_{2k}^{2 w.mu + c~[mu]}
    std::vector<long long> qhat_hist(int w) const {
        auto wv = CharIndex::from_index(k, w).nu;
        std::vector<long long> h(2 * k, 0);
        for (int m = 0; m < n; ++m) {
            auto mu = CharIndex::from_index(k, m).nu;
            long long e = 2LL * (wv[0] * mu[0] + wv[1] * mu[1] + wv[2] * mu[2]) + ct[m];
            ++h[mod(e, 2 * k)];
        }
        return h;
    }

    int diff_index(int nu, int nup) const {
        auto a = CharIndex::from_index(k, nu).nu, b = CharIndex::from_index(k, d_perm[nup]).nu;
        return CharIndex{k, {int(mod(a[0] - b[0], k)), int(mod(a[1] - b[1], k)), int(mod(a[2] - b[2], k))}}.index();
    }

    // table form: u[nu][nu'] = zeta_{2k}^{b~[nu]} Qhat[(nu - d nu') mod k]
    template <class S>
    Mat<S> table(const Field<S>& F) const {
        std::vector<S> qhat;
        qhat.reserve(n);
        for (int w = 0; w < n; ++w) qhat.push_back(F.from_histogram(qhat_hist(w)));
        Mat<S> U(n, n, F.zero());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) U(a, b) = F.rot(qhat[diff_index(a, b)], bt[a]);
        return U;
    }

    // the literal double sum over (m, m', m^), O(k^9)
    template <class S>
    Mat<S> direct(const Field<S>& F) const {
        Mat<S> U(n, n, F.zero());
        for (int a = 0; a < n; ++a) {
            auto nu = CharIndex::from_index(k, a).nu;
            for (int b = 0; b < n; ++b) {
                auto nup = CharIndex::from_index(k, b).nu;
                std::array<long long, 3> dn{};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) dn[i] += lift.d[i][j] * nup[j];
                std::vector<long long> h(2 * k, 0);
                for (int m = 0; m < n; ++m) {
                    auto mu = CharIndex::from_index(k, m).nu;
                    // 2k * [(nu - d nu')/k + c~ mu/(2k)] . mu/k
                    long long e = qform(lift.b_t, nu) + qform(lift.c_t, mu);
                    for (int i = 0; i < 3; ++i) e += 2 * (nu[i] - dn[i]) * mu[i];
                    ++h[mod(e, 2 * k)];
                }
                U(a, b) = F.from_histogram(h);
            }
        }
        return U;
    }

    // exact trace of U~ as an exponent histogram over (nu, mu)
    std::vector<long long> trace_hist() const {
        std::vector<long long> h(2 * k, 0);
        for (int a = 0; a < n; ++a) {
            auto nu = CharIndex::from_index(k, a).nu;
            auto dn = CharIndex::from_index(k, d_perm[a]).nu;
            long long w[3];
            for (int i = 0; i < 3; ++i) w[i] = nu[i] - dn[i];
            for (int m = 0; m < n; ++m) {
                auto mu = CharIndex::from_index(k, m).nu;
                long long e = bt[a] + ct[m] + 2 * (w[0] * mu[0] + w[1] * mu[1] + w[2] * mu[2]);
                ++h[mod(e, 2 * k)];
            }
        }
        return h;
    }

    // row (x^T U~)_{nu'}; block-diagonal lifts are k^3 times a permutation
    template <class S>
    std::vector<S> apply_row(const Field<S>& F, const std::vector<S>& x) const {
        if (block_diagonal) {
            std::vector<S> z(n, F.zero());
            Rational k3((long long)n);
            for (int b = 0; b < n; ++b) z[b] = F.scale(x[d_perm[b]], k3);
            return z;
        }
        // y = zeta^{b~} x, forward DFT, twist by zeta^{c~}, permute, inverse-sign DFT
        std::vector<S> y(n, F.zero());
        for (int a = 0; a < n; ++a) y[a] = F.rot(x[a], bt[a]);
        dft(F, y, +1);
        std::vector<S> w(n, F.zero());
        for (int m = 0; m < n; ++m) y[m] = F.rot(y[m], ct[m]);
        for (int mp = 0; mp < n; ++mp) w[mp] = y[dTinv_perm[mp]];
        dft(F, w, -1);
        return w;
    }

private:
    // in-place separable DFT over (Z/k)^3 with kernel zeta_k^{sign nu.mu}
    template <class S>
    void dft(const Field<S>& F, std::vector<S>& v, int sign) const {
        std::vector<const S*> xs(k);
        std::vector<long long> es(k);
        std::vector<S> out(k, F.zero());
        int stride[3] = {k * k, k, 1};
        for (int axis = 0; axis < 3; ++axis) {
            int st = stride[axis];
            for (int base = 0; base < n; ++base) {
                if ((base / st) % k != 0) continue;
                for (int mu = 0; mu < k; ++mu) {
                    for (int nu = 0; nu < k; ++nu) {
                        xs[nu] = &v[base + nu * st];
                        es[nu] = 2LL * sign * nu * mu;
                    }
                    out[mu] = F.rot_sum(xs, es);
                }
                for (int mu = 0; mu < k; ++mu) v[base + mu * st] = out[mu];
            }
        }
    }
};

// ---- generators and the representation rho_k ----

template <class S>
class ThetaRep {
public:
    int k, n;
    Field<S> F;
    std::array<ThetaTransform, 3> gens;

    explicit ThetaRep(int k_)
        : k(k_), n(k_ * k_ * k_), F(k_),
          gens{ThetaTransform(gamma_of(Group::instance().gens[0]), k_), ThetaTransform(gamma_of(Group::instance().gens[1]), k_),
               ThetaTransform(gamma_of(Group::instance().gens[2]), k_)} {}

    // x -> x U_j (j = 1, 2, 3): U_j = U~/k^3, U_3 = U~/(i k^3)
    std::vector<S> apply_gen(int j, const std::vector<S>& x) const {
        std::vector<S> z = gens[j - 1].apply_row(F, x);
        Rational s(1, (long long)n);
        for (auto& v : z) {
            if (j == 3) v = F.rot(v, 3 * k / 2);  // 1/i = zeta_{2k}^{3k/2}
            v = F.scale(v, s);
        }
        return z;
    }

    std::vector<S> apply_word(const Word& w, std::vector<S> x) const {
        for (int j : w) x = apply_gen(j, std::move(x));
        return x;
    }

    std::vector<S> basis(int i) const {
        std::vector<S> e(n, F.zero());
        e[i] = F.one();
        return e;
    }

    Mat<S> generator_matrix(int j) const { return word_matrix(Word{j}); }

    Mat<S> word_matrix(const Word& w) const {
        Mat<S> M(n, n, F.zero());
        for (int i = 0; i < n; ++i) {
            auto row = apply_word(w, basis(i));
            for (int c = 0; c < n; ++c) M(i, c) = row[c];
        }
        return M;
    }

    Mat<S> rho(int g) const { return word_matrix(Group::instance().words[g]); }

    S trace_word(const Word& w) const {
        S t = F.zero();
        for (int i = 0; i < n; ++i) t += apply_word(w, basis(i))[i];
        return t;
    }

    // sum over G of row_xi rho(g), accumulated along the BFS tree
    std::vector<S> reynolds_vector(const std::vector<S>& start) const {
        const Group& G = Group::instance();
        int N = G.size();
        std::vector<int> last_child(N, -1);
        for (int g = 1; g < N; ++g) last_child[G.parent[g]] = g;
        std::vector<std::vector<S>> rows(N);
        rows[0] = start;
        std::vector<S> acc = start;
        for (int g = 1; g < N; ++g) {
            int p = G.parent[g];
            rows[g] = apply_gen(G.gen[g] + 1, rows[p]);
            for (int i = 0; i < n; ++i) acc[i] += rows[g][i];
            if (last_child[p] == g) std::vector<S>().swap(rows[p]);
            if (last_child[g] < 0) std::vector<S>().swap(rows[g]);
        }
        Rational inv336(1, N);
        for (auto& v : acc) v = F.scale(v, inv336);
        return acc;
    }

    std::vector<S> reynolds_row(const CharIndex& xi) const { return reynolds_vector(basis(xi.index())); }

    // full Reynolds matrix (1/|G|) sum_g rho(g)
    Mat<S> reynolds_matrix() const {
        Mat<S> R(n, n, F.zero());
        for (int i = 0; i < n; ++i) {
            auto r = reynolds_vector(basis(i));
            for (int c = 0; c < n; ++c) R(i, c) = r[c];
        }
        return R;
    }
};

template <class S>
Mat<S> conj_transpose(const Mat<S>& M) {
    Mat<S> T(M.cols, M.rows, M.a.front());
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            if constexpr (std::is_same_v<S, cd>) T(j, i) = std::conj(M(i, j));
            else T(j, i) = M(i, j).conj();
        }
    return T;
}

// ---- characters ----

inline int legendre7(long long k) {
    static const int t[7] = {0, 1, 1, -1, 1, -1, -1};
    return t[mod(k, 7)];
}

// closed-form values of chi_k on the 12 representatives, in the order of Group::conjugacy_classes()
inline std::vector<CycElem> character_table_values(int k) {
    require_even_degree(k);
    long long N = std::lcm(28LL, std::lcm(2LL * k, 4LL));
    auto q = [&](long long v) { return CycElem(N, Rational(v)); };
    CycElem chi7, chi7i;
    if (k % 7 == 0) {
        // i sqrt7 = sum_{j=1}^{6} (j/7) zeta_7^j
        CycElem s(N);
        for (int j = 1; j < 7; ++j) s += CycElem::zeta(N, j * (N / 7)) * Rational(legendre7(j));
        chi7 = -s;
        chi7i = s;
    } else {
        chi7 = q(legendre7(k));
        chi7i = q(legendre7(k));
    }
    long long k2 = k, k3 = k2 * k2 * k2;
    return {q(k3), q(8), q(2 * k2), q(k2 * k2), q(k2), q(2), q(k2), q(3 + ((k / 2) % 2 == 0 ? 1 : -1)), chi7, q(1), chi7i, q(1)};
}

// exact trace of U~_{gamma_g}
inline CycElem utilde_trace(const SymplecticLift& s, int k) {
    ThetaTransform T(s, k);
    return Field<CycElem>(k).from_histogram(T.trace_hist());
}

// chi_k(g) exactly for small k via the word product
inline CycElem character_exact(int g, int k) {
    ThetaRep<CycElem> R(k);
    return R.trace_word(Group::instance().words[g]);
}

template <class S>
struct LiftCharacter {
    S value;            // chi_k(g)
    S scalar;           // c_g with rho_k(g) = c_g U~_{gamma_{g^-1}}
    double proportionality_defect;  // max |row - c_g U~ row| (double estimate)
};

inline double abs_of(const cd& z) { return std::abs(z); }
inline double abs_of(const ApproxComplex& z) { return std::abs(z.to_cd()); }
inline double abs_of(const CycElem& z) { return std::abs(to_cd(z)); }

// chi_k(g) = c_g tr U~_{gamma_{g^-1}}, with c_g read off one propagated row of rho_k(g).
// The word product runs opposite to the lift (gamma_{gh} = gamma_h gamma_g), hence g^-1.
template <class S>
LiftCharacter<S> character_lift(const ThetaRep<S>& R, int g) {
    const Group& G = Group::instance();
    ThetaTransform T(all_lifts()[G.inv(g)], R.k);
    std::vector<S> row = R.apply_word(G.words[g], R.basis(0));
    std::vector<S> urow = T.apply_row(R.F, R.basis(0));
    int best = 0;
    for (int j = 1; j < R.n; ++j)
        if (abs_of(urow[j]) > abs_of(urow[best])) best = j;
    S c = row[best] / urow[best];
    double defect = 0;
    for (int j = 0; j < R.n; ++j) defect = std::max(defect, abs_of(row[j] - c * urow[j]));
    S tr = R.F.from_histogram(T.trace_hist());
    return {c * tr, c, defect};
}

// ---- Gauss sums ----

struct GaussSum {
    CycElem direct;       // sum_{n<r} zeta_r^{q n^2}
    ApproxComplex closed; // (1+i) kappa_q^{-1} sqrt(r) (r/|q|)
    bool square_identity; // direct^2 == 2i kappa_q^{-2} r exactly
    bool sign_match;      // direct and closed agree numerically
};

inline GaussSum gauss_sum(long long q, long long r) {
    if (q % 2 == 0 || r % 4 != 0 || std::gcd(q, r) != 1) throw std::invalid_argument("gauss_sum: need q odd, 4 | r, gcd(q, r) = 1");
    GaussSum G;
    std::vector<long long> h(r, 0);
    for (long long n = 0; n < r; ++n) ++h[mod(q * ((n * n) % r), r)];
    G.direct = CycElem::from_histogram(h, r);
    // kappa_q = 1 if q = 1 mod 4, i if q = 3 mod 4
    bool kappa_i = mod(q, 4) == 3;
    int jac = jacobi(r, std::llabs(q));
    CycElem i4 = CycElem::zeta(r, r / 4);
    CycElem kinv2 = kappa_i ? CycElem(r, Rational(-1)) : CycElem(r, Rational(1));
    CycElem rhs = Rational(2 * r) * i4 * kinv2;
    G.square_identity = G.direct * G.direct == rhs;
    ApproxComplex one_plus_i(BigFloat(1), BigFloat(1));
    ApproxComplex kinv = kappa_i ? ApproxComplex(BigFloat(0), BigFloat(-1)) : ApproxComplex(1);
    BigFloat sr = sqrt(BigFloat(r));
    ApproxComplex root(sr, BigFloat(0), mag_up(sr) * unit_roundoff());
    G.closed = one_plus_i * kinv * root * ApproxComplex(jac);
    G.sign_match = embed(G.direct).overlaps(G.closed, 1e-30 * (1 + std::sqrt(double(r))));
    return G;
}

// sum over {0..k-1}^6 of zeta_{2k}^{K[x]}, exact
inline CycElem sigma_direct(const Mat6i& K, int k) {
    std::vector<long long> h(2 * k, 0);
    std::array<int, 6> x{};
    long long total = 1;
    for (int i = 0; i < 6; ++i) total *= k;
    for (long long t = 0; t < total; ++t) {
        long long r = t;
        for (int i = 5; i >= 0; --i) {
            x[i] = int(r % k);
            r /= k;
        }
        long long e = 0;
        for (int i = 0; i < 6; ++i) {
            if (!x[i]) continue;
            long long row = 0;
            for (int j = 0; j < 6; ++j) row += K[i][j] * x[j];
            e += row * x[i];
        }
        ++h[mod(e, 2 * k)];
    }
    return Field<CycElem>(k).from_histogram(h);
}

// sum_{y mod k} zeta_{2k}^{a y^2}
inline CycElem gauss_1d(long long a, int k) {
    std::vector<long long> h(2 * k, 0);
    for (long long y = 0; y < k; ++y) ++h[mod(a * y * y, 2 * k)];
    return Field<CycElem>(k).from_histogram(h);
}

struct SigmaCheck {
    CycElem direct, diagonal, chi;
    bool agree;
};

// Sigma_k for K(gamma_{g7}) directly and as a product of 1-d sums of y1^2+y2^2+y3^2-y4^2-y5^2-7y6^2
inline SigmaCheck sigma_via_gauss(int k) {
    require_even_degree(k);
    const Group& G = Group::instance();
    Mat3Q g7 = minus(G.gens[0] * G.gens[1] * G.gens[2]);
    Mat6i K = build_K(gamma_of(g7));
    SigmaCheck s;
    s.direct = sigma_direct(K, k);
    s.diagonal = gauss_1d(1, k) * gauss_1d(1, k) * gauss_1d(1, k) * gauss_1d(-1, k) * gauss_1d(-1, k) * gauss_1d(-7, k);
    s.agree = s.direct == s.diagonal;
    long long k3 = (long long)k * k * k;
    CycElem ik3 = CycElem::zeta(s.direct.order(), s.direct.order() / 4) * Rational(k3);
    s.chi = s.direct / ik3;
    return s;
}

}  // namespace tc
