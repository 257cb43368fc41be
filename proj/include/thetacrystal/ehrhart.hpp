#pragma once

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "hilbert.hpp"
#include "matrix.hpp"
#include "parallel.hpp"

namespace tc {

using Pt3 = Vec<Rational, 3>;

inline Pt3 pt(Rational a, Rational b, Rational c) { return {a, b, c}; }
inline Pt3 operator+(const Pt3& a, const Pt3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Pt3 operator-(const Pt3& a, const Pt3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Pt3 operator*(const Rational& s, const Pt3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Rational dot(const Pt3& a, const Pt3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Pt3 midpoint(const Pt3& a, const Pt3& b) { return Rational(1, 2) * (a + b); }

inline long long ceil_int(const Rational& r) { return -(-r).floor().to_int64(); }
inline long long floor_int(const Rational& r) { return r.floor().to_int64(); }

// ---- simplices ----

// Closed convex hull or relative interior of affinely independent rational points.
class RationalSimplex {
public:
    RationalSimplex(std::vector<Pt3> vertices, bool open) : v_(std::move(vertices)), open_(open) {
        if (v_.empty() || v_.size() > 4) throw std::invalid_argument("RationalSimplex: 1 to 4 vertices");
        int d = dim();
        if (d == 0) return;
        Mat<Rational> E(3, d, Rational(0));
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < 3; ++i) E(i, j) = v_[j + 1][i] - v_[0][i];
        // pick d independent coordinate rows
        Mat<Rational> Et(d, 3, Rational(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < d; ++j) Et(j, i) = E(i, j);
        std::vector<int> piv;
        if (row_reduce(Et, &piv) < d) throw std::invalid_argument("RationalSimplex: affinely dependent vertices");
        rows_ = piv;
        Mat<Rational> S(d, d, Rational(0));
        for (int a = 0; a < d; ++a)
            for (int j = 0; j < d; ++j) S(a, j) = E(rows_[a], j);
        sinv_ = *solve(S, Mat<Rational>::identity(d, Rational(0), Rational(1)));
        E_ = E;
    }

    static RationalSimplex closed(std::vector<Pt3> v) { return RationalSimplex(std::move(v), false); }
    static RationalSimplex open(std::vector<Pt3> v) { return RationalSimplex(std::move(v), true); }

    int dim() const { return int(v_.size()) - 1; }
    bool is_open() const { return open_; }
    const std::vector<Pt3>& vertices() const { return v_; }

    // barycentric coordinates of p, or nullopt off the affine hull
    std::optional<std::vector<Rational>> barycentric(const Pt3& p) const {
        int d = dim();
        Pt3 w = p - v_[0];
        std::vector<Rational> lam(d + 1, Rational(0));
        if (d == 0) {
            if (w[0].is_zero() && w[1].is_zero() && w[2].is_zero()) {
                lam[0] = Rational(1);
                return lam;
            }
            return std::nullopt;
        }
        Rational rest(1);
        for (int j = 0; j < d; ++j) {
            Rational s(0);
            for (int a = 0; a < d; ++a) s += sinv_(j, a) * w[rows_[a]];
            lam[j + 1] = s;
            rest -= s;
        }
        lam[0] = rest;
        for (int i = 0; i < 3; ++i) {
            Rational s(0);
            for (int j = 0; j < d; ++j) s += E_(i, j) * lam[j + 1];
            if (s != w[i]) return std::nullopt;
        }
        return lam;
    }

    // membership in k times the simplex
    bool contains_scaled(const Pt3& p, long long k) const {
        if (k == 0) return p[0].is_zero() && p[1].is_zero() && p[2].is_zero();
        auto lam = barycentric(Rational(1, k) * p);
        if (!lam) return false;
        for (const auto& l : *lam)
            if (open_ ? l.sign() <= 0 : l.sign() < 0) return false;
        return true;
    }

    // integer box containing k times the simplex
    std::array<std::pair<long long, long long>, 3> box(long long k, const Pt3& shift = {}) const {
        std::array<std::pair<long long, long long>, 3> b;
        for (int i = 0; i < 3; ++i) {
            Rational lo = Rational(k) * v_[0][i], hi = lo;
            for (const auto& v : v_) {
                Rational x = Rational(k) * v[i];
                if (x < lo) lo = x;
                if (x > hi) hi = x;
            }
            b[i] = {ceil_int(lo - shift[i]), floor_int(hi - shift[i])};
        }
        return b;
    }

private:
    std::vector<Pt3> v_;
    bool open_;
    std::vector<int> rows_;
    Mat<Rational> sinv_, E_;
};

// ---- lattices ----

// a . m = 0 mod modulus
struct Congruence {
    Vec3i a;
    long long modulus;
};

// union over cosets s of (Z^3 + s), restricted by congruences on the integral points
struct ShiftedLattice {
    std::vector<Pt3> cosets{Pt3{Rational(0), Rational(0), Rational(0)}};
    std::vector<Congruence> congruences;

    bool contains(const Pt3& p) const {
        for (const auto& s : cosets) {
            Pt3 z = p - s;
            if (!(z[0].is_integer() && z[1].is_integer() && z[2].is_integer())) continue;
            if (congruences.empty()) return true;
            bool ok = true;
            for (const auto& c : congruences) {
                long long v = c.a[0] * z[0].to_int64() + c.a[1] * z[1].to_int64() + c.a[2] * z[2].to_int64();
                if (mod(v, c.modulus) != 0) ok = false;
            }
            if (ok) return true;
        }
        return false;
    }
    bool congruences_hold(const Vec3i& z) const {
        for (const auto& c : congruences)
            if (mod(c.a[0] * z[0] + c.a[1] * z[1] + c.a[2] * z[2], c.modulus) != 0) return false;
        return true;
    }
};

// Z^3 u (Z^3 + (1/2)(1,1,1))
inline ShiftedLattice lattice_M() {
    Rational h(1, 2);
    return {{pt(0, 0, 0), pt(h, h, h)}, {}};
}

// m2 = 0 mod 2, -m1 - m2 + m3 = 0 mod 4: the dual of the toric lattice N
inline ShiftedLattice lattice_M_toric() { return {{pt(0, 0, 0)}, {{{0, 1, 0}, 2}, {{-1, -1, 1}, 4}}}; }

// variant congruence with m3 = 0 mod 2 in place of m2
inline ShiftedLattice lattice_M_toric_m3_even() { return {{pt(0, 0, 0)}, {{{0, 0, 1}, 2}, {{-1, -1, 1}, 4}}}; }

// calls f(p) for each lattice point p in the integer box of k*s (per coset)
template <class F>
void for_each_candidate(const RationalSimplex& s, long long k, const ShiftedLattice& lat, F&& f) {
    for (const auto& sh : lat.cosets) {
        auto b = s.box(k, sh);
        for (long long x = b[0].first; x <= b[0].second; ++x)
            for (long long y = b[1].first; y <= b[1].second; ++y)
                for (long long z = b[2].first; z <= b[2].second; ++z) {
                    if (!lat.congruences_hold({x, y, z})) continue;
                    f(pt(x, y, z) + sh);
                }
    }
}

inline long long count_simplex(const RationalSimplex& s, long long k, const ShiftedLattice& lat) {
    if (k < 0) throw std::invalid_argument("count_simplex: k < 0");
    long long n = 0;
    for_each_candidate(s, k, lat, [&](const Pt3& p) {
        if (s.contains_scaled(p, k)) ++n;
    });
    return n;
}

// ---- the fundamental domain F ----

struct AlcovePoints {
    Pt3 O, A, E, N, K, L;
};

inline AlcovePoints alcove_points() {
    Pt3 f1 = pt(1, 0, 0), f2 = pt(Rational(1, 2), Rational(1, 2), 0),
        f3 = pt(Rational(1, 2), Rational(1, 2), Rational(1, 2));
    AlcovePoints P;
    P.O = pt(0, 0, 0);
    P.A = Rational(1, 2) * f1;
    P.E = f2;
    P.N = f3;
    P.K = midpoint(P.A, P.E);
    P.L = midpoint(P.O, P.N);
    return P;
}

struct SignedSimplex {
    int sign;
    std::string label;  // a leading '~' marks the closed hull
    RationalSimplex simplex;
};

// Letters name alcove points; "~OAK" is the closed hull, "OAK" the relative interior.
inline RationalSimplex simplex_from_label(const std::string& label) {
    auto P = alcove_points();
    std::map<char, Pt3> named{{'O', P.O}, {'A', P.A}, {'E', P.E}, {'N', P.N}, {'K', P.K}, {'L', P.L}};
    bool closed = !label.empty() && label[0] == '~';
    std::vector<Pt3> v;
    for (std::size_t i = closed ? 1 : 0; i < label.size(); ++i) {
        auto it = named.find(label[i]);
        if (it == named.end()) throw std::invalid_argument("simplex_from_label: unknown vertex in " + label);
        v.push_back(it->second);
    }
    return RationalSimplex(v, !closed);
}

inline const std::vector<SignedSimplex>& fundamental_domain_terms() {
    static const std::vector<SignedSimplex> terms = [] {
        std::vector<std::pair<int, std::string>> spec{
            {1, "OAKN"}, {1, "~OAK"}, {1, "~OKL"}, {1, "~OAL"}, {1, "ALN"}, {1, "ANK"},
            {-1, "~OA"}, {-1, "~OK"}, {-1, "~OL"}, {1, "AN"},   {1, "O"}};
        std::vector<SignedSimplex> out;
        for (auto& [s, l] : spec) out.push_back({s, l, simplex_from_label(l)});
        return out;
    }();
    return terms;
}

// signed multiplicity of p in k*F under the decomposition
inline int decomposition_multiplicity(const Pt3& p, long long k) {
    int m = 0;
    for (const auto& t : fundamental_domain_terms())
        if (t.simplex.contains_scaled(p, k)) m += t.sign;
    return m;
}

inline long long h_F(long long k) {
    if (k < 0) throw std::invalid_argument("h_F: k < 0");
    // 0*F = {O}; dilation by 0 collapses the pieces, so the signed sum only applies for k >= 1
    if (k == 0) return 1;
    auto lat = lattice_M();
    long long s = 0;
    for (const auto& t : fundamental_domain_terms()) s += t.sign * count_simplex(t.simplex, k, lat);
    return s;
}

inline std::vector<long long> h_F_values(int kmax, int threads = default_threads()) {
    std::vector<long long> v(kmax + 1);
    parallel_for(kmax + 1, [&](int k) { v[k] = h_F(k); }, threads);
    return v;
}

// rotation by pi about the line KL, applied to k times the alcove
inline Pt3 rotate_KL(const Pt3& p, long long k) {
    auto P = alcove_points();
    Pt3 K = Rational(k) * P.K, d = P.L - P.K;
    Pt3 w = p - K;
    Pt3 proj = K + (dot(w, d) / dot(d, d)) * d;
    return Rational(2) * proj - p;
}

struct DomainAudit {
    long long k = 0;
    long long points = 0;       // M-points of the closed k*OAEN
    long long orbits = 0;       // classes under the rotation
    long long counted = 0;      // points with multiplicity 1
    bool multiplicities_ok = true;   // every multiplicity is 0 or 1
    bool one_per_orbit = true;       // every orbit has exactly one counted point
    bool rotation_preserves = true;  // the rotation maps the point set to itself
};

inline DomainAudit audit_fundamental_domain(long long k) {
    auto P = alcove_points();
    auto alcove = RationalSimplex::closed({P.O, P.A, P.E, P.N});
    auto lat = lattice_M();
    std::vector<Pt3> pts;
    for_each_candidate(alcove, k, lat, [&](const Pt3& p) {
        if (alcove.contains_scaled(p, k)) pts.push_back(p);
    });
    std::set<Pt3> all(pts.begin(), pts.end());
    DomainAudit a;
    a.k = k;
    a.points = (long long)pts.size();
    std::map<Pt3, int> orbit_hits;
    for (const auto& p : pts) {
        Pt3 r = rotate_KL(p, k);
        if (!all.count(r) || !lat.contains(r)) a.rotation_preserves = false;
        Pt3 rep = std::min(p, r);
        orbit_hits.try_emplace(rep, 0);
        int m = decomposition_multiplicity(p, k);
        if (m != 0 && m != 1) a.multiplicities_ok = false;
        if (m == 1) {
            ++a.counted;
            ++orbit_hits[rep];
        }
    }
    a.orbits = (long long)orbit_hits.size();
    for (auto& [rep, n] : orbit_hits)
        if (n != 1) a.one_per_orbit = false;
    return a;
}

// E(k) + d0(k) k + d1(k) written per residue class mod 4
inline QuasiPolynomial expected_hF_quasipolynomial() {
    Rational d0[4] = {Rational(0), Rational(-3, 16), Rational(0), Rational(-3, 16)};
    Rational d1[4] = {Rational(0), Rational(-11, 16), Rational(-1, 4), Rational(-11, 16)};
    QuasiPolynomial q{3, 4, {}};
    for (int r = 0; r < 4; ++r)
        q.coeffs.push_back({Rational(1) + d1[r], Rational(2, 3) + d0[r], Rational(3, 16), Rational(1, 48)});
    return q;
}

// (1 - t + t^2) / ((1-t)^2 (1-t^2) (1-t^4))
inline PowerSeries hF_series(int order) {
    PowerSeries s = PowerSeries::poly({1, -1, 1}, order);
    for (int w : {1, 1, 2, 4}) s.divide_one_minus(w);
    return s;
}

struct Reciprocity {
    QuasiPolynomial closed_fit;
    std::vector<long long> open_counts;   // k = 1..kmax
    bool holds = true;                    // open(k) = -closed(-k) for k = 1..kmax
};

// Closed and open counts of OAKN. The closed fit is exact over k = 0..kmax, and both sides are
// period-4 cubic quasi-polynomials, so agreement at >= 4 points per class is equality.
inline Reciprocity reciprocity_OAKN(int kmax) {
    auto closed = simplex_from_label("~OAKN"), open = simplex_from_label("OAKN");
    auto lat = lattice_M();
    std::vector<long long> cv;
    for (int k = 0; k <= kmax; ++k) cv.push_back(count_simplex(closed, k, lat));
    Reciprocity r{fit_quasipolynomial(cv, 3, 4), {}, true};
    for (int k = 1; k <= kmax; ++k) {
        long long o = count_simplex(open, k, lat);
        r.open_counts.push_back(o);
        if (Rational(o) != -r.closed_fit.eval(-k)) r.holds = false;
    }
    return r;
}

// ---- toric model ----

struct ToricFan {
    std::array<Pt3, 4> rays;
    std::array<Pt3, 3> n_basis;  // generators of N
};

inline ToricFan toric_fan() {
    Rational h(1, 2), q(1, 4);
    return {{pt(1, 0, 0), pt(0, h, 0), pt(-h, -h, -h), pt(0, 0, 1)}, {pt(1, 0, 0), pt(0, h, 0), pt(-q, -q, q)}};
}

// vertices of {m : <m, v_j> >= -b_j}
inline std::vector<Pt3> toric_polytope_vertices(const ToricFan& fan, const std::array<Rational, 4>& b) {
    std::vector<Pt3> out;
    for (int skip = 0; skip < 4; ++skip) {
        Mat<Rational> A(3, 3, Rational(0)), rhs(3, 1, Rational(0));
        int r = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == skip) continue;
            for (int c = 0; c < 3; ++c) A(r, c) = fan.rays[j][c];
            rhs(r, 0) = -b[j];
            ++r;
        }
        auto x = solve(A, rhs);
        if (!x) continue;
        Pt3 m = pt((*x)(0, 0), (*x)(1, 0), (*x)(2, 0));
        if (dot(m, fan.rays[skip]) >= -b[skip]) out.push_back(m);
    }
    return out;
}

inline long long toric_h0(int i, long long k, const ShiftedLattice& lat = lattice_M_toric()) {
    if (i < 0 || i > 3) throw std::invalid_argument("toric_h0: divisor index in 0..3");
    if (k < 0) throw std::invalid_argument("toric_h0: k < 0");
    auto fan = toric_fan();
    std::array<Rational, 4> b{Rational(0), Rational(0), Rational(0), Rational(0)};
    b[i] = Rational(k);
    auto verts = toric_polytope_vertices(fan, b);
    std::array<long long, 3> lo, hi;
    for (int c = 0; c < 3; ++c) {
        Rational mn = verts[0][c], mx = mn;
        for (auto& v : verts) {
            if (v[c] < mn) mn = v[c];
            if (v[c] > mx) mx = v[c];
        }
        lo[c] = ceil_int(mn);
        hi[c] = floor_int(mx);
    }
    long long n = 0;
    for (long long x = lo[0]; x <= hi[0]; ++x)
        for (long long y = lo[1]; y <= hi[1]; ++y)
            for (long long z = lo[2]; z <= hi[2]; ++z) {
                if (!lat.congruences_hold({x, y, z})) continue;
                Pt3 m = pt(x, y, z);
                bool ok = true;
                for (int j = 0; j < 4 && ok; ++j) ok = dot(m, fan.rays[j]) >= -b[j];
                if (ok) ++n;
            }
    return n;
}

// coordinates of v in the N basis
inline Vec3i n_coordinates(const ToricFan& fan, const Pt3& v) {
    Mat<Rational> B(3, 3, Rational(0)), rhs(3, 1, Rational(0));
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) B(r, c) = fan.n_basis[c][r];
        rhs(r, 0) = v[r];
    }
    auto x = *solve(B, rhs);
    Vec3i out;
    for (int r = 0; r < 3; ++r) {
        if (!x(r, 0).is_integer()) throw std::domain_error("n_coordinates: vector not in N");
        out[r] = x(r, 0).to_int64();
    }
    return out;
}

inline long long det3(const Vec3i& a, const Vec3i& b, const Vec3i& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// smallest c such that c D_i is Cartier: on each maximal cone containing v_i the local
// equation m with <m, v_j> = -c delta_ij must lie in M
inline long long cartier_index(int i, const ShiftedLattice& lat = lattice_M_toric(), long long limit = 64) {
    auto fan = toric_fan();
    std::vector<Pt3> local;
    for (int skip = 0; skip < 4; ++skip) {
        if (skip == i) continue;
        Mat<Rational> A(3, 3, Rational(0)), rhs(3, 1, Rational(0));
        int r = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == skip) continue;
            for (int c = 0; c < 3; ++c) A(r, c) = fan.rays[j][c];
            rhs(r, 0) = Rational(j == i ? -1 : 0);
            ++r;
        }
        auto x = *solve(A, rhs);
        local.push_back(pt(x(0, 0), x(1, 0), x(2, 0)));
    }
    for (long long c = 1; c <= limit; ++c) {
        bool ok = true;
        for (auto& m : local) ok = ok && lat.contains(Rational(c) * m);
        if (ok) return c;
    }
    throw std::domain_error("cartier_index: not found below limit");
}

struct FanReport {
    std::array<Vec3i, 4> ray_coords;  // in the N basis
    bool rays_primitive = true;
    bool complete = true;             // positive relation among all four rays
    long long index = 0;              // [N : sum Z v_j]
    std::array<long long, 4> cartier{};
    bool dual_lattice_ok = true;      // congruence lattice equals Hom(N, Z) on a test box
};

inline FanReport fan_check() {
    auto fan = toric_fan();
    FanReport r;
    for (int j = 0; j < 4; ++j) {
        r.ray_coords[j] = n_coordinates(fan, fan.rays[j]);
        auto& c = r.ray_coords[j];
        if (std::gcd(std::gcd(std::abs(c[0]), std::abs(c[1])), std::abs(c[2])) != 1) r.rays_primitive = false;
    }
    // kernel of the 3x4 coordinate matrix via signed 3x3 minors
    std::array<long long, 4> rel;
    long long g = 0;
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<Vec3i> cols;
        for (int j = 0; j < 4; ++j)
            if (j != skip) cols.push_back(r.ray_coords[j]);
        long long m = det3(cols[0], cols[1], cols[2]);
        rel[skip] = (skip % 2 ? -m : m);
        g = std::gcd(g, std::abs(m));
    }
    r.index = g;
    bool pos = true, neg = true;
    for (auto x : rel) {
        pos = pos && x > 0;
        neg = neg && x < 0;
    }
    r.complete = g != 0 && (pos || neg);
    for (int i = 0; i < 4; ++i) r.cartier[i] = cartier_index(i);
    auto lat = lattice_M_toric();
    for (long long x = -4; x <= 4; ++x)
        for (long long y = -4; y <= 4; ++y)
            for (long long z = -4; z <= 4; ++z) {
                Pt3 m = pt(x, y, z);
                bool dual = true;
                for (auto& n : fan.n_basis) dual = dual && dot(m, n).is_integer();
                if (dual != lat.contains(m)) r.dual_lattice_ok = false;
            }
    return r;
}

}  // namespace tc
