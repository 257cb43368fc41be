#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "group.hpp"
#include "matrix.hpp"

namespace tc {

// z in Lambda: z in O^3, z1 = z2 = z3 mod alpha, z1 + z2 + z3 = 0 mod alpha-bar
inline bool lambda_contains(const Vec3Q& z) {
    for (const auto& c : z)
        if (!c.is_integral()) return false;
    const QuadElem a = QuadElem::alpha(), ab = QuadElem::alpha_bar();
    return divides(a, z[0] - z[1]) && divides(a, z[1] - z[2]) && divides(ab, z[0] + z[1] + z[2]);
}

// ---- integer lattices in Z^n (row bases) ----

using IntRow = std::vector<long long>;

// Hermite normal form of the row span; returns a basis (zero rows dropped).
inline std::vector<IntRow> hnf_basis(std::vector<IntRow> rows) {
    if (rows.empty()) return rows;
    std::size_t n = rows[0].size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        // Euclid on column col among rows r..end
        while (true) {
            std::size_t piv = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (piv == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[piv][col])))
                    piv = i;
            if (piv == rows.size()) break;
            std::swap(rows[piv], rows[r]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                long long q = floor_div(rows[i][col], rows[r][col]);
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][col] != 0) {
            if (rows[r][col] < 0)
                for (auto& x : rows[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                long long q = floor_div(rows[i][col], rows[r][col]);
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
            }
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

inline bool same_lattice(const std::vector<IntRow>& a, const std::vector<IntRow>& b) { return hnf_basis(a) == hnf_basis(b); }

inline Rational int_det(const std::vector<IntRow>& rows) {
    int n = int(rows.size());
    Mat<Rational> m(n, n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rational(rows[i][j]);
    Rational d(1);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            Rational f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return d;
}

// O^3 -> Z^6 coordinates (x1, y1, x2, y2, x3, y3); entries must be integral
inline IntRow realify(const Vec3Q& v) {
    IntRow r;
    for (const auto& c : v) {
        r.push_back(c.x.to_int64());
        r.push_back(c.y.to_int64());
    }
    return r;
}

// Q^3 scaled by 2 (for lattices with half-integral rational coordinates)
inline Vec3Q vec3q(long long a, long long b, long long c) { return {QuadElem(a), QuadElem(b), QuadElem(c)}; }

inline std::vector<IntRow> lambda_basis() {
    std::vector<IntRow> rows;
    for (const auto& r : build_roots()) rows.push_back(realify(r));
    return hnf_basis(rows);
}

// 2 abar M + alpha Q with M = Z^3 + 1/2(1,1,1) and Q the C3 root lattice
inline std::vector<IntRow> lambda_from_M_and_Q() {
    const QuadElem a = QuadElem::alpha(), ab = QuadElem::alpha_bar();
    std::vector<Vec3Q> gens;
    auto mulv = [](const QuadElem& s, const Vec3Q& v) { return Vec3Q{s * v[0], s * v[1], s * v[2]}; };
    // M generators
    gens.push_back(mulv(QuadElem(2) * ab, vec3q(1, 0, 0)));
    gens.push_back(mulv(QuadElem(2) * ab, vec3q(0, 1, 0)));
    gens.push_back(mulv(QuadElem(2) * ab, vec3q(0, 0, 1)));
    gens.push_back(mulv(ab, vec3q(1, 1, 1)));
    // C3 roots +-e_i +- e_j, 2 e_i
    gens.push_back(mulv(a, vec3q(1, 1, 0)));
    gens.push_back(mulv(a, vec3q(1, -1, 0)));
    gens.push_back(mulv(a, vec3q(0, 1, 1)));
    gens.push_back(mulv(a, vec3q(0, 1, -1)));
    gens.push_back(mulv(a, vec3q(1, 0, 1)));
    gens.push_back(mulv(a, vec3q(2, 0, 0)));
    std::vector<IntRow> rows;
    for (const auto& g : gens) rows.push_back(realify(g));
    return hnf_basis(rows);
}

struct PeriodData {
    Mat3i C;
    Mat3Q omega1, omega2;
    Mat3R B;
    QuadElem tau;
    Mat3Q Z;
};

inline Mat3Q to_quad(const Mat3i& m) {
    Mat3Q q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = QuadElem(m[i][j]);
    return q;
}
inline Mat3Q to_quad(const Mat3R& m) {
    Mat3Q q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = QuadElem(m[i][j]);
    return q;
}
inline Mat3R to_rat(const Mat3i& m) {
    Mat3R q;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = Rational(m[i][j]);
    return q;
}

inline PeriodData build_period_data() {
    PeriodData p;
    p.C = Mat3i{{{1, 0, 0}, {-1, 1, 0}, {0, -1, 2}}};
    Mat3R Cr = to_rat(p.C);
    p.omega2 = scale(QuadElem::alpha(), to_quad(p.C));
    p.omega1 = scale(QuadElem(-2) * QuadElem::alpha_bar(), to_quad(inverse3(transpose(Cr))));
    p.B = inverse3(transpose(Cr) * Cr);
    p.tau = -(QuadElem::alpha_bar() * QuadElem::alpha_bar());
    p.Z = scale(p.tau, to_quad(p.B));
    return p;
}

inline const PeriodData& period_data() {
    static const PeriodData p = build_period_data();
    return p;
}

struct PeriodChecks {
    bool B_expected, Z_from_omega, Z_symmetric, imZ_posdef, columns_in_lambda, index_one;
    bool all() const { return B_expected && Z_from_omega && Z_symmetric && imZ_posdef && columns_in_lambda && index_one; }
};

inline Mat3R expected_B() {
    Mat3R b;
    long long v[3][3] = {{4, 4, 2}, {4, 8, 4}, {2, 4, 3}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = Rational(v[i][j], 4);
    return b;
}

inline PeriodChecks check_period_data(const PeriodData& p) {
    PeriodChecks c{};
    c.B_expected = p.B == expected_B();
    c.Z_from_omega = inverse3(p.omega2) * p.omega1 == p.Z;
    c.Z_symmetric = p.Z == transpose(p.Z);
    // Im Z = (sqrt7/2) B; B positive definite by leading minors
    Rational m1 = p.B[0][0], m2 = p.B[0][0] * p.B[1][1] - p.B[0][1] * p.B[1][0], m3 = det3(p.B);
    c.imZ_posdef = p.tau.y.sign() > 0 && m1.sign() > 0 && m2.sign() > 0 && m3.sign() > 0;
    std::vector<IntRow> cols;
    c.columns_in_lambda = true;
    for (int j = 0; j < 6; ++j) {
        const Mat3Q& w = j < 3 ? p.omega1 : p.omega2;
        Vec3Q col{w[0][j % 3], w[1][j % 3], w[2][j % 3]};
        if (!lambda_contains(col)) {
            c.columns_in_lambda = false;
            continue;
        }
        cols.push_back(realify(col));
    }
    if (c.columns_in_lambda) {
        Rational dO = int_det(cols).abs();
        Rational dL = int_det(lambda_basis()).abs();
        c.index_one = !dL.is_zero() && dO == dL;
    }
    return c;
}

// ---- symplectic lifts ----

struct SymplecticLift {
    Mat3i a, b, c, d;
    Mat3i a_t, b_t, c_t;  // derived: (d^T)^-1, b a_t^T, -c d^T

    Mat6i gamma() const {
        Mat6i g{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                g[i][j] = a[i][j];
                g[i][j + 3] = b[i][j];
                g[i + 3][j] = c[i][j];
                g[i + 3][j + 3] = d[i][j];
            }
        return g;
    }
    static SymplecticLift from_gamma(const Mat6i& g) {
        SymplecticLift s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                s.a[i][j] = g[i][j];
                s.b[i][j] = g[i][j + 3];
                s.c[i][j] = g[i + 3][j];
                s.d[i][j] = g[i + 3][j + 3];
            }
        s.derive();
        return s;
    }
    void derive() {
        a_t = inverse_unimodular(transpose(d));
        b_t = b * transpose(a_t);
        c_t = scale(-1LL, c * transpose(d));
    }
};

inline Mat6i symplectic_form() {
    Mat6i e{};
    for (int i = 0; i < 3; ++i) {
        e[i][i + 3] = -1;
        e[i + 3][i] = 1;
    }
    return e;
}

inline bool is_symplectic(const Mat6i& g) { return transpose(g) * symplectic_form() * g == symplectic_form(); }

inline SymplecticLift gamma_of(const Mat3Q& g, const PeriodData& p = period_data()) {
    // Omega X = g Omega, realified over the basis {1, alpha}
    Mat3Q gO1 = g * p.omega1, gO2 = g * p.omega2;
    Mat<Rational> A(6, 6, Rational(0)), Bm(6, 6, Rational(0));
    for (int i = 0; i < 3; ++i) {
        for (int t = 0; t < 6; ++t) {
            const QuadElem& w = t < 3 ? p.omega1[i][t] : p.omega2[i][t - 3];
            A(2 * i, t) = w.x;
            A(2 * i + 1, t) = w.y;
        }
        for (int j = 0; j < 6; ++j) {
            const QuadElem& r = j < 3 ? gO1[i][j] : gO2[i][j - 3];
            Bm(2 * i, j) = r.x;
            Bm(2 * i + 1, j) = r.y;
        }
    }
    auto X = solve(A, Bm);
    if (!X) throw std::domain_error("gamma_of: singular period system");
    Mat6i x{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const Rational& v = (*X)(i, j);
            if (!v.is_integer()) throw std::domain_error("gamma_of: non-integral solution, g does not preserve Lambda");
            x[i][j] = v.to_int64();
        }
    SymplecticLift s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            s.a[i][j] = x[j][i];
            s.c[i][j] = x[j][i + 3];
            s.b[i][j] = x[j + 3][i];
            s.d[i][j] = x[j + 3][i + 3];
        }
    s.derive();
    return s;
}

struct PeriodActionReport {
    bool moebius_fixes_Z, det_matches, det_d_unit;
    QuadElem det_cZd;
    long long det_d;
    bool all() const { return moebius_fixes_Z && det_matches && det_d_unit; }
};

inline PeriodActionReport period_action_checks(const Mat3Q& g, const PeriodData& p = period_data()) {
    SymplecticLift s = gamma_of(g, p);
    Mat3Q a = to_quad(s.a), b = to_quad(s.b), c = to_quad(s.c), d = to_quad(s.d);
    Mat3Q num = a * p.Z + b, den = c * p.Z + d;
    PeriodActionReport r{};
    r.moebius_fixes_Z = num * inverse3(den) == p.Z;
    r.det_cZd = det3(den);
    r.det_matches = r.det_cZd == det3(g);
    r.det_d = det3(s.d);
    r.det_d_unit = r.det_d == 1 || r.det_d == -1;
    return r;
}

inline bool parity(const SymplecticLift& s) {
    Mat3i cd = s.c * transpose(s.d), ab = s.a * transpose(s.b);
    for (int i = 0; i < 3; ++i)
        if (cd[i][i] % 2 != 0 || ab[i][i] % 2 != 0) return false;
    return true;
}

inline Mat6i build_K(const SymplecticLift& s) {
    Mat6i K{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            long long id = i == j ? 1 : 0;
            K[i][j] = s.c_t[i][j];
            K[i][j + 3] = id - s.d[i][j];
            K[i + 3][j] = id - s.d[j][i];
            K[i + 3][j + 3] = s.b_t[i][j];
        }
    return K;
}

// all lifts in BFS order of the group
inline const std::vector<SymplecticLift>& all_lifts() {
    static const std::vector<SymplecticLift> lifts = [] {
        const Group& G = Group::instance();
        std::vector<SymplecticLift> v;
        v.reserve(G.size());
        for (const auto& g : G.elems) v.push_back(gamma_of(g));
        return v;
    }();
    return lifts;
}

}  // namespace tc
