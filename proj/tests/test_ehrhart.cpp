#include <gtest/gtest.h>

#include "thetacrystal/ehrhart.hpp"

using namespace tc;

namespace {

// coefficients of (1 - t + t^2) / ((1-t)^2 (1-t^2)(1-t^4)) by repeated geometric convolution
std::vector<long long> series_oracle(int n) {
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    if (n >= 1) c[1] = -1;
    if (n >= 2) c[2] = 1;
    for (int w : {1, 1, 2, 4})
        for (int i = w; i <= n; ++i) c[i] += c[i - w];
    return c;
}

// E(k) + d0(k) k + d1(k)
Rational quasi_oracle(long long k) {
    Rational E = Rational(k * k * k, 48) + Rational(3 * k * k, 16) + Rational(2 * k, 3) + Rational(1);
    long long r = mod(k, 4);
    Rational d0 = (r == 1 || r == 3) ? Rational(-3, 16) : Rational(0);
    Rational d1 = r == 0 ? Rational(0) : r == 2 ? Rational(-1, 4) : Rational(-11, 16);
    return E + d0 * Rational(k) + d1;
}

long long binom3(long long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

ShiftedLattice z3() { return {{pt(0, 0, 0)}, {}}; }

}  // namespace

TEST(Simplex, UnitSimplexCountsOracle) {
    auto S = std::vector<Pt3>{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)};
    for (long long k = 0; k <= 8; ++k) {
        EXPECT_EQ(count_simplex(RationalSimplex::closed(S), k, z3()), binom3(k + 3)) << k;
        if (k > 0) EXPECT_EQ(count_simplex(RationalSimplex::open(S), k, z3()), binom3(k - 1)) << k;
    }
}

TEST(Simplex, LowerDimensionalFaces) {
    auto seg = RationalSimplex::closed({pt(0, 0, 0), pt(1, 1, 0)});
    EXPECT_EQ(seg.dim(), 1);
    EXPECT_EQ(count_simplex(seg, 5, z3()), 6);
    EXPECT_EQ(count_simplex(RationalSimplex::open({pt(0, 0, 0), pt(1, 1, 0)}), 5, z3()), 4);
    EXPECT_THROW(RationalSimplex::closed({pt(0, 0, 0), pt(1, 1, 1), pt(2, 2, 2)}), std::invalid_argument);
}

TEST(Simplex, ZeroDilationIsTheOrigin) {
    auto S = RationalSimplex::closed({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)});
    EXPECT_TRUE(S.contains_scaled(pt(0, 0, 0), 0));
    EXPECT_FALSE(S.contains_scaled(pt(1, 0, 0), 0));
}

TEST(Lattice, MHasTwoCosets) {
    auto M = lattice_M();
    EXPECT_TRUE(M.contains(pt(1, 0, 0)));
    EXPECT_TRUE(M.contains(pt(Rational(1, 2), Rational(1, 2), Rational(1, 2))));
    EXPECT_FALSE(M.contains(pt(Rational(1, 2), 0, 0)));
}

TEST(HF, InitialValues) {
    std::vector<long long> want{1, 1, 3, 4, 8, 10, 16, 20, 29, 35, 47, 56, 72};
    for (int k = 0; k <= 12; ++k) EXPECT_EQ(h_F(k), want[k]) << k;
}

TEST(HF, SeriesAndQuasiPolynomialOracles) {
    auto v = h_F_values(40, 2);
    auto s = series_oracle(40);
    auto hs = hF_series(41);
    for (int k = 0; k <= 40; ++k) {
        EXPECT_EQ(v[k], s[k]) << k;
        EXPECT_EQ(Rational(v[k]), quasi_oracle(k)) << k;
        EXPECT_EQ(hs[k], Rational(s[k])) << k;
    }
}

TEST(HF, FitEqualsExpectedQuasiPolynomial) {
    auto v = h_F_values(30);
    EXPECT_EQ(fit_quasipolynomial(v, 3, 4, Rational(1, 48)), expected_hF_quasipolynomial());
    EXPECT_EQ(fit_quasipolynomial(v, 3, 4), expected_hF_quasipolynomial());
}

TEST(HF, ThreadCountDoesNotChangeValues) { EXPECT_EQ(h_F_values(20, 1), h_F_values(20, 4)); }

TEST(FundamentalDomain, OnePointPerRotationOrbit) {
    auto s = series_oracle(6);
    for (int k = 1; k <= 6; ++k) {
        auto a = audit_fundamental_domain(k);
        EXPECT_TRUE(a.multiplicities_ok) << k;
        EXPECT_TRUE(a.one_per_orbit) << k;
        EXPECT_TRUE(a.rotation_preserves) << k;
        EXPECT_EQ(a.orbits, s[k]) << k;
        EXPECT_EQ(a.counted, s[k]) << k;
    }
}

TEST(FundamentalDomain, RotationIsAnInvolutionOnM) {
    auto M = lattice_M();
    for (long long k = 1; k <= 4; ++k)
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b)
                for (int c = -3; c <= 3; ++c) {
                    Pt3 p = pt(a, b, c);
                    EXPECT_EQ(rotate_KL(rotate_KL(p, k), k), p);
                    EXPECT_TRUE(M.contains(rotate_KL(p, k)));
                }
}

TEST(Reciprocity, OpenTetrahedron) { EXPECT_TRUE(reciprocity_OAKN(30).holds); }

TEST(Toric, SectionsOfCartierIndexFourDivisors) {
    auto v = h_F_values(20);
    for (int k = 0; k <= 20; ++k) {
        EXPECT_EQ(toric_h0(0, k), v[k]) << k;
        EXPECT_EQ(toric_h0(3, k), v[k]) << k;
    }
    for (int i = 0; i < 4; ++i) EXPECT_EQ(toric_h0(i, 0), 1);
}

TEST(Toric, M3CongruenceGivesADifferentSequence) {
    std::vector<long long> got;
    for (int k = 0; k <= 12; ++k) got.push_back(toric_h0(0, k, lattice_M_toric_m3_even()));
    EXPECT_EQ(got, (std::vector<long long>{1, 2, 4, 6, 10, 14, 20, 26, 35, 44, 56, 68, 84}));
}

TEST(Toric, FanData) {
    auto w = fan_check();
    EXPECT_EQ(std::vector<long long>(w.cartier.begin(), w.cartier.end()), (std::vector<long long>{4, 2, 2, 4}));
    EXPECT_GT(w.index, 1);
    EXPECT_TRUE(w.rays_primitive);
    EXPECT_TRUE(w.complete);
    EXPECT_TRUE(w.dual_lattice_ok);
}

TEST(Toric, CartierMultiplesHavePolynomialCounts) {
    // 4 D_0 is Cartier, so k -> h0(4k D_0) is a polynomial
    std::vector<long long> v;
    for (int k = 0; k <= 8; ++k) v.push_back(toric_h0(0, 4 * k));
    auto q = fit_quasipolynomial(v, 3, 1);
    EXPECT_EQ(q.period, 1);
}
