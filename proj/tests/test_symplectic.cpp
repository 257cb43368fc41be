#include <gtest/gtest.h>

#include <random>

#include "thetacrystal/symplectic.hpp"

using namespace tc;

namespace {

const Group& G() { return Group::instance(); }

Mat3Q g7() {
    auto g = generators();
    return minus(g[0] * g[1] * g[2]);
}

// J-form check written out independently of is_symplectic
bool preserves_J(const Mat6i& g) {
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            long long s = 0;
            for (int k = 0; k < 3; ++k) s += g[k + 3][i] * g[k][j] - g[k][i] * g[k + 3][j];
            long long want = (i < 3 && j == i + 3) ? -1 : (i >= 3 && j == i - 3) ? 1 : 0;
            if (s != want) return false;
        }
    return true;
}

Mat6i from_rows(const long long (&v)[6][6]) {
    Mat6i m{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m[i][j] = v[i][j];
    return m;
}

}  // namespace

TEST(PeriodData, BMatrixAndTau) {
    const auto& P = period_data();
    Mat3R B{{{Rational(1), Rational(1), Rational(1, 2)},
             {Rational(1), Rational(2), Rational(1)},
             {Rational(1, 2), Rational(1), Rational(3, 4)}}};
    EXPECT_EQ(P.B, B);
    EXPECT_EQ(P.tau, QuadElem(1) + QuadElem::alpha());
    EXPECT_TRUE(check_period_data(P).all());
}

TEST(PeriodData, ZIsOmegaQuotient) {
    const auto& P = period_data();
    EXPECT_EQ(inverse3(P.omega2) * P.omega1, P.Z);
    EXPECT_EQ(P.Z, transpose(P.Z));
}

TEST(Lattice, RootLatticeEqualsMPlusQ) {
    EXPECT_TRUE(same_lattice(lambda_basis(), lambda_from_M_and_Q()));
    for (const auto& r : build_roots()) EXPECT_TRUE(lambda_contains(r));
    EXPECT_FALSE(lambda_contains(vec3q(1, 0, 0)));
}

TEST(Lattice, GroupPreservesLambda) {
    auto basis = lambda_basis();
    for (const auto& g : G().elems)
        for (const auto& r : build_roots()) EXPECT_TRUE(lambda_contains(g * r));
}

TEST(Lifts, AllIntegralSymplecticOracle) {
    for (const auto& s : all_lifts()) {
        EXPECT_TRUE(preserves_J(s.gamma()));
        EXPECT_TRUE(is_symplectic(s.gamma()));
    }
    EXPECT_EQ(all_lifts()[G().identity()].gamma(), (identity_fixed<long long, 6>()));
}

TEST(Lifts, DerivedBlocksAreConsistent) {
    for (const auto& s : all_lifts()) {
        EXPECT_EQ(s.a_t * transpose(s.d), (identity_fixed<long long, 3>()));
        EXPECT_EQ(SymplecticLift::from_gamma(s.gamma()).gamma(), s.gamma());
    }
}

TEST(Lifts, AntiHomomorphismOnAllPairs) {
    const auto& L = all_lifts();
    long long anti = 0, hom = 0;
    for (int x = 0; x < G().size(); ++x)
        for (int y = 0; y < G().size(); ++y) {
            Mat6i gxy = L[G().mul(x, y)].gamma();
            anti += gxy == L[y].gamma() * L[x].gamma();
            hom += gxy == L[x].gamma() * L[y].gamma();
        }
    EXPECT_EQ(anti, 336LL * 336);
    // the literal order only holds on commuting pairs
    long long commuting = 0;
    for (int x = 0; x < G().size(); ++x)
        for (int y = 0; y < G().size(); ++y) commuting += G().mul(x, y) == G().mul(y, x);
    EXPECT_EQ(hom, commuting);
}

TEST(Lifts, GammaForG7) {
    const long long want[6][6] = {{-1, 0, 1, 0, -2, -1}, {-1, 1, 0, 0, -4, -2}, {0, 0, 1, -1, -3, -2},
                                  {0, 0, 0, -1, -1, 0},  {-1, 1, -1, 1, 0, 0},  {1, -1, 2, -1, -1, -1}};
    EXPECT_EQ(gamma_of(g7()).gamma(), from_rows(want));
}

TEST(Lifts, KForG7) {
    const long long want[6][6] = {{0, 0, 0, 2, 1, 0},  {0, 1, -1, -1, 1, 0}, {0, -1, 2, 1, 1, 2},
                                  {2, -1, 1, 1, 2, 1}, {1, 1, 1, 2, 4, 2},   {0, 0, 2, 1, 2, 2}};
    EXPECT_EQ(build_K(gamma_of(g7())), from_rows(want));
}

TEST(Lifts, KSymmetricForAllElements) {
    for (const auto& s : all_lifts()) EXPECT_EQ(build_K(s), transpose(build_K(s)));
}

TEST(PeriodAction, AllElements) {
    for (const auto& g : G().elems) {
        auto m = period_action_checks(g);
        EXPECT_TRUE(m.all());
    }
    EXPECT_EQ(period_action_checks(generators()[1]).det_cZd, QuadElem(-1));
    EXPECT_EQ(period_action_checks(g7()).det_cZd, QuadElem(1));
}

TEST(Parity, EvenExactlyOnW) {
    const auto& L = all_lifts();
    for (int g = 0; g < G().size(); ++g) EXPECT_EQ(parity(L[g]), G().is_in_W(g)) << g;
}

TEST(Lifts, RejectsMapsNotPreservingLambda) {
    Mat3Q m = identity_fixed<QuadElem, 3>();
    m[0][1] = QuadElem(Rational(1, 3));
    EXPECT_THROW(gamma_of(m), std::domain_error);
}
