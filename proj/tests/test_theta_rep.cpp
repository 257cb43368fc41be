#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <random>

#include "thetacrystal/hilbert.hpp"
#include "thetacrystal/theta_rep.hpp"

using namespace tc;

namespace {

const Group& G() { return Group::instance(); }

template <class S>
Mat<S> identity_of(const ThetaRep<S>& R) {
    return Mat<S>::identity(R.n, R.F.zero(), R.F.one());
}

const std::vector<Word> relations = {{1, 1}, {2, 2}, {3, 3}, {1, 2, 1, 2, 1, 2, 1, 2}, {2, 3, 2, 3, 2, 3, 2, 3},
                                     {3, 1, 3, 1, 3, 1}, {1, 2, 1, 3, 1, 2, 1, 3, 1, 2, 1, 3}};

CycElem trace_of(const Mat<CycElem>& m) {
    CycElem s = m(0, 0);
    for (int i = 1; i < m.rows; ++i) s += m(i, i);
    return s;
}

Rational class_inner(const std::vector<CycElem>& chi) {
    auto cls = G().conjugacy_classes();
    CycElem s(chi[0].order());
    for (std::size_t i = 0; i < cls.size(); ++i) s += chi[i] * chi[i].conj() * Rational(cls[i].size);
    s = s * Rational(1, 336);
    EXPECT_TRUE(s.is_rational());
    return s.rational_part();
}

}  // namespace

class ExactRep : public ::testing::TestWithParam<int> {};

TEST_P(ExactRep, GeneratorRelations) {
    ThetaRep<CycElem> R(GetParam());
    for (const auto& w : relations) EXPECT_EQ(R.word_matrix(w), identity_of(R));
}

TEST_P(ExactRep, GeneratorsUnitary) {
    ThetaRep<CycElem> R(GetParam());
    for (int j = 1; j <= 3; ++j) {
        auto U = R.generator_matrix(j);
        EXPECT_EQ(matmul(U, conj_transpose(U)), identity_of(R));
    }
}

TEST_P(ExactRep, TableFormEqualsDirectSum) {
    int k = GetParam();
    Field<CycElem> F(k);
    for (int j = 0; j < 3; ++j) {
        ThetaTransform T(gamma_of(G().gens[j]), k);
        EXPECT_EQ(T.table(F), T.direct(F));
    }
}

TEST_P(ExactRep, HomomorphismOnRandomPairs) {
    ThetaRep<CycElem> R(GetParam());
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        int a = int(rng() % 336), b = int(rng() % 336);
        EXPECT_EQ(R.rho(G().mul(a, b)), matmul(R.rho(a), R.rho(b)));
    }
}

TEST_P(ExactRep, CharactersMatchTableByFullTrace) {
    int k = GetParam();
    ThetaRep<CycElem> R(k);
    auto tab = character_table_values(k);
    auto cls = G().conjugacy_classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
        CycElem tr = trace_of(R.rho(cls[c].rep));
        EXPECT_EQ(tr, tab[c]) << cls[c].name;
        EXPECT_EQ(character_exact(cls[c].rep, k), tab[c]) << cls[c].name;
    }
}

TEST_P(ExactRep, RhoIsScalarTimesUtildeOfInverseLift) {
    int k = GetParam();
    ThetaRep<CycElem> R(k);
    for (int g = 0; g < G().size(); g += (k == 2 ? 1 : 11)) {
        auto L = character_lift(R, g);
        EXPECT_EQ(L.proportionality_defect, 0.0);
        ThetaTransform T(all_lifts()[G().inv(g)], k);
        auto U = T.table(R.F);
        for (auto& x : U.a) x = x * L.scalar;
        EXPECT_EQ(R.rho(g), U) << g;
    }
}

TEST_P(ExactRep, ReynoldsProjectorRankIsInvariantDimension) {
    int k = GetParam();
    ThetaRep<CycElem> R(k);
    auto P = R.reynolds_matrix();
    EXPECT_EQ(matmul(P, P), P);
    EXPECT_EQ(Rational(rank(P)), invariant_hilbert_formula(k));
}

INSTANTIATE_TEST_SUITE_P(Levels, ExactRep, ::testing::Values(2, 4));

TEST(ExactRep, MinusIdentity) {
    ThetaRep<CycElem> R2(2), R4(4);
    EXPECT_EQ(R2.rho(G().minus_identity()), identity_of(R2));
    EXPECT_NE(R4.rho(G().minus_identity()), identity_of(R4));
}

TEST(ExactRep, RejectsOddDegree) {
    EXPECT_THROW(ThetaRep<CycElem>(3), std::invalid_argument);
    EXPECT_THROW(character_table_values(5), std::invalid_argument);
}

TEST(CharacterTable, NormsArePositiveIntegers) {
    for (int k : {2, 4, 6, 8, 10, 14}) {
        Rational n = class_inner(character_table_values(k));
        EXPECT_TRUE(n.is_integer()) << k;
        EXPECT_GT(n.sign(), 0);
        EXPECT_EQ(character_table_values(k)[0], CycElem(character_table_values(k)[0].order(), Rational(k * k * k)));
    }
}

TEST(CharacterTable, G7ValueForDegreeTwoIsLegendreSymbol) {
    auto t = character_table_values(2);
    EXPECT_EQ(t[8], CycElem(t[8].order(), Rational(1)));
    EXPECT_EQ(legendre7(2), 1);
    EXPECT_EQ(legendre7(3), -1);
}

TEST(NumericRep, DoublePrecisionCharactersMatchTable) {
    for (int k : {6, 8}) {
        ThetaRep<cd> R(k);
        auto tab = character_table_values(k);
        auto cls = G().conjugacy_classes();
        for (std::size_t c = 0; c < cls.size(); ++c) {
            auto L = character_lift(R, cls[c].rep);
            EXPECT_LT(std::abs(L.value - to_cd(tab[c])), 1e-8) << k << " " << cls[c].name;
            EXPECT_LT(L.proportionality_defect, 1e-9);
        }
    }
}

TEST(NumericRep, RelationsOnRandomVectors) {
    ThetaRep<cd> R(6);
    std::mt19937_64 rng(5);
    std::vector<cd> x(R.n);
    for (auto& v : x) v = cd(double(rng() % 1000) / 1000, double(rng() % 1000) / 1000);
    for (const auto& w : relations) {
        auto y = R.apply_word(w, x);
        double d = 0;
        for (int i = 0; i < R.n; ++i) d = std::max(d, std::abs(y[i] - x[i]));
        EXPECT_LT(d, 1e-10);
    }
}

TEST(GaussSums, ClosedFormAgainstDoubleOracle) {
    for (long long r = 4; r <= 64; r += 4)
        for (long long q = 1; q < r; q += 2) {
            if (std::gcd(q, r) != 1) continue;
            std::complex<double> s = 0;
            for (long long n = 0; n < r; ++n) s += std::polar(1.0, 2 * M_PI * double(q * n * n % r) / double(r));
            auto g = gauss_sum(q, r);
            EXPECT_LT(std::abs(s - to_cd(g.direct)), 1e-9);
            EXPECT_LT(std::abs(s - g.closed.to_cd()), 1e-9) << q << "/" << r;
            EXPECT_TRUE(g.square_identity && g.sign_match) << q << "/" << r;
        }
    EXPECT_THROW(gauss_sum(2, 8), std::invalid_argument);
    EXPECT_THROW(gauss_sum(3, 6), std::invalid_argument);
    EXPECT_THROW(gauss_sum(3, 12), std::invalid_argument);
}

TEST(GaussSums, SigmaPathMatchesTable) {
    for (int k : {2, 4, 6, 8, 14}) {
        auto s = sigma_via_gauss(k);
        EXPECT_TRUE(s.agree) << k;
        EXPECT_EQ(s.chi, character_table_values(k)[8]) << k;
    }
}

TEST(GaussSums, SigmaDirectMatchesDiagonalForDegreeTwo) {
    auto s = sigma_via_gauss(2);
    EXPECT_EQ(s.direct, s.diagonal);
}
