#include <gtest/gtest.h>

#include "thetacrystal/hilbert.hpp"

using namespace tc;

namespace {

// number of monomials of weighted degree d, by brute force
long long count_monomials(const std::vector<int>& w, int d) {
    std::function<long long(std::size_t, int)> rec = [&](std::size_t i, int left) -> long long {
        if (i == w.size()) return left == 0;
        long long s = 0;
        for (int e = 0; e * w[i] <= left; ++e) s += rec(i + 1, left - e * w[i]);
        return s;
    };
    return rec(0, d);
}

}  // namespace

TEST(Veronese, InitialValues) {
    std::vector<long long> want{1, 2, 4, 6, 10, 14, 20, 27, 36, 46, 58};
    for (int p = 0; p <= 10; ++p) EXPECT_EQ(veronese_hilbert(p), want[p]) << p;
}

TEST(Veronese, EvenPartOfWeightedPolynomialRingOracle) {
    // S^(2) of C[y0..y3] with weights 1, 2, 4, 7
    for (int p = 0; p <= 42; ++p) EXPECT_EQ(veronese_hilbert(p), count_monomials({1, 2, 4, 7}, 2 * p)) << p;
}

TEST(Veronese, ClosedSeriesIdentity) { EXPECT_TRUE(veronese_identity_holds()); }

TEST(Veronese, RelationShiftOracle) {
    for (int p = 0; p <= 42; ++p) {
        long long hr = count_monomials({1, 1, 2, 4, 7}, p), hr8 = p >= 8 ? count_monomials({1, 1, 2, 4, 7}, p - 8) : 0;
        EXPECT_EQ(veronese_hilbert(p), hr - hr8) << p;
    }
}

TEST(FreeSeries, MatchesMonomialCounts) {
    for (const auto& w : std::vector<std::vector<int>>{{1, 1, 2, 4}, {1, 1, 2, 4, 7}, {2, 3}}) {
        auto s = free_weighted_series(w, 30);
        for (int d = 0; d < 30; ++d) {
            EXPECT_EQ(s[d], Rational(count_monomials(w, d)));
            EXPECT_EQ((long long)weighted_monomials(w, d).size(), count_monomials(w, d));
        }
    }
    EXPECT_EQ(weighted_monomials({1, 1, 2, 4}, 8).size(), 35u);
    EXPECT_EQ(weighted_monomials({1, 1, 2, 4, 7}, 8).size(), 37u);
}

TEST(FreeSeries, PrimedSequence) {
    auto s = free_weighted_series({1, 1, 2, 4}, 11);
    std::vector<long long> want{1, 2, 4, 6, 10, 14, 20, 26, 35, 44, 56};
    for (int p = 0; p <= 10; ++p) EXPECT_EQ(s[p], Rational(want[p]));
}

TEST(InvariantHilbert, FormulaEqualsTableAverage) {
    for (int k = 2; k <= 60; k += 2) EXPECT_EQ(invariant_hilbert_formula(k), invariant_hilbert_table(k)) << k;
}

TEST(InvariantHilbert, FormulaEqualsVeronese) {
    for (int p = 0; p <= 42; ++p) EXPECT_EQ(invariant_hilbert_formula(2 * p), Rational(veronese_hilbert(p))) << p;
}

TEST(InvariantHilbert, TracedAverageAgrees) {
    for (int k = 2; k <= 16; k += 2) {
        auto t = invariant_hilbert_traces(k);
        EXPECT_LT(t.distance, 1e-9) << k;
        EXPECT_EQ(Rational(t.value), invariant_hilbert_formula(k)) << k;
    }
}

TEST(InvariantHilbert, IntegralNonnegativeNondecreasing) {
    Rational prev(0);
    for (int k = 0; k <= 200; k += 2) {
        Rational h = invariant_hilbert_formula(k);
        EXPECT_TRUE(h.is_integer());
        EXPECT_GE(h, prev);
        prev = h;
    }
    EXPECT_THROW(invariant_hilbert_formula(3), std::invalid_argument);
}

TEST(QuasiPolynomial, FitRecoversKnownShape) {
    std::vector<Rational> v;
    for (int k = 0; k < 40; ++k) v.push_back(Rational(k * k * k, 48) + Rational(k % 4 == 1 ? -3 : 0, 16) * Rational(k) + Rational(k % 2));
    auto q = fit_quasipolynomial(v, 3, 4);
    for (int k = 0; k < 80; ++k)
        EXPECT_EQ(q.eval(k), Rational(k * k * k, 48) + Rational(k % 4 == 1 ? -3 : 0, 16) * Rational(k) + Rational(k % 2));
    EXPECT_EQ(fit_quasipolynomial(v, 3, 4, Rational(1, 48)), q);
}

TEST(QuasiPolynomial, RejectsInconsistentData) {
    std::vector<long long> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 11};
    EXPECT_THROW(fit_quasipolynomial(v, 1, 1), std::domain_error);
    EXPECT_THROW(fit_quasipolynomial(std::vector<long long>{1, 2}, 3, 1), std::invalid_argument);
}

TEST(QuasiPolynomial, InvariantHilbertPeriodFourteen) {
    std::vector<Rational> v;
    for (int p = 0; p < 84; ++p) v.push_back(invariant_hilbert_formula(2 * p));
    auto q = fit_quasipolynomial(v, 3, 14);
    for (int r = 0; r < 14; ++r) {
        EXPECT_EQ(q.coeffs[r][3], Rational(8, 336));
        EXPECT_EQ(q.coeffs[r][2], Rational(84, 336));
        EXPECT_EQ(q.coeffs[r][1], Rational(280, 336));
    }
}
