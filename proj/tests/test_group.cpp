#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "thetacrystal/group.hpp"

using namespace tc;

namespace {

const Group& G() { return Group::instance(); }

Mat3Q mat_pow(const Mat3Q& m, int e) {
    Mat3Q r = identity_fixed<QuadElem, 3>();
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
}

}  // namespace

TEST(Roots, FortyTwoRootsClosedUnderNegation) {
    auto roots = build_roots();
    EXPECT_EQ(roots.size(), 42u);
    std::set<Vec3Q> R(roots.begin(), roots.end());
    EXPECT_EQ(R.size(), 42u);
    for (const auto& r : roots) EXPECT_TRUE(R.count(neg(r)));
    EXPECT_TRUE(R.count(phi1()));
    EXPECT_TRUE(R.count(phi2()));
    EXPECT_TRUE(R.count(phi3()));
}

TEST(Roots, ReflectionsAreInvolutionsFixingAHyperplane) {
    for (const auto& r : build_roots()) {
        Mat3Q s = reflection(r);
        EXPECT_EQ(s * s, (identity_fixed<QuadElem, 3>()));
        EXPECT_EQ(det(s), QuadElem(-1));
        Vec3Q sr = s * r;
        EXPECT_EQ(sr, neg(r));
    }
}

TEST(Group, ClosureOracleGives336) {
    // naive closure under right multiplication by the generators
    std::set<Mat3Q> seen{identity_fixed<QuadElem, 3>()};
    std::vector<Mat3Q> frontier(seen.begin(), seen.end());
    auto gens = generators();
    while (!frontier.empty()) {
        std::vector<Mat3Q> next;
        for (const auto& m : frontier)
            for (const auto& g : gens)
                if (seen.insert(m * g).second) next.push_back(m * g);
        frontier = std::move(next);
    }
    EXPECT_EQ(seen.size(), 336u);
    EXPECT_EQ(G().size(), 336);
    for (const auto& m : seen) EXPECT_GE(G().find(m), 0);
}

TEST(Group, WordsEvaluateToElements) {
    for (int g = 0; g < G().size(); ++g) EXPECT_EQ(evaluate_word(G().words[g]), G().elems[g]);
}

TEST(Group, SubgroupOrders) {
    int h = 0, w = 0;
    for (int g = 0; g < G().size(); ++g) {
        h += G().is_in_H(g);
        w += G().is_in_W(g);
    }
    EXPECT_EQ(h, 168);
    EXPECT_EQ(w, 48);
    EXPECT_EQ(G().elems[G().minus_identity()], minus(identity_fixed<QuadElem, 3>()));
}

TEST(Group, MultiplicationTableProperty) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        int a = int(rng() % 336), b = int(rng() % 336), c = int(rng() % 336);
        EXPECT_EQ(G().mul(G().mul(a, b), c), G().mul(a, G().mul(b, c)));
        EXPECT_EQ(G().elems[G().mul(a, b)], G().elems[a] * G().elems[b]);
        EXPECT_EQ(G().mul(a, G().inv(a)), G().identity());
        EXPECT_EQ(G().neg(G().neg(a)), a);
    }
}

TEST(Group, UnitaryForHermitianForm) {
    for (const auto& g : G().elems) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Vec3Q ei{}, ej{};
                ei.fill(QuadElem(0));
                ej.fill(QuadElem(0));
                ei[i] = QuadElem(1);
                ej[j] = QuadElem(1);
                EXPECT_EQ(hermitian(g * ei, g * ej), hermitian(ei, ej));
            }
    }
}

TEST(Group, DefiningRelations) {
    auto rel = verify_relations();
    EXPECT_EQ(rel.size(), 7u);
    for (const auto& r : rel) EXPECT_TRUE(r.holds) << r.name;
}

TEST(Group, G7HasOrderSevenAndExpectedEntries) {
    auto g = generators();
    Mat3Q g7 = minus(g[0] * g[1] * g[2]);
    EXPECT_EQ(mat_pow(g7, 7), (identity_fixed<QuadElem, 3>()));
    EXPECT_NE(g7, (identity_fixed<QuadElem, 3>()));
    QuadElem h = QuadElem(Rational(1, 2));
    EXPECT_EQ(g7[0][0], -h);
    EXPECT_EQ(g7[0][2], h * QuadElem::alpha());
    EXPECT_EQ(g7[1][2], QuadElem(0));
}

TEST(Group, ClassSizesOracle) {
    // independent class sizes from the centraliser orders
    std::vector<long long> expect{1, 1, 21, 21, 56, 56, 42, 42, 24, 24, 24, 24};
    auto cls = G().conjugacy_classes();
    ASSERT_EQ(cls.size(), 12u);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        int cent = 0;
        for (int x = 0; x < G().size(); ++x) cent += G().mul(x, cls[i].rep) == G().mul(cls[i].rep, x);
        EXPECT_EQ(336 / cent, expect[i]) << cls[i].name;
        EXPECT_EQ(cls[i].size, expect[i]) << cls[i].name;
    }
    std::set<int> reps;
    for (const auto& c : cls)
        for (int x : G().class_of(c.rep)) EXPECT_TRUE(reps.insert(x).second);
    EXPECT_EQ(reps.size(), 336u);
}

TEST(Group, ClassFunctionsAreConjugationInvariant) {
    auto cls = G().all_classes();
    EXPECT_EQ(cls.size(), 12u);
    for (const auto& c : cls)
        for (int x : c) {
            EXPECT_EQ(G().order(x), G().order(c.front()));
            EXPECT_EQ(det(G().elems[x]), det(G().elems[c.front()]));
        }
}

TEST(Group, CosetsOfW) {
    EXPECT_EQ(coset_union(G()).size(), 336u);
    auto roots = build_roots();
    for (const auto& g : G().elems) EXPECT_TRUE(permutes_roots(g, roots));
}

TEST(Group, TwentyOneReflectionsFromRoots) {
    std::set<Mat3Q> refl;
    for (const auto& r : build_roots()) refl.insert(reflection(r));
    EXPECT_EQ(refl.size(), 21u);
    for (const auto& s : refl) EXPECT_GE(G().find(s), 0);
}
