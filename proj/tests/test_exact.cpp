#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "thetacrystal/approx.hpp"
#include "thetacrystal/exact.hpp"
#include "thetacrystal/matrix.hpp"

using namespace tc;

namespace {

Rational random_rational(std::mt19937_64& g) {
    long long n = (long long)(g() % 2001) - 1000, d = (long long)(g() % 999) + 1;
    return Rational(n, d);
}

CycElem random_cyc(long long n, std::mt19937_64& g) {
    CycElem s(n);
    for (long long j = 0; j < n; ++j)
        if (g() % 3 == 0) s += CycElem::zeta(n, j) * random_rational(g);
    return s;
}

long long mobius(long long n) {
    int m = 1;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

}  // namespace

TEST(Rational, NormalisesAndCompares) {
    EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
    EXPECT_EQ(Rational(0, 5), Rational(0));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(7, 2).floor(), Rational(3));
    EXPECT_EQ(Rational(-7, 2).floor(), Rational(-4));
    EXPECT_EQ(Rational::parse("3.5"), Rational(7, 2));
    EXPECT_EQ(Rational::parse("-0.25"), Rational(-1, 4));
    EXPECT_EQ(Rational::parse("22/7"), Rational(22, 7));
    EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
}

TEST(Rational, OverflowPromotesToBig) {
    Rational a(1LL << 62, 3), b = a * a * a;
    EXPECT_FALSE(b.is_small());
    EXPECT_EQ(b / a / a, a);
    EXPECT_EQ((b - b).sign(), 0);
}

TEST(Rational, FieldAxiomsProperty) {
    std::mt19937_64 g(1);
    for (int t = 0; t < 500; ++t) {
        Rational a = random_rational(g), b = random_rational(g), c = random_rational(g);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    }
}

TEST(Jacobi, MatchesEulerCriterion) {
    for (long long p : {3, 5, 7, 11, 13, 101})
        for (long long a = 0; a < p; ++a) {
            long long e = 1;
            for (long long i = 0; i < (p - 1) / 2; ++i) e = e * a % p;
            int euler = e == 0 ? 0 : e == 1 ? 1 : -1;
            EXPECT_EQ(jacobi(a, p), euler) << a << "/" << p;
        }
    EXPECT_EQ(jacobi(2, 15), jacobi(2, 3) * jacobi(2, 5));
}

TEST(QuadElem, AlphaSatisfiesItsPolynomial) {
    QuadElem a = QuadElem::alpha();
    EXPECT_EQ(a * a - a + QuadElem(2), QuadElem(0));
    EXPECT_EQ(a + QuadElem::alpha_bar(), QuadElem(1));
    EXPECT_EQ(a * QuadElem::alpha_bar(), QuadElem(2));
    EXPECT_EQ(a.norm(), Rational(2));
    EXPECT_EQ(a.conj(), QuadElem::alpha_bar());
}

TEST(QuadElem, DivisionProperty) {
    std::mt19937_64 g(2);
    for (int t = 0; t < 300; ++t) {
        QuadElem x{random_rational(g), random_rational(g)}, y{random_rational(g), random_rational(g)};
        if (y.is_zero()) continue;
        EXPECT_EQ(x / y * y, x);
        EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
        EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
    }
}

TEST(CycElem, RootsOfUnity) {
    for (long long n : {1, 2, 3, 4, 7, 8, 12, 16, 28, 56}) {
        CycElem z = CycElem::zeta(n), p(n, Rational(1));
        for (long long i = 0; i < n; ++i) p *= z;
        EXPECT_EQ(p, CycElem(n, Rational(1))) << n;
        // sum of primitive n-th roots is mu(n)
        CycElem s(n);
        for (long long j = 1; j <= n; ++j)
            if (std::gcd(j, n) == 1) s += CycElem::zeta(n, j);
        EXPECT_EQ(s, CycElem(n, Rational(mobius(n)))) << n;
    }
}

TEST(CycElem, SqrtMinusSevenFromGaussSum) {
    CycElem s(7);
    for (long long j = 1; j < 7; ++j) s += CycElem::zeta(7, j * j);
    s += CycElem(7, Rational(1));
    EXPECT_EQ(s * s, CycElem(7, Rational(-7)));
}

TEST(CycElem, FieldProperty) {
    std::mt19937_64 g(3);
    for (long long n : {7, 8, 16, 28}) {
        for (int t = 0; t < 40; ++t) {
            CycElem x = random_cyc(n, g), y = random_cyc(n, g);
            EXPECT_EQ(x * y, y * x);
            EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
            if (!y.is_zero()) EXPECT_EQ(x * y.inv() * y, x);
            EXPECT_EQ(x.promote(2 * n), x.promote(2 * n));
            EXPECT_EQ(x.galois(1), x);
        }
    }
}

TEST(CycElem, HistogramMatchesSum) {
    std::vector<long long> h{3, 0, 2, 5, 1, 0, 0, 4};
    CycElem direct(8);
    for (int j = 0; j < 8; ++j) direct += CycElem::zeta(8, j) * Rational(h[j]);
    EXPECT_EQ(CycElem::from_histogram(h, 8), direct);
}

TEST(ApproxComplex, EnclosesExactValuesProperty) {
    std::mt19937_64 g(4);
    for (long long n : {7, 12, 16, 56}) {
        for (int t = 0; t < 30; ++t) {
            CycElem x = random_cyc(n, g), y = random_cyc(n, g);
            ApproxComplex ex = embed(x), ey = embed(y);
            EXPECT_TRUE((ex * ey).overlaps(embed(x * y)));
            EXPECT_TRUE((ex + ey).overlaps(embed(x + y)));
            EXPECT_TRUE(ex.conj().overlaps(embed(x.conj())));
        }
    }
}

TEST(ApproxComplex, DefaultPrecisionIsWorkingPrecision) {
    BigFloat s = sqrt(BigFloat(3));
    BigFloat r = s * s - 3;
    EXPECT_LT(std::fabs(r.convert_to<double>()), std::ldexp(1.0, -int(working_bits()) + 4));
}

TEST(ApproxComplex, PrecisionScopeRestores) {
    unsigned before = working_bits();
    {
        PrecisionScope s(400);
        EXPECT_EQ(working_bits(), 400u);
    }
    EXPECT_EQ(working_bits(), before);
    EXPECT_EQ(digits_to_bits(64), 217u);
}

TEST(ApproxComplex, RootOfUnityOnCircle) {
    for (long long n : {5, 7, 12, 112})
        for (long long j = 0; j < n; ++j) {
            ApproxComplex z = ApproxComplex::root_of_unity(j, n);
            ApproxComplex m = z * z.conj();
            EXPECT_TRUE(m.overlaps(ApproxComplex(1)));
        }
}

TEST(Matrix, RankAndSolve) {
    Mat<Rational> A(3, 3, Rational(0));
    A(0, 0) = 2, A(0, 1) = 1, A(1, 1) = 3, A(2, 0) = 4, A(2, 1) = 2;
    EXPECT_EQ(rank(A), 2);
    A(2, 2) = 1;
    EXPECT_EQ(rank(A), 3);
    Mat<Rational> b(3, 1, Rational(1));
    auto x = solve(A, b);
    ASSERT_TRUE(x);
    Mat<Rational> r = matmul(A, *x);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(r(i, 0), Rational(1));
}
