// SPDX-License-Identifier: MIT
#include "ffrtf/linalg.hpp"
#include "ffrtf/poly.hpp"
#include "ffrtf/qpoly.hpp"
#include "ffrtf/quadnum.hpp"
#include "ffrtf/realball.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ffrtf;
using ffrtf::testing::Gen;

namespace {

Poly P(std::initializer_list<int> c, const Field& F)
{
    Poly p;
    for (int v : c) p.push_back(F.from_int(v));
    poly::trim(p);
    return p;
}

std::set<Poly> factor_set(const Field& F, const Poly& a)
{
    std::set<Poly> s;
    for (const auto& fac : poly::factor(F, a)) {
        EXPECT_EQ(fac.mult, 1);
        s.insert(fac.p);
    }
    return s;
}

} // namespace

TEST(Field, RejectsEvenCharacteristicAndLargeFields)
{
    EXPECT_THROW(Field(2, 1), std::invalid_argument);
    EXPECT_THROW(Field(4, 1), std::invalid_argument);
    EXPECT_THROW(Field(3, 6), std::invalid_argument);
    EXPECT_NO_THROW(Field(3, 2));
}

TEST(Field, AxiomsOnRandomTriples)
{
    Gen gen;
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {7u, 1u}, {5u, 2u}}) {
        Field F(p, k);
        for (int t = 0; t < 500; ++t) {
            fe a = gen.element(F), b = gen.element(F), c = gen.element(F);
            EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            EXPECT_EQ(F.add(a, F.neg(a)), 0);
            if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1);
            fe r;
            if (F.sqrt(F.mul(a, a), r)) EXPECT_EQ(F.mul(r, r), F.mul(a, a));
            EXPECT_EQ(F.chi(F.mul(a, b)), F.chi(a) * F.chi(b));
        }
    }
}

TEST(PolyFactor, FermatRootsOverF3)
{
    Field F(3, 1);
    auto s = factor_set(F, P({0, -1, 0, 1}, F));
    EXPECT_EQ(s, (std::set<Poly>{P({0, 1}, F), P({-1, 1}, F), P({1, 1}, F)}));
}

TEST(PolyFactor, DifferenceOfSquaresOverF3)
{
    Field F(3, 1);
    auto s = factor_set(F, P({-1, 0, 1}, F));
    EXPECT_EQ(s, (std::set<Poly>{P({-1, 1}, F), P({1, 1}, F)}));
}

TEST(PolyFactor, XSquaredPlusOneIrreducibleOverF3)
{
    Field F(3, 1);
    const Poly a = P({1, 0, 1}, F);
    // exhaustive root search
    for (fe x = 0; x < 3; ++x) EXPECT_NE(poly::eval(F, a, x), 0);
    auto fac = poly::factor(F, a);
    ASSERT_EQ(fac.size(), 1u);
    EXPECT_EQ(fac[0].p, a);
}

TEST(PolyFactor, RejectsZero)
{
    Field F(3, 1);
    EXPECT_THROW(poly::factor(F, Poly{}), std::domain_error);
}

TEST(PolyFactor, RoundTripOnRandomPolynomials)
{
    Gen gen(17);
    for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
        Field F(p, k);
        for (int t = 0; t < 1000; ++t) {
            Poly a = gen.poly(F, static_cast<int>(gen.uniform(1, 12)));
            if (gen.coin()) a = poly::mul(F, a, gen.poly(F, static_cast<int>(gen.uniform(1, 3))));
            fe unit = 0;
            auto fac = poly::factor(F, a, &unit);
            Poly prod{unit};
            for (const auto& f : fac) {
                EXPECT_EQ(poly::lc(f.p), 1);
                EXPECT_TRUE(poly::is_irreducible(F, f.p));
                prod = poly::mul(F, prod, poly::pow(F, f.p, static_cast<unsigned>(f.mult)));
            }
            EXPECT_EQ(prod, a);
        }
    }
}

TEST(Irreducibles, SmallCounts)
{
    Field F3(3, 1), F5(5, 1);
    EXPECT_EQ(irreducibles_up_to(F3, 1).size(), 3u);
    EXPECT_EQ(irreducibles_of_degree(F3, 2).size(), 3u);
    EXPECT_EQ(irreducibles_up_to(F5, 1).size(), 5u);
}

TEST(Irreducibles, MatchNecklaceCountsAndAreDistinct)
{
    for (auto [p, k, N] : {std::tuple{3u, 1u, 8}, {5u, 1u, 5}, {7u, 1u, 4}, {9u, 0u, 3}}) {
        Field F = k ? Field(p, k) : Field(3, 2);
        for (int n = 1; n <= N; ++n) {
            auto v = irreducibles_of_degree(F, n);
            std::set<Poly> s(v.begin(), v.end());
            EXPECT_EQ(s.size(), v.size());
            EXPECT_EQ(v.size(), necklace_count(F.q(), n)) << "q=" << F.q() << " n=" << n;
            for (const auto& f : v) {
                ASSERT_EQ(poly::deg(f), n);
                EXPECT_EQ(poly::lc(f), 1);
            }
        }
    }
    // the Rabin path agrees with the sieve
    Field F(3, 1);
    for (const auto& f : irreducibles_of_degree(F, 6)) EXPECT_TRUE(poly::is_irreducible(F, f));
}

TEST(Laurent, RingExamples)
{
    LaurentQ qs(3), qms(3), one(3, Rational(1));
    qs.add_term(1, 1);
    qms.add_term(-1, 1);
    EXPECT_EQ(laurent_mul(qs, qms), one);
    LaurentQ s = laurent_add(qs, qms);
    LaurentQ sq = laurent_mul(s, s);
    LaurentQ expect(3);
    expect.add_term(2, 1);
    expect.add_term(0, 2);
    expect.add_term(-2, 1);
    EXPECT_EQ(sq, expect);
    EXPECT_EQ(laurent_mul(sq, one), sq);
    EXPECT_THROW(laurent_add(qs, LaurentQ(5, Rational(1))), std::invalid_argument);
}

TEST(Laurent, NormalizedDerivativeExamples)
{
    LaurentQ a(3);
    a.add_term(2, 1);
    a.add_term(-2, 1);
    EXPECT_EQ(normalized_derivative(a, 2), 8);
    EXPECT_EQ(normalized_derivative(a, 1), 0);
    EXPECT_EQ(normalized_derivative(a, 0), coefficient_sum(a));
    EXPECT_THROW(normalized_derivative(a, -1), std::invalid_argument);
}

TEST(Laurent, SymmetryExamples)
{
    LaurentQ a(3), b(3), c(3, Rational(7));
    a.add_term(1, 1);
    a.add_term(-1, 1);
    b.add_term(1, 1);
    EXPECT_TRUE(symmetry_check(a));
    EXPECT_FALSE(symmetry_check(b));
    EXPECT_TRUE(symmetry_check(c));
}

namespace {

LaurentQ random_laurent(Gen& gen, int span = 6, int terms = 5)
{
    LaurentQ a(5);
    for (int i = 0; i < terms; ++i) a.add_term(gen.uniform(-span, span), gen.rational(50));
    return a;
}

} // namespace

TEST(Laurent, LeibnizRuleOnRandomPairs)
{
    Gen gen(3);
    for (int t = 0; t < 300; ++t) {
        LaurentQ a = random_laurent(gen), b = random_laurent(gen);
        EXPECT_EQ(normalized_derivative(a * b, 1),
                  normalized_derivative(a, 1) * coefficient_sum(b) + coefficient_sum(a) * normalized_derivative(b, 1));
    }
}

TEST(Laurent, SymmetricInputsHaveVanishingOddDerivatives)
{
    Gen gen(4);
    for (int t = 0; t < 300; ++t) {
        LaurentQ a = random_laurent(gen);
        LaurentQ s = a + a.reflect();
        ASSERT_TRUE(symmetry_check(s));
        for (int r = 1; r <= 9; r += 2) EXPECT_EQ(normalized_derivative(s, r), 0);
    }
}

TEST(Laurent, RingLawsOnRandomTriples)
{
    Gen gen(5);
    for (int t = 0; t < 200; ++t) {
        LaurentQ a = random_laurent(gen), b = random_laurent(gen), c = random_laurent(gen);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(QuadNum, ExactSignAndArithmetic)
{
    QuadNum s = quad_sqrt(5);
    EXPECT_EQ(s * s, QuadNum(5));
    EXPECT_EQ((QuadNum(2) - s).sign(), -1);
    EXPECT_EQ((QuadNum(Rational(9, 4)) - s).sign(), 1);
    EXPECT_EQ(quad_sqrt(12), QuadNum(Rational(0), Rational(2), 3));
    EXPECT_EQ(quad_sqrt(9), QuadNum(3));
    QuadNum x(Rational(1, 3), Rational(2), 7);
    EXPECT_EQ(x / x, QuadNum(1));
}

TEST(RealBall, ContainmentOnRandomRationals)
{
    Gen gen(6);
    for (int t = 0; t < 1000; ++t) {
        Rational a = gen.rational(100000), b = gen.rational(100000);
        unsigned prec = static_cast<unsigned>(gen.uniform(20, 200));
        RealBall A(a, prec), B(b, prec);
        EXPECT_TRUE((A + B).contains(a + b));
        EXPECT_TRUE((A - B).contains(a - b));
        EXPECT_TRUE((A * B).contains(a * b));
        if (b != 0) EXPECT_TRUE((A / B).contains(a / b));
        EXPECT_GE((A * B).rad(), 0);
    }
}

TEST(RealBall, TranscendentalsBracketKnownValues)
{
    RealBall two(2L);
    RealBall r = two.sqrt();
    EXPECT_TRUE(r.lower() * r.lower() <= 2 && r.upper() * r.upper() >= 2);
    // e = 2.718281828459045235360287...
    RealBall e = RealBall(1L).exp();
    EXPECT_GT(e.lower(), Rational("2718281828459045235/1000000000000000000"));
    EXPECT_LT(e.upper(), Rational("2718281828459045236/1000000000000000000"));
    EXPECT_LT(e.rad(), Rational(1, 1000000000));
    // exp(log 3) = 3
    RealBall l3 = RealBall::log(3);
    EXPECT_TRUE(l3.exp().contains(Rational(3)));
    // log 2 = 0.693147180559945309417...
    RealBall l2 = RealBall::log(2);
    EXPECT_TRUE(l2.lower() < Rational("693147180559945310/1000000000000000000"));
    EXPECT_TRUE(l2.upper() > Rational("693147180559945309/1000000000000000000"));
}

TEST(Linalg, NullspaceDimensionAndKernelProperty)
{
    Gen gen(8);
    Field F(5, 1);
    for (int t = 0; t < 100; ++t) {
        std::size_t rows = static_cast<std::size_t>(gen.uniform(1, 6)), cols = static_cast<std::size_t>(gen.uniform(1, 8));
        FqMatrix A(rows, std::vector<fe>(cols));
        for (auto& r : A)
            for (auto& v : r) v = gen.element(F);
        auto K = nullspace(F, A, cols);
        EXPECT_EQ(K.size() + rank(F, A, cols), cols);
        for (const auto& v : K)
            for (const auto& r : A) {
                fe s = 0;
                for (std::size_t j = 0; j < cols; ++j) s = F.add(s, F.mul(r[j], v[j]));
                EXPECT_EQ(s, 0);
            }
    }
}

TEST(Linalg, IntegerKernelIsPrimitiveAndExact)
{
    Gen gen(9);
    for (int t = 0; t < 100; ++t) {
        std::size_t rows = static_cast<std::size_t>(gen.uniform(1, 4)), cols = static_cast<std::size_t>(gen.uniform(2, 6));
        IntMatrix A(rows, std::vector<Integer>(cols));
        for (auto& r : A)
            for (auto& v : r) v = gen.uniform(-5, 5);
        for (const auto& v : integer_kernel(A, cols)) {
            Integer g = 0;
            for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(x)).get_mpz_t());
            EXPECT_EQ(g, 1);
            for (const auto& r : A) {
                Integer s = 0;
                for (std::size_t j = 0; j < cols; ++j) s += r[j] * v[j];
                EXPECT_EQ(s, 0);
            }
        }
    }
}

TEST(Weil, QuadraticFormulaOracle)
{
    // 1 + aT + qT^2 satisfies RH iff a^2 <= 4q
    for (long q : {2, 3, 5, 7, 9}) {
        for (long a = -7; a <= 7; ++a) {
            WeilAnalysis w = analyze_weil(QPoly{Rational(1), Rational(a), Rational(q)}, q, 1);
            EXPECT_TRUE(w.functional_equation);
            EXPECT_EQ(w.riemann_hypothesis, a * a <= 4 * q) << "q=" << q << " a=" << a;
        }
    }
    WeilAnalysis bad = analyze_weil(QPoly{Rational(1), Rational(-3)}, 2, 1);
    EXPECT_FALSE(bad.functional_equation && bad.riemann_hypothesis);
}

TEST(QPoly, RealRootIsolation)
{
    // (x - 1)(x + 2)(x^2 - 2)
    QPoly p = qpoly::mul(qpoly::mul(QPoly{Rational(-1), Rational(1)}, QPoly{Rational(2), Rational(1)}),
                         QPoly{Rational(-2), Rational(0), Rational(1)});
    auto roots = qpoly::real_roots(p, 40);
    ASSERT_EQ(roots.size(), 4u);
    EXPECT_TRUE(roots[0].first <= -2 && roots[0].second >= -2);
    EXPECT_TRUE(roots[3].first * roots[3].first <= 2 && roots[3].second * roots[3].second >= 2);
}
