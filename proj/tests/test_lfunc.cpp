// SPDX-License-Identifier: MIT
#include "ffrtf/lfunc.hpp"
#include "ffrtf/realball.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ffrtf;
using namespace ffrtf::testing;

namespace {

std::vector<std::string> all_fixtures()
{
    auto v = hyperelliptic_fixtures();
    for (const auto& s : synthetic_fixtures()) v.push_back(s);
    return v;
}

Rational value_at_one(const LPolynomial& P)
{
    Rational s = 0;
    for (const auto& c : P.coeffs) s += c;
    return s;
}

LPolynomial lpoly(std::vector<Rational> c, long q, int w = 1)
{
    LPolynomial P;
    P.coeffs = std::move(c);
    P.q = q;
    P.weight = w;
    return P;
}

} // namespace

TEST(ZetaNumerator, NormalizationAndJacobianOrder)
{
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        LPolynomial P = zeta_numerator(C);
        EXPECT_EQ(P.coeffs[0], 1);
        EXPECT_EQ(P.degree(), 2 * C.genus());
        LPolynomial Pp = cover_zeta_numerator(C);
        EXPECT_EQ(Pp.degree(), 2 * C.cover_genus());
        if (C.backend() == Backend::hyperelliptic) {
            EXPECT_EQ(value_at_one(P), Rational(C.jacobian_order())) << name;
            EXPECT_EQ(value_at_one(Pp), Rational(cover_jacobian_order(C))) << name;
        }
    }
}

TEST(ZetaNumerator, CoefficientsMatchAffinePointCounts)
{
    for (const auto& name : hyperelliptic_fixtures()) {
        CurveData C = fixture(name);
        std::vector<long> N, Np;
        for (int m = 1; m <= 2 * C.genus(); ++m) N.push_back(brute_force_count(C.field(), C.f(), static_cast<unsigned>(m)));
        for (int m = 1; m <= 2 * C.cover_genus(); ++m) Np.push_back(brute_force_cover_count(C.field(), C.f1(), C.f2(), static_cast<unsigned>(m)));
        EXPECT_EQ(zeta_numerator(C).coeffs, numerator_from_point_counts(C.q(), N, 2 * C.genus())) << name;
        EXPECT_EQ(cover_zeta_numerator(C).coeffs, numerator_from_point_counts(C.q(), Np, 2 * C.cover_genus())) << name;
    }
}

TEST(LEta, QuotientShapeAndJacobianRatio)
{
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        LPolynomial L = l_eta_quotient(C);
        EXPECT_EQ(L.degree(), 2 * C.genus() - 2) << name;
        EXPECT_EQ(L.coeffs[0], 1);
        for (const auto& c : L.coeffs) EXPECT_EQ(c.get_den(), 1);
        if (C.backend() == Backend::hyperelliptic)
            {
            Rational ratio(cover_jacobian_order(C), C.jacobian_order());
            ratio.canonicalize();
            EXPECT_EQ(value_at_one(L), ratio) << name;
        }
    }
}

TEST(LEta, DirichletSeriesEqualsQuotient)
{
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        const int N = 2 * C.genus() + 4;
        LPolynomial D = l_eta_dirichlet(C, N);
        EXPECT_EQ(D.coeffs, l_eta_quotient(C).coeffs) << name;
        auto sums = eta_partial_sums(C, N);
        EXPECT_EQ(sums[0], 1);
        for (int n = 2 * C.genus() - 1; n <= N; ++n) EXPECT_EQ(sums[static_cast<std::size_t>(n)], 0) << name << " n=" << n;
        EXPECT_THROW(l_eta_dirichlet(C, 2 * C.genus() - 2), std::invalid_argument);
    }
}

TEST(LEta, PartialSumsAgreeWithExplicitEnumeration)
{
    CurveData C = fixture("f3b");
    auto sums = eta_partial_sums(C, 5);
    for (int n = 0; n <= 5; ++n) {
        long s = 0;
        for (const auto& E : effective_divisors(C, n)) s += C.eta(E);
        EXPECT_EQ(Integer(s), sums[static_cast<std::size_t>(n)]);
    }
}

TEST(LEta, ZetaTimesLEtaIsCoverZeta)
{
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        EXPECT_EQ(qpoly::mul(zeta_numerator(C).coeffs, l_eta_dirichlet(C, 2 * C.genus() - 1).coeffs), cover_zeta_numerator(C).coeffs);
    }
}

TEST(FunctionalEquation, FixturesAndControls)
{
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        for (const LPolynomial& P : {zeta_numerator(C), cover_zeta_numerator(C), l_eta_quotient(C)}) {
            FunctionalEquation fe = functional_equation(P);
            EXPECT_TRUE(fe.holds) << name;
            EXPECT_TRUE(fe.epsilon == 1 || fe.epsilon == -1);
        }
        LPolynomial bad = l_eta_quotient(C);
        bad.coeffs.back() += 1;
        EXPECT_FALSE(functional_equation(bad).holds);
    }
    FunctionalEquation one = functional_equation(lpoly({Rational(1)}, 3));
    EXPECT_TRUE(one.holds);
    EXPECT_EQ(one.epsilon, 1);
    // a sign -1 example: 1 - q^{1/2} T twice removed, q a square
    FunctionalEquation neg = functional_equation(lpoly({Rational(1), Rational(-3)}, 9));
    EXPECT_TRUE(neg.holds);
    EXPECT_EQ(neg.epsilon, -1);
}

TEST(RiemannHypothesis, QuadraticOracleAndFixtures)
{
    for (long q : {3, 5, 7, 9, 11}) {
        // a^2 <= 4q by the quadratic formula
        for (long a = -8; a <= 8; ++a) EXPECT_EQ(rh_check(lpoly({Rational(1), Rational(a), Rational(q)}, q)), a * a <= 4 * q);
    }
    EXPECT_FALSE(rh_check(lpoly({Rational(1), Rational(-3)}, 2)));
    EXPECT_THROW(rh_check(lpoly({Rational(1)}, 3)), std::invalid_argument);
    for (const auto& name : all_fixtures()) {
        CurveData C = fixture(name);
        EXPECT_TRUE(rh_check(zeta_numerator(C)));
        EXPECT_TRUE(rh_check(cover_zeta_numerator(C)));
        EXPECT_TRUE(rh_check(l_eta_quotient(C)));
    }
    // real inverse roots off the circle: (1 - T)(1 - 9T) over q = 9, weight 2 pairs
    EXPECT_FALSE(rh_check(lpoly({Rational(1), Rational(-10), Rational(9)}, 3, 2)));
    EXPECT_TRUE(rh_check(lpoly({Rational(1), Rational(-6), Rational(9)}, 3, 2)));
}

TEST(NormalizedTaylor, BasicValues)
{
    LPolynomial L = l_eta_quotient(fixture("f3a"));
    EXPECT_EQ(normalized_taylor(L, 0), value_at_one(L));
    EXPECT_EQ(normalized_taylor(lpoly({Rational(1), Rational(-2), Rational(1)}, 3), 1), 0);
    EXPECT_EQ(normalized_taylor(L, 2), Rational(3 * 1 + 3 * 4));
}

TEST(NormalizedTaylor, FiniteDifferenceOracle)
{
    for (const auto& name : {"f3a", "f5b", "syn3g3"}) {
        LPolynomial L = l_eta_quotient(fixture(name));
        const unsigned prec = 256;
        const RealBall logq = RealBall::log(L.q, prec);
        auto value = [&](const Rational& s) {
            RealBall acc(0L, prec);
            for (int m = 0; m <= L.degree(); ++m) acc = acc + RealBall(L.coeffs[static_cast<std::size_t>(m)], prec) * (RealBall(Rational(-m) * s, prec) * logq).exp();
            return acc;
        };
        const Rational h(1, 1000000);
        const RealBall plus = value(h), minus = value(-h), zero = value(Rational(0));
        const RealBall d1 = (plus - minus) / RealBall(2 * h, prec) / logq;
        const RealBall d2 = (plus - zero - zero + minus) / RealBall(h * h, prec) / (logq * logq);
        EXPECT_LT(abs(d1.mid() - normalized_taylor(L, 1)), Rational(1, 1000)) << name;
        EXPECT_LT(abs(d2.mid() - normalized_taylor(L, 2)), Rational(1, 1000)) << name;
    }
}

TEST(ScriptL, AssemblyShapeAndSymmetry)
{
    // g = 1: degree-0 inputs give a constant
    ScriptL one = assemble_script_l(lpoly({Rational(1)}, 3), lpoly({Rational(1)}, 3), Rational(2), 1);
    EXPECT_EQ(one.series.coeffs().size(), 1u);
    EXPECT_EQ(one.series.coeff(0), Rational(1, 2));
    // self-dual degree-4 inputs in U = q^{-s-1/2}, inverse roots of modulus q
    LPolynomial A = lpoly({Rational(1), Rational(1), Rational(2), Rational(9), Rational(81)}, 3, 2);
    LPolynomial B = lpoly({Rational(1), Rational(-2), Rational(4), Rational(-18), Rational(81)}, 3, 2);
    ScriptL ab = assemble_script_l(A, B, Rational(7, 3), 2);
    ScriptL ba = assemble_script_l(B, A, Rational(7, 3), 2);
    EXPECT_EQ(ab.series, ba.series);
    EXPECT_TRUE(symmetry_check(ab.series));
    for (int r = 1; r <= 9; r += 2) EXPECT_EQ(normalized_derivative(ab.series, r), 0);
    LPolynomial bad = A;
    bad.coeffs[1] = 5;
    EXPECT_THROW(assemble_script_l(bad, B, Rational(1), 2), std::domain_error);
    EXPECT_THROW(assemble_script_l(A, B, Rational(0), 2), std::invalid_argument);
}

TEST(LPolynomialFile, Parse)
{
    std::istringstream in("q = 5\nweight = 1\ncoeffs = 1 -2 5\n");
    LPolynomial P = parse_lpolynomial(in);
    EXPECT_EQ(P.q, 5);
    EXPECT_EQ(P.coeffs, (std::vector<Rational>{1, -2, 5}));
    std::istringstream bad("q = 5\ncoeffs = 2 1\n");
    EXPECT_THROW(parse_lpolynomial(bad), std::invalid_argument);
}
