// SPDX-License-Identifier: MIT
#include "ffrtf/hecke.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ffrtf;
using namespace ffrtf::testing;

namespace {

HeckeElement h(const Divisor& D) { return HeckeElement::basis(D); }
HeckeElement h(int x, int n) { return HeckeElement::basis(n ? Divisor{{x, n}} : Divisor{}); }

DivAlgebraElement monomial(const Divisor& E, const Rational& c)
{
    DivAlgebraElement e;
    e.add_term(E, c);
    return e;
}

// effective divisor whose total degree stays within max_degree
Divisor random_effective(Gen& gen, const CurveData& C, int max_degree)
{
    const auto ids = C.places_up_to(max_degree);
    Divisor D;
    long budget = gen.uniform(0, max_degree);
    for (int tries = 0; tries < 4 && budget > 0; ++tries) {
        const int x = ids[static_cast<std::size_t>(gen.uniform(0, static_cast<long>(ids.size()) - 1))];
        const int dx = C.place(x).degree;
        if (dx > budget) continue;
        const int n = static_cast<int>(gen.uniform(1, budget / dx));
        D[x] += n;
        budget -= static_cast<long>(n) * dx;
    }
    return D;
}

HeckeElement random_element(Gen& gen, const CurveData& C, int max_degree)
{
    HeckeElement f;
    const long terms = gen.uniform(1, 3);
    for (long i = 0; i < terms; ++i) f.add_term(random_effective(gen, C, max_degree), gen.rational(20));
    return f;
}

} // namespace

TEST(Satake, BasisExamples)
{
    const CurveData C = fixture("f3a");
    for (int x : C.places_up_to(2)) {
        const Rational qx(place_norm(C, x));
        const DivAlgebraElement s1 = monomial({{x, 1}}, 1) + monomial({{x, -1}}, qx);
        EXPECT_EQ(satake(C, h(x, 1)), s1);
        const DivAlgebraElement s2 = monomial({{x, 2}}, 1) + monomial({}, qx) + monomial({{x, -2}}, qx * qx);
        EXPECT_EQ(satake(C, h(x, 2)), s2);
    }
    EXPECT_EQ(satake(C, HeckeElement::unit()), monomial({}, 1));
}

TEST(Satake, InverseRecoversTheElementAndRejectsNonInvariant)
{
    const CurveData C = fixture("f5a");
    Gen gen(11);
    for (int i = 0; i < 30; ++i) {
        const HeckeElement f = random_element(gen, C, 4);
        const DivAlgebraElement s = satake(C, f);
        EXPECT_TRUE(is_satake_invariant(C, s));
        EXPECT_EQ(from_satake(C, s), f);
    }
    const int x = C.places_of_degree(1).front();
    const DivAlgebraElement bad = monomial({{x, 1}}, 1);
    EXPECT_FALSE(is_satake_invariant(C, bad));
    EXPECT_THROW(from_satake(C, bad), std::domain_error);
}

TEST(HeckeMul, SquareOfAPlace)
{
    const CurveData C = fixture("f3a");
    for (int x : C.places_up_to(2)) {
        const Rational qx(place_norm(C, x));
        EXPECT_EQ(hecke_mul(C, h(x, 1), h(x, 1)), h(x, 2) + qx * HeckeElement::unit());
    }
}

TEST(HeckeMul, RecursionAtPlacesOfDegreeAtMostThree)
{
    for (const std::string name : {"f3a", "f5b"}) {
        const CurveData C = fixture(name);
        for (int x : C.places_up_to(3)) {
            const Rational qx(place_norm(C, x));
            for (int n = 1; n <= 8; ++n) EXPECT_EQ(hecke_mul(C, h(x, 1), h(x, n)), h(x, n + 1) + qx * h(x, n - 1)) << name << " n = " << n;
        }
    }
}

TEST(HeckeMul, DisjointSupportsTensor)
{
    const CurveData C = fixture("f3b");
    const auto ids = C.places_up_to(2);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const int x = ids[i], y = ids[i + 1];
        EXPECT_EQ(hecke_mul(C, h(x, 1), h(y, 1)), h({{x, 1}, {y, 1}}));
        EXPECT_EQ(hecke_mul(C, h(x, 2), h(y, 3)), h({{x, 2}, {y, 3}}));
    }
}

TEST(HeckeMul, SatakeHomomorphismOnRandomPairs)
{
    for (const std::string name : {"f3a", "syn7g2"}) {
        const CurveData C = fixture(name);
        Gen gen(name == "f3a" ? 1 : 2);
        for (int i = 0; i < 200; ++i) {
            const HeckeElement f = random_element(gen, C, 6), g = random_element(gen, C, 6);
            ASSERT_EQ(satake(C, hecke_mul(C, f, g)), satake(C, f) * satake(C, g)) << to_string(C, f) << " , " << to_string(C, g);
        }
    }
}

TEST(HeckeMul, CommutativeAssociativeUnital)
{
    const CurveData C = fixture("f5a");
    Gen gen(3);
    for (int i = 0; i < 40; ++i) {
        const HeckeElement f = random_element(gen, C, 3), g = random_element(gen, C, 3), k = random_element(gen, C, 3);
        EXPECT_EQ(hecke_mul(C, f, g), hecke_mul(C, g, f));
        EXPECT_EQ(hecke_mul(C, hecke_mul(C, f, g), k), hecke_mul(C, f, hecke_mul(C, g, k)));
        EXPECT_EQ(hecke_mul(C, f, HeckeElement::unit()), f);
        EXPECT_EQ(hecke_mul(C, f, g + k), hecke_mul(C, f, g) + hecke_mul(C, f, k));
    }
}

TEST(PicAlgebra, IotaIsAnInvolutionFixingTheUnit)
{
    const CurveData C = fixture("f3a");
    EXPECT_EQ(iota_pic(C, pic_unit(C)), pic_unit(C));
    Gen gen(4);
    for (int i = 0; i < 50; ++i) {
        PicAlgebraElement e;
        for (int k = 0; k < 3; ++k) e.add_term(divisor_class(C, gen.divisor(C, 2, 3, 2)), gen.rational(50));
        EXPECT_EQ(iota_pic(C, iota_pic(C, e)), e);
    }
    for (int x : C.places_up_to(2)) {
        PicAlgebraElement cx, expect;
        cx.add_term(divisor_class(C, {{x, 1}}), 1);
        expect.add_term(divisor_class(C, {{x, -1}}), Rational(place_norm(C, x)));
        EXPECT_EQ(iota_pic(C, cx), expect);
    }
}

TEST(EisensteinMap, BasisValues)
{
    const CurveData C = fixture("f5b");
    EXPECT_EQ(a_eis(C, HeckeElement::unit()), pic_unit(C));
    for (int x : C.places_up_to(2)) {
        PicAlgebraElement expect;
        expect.add_term(divisor_class(C, {{x, 1}}), 1);
        expect.add_term(divisor_class(C, {{x, -1}}), Rational(place_norm(C, x)));
        EXPECT_EQ(a_eis(C, h(x, 1)), expect);
        EXPECT_EQ(iota_pic(C, expect), expect);
    }
}

TEST(EisensteinMap, IotaInvariantAndMultiplicative)
{
    for (const std::string name : {"f3b", "syn3g3"}) {
        const CurveData C = fixture(name);
        Gen gen(5);
        for (int i = 0; i < 60; ++i) {
            const HeckeElement f = random_element(gen, C, 4), g = random_element(gen, C, 4);
            const PicAlgebraElement af = a_eis(C, f);
            EXPECT_EQ(iota_pic(C, af), af);
            EXPECT_EQ(a_eis(C, hecke_mul(C, f, g)), pic_mul(C, af, a_eis(C, g)));
        }
    }
}

TEST(EisensteinKernel, NonzeroAnnihilatedAndAnIdeal)
{
    const CurveData C = fixture("f3a");
    const auto basis = eis_kernel_basis(C, 2);
    ASSERT_FALSE(basis.empty());
    for (const HeckeElement& f : basis) {
        EXPECT_FALSE(f.is_zero());
        EXPECT_TRUE(a_eis(C, f).is_zero());
        for (int x : C.places_up_to(2)) EXPECT_TRUE(a_eis(C, hecke_mul(C, h(x, 1), f)).is_zero());
    }
    const auto wider = eis_kernel_basis(C, 3);
    EXPECT_GT(wider.size(), basis.size());
    for (const HeckeElement& f : wider) EXPECT_LE(f.support_degree(C), 3);
}

TEST(EisensteinKernel, DimensionCountOracle)
{
    // dim ker >= #{h_D : deg D <= N} - #{classes of degree in [-N, N]}
    const CurveData C = fixture("f3a");
    const int N = 3;
    long domain = 0;
    for (int n = 0; n <= N; ++n) domain += static_cast<long>(effective_divisors(C, n).size());
    const long image_bound = (2 * N + 1) * C.jacobian_order().get_si();
    const auto basis = eis_kernel_basis(C, N);
    EXPECT_GE(static_cast<long>(basis.size()), domain - image_bound);
}

TEST(HeckeFile, RoundTrip)
{
    const CurveData C = fixture("f5a");
    Gen gen(6);
    for (int i = 0; i < 20; ++i) {
        const HeckeElement f = random_element(gen, C, 4);
        std::istringstream in(format_hecke_element(C, f));
        EXPECT_EQ(parse_hecke_element(C, in), f);
    }
    std::istringstream bad("1 oo+:-1\n");
    EXPECT_THROW(parse_hecke_element(C, bad), std::invalid_argument);
    std::istringstream unknown("1 nowhere:1\n");
    EXPECT_THROW(parse_hecke_element(C, unknown), std::invalid_argument);
}
