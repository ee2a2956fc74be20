// SPDX-License-Identifier: MIT
#ifndef FFRTF_LFUNC_HPP
#define FFRTF_LFUNC_HPP

#include "ffrtf/curve.hpp"
#include "ffrtf/qpoly.hpp"
#include "ffrtf/quadnum.hpp"

#include <string>
#include <vector>

namespace ffrtf {

// Polynomial in a variable T (q^{-s} unless stated otherwise) whose inverse
// roots have modulus q^{weight/2}.
template <class R>
struct BasicLPolynomial {
    std::vector<R> coeffs;
    long q = 0;
    int weight = 1;
    std::string variable = "T";

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    R coeff(int n) const { return n >= 0 && n <= degree() ? coeffs[static_cast<std::size_t>(n)] : R(0); }
};

using LPolynomial = BasicLPolynomial<Rational>;
using LPolynomialQuad = BasicLPolynomial<QuadNum>;

LPolynomial zeta_numerator(const CurveData& C);
LPolynomial cover_zeta_numerator(const CurveData& C);
// P_{X'} / P_X
LPolynomial l_eta_quotient(const CurveData& C);
// sum over effective E of eta(E) T^{deg E}, enumerated to degree N >= 2g - 1;
// partial sums above 2g - 2 must vanish
LPolynomial l_eta_dirichlet(const CurveData& C, int N);
// the raw partial sums sum_{deg E = n} eta(E) for 0 <= n <= N
std::vector<Integer> eta_partial_sums(const CurveData& C, int N);

struct FunctionalEquation {
    bool holds = false;
    int epsilon = 0;
};

// P(T) = eps (q^{w/2} T)^{deg P} P(1 / (q^w T))
FunctionalEquation functional_equation(const LPolynomial& P);
// every inverse root has modulus q^{w/2}; decided exactly, tol is accepted
// for interface compatibility and ignored
bool rh_check(const LPolynomial& P, double tol = 0.0);

// (log q)^{-r} (d/ds)^r L(eta, s) at s = 0 = sum_m a_m (-m)^r
Rational normalized_taylor(const LPolynomial& L, int r);

// Laurent polynomial in w = q^{s - 1/2}: the term c w^n is stored at key n.
template <class R>
struct BasicScriptL {
    Laurent<R> series;
    int genus = 0;
    R ad1;
};

using ScriptL = BasicScriptL<Rational>;
using ScriptLQuad = BasicScriptL<QuadNum>;

// q^{4(g-1)(s-1/2)} L(pi, s) L(pi x eta, s) / ad1 with L(pi, s) given in the
// variable U = q^{-s-1/2}
ScriptL assemble_script_l(const LPolynomial& Lpi, const LPolynomial& Lpi_eta, const Rational& ad1, int g);
ScriptLQuad assemble_script_l(const LPolynomialQuad& Lpi, const LPolynomialQuad& Lpi_eta, const QuadNum& ad1, int g);

LPolynomial parse_lpolynomial(std::istream& in);
LPolynomial load_lpolynomial(const std::string& path);

std::string to_string(const LPolynomial& P);

} // namespace ffrtf

#endif
