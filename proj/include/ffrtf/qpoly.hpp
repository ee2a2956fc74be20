// SPDX-License-Identifier: MIT
#ifndef FFRTF_QPOLY_HPP
#define FFRTF_QPOLY_HPP

#include "ffrtf/quadnum.hpp"

#include <utility>
#include <vector>

namespace ffrtf {

// rational polynomial, coefficients low to high; zero is empty
using QPoly = std::vector<Rational>;

namespace qpoly {

void trim(QPoly& a);
int deg(const QPoly& a);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);
void divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem);
QPoly monic(const QPoly& a);
QPoly gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& a);
Rational eval(const QPoly& a, const Rational& x);
QuadNum eval(const QPoly& a, const QuadNum& x);
// Yun decomposition: squarefree monic parts with multiplicities
std::vector<std::pair<QPoly, int>> squarefree(const QPoly& a);
std::vector<QPoly> sturm(const QPoly& a);
int sign_changes(const std::vector<QPoly>& seq, const QuadNum& x);
// isolating intervals [lo, hi] of the real roots of a squarefree polynomial,
// refined to width below 2^-bits
std::vector<std::pair<Rational, Rational>> real_roots(const QPoly& a, unsigned bits);

} // namespace qpoly

// Structure of an L-polynomial P(T) = prod (1 - beta_i T) whose inverse roots
// should have modulus s = q^{w/2}.
struct WeilAnalysis {
    bool functional_equation = false;
    int epsilon = 0;
    int a = 0; // multiplicity of beta = +s
    int b = 0; // multiplicity of beta = -s
    // monic h with prod over pairs (1 - c_i T + q^w T^2) = T^m h(T^{-1} + q^w T)
    QPoly trace_poly;
    bool riemann_hypothesis = false;
    QuadNum s; // q^{w/2}
};

WeilAnalysis analyze_weil(const QPoly& P, long q, int w);

} // namespace ffrtf

#endif
