// SPDX-License-Identifier: MIT
#ifndef FFRTF_SPECTRAL_HPP
#define FFRTF_SPECTRAL_HPP

#include "ffrtf/curve.hpp"
#include "ffrtf/hecke.hpp"
#include "ffrtf/lfunc.hpp"
#include "ffrtf/quadnum.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace ffrtf {

// Hecke eigenvalues lambda(h_x) = alpha_x + beta_x with alpha_x beta_x = q_x
// for every place of degree <= depth. Places absent from the map take
// default_value. Values lie in Q(sqrt(discriminant)), discriminant 0 for Q.
struct PiTable {
    std::string name;
    int genus = 0;
    int depth = 0;
    long discriminant = 0;
    QuadNum default_value;
    std::map<int, QuadNum> eigenvalues;
};

// |omega_X| = q^{-(2g-2)}
Rational omega_norm(const CurveData& C);

QuadNum table_eigenvalue(const CurveData& C, const PiTable& t, int place);
// lambda(h_{nx}) from lambda(h_{(n+1)x}) = lambda(h_x) lambda(h_{nx}) - q_x lambda(h_{(n-1)x})
QuadNum lambda_local(const CurveData& C, const PiTable& t, int place, int n);
QuadNum lambda_pi(const CurveData& C, const PiTable& t, const HeckeElement& f);

// L(pi, s) (twisted: L(pi x eta, s)) as a polynomial of degree 4(g-1) in
// U = q^{-s-1/2}, from the Euler product truncated at that degree
LPolynomialQuad l_pi(const CurveData& C, const PiTable& t, bool twisted);

struct AdjointValue {
    QuadNum value;
    // the adjoint Euler product is expanded in q^{-s} to this degree
    int truncation_degree = 0;
};
AdjointValue ad_value_at_1(const CurveData& C, const PiTable& t);

ScriptLQuad script_l(const CurveData& C, const PiTable& t);
// (1/2) |omega_X| L(pi_F', s + 1/2) lambda(f), keys are powers of q^s
LaurentQuad j_pi(const CurveData& C, const PiTable& t, const HeckeElement& f);

// Table realising prescribed L(pi) and L(pi x eta): at each degree n <= 4(g-1)
// one split and one inert place carry the eigenvalues, all others are zero.
PiTable design_pi_table(const CurveData& C, const QPoly& target, const QPoly& target_eta, const std::string& name);

// text format: "key = value" metadata (name, genus, depth, discriminant,
// default) and records "place <label> <a> [<b>]" meaning a + b sqrt(disc)
PiTable parse_pi_table(const CurveData& C, std::istream& in);
PiTable load_pi_table(const CurveData& C, const std::string& path);
std::string format_pi_table(const CurveData& C, const PiTable& t);

} // namespace ffrtf

#endif
