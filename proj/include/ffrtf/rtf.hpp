// SPDX-License-Identifier: MIT
#ifndef FFRTF_RTF_HPP
#define FFRTF_RTF_HPP

#include "ffrtf/curve.hpp"
#include "ffrtf/hecke.hpp"
#include "ffrtf/laurent.hpp"

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ffrtf {

// REGULAR: u = 1 - 1/a with a not in {0, 1}; ZERO: a = 1 (u = 0);
// INFINITY: a = 0 (u = infinity)
enum class OrbitKind { regular, zero, infinity };

struct OrbitalInput {
    Divisor D;
    Divisor Za;
    Divisor Zb;
    OrbitKind kind = OrbitKind::regular;
    // a = section / den when the input comes from a section of O(D)
    std::optional<FFElement> section;
    Poly den;
};

// (d11, d12, d21, d22) with d11 + d22 = d12 + d21 = d
struct SigmaIndex {
    int d11 = 0, d12 = 0, d21 = 0, d22 = 0;
    auto operator<=>(const SigmaIndex&) const = default;
};

enum class Method { moduli, lattice, both };
Method parse_method(const std::string& s);
std::string to_string(Method m);

// D = m(oo+ + oo-), a in the span of rr_basis(C, m)
OrbitalInput orbital_input(const CurveData& C, int m, const FFElement& a);
// D effective, a = g / den with den the denominator of C.riemann_roch(D)
OrbitalInput orbital_input(const CurveData& C, const Divisor& D, const Poly& den, const FFElement& g);
// D = 0: a is a constant of k
OrbitalInput orbital_input_constant(const CurveData& C, fe a);

// every section of L(D), as numerators over L.den; the visitor returns false to stop
void for_each_section(const CurveData& C, const RRSpace& L, const std::function<bool(const FFElement&)>& visit);

// u in k - {0,1}; u in {0, oo}; u outside the image of inv_D
enum class UnitCase { constant, zero, infinity, nonconstant };
LaurentQ j_unit(const CurveData& C, UnitCase u);
// the unit-function orbital integral of a D = 0 input
LaurentQ j_unit(const CurveData& C, const OrbitalInput& in);

// L(eta, k s) as a Laurent polynomial in q^s
LaurentQ l_eta_laurent(const CurveData& C, long k);
// sum over 0 <= E <= D of eta(E)
Integer eta_subdivisor_sum(const CurveData& C, const Divisor& D);

enum class NilBranch { plus, minus };
// closed forms q^{-ds} L(eta,-2s) S(D) and q^{ds} L(eta,2s) S(D)
LaurentQ j_nilpotent(const CurveData& C, const Divisor& D, NilBranch b);
// the same sums over triples of effective divisors with the half-degree cutoffs
LaurentQ j_nilpotent_moduli(const CurveData& C, const Divisor& D, NilBranch b);

// pairs of splittings D11 + D22 = Za, D12 + D21 = Zb
LaurentQ j_rs_moduli(const CurveData& C, const OrbitalInput& in);
// the same per Sigma_d stratum
std::map<SigmaIndex, Integer> j_rs_strata(const CurveData& C, const OrbitalInput& in);
// quadruples (0, E2, E1', E2') closing the lattice diagram of [[1,u],[1,1]]
LaurentQ j_rs_lattice(const CurveData& C, const OrbitalInput& in);
// value of one orbit: regular orbits by the chosen method (both: checked
// equal, std::logic_error otherwise), degenerate orbits by the closed forms
LaurentQ j_orbit(const CurveData& C, const OrbitalInput& in, Method m = Method::moduli);

struct OrbitRow {
    OrbitalInput input;
    LaurentQ value;
};
// all orbits u = inv_D(a), a in L(D), for the basis function h_D
std::vector<OrbitRow> orbit_table(const CurveData& C, const Divisor& D, Method m = Method::moduli);
// number of sections a enumerated for h_D (the finiteness certificate)
Integer section_count(const CurveData& C, const Divisor& D);

LaurentQ j_global(const CurveData& C, const Divisor& D, Method m = Method::moduli);
LaurentQ j_global(const CurveData& C, const HeckeElement& f, Method m = Method::moduli);

// (log q)^{-r} J_r(f)
Rational i_r(const CurveData& C, const HeckeElement& f, int r, Method m = Method::moduli);
// per-orbit weighted count with weights (d - 2 d12)^r; requires
// deg D >= max(2g' - 1, 2g)
Rational i_r_direct(const CurveData& C, const OrbitalInput& in, int r);

Rational hd_self_intersection(const CurveData& C, int r);

std::string to_string(OrbitKind k);

// orbital fixture lines: "m <n>" then "section <c_0> ... <c_k>" with
// coefficients on rr_basis(C, n), or "triple <D> | <Za> | <Zb>" with divisors
// written as for parse_divisor; '#' starts a comment
std::vector<OrbitalInput> parse_orbital_fixture(const CurveData& C, std::istream& in);

} // namespace ffrtf

#endif
