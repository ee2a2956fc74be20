// SPDX-License-Identifier: MIT
#ifndef FFRTF_HECKE_HPP
#define FFRTF_HECKE_HPP

#include "ffrtf/curve.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ffrtf {

// Linear combination of the basis functions h_D, D effective; h_0 is the unit.
struct HeckeElement {
    std::map<Divisor, Rational> terms;

    static HeckeElement unit();
    static HeckeElement basis(const Divisor& D);
    void add_term(const Divisor& D, const Rational& c);
    bool is_zero() const { return terms.empty(); }
    // largest degree of a divisor in the support
    long support_degree(const CurveData& C) const;
    bool operator==(const HeckeElement&) const = default;
};

// Group algebra Q[Div(X)]; the divisor E stands for the monomial t^E.
struct DivAlgebraElement {
    std::map<Divisor, Rational> terms;

    void add_term(const Divisor& D, const Rational& c);
    bool operator==(const DivAlgebraElement&) const = default;
};

// Group algebra Q[Pic_X(k)].
struct PicAlgebraElement {
    std::map<PicClass, Rational> terms;

    void add_term(const PicClass& c, const Rational& v);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const PicAlgebraElement&) const = default;
};

HeckeElement operator+(const HeckeElement& a, const HeckeElement& b);
HeckeElement operator-(const HeckeElement& a, const HeckeElement& b);
HeckeElement operator*(const Rational& c, const HeckeElement& a);
DivAlgebraElement operator*(const DivAlgebraElement& a, const DivAlgebraElement& b);
DivAlgebraElement operator+(const DivAlgebraElement& a, const DivAlgebraElement& b);

// q_x = q^{deg x}
Integer place_norm(const CurveData& C, int place);

// Sat(h_{nx}) = sum_{i=0}^{n} q_x^i t_x^{n-2i}, with t_x -> [x]
DivAlgebraElement satake(const CurveData& C, const HeckeElement& f);
// fixed by every t_x -> q_x t_x^{-1}
bool is_satake_invariant(const CurveData& C, const DivAlgebraElement& e);
// inverse of satake on invariant elements; throws std::domain_error otherwise
HeckeElement from_satake(const CurveData& C, DivAlgebraElement e);
HeckeElement hecke_mul(const CurveData& C, const HeckeElement& f, const HeckeElement& g);

PicAlgebraElement pic_mul(const CurveData& C, const PicAlgebraElement& a, const PicAlgebraElement& b);
// 1_L -> q^{deg L} 1_{L^{-1}}
PicAlgebraElement iota_pic(const CurveData& C, const PicAlgebraElement& e);
PicAlgebraElement pic_unit(const CurveData& C);
PicAlgebraElement a_eis(const CurveData& C, const HeckeElement& f);

// basis of ker(a_Eis) inside span{h_D : D effective, deg D <= N}, ordered by
// support size; coefficients are coprime integers
std::vector<HeckeElement> eis_kernel_basis(const CurveData& C, int N);

// One record per line: "coefficient label:mult label:mult ..." with place
// labels as printed by place_label; a bare coefficient is a multiple of h_0.
HeckeElement parse_hecke_element(const CurveData& C, std::istream& in, int max_place_degree = 6);
std::string format_hecke_element(const CurveData& C, const HeckeElement& f);
// "label:mult label:mult ..."; an empty string is the zero divisor
Divisor parse_divisor(const CurveData& C, const std::string& s, int max_place_degree = 6);
std::string to_string(const CurveData& C, const HeckeElement& f);
std::string to_string(const CurveData& C, const DivAlgebraElement& e);
std::string to_string(const PicAlgebraElement& e);

} // namespace ffrtf

#endif
