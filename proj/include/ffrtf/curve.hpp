// SPDX-License-Identifier: MIT
#ifndef FFRTF_CURVE_HPP
#define FFRTF_CURVE_HPP

#include "ffrtf/field.hpp"
#include "ffrtf/laurent.hpp"
#include "ffrtf/poly.hpp"
#include "ffrtf/qpoly.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ffrtf {

enum class Backend { hyperelliptic, synthetic };

// How a hyperelliptic place sits over the x-line.
enum class XLine { infinity, split, inert, branch, none };

// HYPERELLIPTIC: poly is the monic irreducible p(x) below the place (empty at
// infinity) and branch is +1/-1 for the two places over a split p(x) or over
// infinity, 0 otherwise. SYNTHETIC: poly = {degree, index}, branch = eta.
struct PlaceKey {
    std::vector<fe> poly;
    int branch = 0;
    auto operator<=>(const PlaceKey&) const = default;
};

struct ClosedPoint {
    int id = -1;
    PlaceKey key;
    int degree = 0;
    int eta_sign = 1;
    XLine xline = XLine::none;
};

// place id -> multiplicity; zero multiplicities are never stored
using Divisor = std::map<int, int>;

// c(x) + d(x) y on y^2 = f(x)
struct FFElement {
    Poly c, d;
    bool is_zero() const { return c.empty() && d.empty(); }
    bool operator==(const FFElement&) const = default;
};

struct PicClass {
    long degree = 0;
    int jac = 0; // index into the Jacobian table of the curve
    auto operator<=>(const PicClass&) const = default;
};

struct CurveSpec {
    Backend backend = Backend::hyperelliptic;
    FieldSpec field;
    std::string name;
    // HYPERELLIPTIC, element codes low to high
    std::vector<long> f, f1;
    // SYNTHETIC, index n - 1 holds degree-n counts
    int genus = 0;
    std::vector<long> split, inert;
    // randomized factorization and square roots
    std::uint64_t seed = default_seed;
};

// Riemann-Roch space L(D) as { g / den : g in span(basis) }.
struct RRSpace {
    Poly den;
    std::vector<FFElement> basis;
    std::size_t dimension() const { return basis.size(); }
};

class CurveData {
public:
    // validates; see curve_from_spec
    explicit CurveData(const CurveSpec& spec);

    Backend backend() const;
    const Field& field() const;
    unsigned q() const;
    int genus() const;
    int cover_genus() const { return 2 * genus() - 1; }
    const std::string& name() const;
    const CurveSpec& spec() const;

    // HYPERELLIPTIC model data
    const Poly& f() const;
    const Poly& f1() const;
    const Poly& f2() const;

    // SYNTHETIC data range
    int max_degree() const;

    const ClosedPoint& place(int id) const;
    int place_id(const PlaceKey& key) const;
    std::vector<int> places_of_degree(int n) const;
    std::vector<int> places_up_to(int N) const;
    int inf_plus() const;
    int inf_minus() const;
    // places over the monic irreducible p(x)
    std::vector<int> places_over(const Poly& p) const;

    long degree(const Divisor& D) const;
    int eta(const Divisor& D) const;
    int eta(int place) const { return this->place(place).eta_sign; }
    // lexicographic order on (key, multiplicity) lists, used for canonical choices
    bool divisor_less(const Divisor& a, const Divisor& b) const;

    // HYPERELLIPTIC function field
    FFElement mul(const FFElement& a, const FFElement& b) const;
    FFElement add(const FFElement& a, const FFElement& b) const;
    FFElement sub(const FFElement& a, const FFElement& b) const;
    Poly norm(const FFElement& h) const;
    int valuation(int place, const FFElement& h) const;
    Divisor principal_divisor(const FFElement& h) const;
    Divisor principal_divisor(const FFElement& num, const Poly& den) const;
    std::vector<FFElement> rr_basis(int m) const;
    RRSpace riemann_roch(const Divisor& D) const;

    // class group
    Integer jacobian_order() const;
    PicClass divisor_class(const Divisor& D) const;
    PicClass add(const PicClass& a, const PicClass& b) const;
    PicClass negate(const PicClass& a) const;
    int jac_identity() const;
    // eta factors through Pic; value on a class
    int eta(const PicClass& c) const;
    PicClass canonical_class() const;
    // effective divisor of degree g canonically representing a Jacobian element
    Divisor jacobian_representative(int jac) const;

    // (1 - T)(1 - qT) Z_X(T) and the same for X', from place counts
    QPoly zeta_numerator() const;
    QPoly cover_zeta_numerator() const;

    struct Impl;

private:
    explicit CurveData(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    friend CurveData auxiliary_curve(const Field& F, const Poly& f);
    std::shared_ptr<Impl> impl_;
};

CurveData curve_from_spec(const CurveSpec& spec);
std::vector<ClosedPoint> places_up_to(const CurveData& C, int N);
int eta(const CurveData& C, const Divisor& D);
Divisor principal_divisor(const CurveData& C, const FFElement& h);
std::vector<FFElement> rr_basis(const CurveData& C, int m);
PicClass divisor_class(const CurveData& C, const Divisor& D);
PicClass canonical_class(const CurveData& C);
// effective representative of the canonical class, div(dx/y) + (g-1)(oo+ + oo-)
Divisor canonical_divisor(const CurveData& C);

// Hyperelliptic model y^2 = f of any genus >= 0 with square leading
// coefficient; used for the quotient curves z^2 = f_i.
CurveData auxiliary_curve(const Field& F, const Poly& f);

// Stream of effective divisors of degree n; the visitor returns false to stop.
void for_each_effective(const CurveData& C, int n, const std::function<bool(const Divisor&)>& visit);
std::vector<Divisor> effective_divisors(const CurveData& C, int n);
// every E with 0 <= E <= D
void for_each_subdivisor(const Divisor& D, const std::function<void(const Divisor&)>& visit);

Divisor divisor_add(const Divisor& a, const Divisor& b);
Divisor divisor_sub(const Divisor& a, const Divisor& b);
Divisor divisor_scale(const Divisor& a, int k);
bool is_effective(const Divisor& D);
// a <= b pointwise
bool divisor_leq(const Divisor& a, const Divisor& b);

// Zeta numerator of a curve from its place counts a_1..a_{2g}.
QPoly zeta_numerator_from_counts(long q, int g, const std::vector<Integer>& counts);

// #Jac of X' via Jac_{X'} ~ Jac_X x Jac_{C1} x Jac_{C2} up to isogeny
Integer cover_jacobian_order(const CurveData& C);

std::string to_string(const CurveData& C, const Divisor& D);
// stable textual name of a place: oo+, (x^2+1), (x+2)-, s3.1, i2.0
std::string place_label(const CurveData& C, int id);
// place with the given label among places of degree <= max_degree
int find_place(const CurveData& C, const std::string& label, int max_degree);
std::string to_string(const Field& F, const Poly& p);

} // namespace ffrtf

#endif
