// SPDX-License-Identifier: MIT
#ifndef FFRTF_POSITIVITY_HPP
#define FFRTF_POSITIVITY_HPP

#include "ffrtf/lfunc.hpp"
#include "ffrtf/quadnum.hpp"
#include "ffrtf/realball.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffrtf {

// Re(alpha) for a conjugate pair alpha, conj(alpha) of unit-circle roots
struct RootPair {
    RealBall re;
    std::optional<QuadNum> exact;
    int mult = 1;
};

// Normalized roots of a self-dual L-function: a copies of +1, b copies of -1
// and conjugate pairs. lambda(z) = (2 sinh(z/2))^a (2 cosh(z/2))^b
// prod (2 cosh z - 2 Re alpha_i) with z = s log q; the leading constant is 1.
struct RootData {
    int a = 0;
    int b = 0;
    std::vector<RootPair> pairs;
    long q = 0;
    int degree() const;
};

// Inverse roots of P scaled to the unit circle. Throws std::domain_error if
// the functional equation or the Riemann hypothesis fails.
RootData root_data(const LPolynomial& P, unsigned prec = default_precision);
// raw input with exact rational real parts; |Re alpha| <= 1 is enforced
RootData make_root_data(int a, int b, const std::vector<std::pair<Rational, int>>& pairs, long q = 0);

int vanishing_order(const RootData& rd);

enum class Sign { positive, zero, negative, inconclusive };
std::string to_string(Sign s);

struct TaylorEntry {
    int r = 0;
    // [z^r] lambda
    RealBall series;
    // r! [z^r] lambda = lambda^{(r)}(0) / (log q)^r
    RealBall t;
    std::optional<QuadNum> exact_series;
    std::optional<QuadNum> exact_t;
    // zero by the parity of lambda or below the vanishing order
    bool forced_zero = false;
    Sign sign = Sign::inconclusive;
};

struct TaylorReport {
    std::vector<TaylorEntry> entries;
    int vanishing_order = 0;
    unsigned precision = 0;
    // largest radius among the t entries
    Rational max_radius;
};

TaylorReport taylor_coeffs(const RootData& rd, int R, unsigned prec = default_precision);

enum class Status { pass, fail, inconclusive };
std::string to_string(Status s);

struct PositivityVerdict {
    Status status = Status::inconclusive;
    bool nonnegative = false;
    bool parity = false;
    bool propagation = false;
    // agreement of exact and ball values where both exist
    bool exact_consistent = true;
    std::string detail;
};
PositivityVerdict superpositivity_verdict(const TaylorReport& report);

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PositivityResult {
    RootData roots;
    TaylorReport report;
    PositivityVerdict verdict;
};
// Doubles the working precision from prec up to max_prec until the verdict is
// conclusive and every radius is below radius_bound; PrecisionError otherwise.
PositivityResult positivity_check(const LPolynomial& P, int R, unsigned prec, unsigned max_prec, const Rational& radius_bound);
PositivityResult positivity_check(const RootData& rd, int R, unsigned prec, unsigned max_prec, const Rational& radius_bound);

// "a = .., b = .., q = .., re = r1 r2 .., mult = m1 m2 .."
RootData parse_root_data(std::istream& in);

} // namespace ffrtf

#endif
