// SPDX-License-Identifier: MIT
#ifndef FFRTF_POLY_HPP
#define FFRTF_POLY_HPP

#include "ffrtf/field.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ffrtf {

// coefficients low to high; the zero polynomial is empty
using Poly = std::vector<fe>;

inline constexpr std::uint64_t default_seed = 0x5eed5eedULL;

namespace poly {

void trim(Poly& a);
int deg(const Poly& a);
fe lc(const Poly& a);
Poly constant(fe c);
Poly x_pow(int n);
Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly neg(const Field& F, const Poly& a);
Poly scale(const Field& F, const Poly& a, fe c);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly pow(const Field& F, const Poly& a, unsigned e);
void divmod(const Field& F, const Poly& a, const Poly& b, Poly& quo, Poly& rem);
Poly mod(const Field& F, const Poly& a, const Poly& b);
Poly quo(const Field& F, const Poly& a, const Poly& b);
Poly monic(const Field& F, const Poly& a);
Poly gcd(const Field& F, Poly a, Poly b);
// inverse of a modulo m; throws if not coprime
Poly inv_mod(const Field& F, const Poly& a, const Poly& m);
Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Field& F, const Poly& a, const mpz_class& e, const Poly& m);
Poly derivative(const Field& F, const Poly& a);
fe eval(const Field& F, const Poly& a, fe x);
// x -> reversed coefficients padded to length n+1: z^n a(1/z)
Poly reverse(const Poly& a, int n);
bool is_squarefree(const Field& F, const Poly& a);
bool is_irreducible(const Field& F, const Poly& a);
// multiplicity of the irreducible p in a (a nonzero)
int valuation(const Field& F, Poly a, const Poly& p);
fe resultant(const Field& F, const Poly& a, const Poly& b);
// quadratic character of (a mod p) in the residue field F_q[x]/p, p monic irreducible
int legendre(const Field& F, const Poly& a, const Poly& p);
// a square root of a modulo the monic irreducible p; a must be a nonzero square
Poly sqrt_mod(const Field& F, const Poly& a, const Poly& p, std::uint64_t seed = default_seed);
// order used for canonical choices: by degree, then coefficients from the top
bool less(const Poly& a, const Poly& b);

std::uint64_t encode_monic(const Field& F, const Poly& a);
Poly decode_monic(const Field& F, std::uint64_t v, int n);

struct Factor {
    Poly p;
    int mult;
};

// monic irreducible factors with multiplicities; unit receives the leading coefficient
std::vector<Factor> factor(const Field& F, const Poly& a, fe* unit = nullptr, std::uint64_t seed = default_seed);

} // namespace poly

std::vector<Poly> irreducibles_of_degree(const Field& F, int n);
std::vector<Poly> irreducibles_up_to(const Field& F, int N);
// necklace count (1/n) sum_{d|n} mu(d) q^{n/d}
std::uint64_t necklace_count(std::uint64_t q, int n);

} // namespace ffrtf

#endif
