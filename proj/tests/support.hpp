// SPDX-License-Identifier: MIT
// Shared fixtures, generators and brute-force oracles for the test suite.
#ifndef FFRTF_TESTS_SUPPORT_HPP
#define FFRTF_TESTS_SUPPORT_HPP

#include "ffrtf/curve.hpp"
#include "ffrtf/io.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ffrtf::testing {

inline CurveData fixture(const std::string& name)
{
    return curve_from_spec(load_curve_spec(data_dir() + "/curves/" + name + ".curve"));
}

inline const std::vector<std::string>& hyperelliptic_fixtures()
{
    static const std::vector<std::string> names{"f3a", "f3b", "f5a", "f5b"};
    return names;
}

inline const std::vector<std::string>& synthetic_fixtures()
{
    static const std::vector<std::string> names{"syn7g2", "syn3g3"};
    return names;
}

// deterministic random source for property tests
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed = 0x5eed5eedULL) : rng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    bool coin() { return uniform(0, 1) == 1; }

    fe element(const Field& F) { return static_cast<fe>(uniform(0, F.q() - 1)); }
    fe nonzero(const Field& F) { return static_cast<fe>(uniform(1, F.q() - 1)); }

    Poly poly(const Field& F, int deg)
    {
        Poly p;
        for (int i = 0; i < deg; ++i) p.push_back(element(F));
        p.push_back(nonzero(F));
        return p;
    }

    Rational rational(long bound = 1000)
    {
        Rational r(uniform(-bound, bound), uniform(1, bound));
        r.canonicalize();
        return r;
    }

    FFElement element(const CurveData& C, int max_deg)
    {
        FFElement h;
        do {
            h.c = poly(C.field(), static_cast<int>(uniform(0, max_deg)));
            if (coin()) h.c.clear();
            h.d = poly(C.field(), static_cast<int>(uniform(0, max_deg)));
            if (coin()) h.d.clear();
        } while (h.is_zero());
        return h;
    }

    Divisor divisor(const CurveData& C, int max_place_degree, int terms, int max_mult)
    {
        auto ids = C.places_up_to(max_place_degree);
        Divisor D;
        for (int i = 0; i < terms; ++i) {
            int id = ids[static_cast<std::size_t>(uniform(0, static_cast<long>(ids.size()) - 1))];
            int m = static_cast<int>(uniform(-max_mult, max_mult));
            D = divisor_add(D, Divisor{{id, m}});
        }
        for (auto it = D.begin(); it != D.end();) it = it->second == 0 ? D.erase(it) : std::next(it);
        return D;
    }
};

// #{(x, y) in F_{q^m}^2 : y^2 = f(x)} + 2 points at infinity
inline long brute_force_count(const Field& F, const Poly& f, unsigned m)
{
    ExtField E(F, m);
    long n = 2;
    for (std::uint32_t x = 0; x < E.size(); ++x) {
        std::uint32_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = E.add(E.mul(v, x), E.embed(f[i]));
        n += 1 + E.chi(v);
    }
    return n;
}

// points of the fibre product y^2 = f1 f2, z^2 = f1 over F_{q^m}
inline long brute_force_cover_count(const Field& F, const Poly& f1, const Poly& f2, unsigned m)
{
    ExtField E(F, m);
    auto ev = [&](const Poly& f, std::uint32_t x) {
        std::uint32_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = E.add(E.mul(v, x), E.embed(f[i]));
        return v;
    };
    long n = 2 * (1 + E.chi(E.embed(poly::lc(f1))));
    for (std::uint32_t x = 0; x < E.size(); ++x) {
        std::uint32_t a = ev(f1, x), b = ev(f2, x);
        if (a == 0)
            n += 1 + E.chi(b);
        else if (b == 0)
            n += 1 + E.chi(a);
        else
            n += (1 + E.chi(E.mul(a, b))) * (1 + E.chi(a));
    }
    return n;
}

// P(T) = (1 - T)(1 - qT) exp(sum N_m T^m / m), truncated at degree n
inline std::vector<Rational> numerator_from_point_counts(long q, const std::vector<long>& N, int n)
{
    // Z = exp(S), Z' = S' Z
    std::vector<Rational> Z(static_cast<std::size_t>(n) + 1, Rational(0));
    Z[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (int m = 1; m <= k; ++m) acc += Rational(N[static_cast<std::size_t>(m) - 1]) * Z[static_cast<std::size_t>(k - m)];
        Z[static_cast<std::size_t>(k)] = acc / k;
    }
    std::vector<Rational> P(Z.size(), Rational(0));
    for (int k = 0; k <= n; ++k) {
        P[static_cast<std::size_t>(k)] += Z[static_cast<std::size_t>(k)];
        if (k >= 1) P[static_cast<std::size_t>(k)] -= (q + 1) * Z[static_cast<std::size_t>(k) - 1];
        if (k >= 2) P[static_cast<std::size_t>(k)] += q * Z[static_cast<std::size_t>(k) - 2];
    }
    while (!P.empty() && P.back() == 0) P.pop_back();
    return P;
}

} // namespace ffrtf::testing

#endif
