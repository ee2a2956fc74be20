// SPDX-License-Identifier: MIT
// Emits a synthetic curve spec whose split/inert tables are read off a
// hyperelliptic curve by point counting over F_{q^m}.
#include "ffrtf/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ffrtf;

namespace {

std::uint32_t eval(const ExtField& E, const Poly& f, std::uint32_t x)
{
    std::uint32_t v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = E.add(E.mul(v, x), E.embed(f[i]));
    return v;
}

// N_m(X) and N_m(X')
std::pair<long, long> counts(const CurveData& C, unsigned m)
{
    ExtField E(C.field(), m);
    long nx = 2, ncov = 2 * (1 + E.chi(E.embed(poly::lc(C.f1()))));
    for (std::uint32_t x = 0; x < E.size(); ++x) {
        const std::uint32_t a = eval(E, C.f1(), x), b = eval(E, C.f2(), x);
        nx += 1 + E.chi(E.mul(a, b));
        if (a == 0)
            ncov += 1 + E.chi(b);
        else if (b == 0)
            ncov += 1 + E.chi(a);
        else
            ncov += (1 + E.chi(E.mul(a, b))) * (1 + E.chi(a));
    }
    return {nx, ncov};
}

int mobius(int n)
{
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"synthetic fixture generator"};
    std::string path, name;
    int nmax = 0;
    app.add_option("curve", path, "hyperelliptic curve spec")->required();
    app.add_option("--max-degree", nmax, "largest place degree")->required();
    app.add_option("--name", name, "name of the emitted fixture");
    CLI11_PARSE(app, argc, argv);
    try {
        CurveData C = curve_from_spec(load_curve_spec(path));
        std::vector<long> N(static_cast<std::size_t>(nmax) + 1), Np(static_cast<std::size_t>(nmax) + 1);
        for (int m = 1; m <= nmax; ++m) std::tie(N[static_cast<std::size_t>(m)], Np[static_cast<std::size_t>(m)]) = counts(C, static_cast<unsigned>(m));
        // places of degree n from point counts: n a_n = sum_{d|n} mu(n/d) N_d
        auto places = [&](const std::vector<long>& cnt, int n) {
            long s = 0;
            for (int d = 1; d <= n; ++d)
                if (n % d == 0) s += mobius(n / d) * cnt[static_cast<std::size_t>(d)];
            return s / n;
        };
        CurveSpec out;
        out.backend = Backend::synthetic;
        out.field = C.field().spec();
        out.genus = C.genus();
        out.name = name.empty() ? C.name() + "-synthetic" : name;
        out.split.assign(static_cast<std::size_t>(nmax), 0);
        out.inert.assign(static_cast<std::size_t>(nmax), 0);
        for (int n = 1; n <= nmax; ++n) {
            long inert_half = n % 2 == 0 ? out.inert[static_cast<std::size_t>(n / 2) - 1] : 0;
            long s = (places(Np, n) - inert_half) / 2;
            out.split[static_cast<std::size_t>(n) - 1] = s;
            out.inert[static_cast<std::size_t>(n) - 1] = places(N, n) - s;
        }
        std::cout << "# split/inert tables of " << C.name() << " up to degree " << nmax << "\n" << format_curve_spec(out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
