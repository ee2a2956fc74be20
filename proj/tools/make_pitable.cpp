// SPDX-License-Identifier: MIT
// Emits a Pi table whose L(pi) and L(pi x eta) are the products
// prod_i (1 - c_i U + q^2 U^2) over the given traces.
#include "ffrtf/io.hpp"
#include "ffrtf/spectral.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace ffrtf;

namespace {

QPoly product(long q, const std::vector<long>& traces)
{
    QPoly P{Rational(1)};
    for (long c : traces) P = qpoly::mul(P, QPoly{Rational(1), Rational(-c), Rational(q * q)});
    return P;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Design a Pi table with prescribed L-polynomials"};
    std::string curve, name;
    std::vector<long> traces, traces_eta;
    app.add_option("curve", curve, "curve spec file")->required();
    app.add_option("--traces", traces, "c_i for L(pi), 2(g-1) values")->required()->delimiter(',');
    app.add_option("--eta-traces", traces_eta, "c_i for L(pi x eta), 2(g-1) values")->required()->delimiter(',');
    app.add_option("--name", name, "table name");
    CLI11_PARSE(app, argc, argv);
    try {
        CurveData C = curve_from_spec(load_curve_spec(curve));
        const std::size_t n = static_cast<std::size_t>(2 * (C.genus() - 1));
        if (traces.size() != n || traces_eta.size() != n) throw std::invalid_argument("expected " + std::to_string(n) + " traces per L-function");
        PiTable t = design_pi_table(C, product(C.q(), traces), product(C.q(), traces_eta), name);
        std::cout << "# L(pi) traces";
        for (long c : traces) std::cout << ' ' << c;
        std::cout << "; L(pi x eta) traces";
        for (long c : traces_eta) std::cout << ' ' << c;
        std::cout << '\n' << format_pi_table(C, t);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
