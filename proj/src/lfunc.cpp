// SPDX-License-Identifier: MIT
#include "ffrtf/lfunc.hpp"
#include "ffrtf/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

LPolynomial make(const QPoly& c, long q)
{
    LPolynomial P;
    P.coeffs = c;
    P.q = q;
    P.weight = 1;
    return P;
}

template <class R>
BasicScriptL<R> assemble(const BasicLPolynomial<R>& Lpi, const BasicLPolynomial<R>& Lpi_eta, const R& ad1, int g)
{
    if (ad1 == R(0)) throw std::invalid_argument("adjoint value must be nonzero");
    if (g < 1) throw std::invalid_argument("genus must be positive");
    if (Lpi.q != Lpi_eta.q) throw std::invalid_argument("L-polynomials over different q");
    const int D = 4 * (g - 1);
    if (Lpi.degree() > D || Lpi_eta.degree() > D) throw std::invalid_argument("L(pi) degree exceeds 4(g-1)");
    const long q = Lpi.q;
    // U = q^{-1} w^{-1}; q^{4(g-1)(s-1/2)} = w^{4(g-1)}
    BasicScriptL<R> out;
    out.series = Laurent<R>(q);
    out.genus = g;
    out.ad1 = ad1;
    const R inv = R(1) / ad1;
    for (int i = 0; i <= Lpi.degree(); ++i)
        for (int j = 0; j <= Lpi_eta.degree(); ++j) {
            const int n = i + j;
            Integer qn;
            mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
            R c = Lpi.coeffs[static_cast<std::size_t>(i)] * Lpi_eta.coeffs[static_cast<std::size_t>(j)] * inv * R(Rational(1, qn));
            out.series.add_term(D - n, c);
        }
    if (!symmetry_check(out.series)) throw std::domain_error("script L is not symmetric under w -> 1/w");
    return out;
}

} // namespace

LPolynomial zeta_numerator(const CurveData& C) { return make(C.zeta_numerator(), C.q()); }
LPolynomial cover_zeta_numerator(const CurveData& C) { return make(C.cover_zeta_numerator(), C.q()); }

LPolynomial l_eta_quotient(const CurveData& C)
{
    QPoly quo, rem;
    qpoly::divmod(C.cover_zeta_numerator(), C.zeta_numerator(), quo, rem);
    if (!rem.empty()) throw std::runtime_error("P_X does not divide P_X'");
    if (qpoly::deg(quo) != 2 * C.genus() - 2) throw std::runtime_error("L(eta) has degree different from 2g-2");
    for (const auto& c : quo)
        if (c.get_den() != 1) throw std::runtime_error("L(eta) has non-integral coefficients");
    return make(quo, C.q());
}

std::vector<Integer> eta_partial_sums(const CurveData& C, int N)
{
    if (N < 0) throw std::invalid_argument("partial sums need N >= 0");
    std::vector<long> sums(static_cast<std::size_t>(N) + 1, 0);
    std::vector<int> deg, eta;
    if (N >= 1)
        for (int id : C.places_up_to(N)) {
            deg.push_back(C.place(id).degree);
            eta.push_back(C.place(id).eta_sign);
        }
    const std::size_t n = deg.size();
    // places come sorted by degree; each effective divisor is visited once
    auto rec = [&](auto&& self, std::size_t j, int used, int sign) -> void {
        sums[static_cast<std::size_t>(used)] += sign;
        for (std::size_t i = j; i < n; ++i) {
            const int d = deg[i];
            if (used + d > N) break;
            int s = sign;
            for (int u = used + d; u <= N; u += d) {
                s *= eta[i];
                self(self, i + 1, u, s);
            }
        }
    };
    rec(rec, 0, 0, 1);
    return {sums.begin(), sums.end()};
}

LPolynomial l_eta_dirichlet(const CurveData& C, int N)
{
    const int g = C.genus();
    if (N < 2 * g - 1) throw std::invalid_argument("Dirichlet truncation must reach degree 2g-1");
    auto sums = eta_partial_sums(C, N);
    for (int n = 2 * g - 1; n <= N; ++n)
        if (sums[static_cast<std::size_t>(n)] != 0)
            throw std::runtime_error("eta partial sum of degree " + std::to_string(n) + " does not vanish");
    QPoly c;
    for (int n = 0; n <= 2 * g - 2; ++n) c.emplace_back(sums[static_cast<std::size_t>(n)]);
    qpoly::trim(c);
    return make(c, C.q());
}

FunctionalEquation functional_equation(const LPolynomial& P)
{
    WeilAnalysis w = analyze_weil(P.coeffs, P.q, P.weight);
    return {w.functional_equation, w.epsilon};
}

bool rh_check(const LPolynomial& P, double)
{
    if (P.degree() < 1) throw std::invalid_argument("rh_check needs degree >= 1");
    WeilAnalysis w = analyze_weil(P.coeffs, P.q, P.weight);
    return w.functional_equation && w.riemann_hypothesis;
}

Rational normalized_taylor(const LPolynomial& L, int r)
{
    if (r < 0) throw std::invalid_argument("derivative order must be nonnegative");
    Rational s = 0;
    for (int m = 0; m <= L.degree(); ++m) {
        Integer pw;
        Integer base(-m);
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r));
        s += L.coeffs[static_cast<std::size_t>(m)] * Rational(pw);
    }
    return s;
}

ScriptL assemble_script_l(const LPolynomial& Lpi, const LPolynomial& Lpi_eta, const Rational& ad1, int g)
{
    return assemble(Lpi, Lpi_eta, ad1, g);
}

ScriptLQuad assemble_script_l(const LPolynomialQuad& Lpi, const LPolynomialQuad& Lpi_eta, const QuadNum& ad1, int g)
{
    return assemble(Lpi, Lpi_eta, ad1, g);
}

LPolynomial parse_lpolynomial(std::istream& in)
{
    auto kv = parse_key_values(in);
    if (!kv.count("q") || !kv.count("coeffs")) throw std::invalid_argument("L-polynomial file needs q and coeffs");
    LPolynomial P;
    P.q = parse_integers(kv["q"]).at(0);
    if (P.q < 2) throw std::invalid_argument("q must be at least 2");
    if (kv.count("weight")) P.weight = static_cast<int>(parse_integers(kv["weight"]).at(0));
    if (kv.count("variable")) P.variable = kv["variable"];
    P.coeffs = parse_rationals(kv["coeffs"]);
    qpoly::trim(P.coeffs);
    if (P.coeffs.empty() || P.coeffs[0] != 1) throw std::invalid_argument("L-polynomial must have constant term 1");
    return P;
}

LPolynomial load_lpolynomial(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_lpolynomial(in);
}

std::string to_string(const LPolynomial& P)
{
    std::ostringstream os;
    for (int i = 0; i <= P.degree(); ++i) os << (i ? " " : "") << to_string(P.coeffs[static_cast<std::size_t>(i)]);
    return os.str();
}

} // namespace ffrtf
