// SPDX-License-Identifier: MIT
#include "ffrtf/rtf.hpp"

#include "ffrtf/lfunc.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

Rational ipow(long base, int r)
{
    Integer p;
    Integer b(base);
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(r));
    return Rational(p);
}

int mult(const Divisor& D, int x)
{
    auto it = D.find(x);
    return it == D.end() ? 0 : it->second;
}

struct Piece {
    long degree;
    int eta;
};

std::vector<Piece> subdivisor_pieces(const CurveData& C, const Divisor& Z)
{
    std::vector<Piece> out;
    for_each_subdivisor(Z, [&](const Divisor& E) { out.push_back({C.degree(E), C.eta(E)}); });
    return out;
}

// eta sums over effective divisors, by degree
std::vector<Integer> eta_sums_by_degree(const CurveData& C, int N)
{
    std::vector<Integer> s(static_cast<std::size_t>(std::max(N, 0) + 1), 0);
    for (int n = 0; n <= N; ++n)
        for_each_effective(C, n, [&](const Divisor& E) {
            s[static_cast<std::size_t>(n)] += C.eta(E);
            return true;
        });
    return s;
}

Divisor infinity_divisor(const CurveData& C, int m)
{
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    if (m == 0) return {};
    return {{C.inf_plus(), m}, {C.inf_minus(), m}};
}

void require_regular(const OrbitalInput& in)
{
    if (in.kind != OrbitKind::regular) throw std::invalid_argument("degenerate orbit: use j_nilpotent or j_unit");
    if (!is_effective(in.Za) || !is_effective(in.Zb) || !is_effective(in.D)) throw std::invalid_argument("orbital input divisors must be effective");
}

} // namespace

Method parse_method(const std::string& s)
{
    if (s == "moduli") return Method::moduli;
    if (s == "lattice") return Method::lattice;
    if (s == "both") return Method::both;
    throw std::invalid_argument("unknown method '" + s + "' (moduli, lattice or both)");
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::moduli: return "moduli";
    case Method::lattice: return "lattice";
    case Method::both: return "both";
    }
    return "?";
}

std::string to_string(OrbitKind k)
{
    switch (k) {
    case OrbitKind::regular: return "REGULAR";
    case OrbitKind::zero: return "ZERO";
    case OrbitKind::infinity: return "INFINITY";
    }
    return "?";
}

OrbitalInput orbital_input_constant(const CurveData& C, fe a)
{
    if (a >= C.q()) throw std::invalid_argument("constant outside the field");
    OrbitalInput in;
    in.section = FFElement{poly::constant(a), {}};
    in.den = poly::constant(1);
    if (a == 0) in.kind = OrbitKind::infinity;
    else if (a == 1) in.kind = OrbitKind::zero;
    return in;
}

OrbitalInput orbital_input(const CurveData& C, const Divisor& D, const Poly& den, const FFElement& g)
{
    if (!is_effective(D)) throw std::invalid_argument("D must be effective");
    if (den.empty()) throw std::invalid_argument("zero denominator");
    if (D.empty()) {
        if (!g.d.empty() || poly::deg(g.c) > 0 || poly::deg(den) > 0) throw std::invalid_argument("a is not a section of O(0)");
        const Field& F = C.field();
        const fe a = g.c.empty() ? fe(0) : F.div(g.c[0], den[0]);
        return orbital_input_constant(C, a);
    }
    OrbitalInput in;
    in.D = D;
    in.section = g;
    in.den = den;
    const FFElement one{den, {}};
    if (g.is_zero()) {
        in.kind = OrbitKind::infinity;
        in.Zb = D;
        return in;
    }
    if (g == one) {
        in.kind = OrbitKind::zero;
        in.Za = D;
        return in;
    }
    in.Za = divisor_add(C.principal_divisor(g, den), D);
    if (!is_effective(in.Za)) throw std::invalid_argument("a is not a section of O(D)");
    in.Zb = divisor_add(C.principal_divisor(C.sub(g, one), den), D);
    return in;
}

OrbitalInput orbital_input(const CurveData& C, int m, const FFElement& a)
{
    return orbital_input(C, infinity_divisor(C, m), poly::constant(1), a);
}

void for_each_section(const CurveData& C, const RRSpace& L, const std::function<bool(const FFElement&)>& visit)
{
    const Field& F = C.field();
    const std::size_t n = L.basis.size();
    std::vector<fe> c(n, 0);
    while (true) {
        FFElement g;
        for (std::size_t i = 0; i < n; ++i) {
            if (!c[i]) continue;
            g.c = poly::add(F, g.c, poly::scale(F, L.basis[i].c, c[i]));
            g.d = poly::add(F, g.d, poly::scale(F, L.basis[i].d, c[i]));
        }
        if (!visit(g)) return;
        std::size_t i = 0;
        while (i < n && ++c[i] == C.q()) c[i++] = 0;
        if (i == n) return;
    }
}

LaurentQ l_eta_laurent(const CurveData& C, long k)
{
    const LPolynomial L = l_eta_quotient(C);
    LaurentQ out(C.q());
    for (int m = 0; m <= L.degree(); ++m) out.add_term(-k * m, L.coeffs[static_cast<std::size_t>(m)]);
    return out;
}

Integer eta_subdivisor_sum(const CurveData& C, const Divisor& D)
{
    Integer s = 1;
    for (const auto& [x, n] : D) {
        if (n < 0) throw std::invalid_argument("D must be effective");
        s *= C.eta(x) > 0 ? n + 1 : (n % 2 == 0 ? 1 : 0);
    }
    return s;
}

LaurentQ j_unit(const CurveData& C, UnitCase u)
{
    switch (u) {
    case UnitCase::constant: return LaurentQ(C.q(), Rational(1));
    case UnitCase::zero:
    case UnitCase::infinity: return l_eta_laurent(C, 2) + l_eta_laurent(C, -2);
    case UnitCase::nonconstant: return LaurentQ(C.q());
    }
    return LaurentQ(C.q());
}

LaurentQ j_unit(const CurveData& C, const OrbitalInput& in)
{
    if (!in.D.empty()) throw std::invalid_argument("j_unit needs D = 0");
    if (in.kind == OrbitKind::zero) return j_unit(C, UnitCase::zero);
    if (in.kind == OrbitKind::infinity) return j_unit(C, UnitCase::infinity);
    return j_unit(C, in.Za.empty() && in.Zb.empty() ? UnitCase::constant : UnitCase::nonconstant);
}

LaurentQ j_nilpotent(const CurveData& C, const Divisor& D, NilBranch b)
{
    const long d = C.degree(D);
    if (d <= 0) throw std::invalid_argument("j_nilpotent needs deg D >= 1");
    const Rational S(eta_subdivisor_sum(C, D));
    if (b == NilBranch::plus) return S * l_eta_laurent(C, -2).shift(-d);
    return S * l_eta_laurent(C, 2).shift(d);
}

LaurentQ j_nilpotent_moduli(const CurveData& C, const Divisor& D, NilBranch b)
{
    const long d = C.degree(D);
    if (d <= 0) throw std::invalid_argument("j_nilpotent_moduli needs deg D >= 1");
    // deg D12 < d/2 on the n+ side, deg D21 <= d/2 on the n- side
    const int top = b == NilBranch::plus ? static_cast<int>((d - 1) / 2) : static_cast<int>(d / 2);
    const auto sums = eta_sums_by_degree(C, top);
    LaurentQ out(C.q());
    for (const Piece& p : subdivisor_pieces(C, D)) {
        // D11 on the n+ side, D22 on the n- side
        for (int n = 0; n <= top; ++n) {
            const Rational w(sums[static_cast<std::size_t>(n)] * p.eta);
            out.add_term(b == NilBranch::plus ? 2 * n - d : d - 2 * n, w);
        }
    }
    return out;
}

LaurentQ j_rs_moduli(const CurveData& C, const OrbitalInput& in)
{
    require_regular(in);
    const long d = C.degree(in.D);
    const auto A = subdivisor_pieces(C, in.Za);
    const auto B = subdivisor_pieces(C, in.Zb);
    LaurentQ out(C.q());
    for (const Piece& p11 : A)
        for (const Piece& p12 : B) out.add_term(2 * p12.degree - d, Rational(p11.eta * p12.eta));
    return out;
}

std::map<SigmaIndex, Integer> j_rs_strata(const CurveData& C, const OrbitalInput& in)
{
    require_regular(in);
    const int d = static_cast<int>(C.degree(in.D));
    std::map<SigmaIndex, Integer> out;
    for (const Piece& p11 : subdivisor_pieces(C, in.Za))
        for (const Piece& p12 : subdivisor_pieces(C, in.Zb)) {
            SigmaIndex s{static_cast<int>(p11.degree), static_cast<int>(p12.degree), d - static_cast<int>(p12.degree), d - static_cast<int>(p11.degree)};
            out[s] += p11.eta * p12.eta;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

LaurentQ j_rs_lattice(const CurveData& C, const OrbitalInput& in)
{
    require_regular(in);
    LaurentQ out(C.q());
    // u exists only if Za, Zb and D are linearly equivalent
    const PicClass zero{0, C.jac_identity()};
    if (C.divisor_class(divisor_sub(in.Za, in.D)) != zero || C.divisor_class(divisor_sub(in.Zb, in.D)) != zero) return out;
    const Divisor div_u = divisor_sub(in.Zb, in.Za);
    const Divisor div_1mu = divisor_sub(in.D, in.Za);
    std::set<int> support;
    for (const Divisor* E : {&div_u, &div_1mu, &in.D})
        for (const auto& [x, n] : *E) support.insert(x);
    const std::vector<int> places(support.begin(), support.end());

    Divisor E2, E1p, E2p;
    auto leaf = [&] {
        // E1 = 0
        const Divisor E1;
        const Divisor mix = divisor_sub(divisor_add(divisor_sub(E1, E2), E1p), E2p);
        const long key = -C.degree(mix);
        const int w = C.eta(divisor_sub(E1, E1p)) * C.eta(divisor_sub(E2, E1p));
        out.add_term(key, Rational(w));
    };
    auto set = [](Divisor& E, int x, int v) {
        if (v) E[x] = v;
        else E.erase(x);
    };
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (i == places.size()) return leaf();
        const int x = places[i];
        const int vu = mult(div_u, x), v1mu = mult(div_1mu, x), vD = mult(in.D, x);
        const int e1 = 0;
        // c22 with the determinant gives e1' <= vD - v(1-u); c12 gives e2' <= vD - v(1-u) + v(u)
        const int b1 = vD - v1mu, b2 = vD - v1mu + vu;
        for (int e1p = 0; e1p <= b1; ++e1p)
            for (int e2p = 0; e2p <= b2; ++e2p) {
                const int e2 = v1mu - e1 + e1p + e2p - vD;
                const bool c11 = -e1 + e1p >= 0;
                const bool c12 = vu - e2 + e1p >= 0;
                const bool c21 = -e1 + e2p >= 0;
                const bool c22 = -e2 + e2p >= 0;
                if (!(c11 && c12 && c21 && c22)) continue;
                set(E2, x, e2);
                set(E1p, x, e1p);
                set(E2p, x, e2p);
                self(self, i + 1);
            }
        E2.erase(x);
        E1p.erase(x);
        E2p.erase(x);
    };
    dfs(dfs, 0);
    return out;
}

LaurentQ j_orbit(const CurveData& C, const OrbitalInput& in, Method m)
{
    if (in.D.empty()) return j_unit(C, in);
    if (in.kind != OrbitKind::regular)
        return j_nilpotent(C, in.D, NilBranch::plus) + j_nilpotent(C, in.D, NilBranch::minus);
    switch (m) {
    case Method::moduli: return j_rs_moduli(C, in);
    case Method::lattice: return j_rs_lattice(C, in);
    case Method::both: {
        LaurentQ a = j_rs_moduli(C, in), b = j_rs_lattice(C, in);
        if (a != b) throw std::logic_error("lattice and moduli orbital integrals differ");
        return a;
    }
    }
    return LaurentQ(C.q());
}

std::vector<OrbitRow> orbit_table(const CurveData& C, const Divisor& D, Method m)
{
    std::vector<OrbitRow> rows;
    if (D.empty()) {
        for (fe a = 0; a < C.q(); ++a) {
            OrbitalInput in = orbital_input_constant(C, a);
            rows.push_back({in, j_orbit(C, in, m)});
        }
        return rows;
    }
    const RRSpace L = C.riemann_roch(D);
    for_each_section(C, L, [&](const FFElement& g) {
        OrbitalInput in = orbital_input(C, D, L.den, g);
        LaurentQ v = j_orbit(C, in, m);
        rows.push_back({std::move(in), std::move(v)});
        return true;
    });
    return rows;
}

Integer section_count(const CurveData& C, const Divisor& D)
{
    const std::size_t dim = D.empty() ? 1 : C.riemann_roch(D).dimension();
    Integer n;
    mpz_ui_pow_ui(n.get_mpz_t(), C.q(), dim);
    return n;
}

LaurentQ j_global(const CurveData& C, const Divisor& D, Method m)
{
    LaurentQ out(C.q());
    for (const OrbitRow& r : orbit_table(C, D, m)) out += r.value;
    return out;
}

LaurentQ j_global(const CurveData& C, const HeckeElement& f, Method m)
{
    LaurentQ out(C.q());
    for (const auto& [D, c] : f.terms) out += c * j_global(C, D, m);
    return out;
}

Rational i_r(const CurveData& C, const HeckeElement& f, int r, Method m)
{
    return normalized_derivative(j_global(C, f, m), r);
}

Rational i_r_direct(const CurveData& C, const OrbitalInput& in, int r)
{
    if (r < 0) throw std::invalid_argument("derivative order must be nonnegative");
    const long d = C.degree(in.D);
    const long bound = std::max<long>(2L * C.cover_genus() - 1, 2L * C.genus());
    if (d < bound) throw std::invalid_argument("direct form needs deg D >= " + std::to_string(bound));
    Rational s = 0;
    if (in.kind == OrbitKind::regular) {
        require_regular(in);
        const auto B = subdivisor_pieces(C, in.Zb);
        for (const Piece& p11 : subdivisor_pieces(C, in.Za))
            for (const Piece& p12 : B) s += p11.eta * p12.eta * ipow(d - 2 * p12.degree, r);
        return s;
    }
    // triples with the half-degree cutoffs; on the n- side d12 = d - deg D21
    const auto sums = eta_sums_by_degree(C, static_cast<int>(d / 2));
    for (const Piece& p : subdivisor_pieces(C, in.D)) {
        for (long n = 0; 2 * n < d; ++n) s += Rational(sums[static_cast<std::size_t>(n)] * p.eta) * ipow(d - 2 * n, r);
        for (long n = 0; 2 * n <= d; ++n) s += Rational(sums[static_cast<std::size_t>(n)] * p.eta) * ipow(2 * n - d, r);
    }
    return s;
}

Rational hd_self_intersection(const CurveData& C, int r)
{
    if (r < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (r % 2) return 0;
    const LPolynomial L = l_eta_quotient(C);
    if (r == 0) return 4 * normalized_taylor(L, 0) + Rational(C.q()) - 2;
    return ipow(2, r + 2) * normalized_taylor(L, r);
}

std::vector<OrbitalInput> parse_orbital_fixture(const CurveData& C, std::istream& in)
{
    const Field& F = C.field();
    std::vector<OrbitalInput> out;
    int m = -1;
    std::vector<FFElement> basis;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fail = [&](const std::string& why) { throw std::invalid_argument("fixture line " + std::to_string(lineno) + ": " + why); };
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "m") {
            if (!(ls >> m) || m < 0) fail("bad m");
            basis = C.rr_basis(m);
        } else if (tag == "section") {
            if (m < 0) fail("section before m");
            FFElement a;
            std::size_t i = 0;
            long c;
            while (ls >> c) {
                if (i == basis.size()) fail("more coefficients than dim L(D) = " + std::to_string(basis.size()));
                const fe v = F.from_int(c);
                a.c = poly::add(F, a.c, poly::scale(F, basis[i].c, v));
                a.d = poly::add(F, a.d, poly::scale(F, basis[i].d, v));
                ++i;
            }
            if (!ls.eof()) fail("bad coefficient");
            out.push_back(orbital_input(C, m, a));
        } else if (tag == "triple") {
            std::string rest;
            std::getline(ls, rest);
            std::vector<std::string> parts;
            std::istringstream rs(rest);
            for (std::string p; std::getline(rs, p, '|');) parts.push_back(p);
            if (parts.size() != 3) fail("a triple needs D | Za | Zb");
            OrbitalInput t;
            try {
                t.D = parse_divisor(C, parts[0]);
                t.Za = parse_divisor(C, parts[1]);
                t.Zb = parse_divisor(C, parts[2]);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
            if (!is_effective(t.D) || !is_effective(t.Za) || !is_effective(t.Zb)) fail("divisors must be effective");
            const long d = C.degree(t.D);
            if (d == 0) fail("D must have positive degree");
            if (t.Za == t.D && t.Zb.empty()) t.kind = OrbitKind::zero;
            else if (t.Za.empty() && t.Zb == t.D) t.kind = OrbitKind::infinity;
            else if (C.degree(t.Za) != d || C.degree(t.Zb) != d) fail("Za and Zb must have the degree of D");
            out.push_back(std::move(t));
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    return out;
}

} // namespace ffrtf
