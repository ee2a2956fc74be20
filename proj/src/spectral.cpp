// SPDX-License-Identifier: MIT
#include "ffrtf/spectral.hpp"

#include "ffrtf/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

using Series = std::vector<QuadNum>;

QuadNum qpow(unsigned q, long e)
{
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), q, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? QuadNum(Rational(1) / Rational(p)) : QuadNum(Rational(p));
}

Series mul_trunc(const Series& a, const Series& b, std::size_t n)
{
    Series r(n + 1, QuadNum(0));
    for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
        if (a[i] == QuadNum(0)) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

// 1 / (1 - lambda U^d + q_x U^{2d}) = sum_n lambda(h_{nx}) U^{nd}
Series local_factor(const CurveData& C, const PiTable& t, int x, bool twisted, std::size_t n)
{
    const int d = C.place(x).degree;
    Series r(n + 1, QuadNum(0));
    const int sign = twisted ? C.eta(x) : 1;
    for (int k = 0; static_cast<std::size_t>(k * d) <= n; ++k) {
        QuadNum v = lambda_local(C, t, x, k);
        if (sign < 0 && k % 2) v = -v;
        r[static_cast<std::size_t>(k * d)] = v;
    }
    return r;
}

std::vector<int> table_places(const CurveData& C, const PiTable& t, int N)
{
    if (N > t.depth) throw std::out_of_range("Pi table depth " + std::to_string(t.depth) + " is below the required " + std::to_string(N));
    return C.places_up_to(N);
}

Series euler_series(const CurveData& C, const PiTable& t, bool twisted, int N)
{
    Series L(static_cast<std::size_t>(N) + 1, QuadNum(0));
    L[0] = 1;
    for (int x : table_places(C, t, N)) L = mul_trunc(L, local_factor(C, t, x, twisted, static_cast<std::size_t>(N)), static_cast<std::size_t>(N));
    return L;
}

} // namespace

Rational omega_norm(const CurveData& C)
{
    return Rational(1) / Rational(qpow(C.q(), 2L * C.genus() - 2).a());
}

QuadNum table_eigenvalue(const CurveData& C, const PiTable& t, int place)
{
    if (C.place(place).degree > t.depth) throw std::out_of_range("place beyond Pi table depth");
    auto it = t.eigenvalues.find(place);
    return it == t.eigenvalues.end() ? t.default_value : it->second;
}

QuadNum lambda_local(const CurveData& C, const PiTable& t, int place, int n)
{
    if (n < 0) throw std::invalid_argument("negative Hecke index");
    const QuadNum lam = table_eigenvalue(C, t, place);
    const QuadNum qx = qpow(C.q(), C.place(place).degree);
    QuadNum prev(1), cur = lam;
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        QuadNum next = lam * cur - qx * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

QuadNum lambda_pi(const CurveData& C, const PiTable& t, const HeckeElement& f)
{
    QuadNum s(0);
    for (const auto& [D, c] : f.terms) {
        QuadNum v(c);
        for (const auto& [x, n] : D) v = v * lambda_local(C, t, x, n);
        s = s + v;
    }
    return s;
}

LPolynomialQuad l_pi(const CurveData& C, const PiTable& t, bool twisted)
{
    const int N = 4 * (C.genus() - 1);
    LPolynomialQuad P;
    P.coeffs = euler_series(C, t, twisted, N);
    while (P.coeffs.size() > 1 && P.coeffs.back() == QuadNum(0)) P.coeffs.pop_back();
    P.q = C.q();
    P.weight = 2;
    P.variable = "U";
    return P;
}

AdjointValue ad_value_at_1(const CurveData& C, const PiTable& t)
{
    const int M = 6 * (C.genus() - 1);
    const std::size_t n = static_cast<std::size_t>(M);
    Series A(n + 1, QuadNum(0));
    A[0] = 1;
    for (int x : table_places(C, t, M)) {
        const int d = C.place(x).degree;
        const QuadNum lam = table_eigenvalue(C, t, x);
        // alpha/beta + beta/alpha
        const QuadNum c = lam * lam / qpow(C.q(), d) - QuadNum(2);
        // 1/(1 - V^d) and 1/(1 - c V^d + V^{2d}) as series in V^d
        Series geo(n + 1, QuadNum(0)), loc(n + 1, QuadNum(0));
        for (std::size_t k = 0; k * static_cast<std::size_t>(d) <= n; ++k) geo[k * static_cast<std::size_t>(d)] = 1;
        QuadNum prev(1), cur = c;
        loc[0] = 1;
        for (std::size_t k = 1; k * static_cast<std::size_t>(d) <= n; ++k) {
            loc[k * static_cast<std::size_t>(d)] = cur;
            QuadNum next = c * cur - prev;
            prev = cur;
            cur = next;
        }
        A = mul_trunc(mul_trunc(A, geo, n), loc, n);
    }
    QuadNum v(0);
    for (std::size_t k = 0; k <= n; ++k) v = v + A[k] * qpow(C.q(), -static_cast<long>(k));
    if (v == QuadNum(0)) throw std::domain_error("adjoint value at 1 vanishes");
    return {v, M};
}

ScriptLQuad script_l(const CurveData& C, const PiTable& t)
{
    return assemble_script_l(l_pi(C, t, false), l_pi(C, t, true), ad_value_at_1(C, t).value, C.genus());
}

LaurentQuad j_pi(const CurveData& C, const PiTable& t, const HeckeElement& f)
{
    const QuadNum scale = QuadNum(Rational(1, 2) * omega_norm(C)) * lambda_pi(C, t, f);
    return scale * script_l(C, t).series;
}

PiTable design_pi_table(const CurveData& C, const QPoly& target, const QPoly& target_eta, const std::string& name)
{
    const int N = 4 * (C.genus() - 1);
    PiTable t;
    t.name = name;
    t.genus = C.genus();
    t.depth = 6 * (C.genus() - 1);
    if (C.backend() == Backend::synthetic && t.depth > C.max_degree()) throw std::invalid_argument("synthetic place data too shallow for a Pi table");
    auto coeff = [](const QPoly& p, int n) { return n < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(n)] : Rational(0); };
    if (coeff(target, 0) != 1 || coeff(target_eta, 0) != 1) throw std::invalid_argument("targets need constant term 1");
    if (qpoly::deg(target) > N || qpoly::deg(target_eta) > N) throw std::invalid_argument("targets exceed degree 4(g-1)");
    for (int n = 1; n <= N; ++n) {
        int split = -1, inert = -1;
        for (int x : C.places_of_degree(n)) {
            if (C.eta(x) > 0 && split < 0) split = x;
            if (C.eta(x) < 0 && inert < 0) inert = x;
        }
        if (split < 0 || inert < 0) throw std::invalid_argument("degree " + std::to_string(n) + " lacks a split or an inert place");
        const Series L = euler_series(C, t, false, n), Le = euler_series(C, t, true, n);
        const QuadNum A = QuadNum(coeff(target, n)) - L[static_cast<std::size_t>(n)];
        const QuadNum B = QuadNum(coeff(target_eta, n)) - Le[static_cast<std::size_t>(n)];
        const QuadNum half(Rational(1, 2));
        t.eigenvalues[split] = half * (A + B);
        t.eigenvalues[inert] = half * (A - B);
    }
    return t;
}

PiTable parse_pi_table(const CurveData& C, std::istream& in)
{
    PiTable t;
    std::ostringstream meta;
    std::vector<std::pair<std::string, std::vector<Rational>>> records;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (ls >> head && head == "place") {
            std::string label, rest;
            ls >> label;
            std::getline(ls, rest);
            records.emplace_back(label, parse_rationals(rest));
        } else {
            meta << line << '\n';
        }
    }
    std::istringstream ms(meta.str());
    auto kv = parse_key_values(ms);
    for (const char* k : {"genus", "depth"})
        if (!kv.count(k)) throw std::invalid_argument(std::string("Pi table lacks ") + k);
    t.name = kv.count("name") ? kv["name"] : "";
    t.genus = static_cast<int>(parse_integers(kv["genus"]).at(0));
    t.depth = static_cast<int>(parse_integers(kv["depth"]).at(0));
    if (kv.count("discriminant")) t.discriminant = parse_integers(kv["discriminant"]).at(0);
    if (t.genus != C.genus()) throw std::invalid_argument("Pi table genus does not match the curve");
    if (t.depth < 4 * (t.genus - 1)) throw std::invalid_argument("Pi table depth below 4(g-1)");
    auto value = [&](const std::vector<Rational>& v) {
        if (v.empty() || v.size() > 2) throw std::invalid_argument("eigenvalue needs one or two rationals");
        if (v.size() == 1 || v[1] == 0) return QuadNum(v[0]);
        if (t.discriminant <= 1) throw std::invalid_argument("irrational eigenvalue without discriminant");
        return QuadNum(v[0], v[1], t.discriminant);
    };
    if (kv.count("default")) t.default_value = value(parse_rationals(kv["default"]));
    for (const auto& [label, v] : records) {
        const int id = find_place(C, label, t.depth);
        if (!t.eigenvalues.emplace(id, value(v)).second) throw std::invalid_argument("duplicate eigenvalue for " + label);
    }
    return t;
}

PiTable load_pi_table(const CurveData& C, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_pi_table(C, in);
}

std::string format_pi_table(const CurveData& C, const PiTable& t)
{
    std::ostringstream os;
    if (!t.name.empty()) os << "name = " << t.name << '\n';
    os << "genus = " << t.genus << '\n' << "depth = " << t.depth << '\n';
    if (t.discriminant) os << "discriminant = " << t.discriminant << '\n';
    os << "default = " << to_string(t.default_value.a());
    if (!t.default_value.is_rational()) os << ' ' << to_string(t.default_value.b());
    os << '\n';
    for (const auto& [x, v] : t.eigenvalues) {
        os << "place " << place_label(C, x) << ' ' << to_string(v.a());
        if (!v.is_rational()) os << ' ' << to_string(v.b());
        os << '\n';
    }
    return os.str();
}

} // namespace ffrtf
