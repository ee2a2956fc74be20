// SPDX-License-Identifier: MIT
// ffrtf: command-line front end for the orbital, Hecke, spectral and
// positivity computations.
#include "ffrtf/curve.hpp"
#include "ffrtf/hecke.hpp"
#include "ffrtf/io.hpp"
#include "ffrtf/lfunc.hpp"
#include "ffrtf/positivity.hpp"
#include "ffrtf/rtf.hpp"
#include "ffrtf/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ffrtf;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, validation_failure = 1, inconclusive_precision = 2 };

struct RunConfig {
    std::string curve;
    std::string table;
    std::string hecke_file;
    std::string hecke_file2;
    std::string divisor;
    std::string fixture;
    std::string lpoly_file;
    std::string roots_file;
    std::string which = "eta";
    int m = -1;
    int max_degree = -1;
    int max_r = -1;
    std::string method = "moduli";
    unsigned precision = default_precision;
    std::uint64_t seed = default_seed;
    std::string out;
};

struct Report {
    std::ostringstream text;
    json data = json::object();
};

std::string str(const Rational& r) { return to_string(r); }
std::string str(const Integer& n) { return n.get_str(); }

json laurent_json(const LaurentQ& a)
{
    json j = json::object();
    for (const auto& [n, v] : a.coeffs()) j[std::to_string(n)] = str(v);
    return j;
}

json laurent_json(const LaurentQuad& a)
{
    json j = json::object();
    for (const auto& [n, v] : a.coeffs()) j[std::to_string(n)] = v.str();
    return j;
}

std::string laurent_str(const LaurentQuad& a)
{
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : a.coeffs()) {
        os << (first ? "" : " + ") << "(" << v.str() << ")*q^(" << n << "s)";
        first = false;
    }
    return os.str();
}

template <class R>
json coeffs_json(const std::vector<R>& c)
{
    json j = json::array();
    for (const auto& v : c) {
        if constexpr (std::is_same_v<R, QuadNum>)
            j.push_back(v.str());
        else
            j.push_back(str(v));
    }
    return j;
}

template <class R>
std::string coeffs_str(const std::vector<R>& c)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ' ';
        if constexpr (std::is_same_v<R, QuadNum>)
            os << c[i].str();
        else
            os << str(c[i]);
    }
    return os.str();
}

std::string ball_str(const RealBall& b) { return b.str(40); }

std::string xline_str(XLine x)
{
    switch (x) {
    case XLine::infinity: return "infinity";
    case XLine::split: return "split";
    case XLine::inert: return "inert";
    case XLine::branch: return "branch";
    case XLine::none: break;
    }
    return "-";
}

std::string unit_case_str(UnitCase u)
{
    switch (u) {
    case UnitCase::constant: return "constant";
    case UnitCase::zero: return "zero";
    case UnitCase::infinity: return "infinity";
    case UnitCase::nonconstant: return "nonconstant";
    }
    return "?";
}

std::string resolve(const std::string& arg, const std::string& subdir, const std::string& ext)
{
    if (std::filesystem::exists(arg)) return arg;
    const std::string bundled = data_dir() + "/" + subdir + "/" + arg + ext;
    if (std::filesystem::exists(bundled)) return bundled;
    throw std::invalid_argument("no such file or bundled fixture: " + arg);
}

CurveSpec curve_spec(const RunConfig& cfg)
{
    CurveSpec spec = load_curve_spec(resolve(cfg.curve, "curves", ".curve"));
    spec.seed = cfg.seed;
    return spec;
}

CurveData load_curve(const RunConfig& cfg) { return curve_from_spec(curve_spec(cfg)); }

HeckeElement load_hecke(const CurveData& C, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_hecke_element(C, in);
}

Divisor m_divisor(const CurveData& C, int m) { return {{C.inf_plus(), m}, {C.inf_minus(), m}}; }

// test function selected by --hecke, --divisor or --m; h_0 when none is given
HeckeElement test_function(const CurveData& C, const RunConfig& cfg)
{
    if (!cfg.hecke_file.empty()) return load_hecke(C, cfg.hecke_file);
    if (!cfg.divisor.empty()) return HeckeElement::basis(parse_divisor(C, cfg.divisor));
    if (cfg.m >= 0) return HeckeElement::basis(m_divisor(C, cfg.m));
    return HeckeElement::unit();
}

Divisor orbital_divisor(const CurveData& C, const RunConfig& cfg)
{
    if (!cfg.divisor.empty()) return parse_divisor(C, cfg.divisor);
    if (cfg.m >= 0) return m_divisor(C, cfg.m);
    throw std::invalid_argument("rtf orbital needs --m or --divisor");
}

Integer value_at_one(const LPolynomial& P)
{
    Rational s = 0;
    for (const auto& c : P.coeffs) s += c;
    return s.get_num();
}

// #Jac_X'; synthetic curves carry no group law and use P_X'(1)
Integer cover_jac(const CurveData& C)
{
    return C.backend() == Backend::hyperelliptic ? cover_jacobian_order(C) : value_at_one(cover_zeta_numerator(C));
}

int or_default(int v, int d) { return v >= 0 ? v : d; }

json curve_header(const CurveData& C, Report& rep)
{
    json j;
    j["name"] = C.name();
    j["backend"] = C.backend() == Backend::synthetic ? "synthetic" : "hyperelliptic";
    j["q"] = C.q();
    j["genus"] = C.genus();
    j["cover_genus"] = C.cover_genus();
    rep.text << "curve " << C.name() << " (" << j["backend"].get<std::string>() << ") q = " << C.q() << " g = " << C.genus()
             << " g' = " << C.cover_genus() << '\n';
    return j;
}

json place_table(const CurveData& C, int N, Report& rep)
{
    json rows = json::array();
    rep.text << "id\tlabel\tdeg\tx-line\teta\n";
    for (const ClosedPoint& x : places_up_to(C, N)) {
        rep.text << x.id << '\t' << place_label(C, x.id) << '\t' << x.degree << '\t' << xline_str(x.xline) << '\t' << x.eta_sign << '\n';
        rows.push_back({{"id", x.id}, {"label", place_label(C, x.id)}, {"degree", x.degree}, {"xline", xline_str(x.xline)}, {"eta", x.eta_sign}});
    }
    return rows;
}

// Dirichlet enumeration degree: 2g + 4, within the synthetic data range
int dirichlet_degree(const CurveData& C)
{
    int N = 2 * C.genus() + 4;
    if (C.max_degree() >= 0) N = std::min(N, C.max_degree());
    return std::max(N, 2 * C.genus() - 1);
}

json lpoly_checks(const std::string& name, const LPolynomial& P, bool& ok, Report& rep)
{
    const FunctionalEquation fe = functional_equation(P);
    const bool rh = rh_check(P);
    ok = ok && fe.holds && rh;
    rep.text << name << " = " << coeffs_str(P.coeffs) << "  FE " << (fe.holds ? "holds" : "FAILS") << " eps = " << fe.epsilon
             << "  RH " << (rh ? "PASS" : "FAIL") << '\n';
    return {{"coeffs", coeffs_json(P.coeffs)}, {"q", P.q}, {"weight", P.weight}, {"functional_equation", fe.holds}, {"epsilon", fe.epsilon}, {"rh", rh}};
}

int cmd_curve_validate(const RunConfig& cfg, Report& rep)
{
    CurveSpec spec;
    std::optional<CurveData> C;
    try {
        spec = curve_spec(cfg);
        C.emplace(curve_from_spec(spec));
    } catch (const std::exception& e) {
        rep.text << "INVALID: " << e.what() << '\n';
        rep.data["valid"] = false;
        rep.data["error"] = e.what();
        return validation_failure;
    }
    rep.data["curve"] = curve_header(*C, rep);
    bool ok = true;
    std::vector<std::string> failures;
    try {
        const LPolynomial px = zeta_numerator(*C), pxp = cover_zeta_numerator(*C);
        rep.data["p_x"] = lpoly_checks("P_X", px, ok, rep);
        rep.data["p_xprime"] = lpoly_checks("P_X'", pxp, ok, rep);
        const LPolynomial lq = l_eta_quotient(*C);
        rep.data["l_eta"] = lpoly_checks("L(eta)", lq, ok, rep);
        if (lq.degree() != 2 * C->genus() - 2) failures.push_back("deg L(eta) != 2g - 2");
        const int N = dirichlet_degree(*C);
        const LPolynomial ld = l_eta_dirichlet(*C, N);
        const bool dual = ld.coeffs == lq.coeffs;
        rep.text << "L(eta) Dirichlet enumeration to degree " << N << ": " << (dual ? "agrees" : "DIFFERS") << '\n';
        rep.data["dirichlet_degree"] = N;
        rep.data["dirichlet_agrees"] = dual;
        if (!dual) failures.push_back("Dirichlet and quotient L(eta) differ");
        const Integer jx = C->jacobian_order(), jxp = cover_jac(*C);
        const bool jac = jx == value_at_one(px) && jxp == value_at_one(pxp);
        rep.text << "#Jac_X = " << str(jx) << "  #Jac_X' = " << str(jxp) << "  P(1) consistency " << (jac ? "holds" : "FAILS") << '\n';
        rep.data["jac_x"] = str(jx);
        rep.data["jac_xprime"] = str(jxp);
        if (!jac) failures.push_back("Jacobian orders differ from P(1)");
        if (!ok) failures.push_back("functional equation or Riemann hypothesis fails");
        rep.data["places"] = place_table(*C, or_default(cfg.max_degree, 2), rep);
    } catch (const std::exception& e) {
        failures.push_back(e.what());
    }
    for (const auto& f : failures) rep.text << "FAIL: " << f << '\n';
    rep.data["failures"] = failures;
    rep.data["valid"] = failures.empty();
    rep.text << (failures.empty() ? "VALID" : "INVALID") << '\n';
    return failures.empty() ? Exit::ok : validation_failure;
}

int cmd_curve_places(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    rep.data["places"] = place_table(C, or_default(cfg.max_degree, 2), rep);
    return Exit::ok;
}

int cmd_lfunction_eta(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    bool ok = true;
    const LPolynomial L = l_eta_quotient(C);
    rep.data["l_eta"] = lpoly_checks("L(eta)", L, ok, rep);
    const int N = dirichlet_degree(C);
    const auto sums = eta_partial_sums(C, N);
    rep.text << "Dirichlet partial sums n = 0.." << N << ": " << coeffs_str(sums) << '\n';
    rep.data["partial_sums"] = coeffs_json(sums);
    for (int n = 0; n <= N; ++n) {
        const Rational expect = L.coeff(n);
        if (Rational(sums[static_cast<std::size_t>(n)]) != expect) ok = false;
    }
    const int R = or_default(cfg.max_r, 6);
    json taylor = json::array();
    rep.text << "r\tnormalized_taylor\n";
    for (int r = 0; r <= R; ++r) {
        const Rational t = normalized_taylor(L, r);
        rep.text << r << '\t' << str(t) << '\n';
        taylor.push_back(str(t));
    }
    rep.data["normalized_taylor"] = taylor;
    rep.data["consistent"] = ok;
    return ok ? Exit::ok : validation_failure;
}

std::string section_str(const CurveData& C, const OrbitalInput& in)
{
    if (!in.section) return "-";
    const Field& F = C.field();
    std::string s = "(" + to_string(F, in.section->c) + ")";
    if (!in.section->d.empty()) s += " + (" + to_string(F, in.section->d) + ")y";
    if (poly::deg(in.den) > 0) s += " / (" + to_string(F, in.den) + ")";
    return s;
}

bool meets_degree_bound(const CurveData& C, const Divisor& D)
{
    return C.degree(D) >= std::max(2 * C.cover_genus() - 1, 2 * C.genus());
}

int cmd_rtf_orbital(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    const Method method = parse_method(cfg.method);
    const Method primary = method == Method::lattice ? Method::lattice : Method::moduli;
    const int R = or_default(cfg.max_r, 6);
    std::vector<OrbitRow> rows;
    Divisor D;
    bool direct = false;
    if (!cfg.fixture.empty()) {
        // replayed inputs need not exhaust the orbits of one h_D
        std::ifstream in(cfg.fixture);
        if (!in) throw std::invalid_argument("cannot open " + cfg.fixture);
        for (OrbitalInput& o : parse_orbital_fixture(C, in)) {
            const LaurentQ v = o.kind == OrbitKind::regular ? (primary == Method::lattice ? j_rs_lattice(C, o) : j_rs_moduli(C, o)) : j_orbit(C, o);
            rows.push_back({std::move(o), v});
        }
        rep.text << "fixture = " << cfg.fixture << "  inputs = " << rows.size() << "  method = " << to_string(method) << '\n';
        rep.data["method"] = to_string(method);
    } else {
        D = orbital_divisor(C, cfg);
        direct = meets_degree_bound(C, D);
        rep.text << "D = " << to_string(C, D) << "  deg D = " << C.degree(D) << "  sections = " << str(section_count(C, D))
                 << "  method = " << to_string(method) << '\n';
        rep.data["D"] = to_string(C, D);
        rep.data["method"] = to_string(method);
        rows = orbit_table(C, D, primary);
    }
    bool agree = true;
    json out = json::array();
    std::vector<Rational> totals(static_cast<std::size_t>(R + 1));
    rep.text << "#\tkind\tsection\tZa\tZb\tvalue" << (method == Method::both ? "\tdiff" : "") << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const OrbitRow& row = rows[i];
        json derivs = json::array();
        for (int r = 0; r <= R; ++r) derivs.push_back(str(normalized_derivative(row.value, r)));
        json j{{"kind", to_string(row.input.kind)},
               {"D", to_string(C, row.input.D)},
               {"section", section_str(C, row.input)},
               {"Za", to_string(C, row.input.Za)},
               {"Zb", to_string(C, row.input.Zb)},
               {"value", laurent_json(row.value)},
               {"normalized_derivatives", derivs}};
        rep.text << i << '\t' << to_string(row.input.kind) << '\t' << section_str(C, row.input) << '\t' << to_string(C, row.input.Za)
                 << '\t' << to_string(C, row.input.Zb) << '\t' << to_string(row.value);
        if (method == Method::both) {
            LaurentQ diff(C.q());
            if (row.input.kind == OrbitKind::regular) diff = row.value - j_rs_lattice(C, row.input);
            agree = agree && diff.is_zero();
            rep.text << '\t' << to_string(diff);
            j["diff"] = laurent_json(diff);
        }
        rep.text << '\n';
        if (direct || (!cfg.fixture.empty() && meets_degree_bound(C, row.input.D))) {
            json ir = json::array();
            for (int r = 0; r <= R; ++r) {
                const Rational v = i_r_direct(C, row.input, r);
                totals[static_cast<std::size_t>(r)] += v;
                ir.push_back(str(v));
            }
            j["i_r_direct"] = ir;
        }
        out.push_back(j);
    }
    rep.data["orbits"] = out;
    if (direct) {
        const LaurentQ J = j_global(C, D, method == Method::lattice ? Method::lattice : Method::moduli);
        json table = json::array();
        rep.text << "r\tsum of weighted orbit counts\tnormalized J_r\n";
        for (int r = 0; r <= R; ++r) {
            const Rational nd = normalized_derivative(J, r);
            const Rational& t = totals[static_cast<std::size_t>(r)];
            agree = agree && nd == t;
            rep.text << r << '\t' << str(t) << '\t' << str(nd) << '\n';
            table.push_back({{"r", r}, {"i_r_direct", str(t)}, {"normalized_derivative", str(nd)}});
        }
        rep.data["key_identity"] = table;
    } else if (cfg.fixture.empty()) {
        rep.text << "weighted orbit counts need deg D >= " << std::max(2 * C.cover_genus() - 1, 2 * C.genus()) << '\n';
    }
    rep.data["consistent"] = agree;
    rep.text << (agree ? "consistent" : "MISMATCH") << '\n';
    return agree ? Exit::ok : validation_failure;
}

int cmd_rtf_unit(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    json cases = json::object();
    for (UnitCase u : {UnitCase::constant, UnitCase::zero, UnitCase::infinity, UnitCase::nonconstant}) {
        const LaurentQ v = j_unit(C, u);
        rep.text << "J(u, h_0) for u " << unit_case_str(u) << ": " << to_string(v) << '\n';
        cases[unit_case_str(u)] = laurent_json(v);
    }
    rep.data["unit_cases"] = cases;
    const Method method = parse_method(cfg.method);
    const LaurentQ J = j_global(C, HeckeElement::unit(), method);
    const LPolynomial L = l_eta_quotient(C);
    rep.text << "J(h_0, s) = " << to_string(J) << '\n';
    rep.data["j_global"] = laurent_json(J);
    Rational r0(4 * cover_jac(C), C.jacobian_order());
    r0.canonicalize();
    r0 += static_cast<long>(C.q()) - 2;
    const int R = or_default(cfg.max_r, 6);
    bool ok = true;
    json table = json::array();
    rep.text << "r\tnormalized J_r\tclosed form\tself-intersection\n";
    for (int r = 0; r <= R; ++r) {
        Rational closed = 0;
        if (r == 0)
            closed = r0;
        else if (r % 2 == 0)
            closed = Rational(Integer(1) << static_cast<unsigned>(r + 2)) * normalized_taylor(L, r);
        const Rational nd = normalized_derivative(J, r);
        const Rational hd = hd_self_intersection(C, r);
        ok = ok && nd == closed && hd == closed;
        rep.text << r << '\t' << str(nd) << '\t' << str(closed) << '\t' << str(hd) << '\n';
        table.push_back({{"r", r}, {"normalized_derivative", str(nd)}, {"closed_form", str(closed)}, {"self_intersection", str(hd)}});
    }
    rep.data["derivatives"] = table;
    rep.data["consistent"] = ok;
    rep.text << (ok ? "consistent" : "MISMATCH") << '\n';
    return ok ? Exit::ok : validation_failure;
}

int cmd_rtf_global(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    const HeckeElement f = test_function(C, cfg);
    const Method method = parse_method(cfg.method);
    rep.text << "f = " << to_string(C, f) << '\n';
    rep.data["f"] = to_string(C, f);
    const LaurentQ J = j_global(C, f, method);
    const bool sym = symmetry_check(J);
    rep.text << "J(f, s) = " << to_string(J) << '\n' << "symmetric under s -> -s: " << (sym ? "yes" : "no") << '\n';
    rep.data["j_global"] = laurent_json(J);
    rep.data["symmetric"] = sym;
    bool direct = true;
    for (const auto& [D, c] : f.terms) direct = direct && meets_degree_bound(C, D);
    const int R = or_default(cfg.max_r, 6);
    bool ok = true;
    json table = json::array();
    rep.text << "r\tnormalized J_r\tI_r" << (direct ? "\tweighted orbit counts" : "") << '\n';
    for (int r = 0; r <= R; ++r) {
        const Rational nd = normalized_derivative(J, r);
        const Rational ir = i_r(C, f, r, method);
        json row{{"r", r}, {"normalized_derivative", str(nd)}, {"i_r", str(ir)}};
        rep.text << r << '\t' << str(nd) << '\t' << str(ir);
        ok = ok && nd == ir;
        if (direct) {
            Rational t = 0;
            for (const auto& [D, c] : f.terms)
                for (const OrbitRow& row_d : orbit_table(C, D, Method::moduli)) t += c * i_r_direct(C, row_d.input, r);
            ok = ok && t == nd;
            rep.text << '\t' << str(t);
            row["i_r_direct"] = str(t);
        }
        rep.text << '\n';
        table.push_back(row);
    }
    rep.data["derivatives"] = table;
    rep.data["consistent"] = ok;
    rep.text << (ok ? "consistent" : "MISMATCH") << '\n';
    return ok ? Exit::ok : validation_failure;
}

int cmd_hecke_mul(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    if (cfg.hecke_file.empty() || cfg.hecke_file2.empty()) throw std::invalid_argument("hecke mul needs two element files");
    const HeckeElement f = load_hecke(C, cfg.hecke_file), g = load_hecke(C, cfg.hecke_file2);
    const HeckeElement fg = hecke_mul(C, f, g);
    const bool hom = satake(C, fg) == satake(C, f) * satake(C, g);
    rep.text << "f = " << to_string(C, f) << "\ng = " << to_string(C, g) << "\nf*g = " << to_string(C, fg) << '\n'
             << "Sat(f*g) = Sat(f) Sat(g): " << (hom ? "yes" : "NO") << '\n'
             << "# product in element file format\n"
             << format_hecke_element(C, fg);
    rep.data["product"] = format_hecke_element(C, fg);
    rep.data["satake_homomorphism"] = hom;
    return hom ? Exit::ok : validation_failure;
}

int cmd_hecke_satake(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    const HeckeElement f = test_function(C, cfg);
    const DivAlgebraElement s = satake(C, f);
    const bool inv = is_satake_invariant(C, s);
    const bool round = from_satake(C, s) == f;
    const PicAlgebraElement a = a_eis(C, f);
    const bool iota = iota_pic(C, a) == a;
    rep.text << "f = " << to_string(C, f) << "\nSat(f) = " << to_string(C, s) << "\nW-invariant: " << (inv ? "yes" : "NO")
             << "\ninverse Satake recovers f: " << (round ? "yes" : "NO") << "\na_Eis(f) = " << to_string(a)
             << "\niota-invariant: " << (iota ? "yes" : "NO") << '\n';
    rep.data["f"] = to_string(C, f);
    rep.data["satake"] = to_string(C, s);
    rep.data["invariant"] = inv;
    rep.data["round_trip"] = round;
    rep.data["a_eis"] = to_string(a);
    rep.data["iota_invariant"] = iota;
    return inv && round && iota ? Exit::ok : validation_failure;
}

int cmd_hecke_eis_kernel(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    const int N = or_default(cfg.max_degree, 2);
    const auto basis = eis_kernel_basis(C, N);
    bool ok = true;
    json out = json::array();
    rep.text << "ker a_Eis in degree <= " << N << ": dimension " << basis.size() << '\n';
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const bool zero = a_eis(C, basis[i]).is_zero();
        ok = ok && zero;
        rep.text << i << '\t' << to_string(C, basis[i]) << (zero ? "" : "\tNOT IN KERNEL") << '\n';
        out.push_back(format_hecke_element(C, basis[i]));
    }
    rep.data["max_degree"] = N;
    rep.data["basis"] = out;
    return ok ? Exit::ok : validation_failure;
}

int cmd_spectral_jpi(const RunConfig& cfg, Report& rep)
{
    const CurveData C = load_curve(cfg);
    rep.data["curve"] = curve_header(C, rep);
    if (cfg.table.empty()) throw std::invalid_argument("spectral jpi needs a Pi table");
    const PiTable t = load_pi_table(C, resolve(cfg.table, "pitables", ".table"));
    const HeckeElement f = test_function(C, cfg);
    const LPolynomialQuad lp = l_pi(C, t, false), lpe = l_pi(C, t, true);
    const AdjointValue ad = ad_value_at_1(C, t);
    const ScriptLQuad sl = script_l(C, t);
    const QuadNum lam = lambda_pi(C, t, f);
    const LaurentQuad J = j_pi(C, t, f);
    const bool sym = symmetry_check(sl.series);
    rep.text << "table " << t.name << " depth " << t.depth << "\nL(pi) = " << coeffs_str(lp.coeffs) << "\nL(pi x eta) = " << coeffs_str(lpe.coeffs)
             << "\nL(1, pi, Ad) = " << ad.value.str() << " (Euler product to degree " << ad.truncation_degree << ")"
             << "\nscript L = " << laurent_str(sl.series) << "\nsymmetric: " << (sym ? "yes" : "NO") << "\nf = " << to_string(C, f)
             << "\nlambda_pi(f) = " << lam.str() << "\nJ_pi(f, s) = " << laurent_str(J) << '\n';
    rep.data["table"] = t.name;
    rep.data["l_pi"] = coeffs_json(lp.coeffs);
    rep.data["l_pi_eta"] = coeffs_json(lpe.coeffs);
    rep.data["ad1"] = ad.value.str();
    rep.data["ad_truncation_degree"] = ad.truncation_degree;
    rep.data["script_l"] = laurent_json(sl.series);
    rep.data["symmetric"] = sym;
    rep.data["lambda"] = lam.str();
    rep.data["j_pi"] = laurent_json(J);
    const int R = or_default(cfg.max_r, 6);
    json table = json::array();
    rep.text << "r\tnormalized J_pi,r\n";
    for (int r = 0; r <= R; ++r) {
        const QuadNum v = normalized_derivative(J, r);
        rep.text << r << '\t' << v.str() << '\n';
        table.push_back(v.str());
    }
    rep.data["derivatives"] = table;
    return sym ? Exit::ok : validation_failure;
}

LPolynomial positivity_input(const RunConfig& cfg)
{
    if (!cfg.lpoly_file.empty()) return load_lpolynomial(cfg.lpoly_file);
    const CurveData C = load_curve(cfg);
    if (cfg.which == "eta") return l_eta_quotient(C);
    if (cfg.which == "px") return zeta_numerator(C);
    if (cfg.which == "pxp") return cover_zeta_numerator(C);
    throw std::invalid_argument("--which must be eta, px or pxp");
}

int cmd_positivity_check(const RunConfig& cfg, Report& rep)
{
    const int R = or_default(cfg.max_r, 12);
    const unsigned max_prec = std::max(cfg.precision, 32 * default_precision);
    const Rational bound(1, Integer("10000000000000000000000000"));
    PositivityResult res;
    try {
        if (!cfg.roots_file.empty()) {
            std::ifstream in(cfg.roots_file);
            if (!in) throw std::invalid_argument("cannot open " + cfg.roots_file);
            res = positivity_check(parse_root_data(in), R, cfg.precision, max_prec, bound);
        } else {
            if (cfg.curve.empty() && cfg.lpoly_file.empty()) throw std::invalid_argument("positivity check needs a curve, --lpoly or --roots");
            res = positivity_check(positivity_input(cfg), R, cfg.precision, max_prec, bound);
        }
    } catch (const PrecisionError& e) {
        rep.text << "INCONCLUSIVE: " << e.what() << '\n';
        rep.data["status"] = "inconclusive";
        rep.data["error"] = e.what();
        return inconclusive_precision;
    } catch (const std::domain_error& e) {
        rep.text << "FAIL: " << e.what() << '\n';
        rep.data["status"] = "fail";
        rep.data["error"] = e.what();
        return validation_failure;
    }
    const RootData& rd = res.roots;
    rep.text << "roots: a = " << rd.a << " b = " << rd.b << " pairs = " << rd.pairs.size() << " degree = " << rd.degree() << '\n';
    json pairs = json::array();
    for (const RootPair& p : rd.pairs) {
        rep.text << "  Re alpha = " << (p.exact ? p.exact->str() : ball_str(p.re)) << " mult " << p.mult << '\n';
        pairs.push_back({{"re", ball_str(p.re)}, {"exact", p.exact ? json(p.exact->str()) : json(nullptr)}, {"mult", p.mult}});
    }
    rep.data["a"] = rd.a;
    rep.data["b"] = rd.b;
    rep.data["pairs"] = pairs;
    rep.data["vanishing_order"] = res.report.vanishing_order;
    rep.data["precision"] = res.report.precision;
    rep.data["max_radius"] = decimal(res.report.max_radius, 3);
    rep.text << "vanishing order " << res.report.vanishing_order << ", precision " << res.report.precision << " bits, max radius "
             << decimal(res.report.max_radius, 3) << "\nr\tsign\tt_r = r! [z^r] lambda\n";
    json entries = json::array();
    for (const TaylorEntry& e : res.report.entries) {
        const std::string t = e.exact_t ? e.exact_t->str() : ball_str(e.t);
        rep.text << e.r << '\t' << to_string(e.sign) << (e.forced_zero ? " (forced)" : "") << '\t' << t << '\n';
        entries.push_back({{"r", e.r},
                           {"series", ball_str(e.series)},
                           {"t", ball_str(e.t)},
                           {"exact_t", e.exact_t ? json(e.exact_t->str()) : json(nullptr)},
                           {"forced_zero", e.forced_zero},
                           {"sign", to_string(e.sign)}});
    }
    rep.data["entries"] = entries;
    const PositivityVerdict& v = res.verdict;
    rep.text << "nonnegative " << (v.nonnegative ? "yes" : "no") << ", parity " << (v.parity ? "yes" : "no") << ", propagation "
             << (v.propagation ? "yes" : "no") << ", exact cross-check " << (v.exact_consistent ? "yes" : "no") << '\n'
             << to_string(v.status) << (v.detail.empty() ? "" : ": " + v.detail) << '\n';
    rep.data["status"] = to_string(v.status);
    rep.data["detail"] = v.detail;
    switch (v.status) {
    case Status::pass: return Exit::ok;
    case Status::fail: return validation_failure;
    case Status::inconclusive: break;
    }
    return inconclusive_precision;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relative trace formula computations over function fields"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--max-degree", cfg.max_degree, "largest place or divisor degree");
    app.add_option("--max-r", cfg.max_r, "largest derivative order")->check(CLI::NonNegativeNumber);
    app.add_option("--method", cfg.method, "orbital method: moduli, lattice or both")->check(CLI::IsMember({"moduli", "lattice", "both"}));
    app.add_option("--precision", cfg.precision, "working precision in bits")->check(CLI::Range(16u, 1u << 20));
    app.add_option("--seed", cfg.seed, "seed for randomized factorization");
    app.add_option("--out", cfg.out, "write a JSON report here");

    std::function<int(const RunConfig&, Report&)> run;
    auto command = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->callback([&run, fn] { run = fn; });
        return sub;
    };
    auto add_curve = [&](CLI::App* sub) { sub->add_option("curve", cfg.curve, "curve spec file or bundled fixture name")->required(); };
    auto add_function = [&](CLI::App* sub) {
        sub->add_option("--m", cfg.m, "use h_D with D = m(oo+ + oo-)");
        sub->add_option("--divisor", cfg.divisor, "use h_D with D = \"label:mult ...\"");
        sub->add_option("--hecke", cfg.hecke_file, "Hecke element file");
    };

    CLI::App* curve = app.add_subcommand("curve", "curve data")->require_subcommand(1);
    add_curve(command(curve, "validate", "check a curve spec", cmd_curve_validate));
    add_curve(command(curve, "places", "list closed points", cmd_curve_places));

    CLI::App* lfunction = app.add_subcommand("lfunction", "L-functions")->require_subcommand(1);
    add_curve(command(lfunction, "eta", "L(eta, s) of the double cover", cmd_lfunction_eta));

    CLI::App* rtf = app.add_subcommand("rtf", "orbital integrals")->require_subcommand(1);
    CLI::App* orbital = command(rtf, "orbital", "per-orbit table for h_D", cmd_rtf_orbital);
    add_curve(orbital);
    orbital->add_option("--m", cfg.m, "D = m(oo+ + oo-)");
    orbital->add_option("--divisor", cfg.divisor, "D = \"label:mult ...\"");
    orbital->add_option("--fixture", cfg.fixture, "replay section or divisor-triple records");
    add_curve(command(rtf, "unit", "unit-function orbital integrals and derivatives of J(h_0)", cmd_rtf_unit));
    CLI::App* global = command(rtf, "global", "J(f, s) and its derivatives", cmd_rtf_global);
    add_curve(global);
    add_function(global);

    CLI::App* hecke = app.add_subcommand("hecke", "spherical Hecke algebra")->require_subcommand(1);
    CLI::App* mul = command(hecke, "mul", "product of two elements", cmd_hecke_mul);
    add_curve(mul);
    mul->add_option("f", cfg.hecke_file, "first element file")->required();
    mul->add_option("g", cfg.hecke_file2, "second element file")->required();
    CLI::App* sat = command(hecke, "satake", "Satake transform and Eisenstein image", cmd_hecke_satake);
    add_curve(sat);
    add_function(sat);
    add_curve(command(hecke, "eis-kernel", "basis of the Eisenstein ideal", cmd_hecke_eis_kernel));

    CLI::App* spectral = app.add_subcommand("spectral", "spectral side")->require_subcommand(1);
    CLI::App* jpi = command(spectral, "jpi", "spectral term of an automorphic representation", cmd_spectral_jpi);
    add_curve(jpi);
    jpi->add_option("table", cfg.table, "Pi table file or bundled name")->required();
    add_function(jpi);

    CLI::App* positivity = app.add_subcommand("positivity", "super-positivity")->require_subcommand(1);
    CLI::App* check = command(positivity, "check", "certify Taylor coefficients of a self-dual L-function", cmd_positivity_check);
    check->add_option("curve", cfg.curve, "curve spec file or bundled fixture name");
    check->add_option("--which", cfg.which, "eta, px or pxp")->check(CLI::IsMember({"eta", "px", "pxp"}));
    check->add_option("--lpoly", cfg.lpoly_file, "L-polynomial file");
    check->add_option("--roots", cfg.roots_file, "root data file");

    CLI11_PARSE(app, argc, argv);
    Report rep;
    int status = validation_failure;
    try {
        status = run(cfg, rep);
    } catch (const std::exception& e) {
        std::cout << rep.text.str();
        std::cerr << "error: " << e.what() << '\n';
        return validation_failure;
    }
    std::cout << rep.text.str();
    if (!cfg.out.empty()) {
        rep.data["exit_status"] = status;
        std::ofstream out(cfg.out);
        if (!out) {
            std::cerr << "error: cannot write " << cfg.out << '\n';
            return validation_failure;
        }
        out << rep.data.dump(2) << '\n';
    }
    return status;
}
