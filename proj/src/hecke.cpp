// SPDX-License-Identifier: MIT
#include "ffrtf/hecke.hpp"

#include "ffrtf/io.hpp"
#include "ffrtf/linalg.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

template <class K>
void accumulate(std::map<K, Rational>& m, const K& k, const Rational& c)
{
    if (c == 0) return;
    Rational& slot = m[k];
    slot += c;
    if (slot == 0) m.erase(k);
}

Integer power(unsigned q, unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

DivAlgebraElement local_satake(const CurveData& C, int x, int n)
{
    DivAlgebraElement e;
    const Integer qx = place_norm(C, x);
    Integer c = 1;
    for (int i = 0; i <= n; ++i) {
        Divisor E;
        if (n - 2 * i != 0) E[x] = n - 2 * i;
        e.add_term(E, Rational(c));
        c *= qx;
    }
    return e;
}

} // namespace

HeckeElement HeckeElement::unit() { return basis({}); }

HeckeElement HeckeElement::basis(const Divisor& D)
{
    HeckeElement h;
    h.add_term(D, 1);
    return h;
}

void HeckeElement::add_term(const Divisor& D, const Rational& c)
{
    if (!is_effective(D)) throw std::invalid_argument("Hecke basis index must be effective");
    accumulate(terms, D, c);
}

long HeckeElement::support_degree(const CurveData& C) const
{
    long d = 0;
    for (const auto& [D, c] : terms) d = std::max(d, C.degree(D));
    return d;
}

void DivAlgebraElement::add_term(const Divisor& D, const Rational& c) { accumulate(terms, D, c); }
void PicAlgebraElement::add_term(const PicClass& k, const Rational& v) { accumulate(terms, k, v); }

HeckeElement operator+(const HeckeElement& a, const HeckeElement& b)
{
    HeckeElement r = a;
    for (const auto& [D, c] : b.terms) r.add_term(D, c);
    return r;
}

HeckeElement operator-(const HeckeElement& a, const HeckeElement& b) { return a + Rational(-1) * b; }

HeckeElement operator*(const Rational& s, const HeckeElement& a)
{
    HeckeElement r;
    for (const auto& [D, c] : a.terms) r.add_term(D, s * c);
    return r;
}

DivAlgebraElement operator*(const DivAlgebraElement& a, const DivAlgebraElement& b)
{
    DivAlgebraElement r;
    for (const auto& [D, x] : a.terms)
        for (const auto& [E, y] : b.terms) r.add_term(divisor_add(D, E), x * y);
    return r;
}

DivAlgebraElement operator+(const DivAlgebraElement& a, const DivAlgebraElement& b)
{
    DivAlgebraElement r = a;
    for (const auto& [D, c] : b.terms) r.add_term(D, c);
    return r;
}

Integer place_norm(const CurveData& C, int place)
{
    return power(C.q(), static_cast<unsigned long>(C.place(place).degree));
}

DivAlgebraElement satake(const CurveData& C, const HeckeElement& f)
{
    DivAlgebraElement out;
    for (const auto& [D, c] : f.terms) {
        DivAlgebraElement s;
        s.add_term({}, c);
        for (const auto& [x, n] : D) s = s * local_satake(C, x, n);
        out = out + s;
    }
    return out;
}

bool is_satake_invariant(const CurveData& C, const DivAlgebraElement& e)
{
    for (const auto& [E, c] : e.terms) {
        for (const auto& [x, n] : E) {
            // t_x^n -> q_x^n t_x^{-n}
            Divisor F = E;
            F[x] = -n;
            Rational scale(power(C.q(), static_cast<unsigned long>(C.place(x).degree * std::abs(n))));
            if (n < 0) scale = 1 / scale;
            auto it = e.terms.find(F);
            if (it == e.terms.end() || it->second != c * scale) return false;
        }
    }
    return true;
}

HeckeElement from_satake(const CurveData& C, DivAlgebraElement e)
{
    HeckeElement out;
    while (!e.terms.empty()) {
        const Divisor* lead = nullptr;
        long best = -1;
        for (const auto& [E, c] : e.terms) {
            if (!is_effective(E)) continue;
            const long d = C.degree(E);
            if (d > best) best = d, lead = &E;
        }
        if (!lead) throw std::domain_error("element is not in the image of the Satake transform");
        const Divisor D = *lead;
        const Rational c = e.terms.at(D);
        out.add_term(D, c);
        HeckeElement h;
        h.add_term(D, -c);
        e = e + satake(C, h);
    }
    return out;
}

HeckeElement hecke_mul(const CurveData& C, const HeckeElement& f, const HeckeElement& g)
{
    return from_satake(C, satake(C, f) * satake(C, g));
}

PicAlgebraElement pic_mul(const CurveData& C, const PicAlgebraElement& a, const PicAlgebraElement& b)
{
    PicAlgebraElement r;
    for (const auto& [k, x] : a.terms)
        for (const auto& [l, y] : b.terms) r.add_term(C.add(k, l), x * y);
    return r;
}

PicAlgebraElement iota_pic(const CurveData& C, const PicAlgebraElement& e)
{
    PicAlgebraElement r;
    for (const auto& [k, c] : e.terms) {
        Rational scale(power(C.q(), static_cast<unsigned long>(std::labs(k.degree))));
        if (k.degree < 0) scale = 1 / scale;
        r.add_term(C.negate(k), c * scale);
    }
    return r;
}

PicAlgebraElement pic_unit(const CurveData& C)
{
    PicAlgebraElement r;
    r.add_term(PicClass{0, C.jac_identity()}, 1);
    return r;
}

PicAlgebraElement a_eis(const CurveData& C, const HeckeElement& f)
{
    PicAlgebraElement r;
    for (const auto& [E, c] : satake(C, f).terms) r.add_term(C.divisor_class(E), c);
    return r;
}

std::vector<HeckeElement> eis_kernel_basis(const CurveData& C, int N)
{
    if (N < 1) throw std::invalid_argument("kernel truncation degree must be positive");
    std::vector<Divisor> domain;
    for (int n = 0; n <= N; ++n)
        for (auto& D : effective_divisors(C, n)) domain.push_back(std::move(D));
    std::map<PicClass, std::size_t> rows;
    std::vector<PicAlgebraElement> images;
    for (const auto& D : domain) {
        images.push_back(a_eis(C, HeckeElement::basis(D)));
        for (const auto& [k, c] : images.back().terms) rows.emplace(k, rows.size());
    }
    // images have integer coefficients: powers of q
    IntMatrix A(rows.size(), std::vector<Integer>(domain.size(), 0));
    for (std::size_t j = 0; j < domain.size(); ++j)
        for (const auto& [k, c] : images[j].terms) A[rows.at(k)][j] = c.get_num();
    std::vector<HeckeElement> out;
    for (const auto& v : integer_kernel(std::move(A), domain.size())) {
        HeckeElement f;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) f.add_term(domain[j], Rational(v[j]));
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const HeckeElement& a, const HeckeElement& b) { return a.terms.size() < b.terms.size(); });
    return out;
}

namespace {

void parse_places(const CurveData& C, std::istringstream& ls, Divisor& D, int max_place_degree)
{
    std::string tok;
    while (ls >> tok) {
        const auto colon = tok.rfind(':');
        if (colon == std::string::npos) throw std::invalid_argument("expected place:mult, got '" + tok + "'");
        const long m = std::stol(tok.substr(colon + 1));
        if (m < 0) throw std::invalid_argument("Hecke basis index must be effective");
        const int id = find_place(C, tok.substr(0, colon), max_place_degree);
        if (m) D[id] += static_cast<int>(m);
    }
}

} // namespace

HeckeElement parse_hecke_element(const CurveData& C, std::istream& in, int max_place_degree)
{
    HeckeElement f;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        const Rational c = parse_rationals(tok).at(0);
        Divisor D;
        parse_places(C, ls, D, max_place_degree);
        f.add_term(D, c);
    }
    return f;
}

Divisor parse_divisor(const CurveData& C, const std::string& s, int max_place_degree)
{
    std::istringstream ls(s);
    Divisor D;
    parse_places(C, ls, D, max_place_degree);
    return D;
}

std::string format_hecke_element(const CurveData& C, const HeckeElement& f)
{
    std::ostringstream os;
    for (const auto& [D, c] : f.terms) {
        os << to_string(c);
        for (const auto& [x, m] : D) os << ' ' << place_label(C, x) << ':' << m;
        os << '\n';
    }
    return os.str();
}

std::string to_string(const CurveData& C, const HeckeElement& f)
{
    if (f.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [D, c] : f.terms) {
        os << (first ? "" : " + ") << to_string(c) << "*h[" << to_string(C, D) << "]";
        first = false;
    }
    return os.str();
}

std::string to_string(const CurveData& C, const DivAlgebraElement& e)
{
    if (e.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [D, c] : e.terms) {
        os << (first ? "" : " + ") << to_string(c) << "*t[" << to_string(C, D) << "]";
        first = false;
    }
    return os.str();
}

std::string to_string(const PicAlgebraElement& e)
{
    if (e.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : e.terms) {
        os << (first ? "" : " + ") << to_string(c) << "*[deg " << k.degree << ", jac " << k.jac << "]";
        first = false;
    }
    return os.str();
}

} // namespace ffrtf
