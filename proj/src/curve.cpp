// SPDX-License-Identifier: MIT
#include "ffrtf/curve.hpp"
#include "ffrtf/linalg.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

struct PolyLess {
    bool operator()(const Poly& a, const Poly& b) const { return poly::less(a, b); }
};

fe element_from_code(const Field& F, long v)
{
    if (F.k() == 1) return F.from_int(v);
    if (v < 0 || v >= static_cast<long>(F.q())) throw std::invalid_argument("field element code out of range");
    return static_cast<fe>(v);
}

Poly poly_from_codes(const Field& F, const std::vector<long>& codes)
{
    Poly p;
    for (long v : codes) p.push_back(element_from_code(F, v));
    poly::trim(p);
    return p;
}

// s *= (1 - sign T^d)^{-a}, truncated at T^N
void mul_euler(std::vector<Integer>& s, int d, const Integer& a, int sign, int N)
{
    if (a == 0) return;
    std::vector<Integer> coef(static_cast<std::size_t>(N / d) + 1);
    for (std::size_t k = 0; k < coef.size(); ++k) {
        Integer top = a + static_cast<long>(k) - 1;
        mpz_bin_ui(coef[k].get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
        if (sign < 0 && k % 2) coef[k] = -coef[k];
    }
    std::vector<Integer> r(s.size(), Integer(0));
    for (int i = 0; i <= N; ++i) {
        if (s[static_cast<std::size_t>(i)] == 0) continue;
        for (std::size_t k = 0; i + static_cast<int>(k) * d <= N; ++k)
            r[static_cast<std::size_t>(i) + k * static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(i)] * coef[k];
    }
    s = std::move(r);
}

// (1 - T)(1 - qT) prod_d (1 - T^d)^{-a_d}, truncated at T^N
std::vector<Integer> numerator_series(long q, const std::vector<Integer>& counts, int N)
{
    std::vector<Integer> s(static_cast<std::size_t>(N) + 1, Integer(0));
    s[0] = 1;
    for (int d = 1; d <= N && d <= static_cast<int>(counts.size()); ++d) mul_euler(s, d, counts[static_cast<std::size_t>(d) - 1], 1, N);
    std::vector<Integer> r(s.size(), Integer(0));
    for (int i = 0; i <= N; ++i) {
        r[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)];
        if (i >= 1) r[static_cast<std::size_t>(i)] -= (q + 1) * s[static_cast<std::size_t>(i) - 1];
        if (i >= 2) r[static_cast<std::size_t>(i)] += q * s[static_cast<std::size_t>(i) - 2];
    }
    return r;
}

QPoly to_qpoly(const std::vector<Integer>& v, int n)
{
    QPoly p;
    for (int i = 0; i <= n && i < static_cast<int>(v.size()); ++i) p.emplace_back(v[static_cast<std::size_t>(i)]);
    qpoly::trim(p);
    return p;
}

std::string place_label(const Field& F, const ClosedPoint& x)
{
    if (x.xline == XLine::none) {
        std::ostringstream os;
        os << (x.eta_sign > 0 ? "s" : "i") << x.key.poly[0] << "." << x.key.poly[1];
        return os.str();
    }
    if (x.xline == XLine::infinity) return x.key.branch > 0 ? "oo+" : "oo-";
    std::string s = "(" + to_string(F, x.key.poly) + ")";
    if (x.key.branch > 0) s += "+";
    if (x.key.branch < 0) s += "-";
    return s;
}

} // namespace

struct CurveData::Impl {
    CurveSpec spec;
    Backend backend = Backend::hyperelliptic;
    Field F;
    int g = 0;
    Poly f, f1, f2, frev;
    fe c = 0; // the smaller square root of lc(f)
    int max_deg = 0;

    mutable std::recursive_mutex mu;
    mutable std::deque<ClosedPoint> places;
    mutable std::map<PlaceKey, int> index;
    mutable std::map<int, std::vector<int>> by_degree;
    mutable std::map<int, std::pair<Poly, int>> roots; // split place -> (root, precision)
    mutable Poly rho{};                                 // series root of reverse(f) at oo+

    // class group
    mutable bool jac_ready = false;
    mutable std::vector<Divisor> jac_reps;
    mutable std::map<Divisor, int> jac_index;
    mutable std::map<Divisor, int> canon_memo;
    mutable std::map<std::pair<int, int>, int> add_memo;
    mutable std::map<int, int> place_jac;
    mutable int identity = 0;
    Integer synthetic_h = 0;

    mutable bool zeta_ready = false;
    mutable QPoly PX, PXp;

    explicit Impl(const FieldSpec& fs) : F(fs) {}

    int intern(const PlaceKey& key, int degree, int eta, XLine xl) const
    {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(places.size());
        places.push_back(ClosedPoint{id, key, degree, eta, xl});
        index.emplace(key, id);
        return id;
    }

    std::vector<int> over(const Poly& p) const
    {
        std::lock_guard lock(mu);
        if (auto it = index.find(PlaceKey{p, 1}); it != index.end()) return {it->second, it->second + 1};
        if (auto it = index.find(PlaceKey{p, 0}); it != index.end()) return {it->second};
        if (p.empty() || poly::lc(p) != 1 || poly::deg(p) < 1) throw std::invalid_argument("places_over needs a monic irreducible polynomial");
        const int d = poly::deg(p);
        Poly r = poly::mod(F, f, p);
        if (r.empty()) {
            int eta = poly::mod(F, f1, p).empty() ? poly::legendre(F, f2, p) : poly::legendre(F, f1, p);
            return {intern(PlaceKey{p, 0}, d, eta, XLine::branch)};
        }
        if (poly::legendre(F, r, p) == 1) {
            const int eta = poly::legendre(F, f1, p);
            int plus = intern(PlaceKey{p, 1}, d, eta, XLine::split);
            int minus = intern(PlaceKey{p, -1}, d, eta, XLine::split);
            return {plus, minus};
        }
        return {intern(PlaceKey{p, 0}, 2 * d, 1, XLine::inert)};
    }

    const std::vector<int>& of_degree(int n) const
    {
        std::lock_guard lock(mu);
        if (auto it = by_degree.find(n); it != by_degree.end()) return it->second;
        if (backend == Backend::synthetic) throw std::out_of_range("degree exceeds synthetic place data");
        std::vector<int> ids;
        if (n == 1) ids = {0, 1};
        for (const Poly& p : irreducibles_of_degree(F, n))
            for (int id : over(p))
                if (places[static_cast<std::size_t>(id)].degree == n) ids.push_back(id);
        if (n % 2 == 0)
            for (const Poly& p : irreducibles_of_degree(F, n / 2))
                for (int id : over(p))
                    if (places[static_cast<std::size_t>(id)].degree == n) ids.push_back(id);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return places[static_cast<std::size_t>(a)].key < places[static_cast<std::size_t>(b)].key; });
        return by_degree[n] = std::move(ids);
    }

    // root of y^2 = f modulo p^n on the branch of a split place
    Poly split_root(int id, int n) const
    {
        std::lock_guard lock(mu);
        if (!roots.count(id)) {
            const ClosedPoint& x = places[static_cast<std::size_t>(id)];
            const Poly& p = x.key.poly;
            Poly a = poly::sqrt_mod(F, poly::mod(F, f, p), p, spec.seed);
            Poly b = poly::mod(F, poly::neg(F, a), p);
            if (poly::less(b, a)) std::swap(a, b);
            const int plus = x.key.branch > 0 ? id : id - 1;
            roots[plus] = {a, 1};
            roots[plus + 1] = {b, 1};
        }
        auto& [r, prec] = roots.at(id);
        if (prec >= n) return poly::mod(F, r, poly::pow(F, places[static_cast<std::size_t>(id)].key.poly, static_cast<unsigned>(n)));
        const Poly& p = places[static_cast<std::size_t>(id)].key.poly;
        while (prec < n) {
            prec = std::min(2 * prec, n);
            Poly m = poly::pow(F, p, static_cast<unsigned>(prec));
            Poly err = poly::sub(F, poly::mulmod(F, r, r, m), poly::mod(F, f, m));
            Poly inv = poly::inv_mod(F, poly::scale(F, r, F.from_int(2)), m);
            r = poly::mod(F, poly::sub(F, r, poly::mulmod(F, err, inv, m)), m);
        }
        return r;
    }

    // rho mod z^T, rho^2 = reverse(f), rho(0) = c
    Poly inf_root(int T) const
    {
        std::lock_guard lock(mu);
        if (rho.empty()) rho.push_back(c);
        const fe inv2c = F.inv(F.mul(F.from_int(2), c));
        while (static_cast<int>(rho.size()) < T) {
            const std::size_t n = rho.size();
            fe acc = n < frev.size() ? frev[n] : fe(0);
            for (std::size_t i = 1; i < n; ++i) acc = F.sub(acc, F.mul(rho[i], rho[n - i]));
            rho.push_back(F.mul(acc, inv2c));
        }
        Poly r(rho.begin(), rho.begin() + T);
        poly::trim(r);
        return r;
    }

    Poly series_mul(const Poly& a, const Poly& b, int T) const
    {
        Poly r = poly::mul(F, a, b);
        if (static_cast<int>(r.size()) > T) r.resize(static_cast<std::size_t>(T));
        poly::trim(r);
        return r;
    }

    static int zval(const Poly& a)
    {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i]) return static_cast<int>(i);
        return -1;
    }
};

CurveData auxiliary_curve(const Field& F, const Poly& f)
{
    auto impl = std::make_shared<CurveData::Impl>(F.spec());
    impl->backend = Backend::hyperelliptic;
    impl->f = f;
    poly::trim(impl->f);
    const int d = poly::deg(impl->f);
    if (d < 2 || d % 2) throw std::invalid_argument("hyperelliptic model needs even degree >= 2");
    if (!poly::is_squarefree(F, impl->f)) throw std::invalid_argument("f must be squarefree");
    if (!F.sqrt(poly::lc(impl->f), impl->c)) throw std::invalid_argument("leading coefficient of f must be a square");
    impl->g = d / 2 - 1;
    impl->f1 = Poly{1};
    impl->f2 = impl->f;
    impl->frev = poly::reverse(impl->f, d);
    impl->spec.backend = Backend::hyperelliptic;
    impl->spec.field = F.spec();
    impl->intern(PlaceKey{{}, 1}, 1, 1, XLine::infinity);
    impl->intern(PlaceKey{{}, -1}, 1, 1, XLine::infinity);
    return CurveData(impl);
}

CurveData::CurveData(const CurveSpec& spec)
{
    spec.field.validate();
    impl_ = std::make_shared<Impl>(spec.field);
    Impl& I = *impl_;
    I.spec = spec;
    I.backend = spec.backend;
    const Field& F = I.F;
    if (spec.backend == Backend::hyperelliptic) {
        I.f = poly_from_codes(F, spec.f);
        I.f1 = poly_from_codes(F, spec.f1);
        const int d = poly::deg(I.f);
        if (d < 6 || d % 2) throw std::invalid_argument("deg f must be 2g+2 with g >= 2");
        if (!poly::is_squarefree(F, I.f)) throw std::invalid_argument("f must be squarefree");
        if (!F.sqrt(poly::lc(I.f), I.c)) throw std::invalid_argument("leading coefficient of f must be a square");
        if (I.f1.empty()) throw std::invalid_argument("f1 must be nonzero");
        Poly rem;
        poly::divmod(F, I.f, I.f1, I.f2, rem);
        if (!rem.empty()) throw std::invalid_argument("f1 must divide f");
        if (poly::deg(I.f1) % 2 || poly::deg(I.f2) % 2) throw std::invalid_argument("ramified cover: f1 and f2 must have even degree");
        if (poly::deg(I.f1) == 0 || poly::deg(I.f2) == 0)
            throw std::invalid_argument("cover is not geometrically connected: f1 and f2 must be nonconstant");
        if (poly::deg(poly::gcd(F, I.f1, I.f2)) > 0) throw std::invalid_argument("ramified cover: f1 and f2 must be coprime");
        I.g = d / 2 - 1;
        I.frev = poly::reverse(I.f, d);
        const int eta_inf = F.chi(poly::lc(I.f1));
        I.intern(PlaceKey{{}, 1}, 1, eta_inf, XLine::infinity);
        I.intern(PlaceKey{{}, -1}, 1, eta_inf, XLine::infinity);
        return;
    }
    // synthetic
    I.g = spec.genus;
    if (I.g < 2) throw std::invalid_argument("synthetic curve needs genus >= 2");
    if (spec.split.size() != spec.inert.size()) throw std::invalid_argument("split and inert tables differ in length");
    I.max_deg = static_cast<int>(spec.split.size());
    const int gp = 2 * I.g - 1;
    if (I.max_deg < 2 * gp) throw std::invalid_argument("insufficient place data: need counts up to degree 2g'");
    const long q = F.q();
    std::vector<Integer> a, ap(static_cast<std::size_t>(I.max_deg), Integer(0));
    for (int n = 1; n <= I.max_deg; ++n) {
        const long s = spec.split[static_cast<std::size_t>(n) - 1], i = spec.inert[static_cast<std::size_t>(n) - 1];
        if (s < 0 || i < 0) throw std::invalid_argument("negative place count");
        a.emplace_back(s + i);
        ap[static_cast<std::size_t>(n) - 1] += 2 * s;
        if (2 * n <= I.max_deg) ap[static_cast<std::size_t>(2 * n) - 1] += i;
    }
    const int N = I.max_deg;
    auto PX = numerator_series(q, a, N);
    auto PXp = numerator_series(q, ap, N);
    for (int n = 2 * I.g + 1; n <= N; ++n)
        if (PX[static_cast<std::size_t>(n)] != 0) throw std::invalid_argument("inconsistent synthetic counts: zeta numerator of X does not truncate");
    for (int n = 2 * gp + 1; n <= N; ++n)
        if (PXp[static_cast<std::size_t>(n)] != 0) throw std::invalid_argument("inconsistent synthetic counts: zeta numerator of X' does not truncate");
    std::vector<Integer> L(static_cast<std::size_t>(N) + 1, Integer(0));
    L[0] = 1;
    for (int n = 1; n <= N; ++n) {
        mul_euler(L, n, Integer(spec.split[static_cast<std::size_t>(n) - 1]), 1, N);
        mul_euler(L, n, Integer(spec.inert[static_cast<std::size_t>(n) - 1]), -1, N);
    }
    for (int n = 2 * I.g - 1; n <= N; ++n)
        if (L[static_cast<std::size_t>(n)] != 0) throw std::invalid_argument("inconsistent synthetic counts: L(eta) fails to truncate at degree 2g-2");
    if (L[static_cast<std::size_t>(2 * I.g - 2)] == 0) throw std::invalid_argument("inconsistent synthetic counts: L(eta) has degree below 2g-2");
    I.PX = to_qpoly(PX, 2 * I.g);
    I.PXp = to_qpoly(PXp, 2 * gp);
    I.zeta_ready = true;
    for (const QPoly* P : {&I.PX, &I.PXp}) {
        WeilAnalysis w = analyze_weil(*P, q, 1);
        if (!w.functional_equation || !w.riemann_hypothesis) throw std::invalid_argument("inconsistent synthetic counts: Weil conditions fail");
    }
    Rational h = 0;
    for (const auto& v : I.PX) h += v;
    I.synthetic_h = h.get_num();
    if (I.synthetic_h % 2 != 0) throw std::invalid_argument("inconsistent synthetic counts: #Jac is odd, eta cannot be a class character");
    for (int n = 1; n <= N; ++n) {
        std::vector<int> ids;
        long idx = 0;
        for (long s = 0; s < spec.split[static_cast<std::size_t>(n) - 1]; ++s, ++idx)
            ids.push_back(I.intern(PlaceKey{{static_cast<fe>(n), static_cast<fe>(idx)}, 1}, n, 1, XLine::none));
        for (long s = 0; s < spec.inert[static_cast<std::size_t>(n) - 1]; ++s, ++idx)
            ids.push_back(I.intern(PlaceKey{{static_cast<fe>(n), static_cast<fe>(idx)}, -1}, n, -1, XLine::none));
        I.by_degree[n] = std::move(ids);
    }
    if (spec.split[0] + spec.inert[0] == 0) throw std::invalid_argument("synthetic curve needs a rational place");
}

CurveData curve_from_spec(const CurveSpec& spec) { return CurveData(spec); }

Backend CurveData::backend() const { return impl_->backend; }
const Field& CurveData::field() const { return impl_->F; }
unsigned CurveData::q() const { return impl_->F.q(); }
int CurveData::genus() const { return impl_->g; }
const std::string& CurveData::name() const { return impl_->spec.name; }
const CurveSpec& CurveData::spec() const { return impl_->spec; }

static void need_hyperelliptic(const CurveData& C, const char* what)
{
    if (C.backend() != Backend::hyperelliptic) throw std::logic_error(std::string(what) + " needs the hyperelliptic backend");
}

const Poly& CurveData::f() const
{
    need_hyperelliptic(*this, "f");
    return impl_->f;
}
const Poly& CurveData::f1() const
{
    need_hyperelliptic(*this, "f1");
    return impl_->f1;
}
const Poly& CurveData::f2() const
{
    need_hyperelliptic(*this, "f2");
    return impl_->f2;
}

int CurveData::max_degree() const { return impl_->backend == Backend::synthetic ? impl_->max_deg : -1; }

const ClosedPoint& CurveData::place(int id) const
{
    std::lock_guard lock(impl_->mu);
    if (id < 0 || id >= static_cast<int>(impl_->places.size())) throw std::out_of_range("unknown place id");
    return impl_->places[static_cast<std::size_t>(id)];
}

int CurveData::place_id(const PlaceKey& key) const
{
    std::lock_guard lock(impl_->mu);
    if (auto it = impl_->index.find(key); it != impl_->index.end()) return it->second;
    if (impl_->backend == Backend::hyperelliptic && !key.poly.empty()) {
        if (!poly::is_irreducible(impl_->F, key.poly)) throw std::invalid_argument("place key polynomial is not irreducible");
        impl_->over(key.poly);
        if (auto it = impl_->index.find(key); it != impl_->index.end()) return it->second;
    }
    throw std::out_of_range("no place with this key");
}

std::vector<int> CurveData::places_of_degree(int n) const
{
    if (n < 1) return {};
    if (impl_->backend == Backend::synthetic && n > impl_->max_deg) throw std::out_of_range("degree exceeds synthetic place data");
    return impl_->of_degree(n);
}

std::vector<int> CurveData::places_up_to(int N) const
{
    if (N < 1) throw std::invalid_argument("places_up_to needs N >= 1");
    std::vector<int> out;
    for (int n = 1; n <= N; ++n) {
        auto v = places_of_degree(n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

int CurveData::inf_plus() const
{
    need_hyperelliptic(*this, "oo+");
    return 0;
}
int CurveData::inf_minus() const
{
    need_hyperelliptic(*this, "oo-");
    return 1;
}

std::vector<int> CurveData::places_over(const Poly& p) const
{
    need_hyperelliptic(*this, "places_over");
    return impl_->over(p);
}

long CurveData::degree(const Divisor& D) const
{
    long d = 0;
    for (const auto& [id, m] : D) d += static_cast<long>(m) * place(id).degree;
    return d;
}

int CurveData::eta(const Divisor& D) const
{
    int e = 1;
    for (const auto& [id, m] : D)
        if (m % 2 && place(id).eta_sign < 0) e = -e;
    return e;
}

bool CurveData::divisor_less(const Divisor& a, const Divisor& b) const
{
    auto keyed = [&](const Divisor& D) {
        std::vector<std::pair<PlaceKey, int>> v;
        for (const auto& [id, m] : D) v.emplace_back(place(id).key, m);
        std::sort(v.begin(), v.end());
        return v;
    };
    return keyed(a) < keyed(b);
}

FFElement CurveData::add(const FFElement& a, const FFElement& b) const
{
    const Field& F = impl_->F;
    return {poly::add(F, a.c, b.c), poly::add(F, a.d, b.d)};
}

FFElement CurveData::sub(const FFElement& a, const FFElement& b) const
{
    const Field& F = impl_->F;
    return {poly::sub(F, a.c, b.c), poly::sub(F, a.d, b.d)};
}

FFElement CurveData::mul(const FFElement& a, const FFElement& b) const
{
    need_hyperelliptic(*this, "function field arithmetic");
    const Field& F = impl_->F;
    Poly c = poly::add(F, poly::mul(F, a.c, b.c), poly::mul(F, poly::mul(F, a.d, b.d), impl_->f));
    Poly d = poly::add(F, poly::mul(F, a.c, b.d), poly::mul(F, a.d, b.c));
    return {c, d};
}

Poly CurveData::norm(const FFElement& h) const
{
    need_hyperelliptic(*this, "norm");
    const Field& F = impl_->F;
    return poly::sub(F, poly::mul(F, h.c, h.c), poly::mul(F, poly::mul(F, h.d, h.d), impl_->f));
}

int CurveData::valuation(int id, const FFElement& h) const
{
    need_hyperelliptic(*this, "valuation");
    if (h.is_zero()) throw std::domain_error("valuation of zero");
    const Impl& I = *impl_;
    const Field& F = I.F;
    const ClosedPoint x = place(id);
    auto vp = [&](const Poly& a) { return a.empty() ? 1 << 28 : poly::valuation(F, a, x.key.poly); };
    switch (x.xline) {
    case XLine::inert: return std::min(vp(h.c), vp(h.d));
    case XLine::branch: return std::min(2 * vp(h.c), 2 * vp(h.d) + 1);
    case XLine::split: {
        if (h.d.empty()) return vp(h.c);
        if (h.c.empty()) return vp(h.d);
        const int n = poly::valuation(F, norm(h), x.key.poly) + 1;
        const Poly r = I.split_root(id, n);
        const Poly m = poly::pow(F, x.key.poly, static_cast<unsigned>(n));
        Poly v = poly::mod(F, poly::add(F, h.c, poly::mul(F, h.d, r)), m);
        if (v.empty()) throw std::logic_error("split valuation exceeded its precision bound");
        return vp(v);
    }
    case XLine::infinity: {
        const int g = I.g;
        const int K = std::max(poly::deg(h.c), h.d.empty() ? -1 : poly::deg(h.d) + g + 1);
        const Poly Cz = h.c.empty() ? Poly{} : poly::reverse(h.c, K);
        const Poly Dz = h.d.empty() ? Poly{} : poly::reverse(h.d, K - g - 1);
        const int T = 2 * K - poly::deg(norm(h)) + 1;
        Poly rho = I.inf_root(T);
        if (x.key.branch < 0) rho = poly::neg(F, rho);
        Poly s = poly::add(F, Cz, I.series_mul(Dz, rho, T));
        if (static_cast<int>(s.size()) > T) s.resize(static_cast<std::size_t>(T));
        poly::trim(s);
        const int v = Impl::zval(s);
        if (v < 0) throw std::logic_error("valuation at infinity exceeded its precision bound");
        return v - K;
    }
    default: break;
    }
    throw std::logic_error("valuation at an unknown place kind");
}

Divisor CurveData::principal_divisor(const FFElement& h) const
{
    need_hyperelliptic(*this, "principal_divisor");
    if (h.is_zero()) throw std::domain_error("principal divisor of zero");
    Divisor D;
    const Poly N = norm(h);
    for (const auto& fac : poly::factor(impl_->F, N, nullptr, impl_->spec.seed)) {
        for (int id : impl_->over(fac.p)) {
            int v = valuation(id, h);
            if (v) D[id] = v;
        }
    }
    for (int id : {0, 1}) {
        int v = valuation(id, h);
        if (v) D[id] += v;
        if (D.count(id) && D[id] == 0) D.erase(id);
    }
    if (degree(D) != 0) throw std::logic_error("principal divisor of nonzero degree");
    return D;
}

Divisor CurveData::principal_divisor(const FFElement& num, const Poly& den) const
{
    return divisor_sub(principal_divisor(num), principal_divisor(FFElement{den, {}}));
}

std::vector<FFElement> CurveData::rr_basis(int m) const
{
    need_hyperelliptic(*this, "rr_basis");
    if (m < 0) throw std::invalid_argument("rr_basis needs m >= 0");
    std::vector<FFElement> out;
    for (int i = 0; i <= m; ++i) out.push_back({poly::x_pow(i), {}});
    for (int j = 0; j <= m - impl_->g - 1; ++j) out.push_back({{}, poly::x_pow(j)});
    return out;
}

RRSpace CurveData::riemann_roch(const Divisor& D) const
{
    need_hyperelliptic(*this, "riemann_roch");
    const Impl& I = *impl_;
    const Field& F = I.F;
    const int g = I.g;
    std::map<Poly, std::vector<std::pair<int, int>>, PolyLess> groups;
    int n_inf[2] = {0, 0};
    for (const auto& [id, m] : D) {
        const ClosedPoint& x = place(id);
        if (x.xline == XLine::infinity)
            n_inf[id] = m;
        else
            groups[x.key.poly].emplace_back(id, m);
    }
    RRSpace out;
    out.den = Poly{1};
    std::map<Poly, int, PolyLess> ep;
    for (const auto& [p, list] : groups) {
        int e = 0;
        for (const auto& [id, m] : list) {
            const int ex = place(id).xline == XLine::branch ? 2 : 1;
            if (m > 0) e = std::max(e, (m + ex - 1) / ex);
        }
        ep[p] = e;
        if (e) out.den = poly::mul(F, out.den, poly::pow(F, p, static_cast<unsigned>(e)));
    }
    const int degP = poly::deg(out.den);
    const int M = degP + std::max(n_inf[0], n_inf[1]);
    if (M < 0) return out;
    const int nA = M + 1, nB = std::max(0, M - g);
    const std::size_t ncols = static_cast<std::size_t>(nA + nB);
    FqMatrix rows;
    // cols[j] is the coefficient vector of unknown j's contribution
    auto emit = [&](const std::vector<Poly>& cols, int nrows) {
        for (int k = 0; k < nrows; ++k) {
            std::vector<fe> row(ncols, 0);
            bool any = false;
            for (std::size_t j = 0; j < ncols; ++j)
                if (static_cast<int>(cols[j].size()) > k) {
                    row[j] = cols[j][static_cast<std::size_t>(k)];
                    any = any || row[j];
                }
            if (any) rows.push_back(std::move(row));
        }
    };
    for (const auto& [p, list] : groups) {
        const int e = ep[p];
        std::map<int, int> mult(list.begin(), list.end());
        const int dp = poly::deg(p);
        for (int id : I.over(p)) {
            const ClosedPoint& x = place(id);
            const int nx = mult.count(id) ? mult[id] : 0;
            const int ex = x.xline == XLine::branch ? 2 : 1;
            const int t = ex * e - nx;
            if (t <= 0) continue;
            std::vector<Poly> cols(ncols);
            if (x.xline == XLine::split) {
                const Poly m = poly::pow(F, p, static_cast<unsigned>(t));
                const Poly r = I.split_root(id, t);
                for (int i = 0; i < nA; ++i) cols[static_cast<std::size_t>(i)] = poly::mod(F, poly::x_pow(i), m);
                for (int j = 0; j < nB; ++j) cols[static_cast<std::size_t>(nA + j)] = poly::mod(F, poly::mul(F, poly::x_pow(j), r), m);
                emit(cols, t * dp);
            } else {
                const int ta = x.xline == XLine::branch ? (t + 1) / 2 : t;
                const int tb = x.xline == XLine::branch ? t / 2 : t;
                if (ta > 0) {
                    const Poly m = poly::pow(F, p, static_cast<unsigned>(ta));
                    std::vector<Poly> ca(ncols);
                    for (int i = 0; i < nA; ++i) ca[static_cast<std::size_t>(i)] = poly::mod(F, poly::x_pow(i), m);
                    emit(ca, ta * dp);
                }
                if (tb > 0) {
                    const Poly m = poly::pow(F, p, static_cast<unsigned>(tb));
                    std::vector<Poly> cb(ncols);
                    for (int j = 0; j < nB; ++j) cb[static_cast<std::size_t>(nA + j)] = poly::mod(F, poly::x_pow(j), m);
                    emit(cb, tb * dp);
                }
            }
        }
    }
    for (int b = 0; b < 2; ++b) {
        const int T = M - n_inf[b] - degP;
        if (T <= 0) continue;
        Poly rho = I.inf_root(T);
        if (b == 1) rho = poly::neg(F, rho);
        std::vector<Poly> cols(ncols);
        for (int i = 0; i < nA; ++i) cols[static_cast<std::size_t>(i)] = poly::x_pow(M - i);
        for (int j = 0; j < nB; ++j) cols[static_cast<std::size_t>(nA + j)] = I.series_mul(poly::x_pow(M - g - 1 - j), rho, T);
        emit(cols, T);
    }
    for (const auto& v : nullspace(F, rows, ncols)) {
        FFElement h;
        h.c.assign(v.begin(), v.begin() + nA);
        h.d.assign(v.begin() + nA, v.end());
        poly::trim(h.c);
        poly::trim(h.d);
        out.basis.push_back(std::move(h));
    }
    return out;
}

// ---- class group ----

namespace detail {

Divisor canonical_effective(const CurveData& C, const Divisor& E)
{
    RRSpace L = C.riemann_roch(E);
    if (L.dimension() == 0) throw std::logic_error("effective divisor with empty linear system");
    if (L.dimension() == 1) return E;
    const Field& F = C.field();
    const std::size_t n = L.dimension();
    Divisor best = E;
    std::vector<fe> lam(n, 0);
    // projective points: first nonzero coordinate is 1
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::fill(lam.begin(), lam.end(), 0);
        lam[lead] = 1;
        const std::size_t free = n - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free; ++i) total *= F.q();
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t t = code;
            for (std::size_t i = lead + 1; i < n; ++i) {
                lam[i] = static_cast<fe>(t % F.q());
                t /= F.q();
            }
            FFElement h;
            for (std::size_t i = lead; i < n; ++i)
                if (lam[i]) h = C.add(h, FFElement{poly::scale(F, L.basis[i].c, lam[i]), poly::scale(F, L.basis[i].d, lam[i])});
            Divisor cand = divisor_add(C.principal_divisor(h, L.den), E);
            if (C.divisor_less(cand, best)) best = cand;
        }
    }
    return best;
}

} // namespace detail

namespace {

void build_jacobian(const CurveData& C, CurveData::Impl& I)
{
    if (I.jac_ready) return;
    const int g = I.g;
    if (g == 0) {
        I.jac_reps = {Divisor{}};
        I.jac_index[Divisor{}] = 0;
        I.identity = 0;
        I.jac_ready = true;
        return;
    }
    for_each_effective(C, g, [&](const Divisor& E) {
        Divisor c = detail::canonical_effective(C, E);
        if (!I.jac_index.count(c)) {
            I.jac_index[c] = static_cast<int>(I.jac_reps.size());
            I.jac_reps.push_back(c);
        }
        I.canon_memo[E] = I.jac_index[c];
        return true;
    });
    const Divisor base{{0, g}};
    I.identity = I.canon_memo.at(base);
    I.jac_ready = true;
}

// index of the class of E - g oo+ for deg E = g
int reduce_to_jac(const CurveData& C, CurveData::Impl& I, const Divisor& Dp)
{
    if (I.g == 0) return 0;
    if (is_effective(Dp))
        if (auto it = I.canon_memo.find(Dp); it != I.canon_memo.end()) return it->second;
    RRSpace L = C.riemann_roch(Dp);
    if (L.dimension() == 0) throw std::logic_error("degree-g divisor with empty linear system");
    Divisor E = divisor_add(C.principal_divisor(L.basis[0], L.den), Dp);
    if (auto it = I.canon_memo.find(E); it != I.canon_memo.end()) return it->second;
    Divisor c = detail::canonical_effective(C, E);
    auto it = I.jac_index.find(c);
    if (it == I.jac_index.end()) throw std::logic_error("reduced divisor missing from the Jacobian table");
    I.canon_memo[E] = it->second;
    return it->second;
}

} // namespace

Integer CurveData::jacobian_order() const
{
    std::lock_guard lock(impl_->mu);
    if (impl_->backend == Backend::synthetic) return impl_->synthetic_h;
    build_jacobian(*this, *impl_);
    return Integer(static_cast<unsigned long>(impl_->jac_reps.size()));
}

int CurveData::jac_identity() const
{
    std::lock_guard lock(impl_->mu);
    if (impl_->backend == Backend::synthetic) return 0;
    build_jacobian(*this, *impl_);
    return impl_->identity;
}

PicClass CurveData::add(const PicClass& a, const PicClass& b) const
{
    std::lock_guard lock(impl_->mu);
    Impl& I = *impl_;
    if (I.backend == Backend::synthetic) {
        const long h = I.synthetic_h.get_si();
        return {a.degree + b.degree, static_cast<int>((a.jac + b.jac) % h)};
    }
    build_jacobian(*this, I);
    auto key = std::minmax(a.jac, b.jac);
    auto it = I.add_memo.find(key);
    int j;
    if (it != I.add_memo.end()) {
        j = it->second;
    } else {
        Divisor s = divisor_add(I.jac_reps[static_cast<std::size_t>(a.jac)], I.jac_reps[static_cast<std::size_t>(b.jac)]);
        s[0] -= I.g;
        if (s[0] == 0) s.erase(0);
        j = reduce_to_jac(*this, I, s);
        I.add_memo[key] = j;
    }
    return {a.degree + b.degree, j};
}

PicClass CurveData::negate(const PicClass& a) const
{
    std::lock_guard lock(impl_->mu);
    Impl& I = *impl_;
    if (I.backend == Backend::synthetic) {
        const long h = I.synthetic_h.get_si();
        return {-a.degree, static_cast<int>((h - a.jac) % h)};
    }
    build_jacobian(*this, I);
    Divisor s = divisor_scale(I.jac_reps[static_cast<std::size_t>(a.jac)], -1);
    s[0] += 2 * I.g;
    if (s[0] == 0) s.erase(0);
    return {-a.degree, reduce_to_jac(*this, I, s)};
}

PicClass CurveData::divisor_class(const Divisor& D) const
{
    std::lock_guard lock(impl_->mu);
    Impl& I = *impl_;
    const long deg = degree(D);
    if (I.backend == Backend::synthetic) {
        const long h = I.synthetic_h.get_si();
        long j = 0;
        for (const auto& [id, m] : D) {
            const long jx = (2L * id + (place(id).eta_sign < 0 ? 1 : 0)) % h;
            j = ((j + static_cast<long>(m) % h * jx) % h + h) % h;
        }
        return {deg, static_cast<int>(j)};
    }
    build_jacobian(*this, I);
    PicClass acc{0, I.identity};
    for (const auto& [id, m] : D) {
        int jx;
        if (auto it = I.place_jac.find(id); it != I.place_jac.end()) {
            jx = it->second;
        } else {
            const int d = place(id).degree;
            Divisor s{{id, 1}};
            if (id == 0)
                s[0] = 1 + I.g - d;
            else if (I.g - d != 0)
                s[0] = I.g - d;
            if (s[0] == 0) s.erase(0);
            jx = reduce_to_jac(*this, I, s);
            I.place_jac[id] = jx;
        }
        PicClass base{0, jx};
        if (m < 0) base = negate(base);
        PicClass term{0, I.identity};
        for (unsigned k = static_cast<unsigned>(std::abs(m)); k; k >>= 1) {
            if (k & 1) term = add(term, base);
            if (k > 1) base = add(base, base);
        }
        acc = add(acc, term);
    }
    return {deg, acc.jac};
}

int CurveData::eta(const PicClass& c) const
{
    std::lock_guard lock(impl_->mu);
    Impl& I = *impl_;
    if (I.backend == Backend::synthetic) return c.jac % 2 ? -1 : 1;
    build_jacobian(*this, I);
    int e = eta(I.jac_reps[static_cast<std::size_t>(c.jac)]);
    if ((c.degree - I.g) % 2 && place(0).eta_sign < 0) e = -e;
    return e;
}

PicClass CurveData::canonical_class() const
{
    need_hyperelliptic(*this, "canonical_class");
    return divisor_class(canonical_divisor(*this));
}

Divisor CurveData::jacobian_representative(int jac) const
{
    std::lock_guard lock(impl_->mu);
    if (impl_->backend == Backend::synthetic) throw std::logic_error("synthetic Jacobian has no divisor representatives");
    build_jacobian(*this, *impl_);
    return impl_->jac_reps.at(static_cast<std::size_t>(jac));
}

QPoly CurveData::zeta_numerator() const
{
    std::lock_guard lock(impl_->mu);
    Impl& I = *impl_;
    if (!I.zeta_ready) {
        const int g = I.g, gp = std::max(0, 2 * g - 1);
        const int N = std::max(2 * g, 2 * gp);
        std::vector<Integer> a, ap(static_cast<std::size_t>(N), Integer(0));
        std::vector<long> s(static_cast<std::size_t>(N), 0), i(static_cast<std::size_t>(N), 0);
        for (int n = 1; n <= N; ++n)
            for (int id : places_of_degree(n)) (place(id).eta_sign > 0 ? s : i)[static_cast<std::size_t>(n) - 1]++;
        for (int n = 1; n <= N; ++n) {
            a.emplace_back(s[static_cast<std::size_t>(n) - 1] + i[static_cast<std::size_t>(n) - 1]);
            ap[static_cast<std::size_t>(n) - 1] += 2 * s[static_cast<std::size_t>(n) - 1];
            if (2 * n <= N) ap[static_cast<std::size_t>(2 * n) - 1] += i[static_cast<std::size_t>(n) - 1];
        }
        I.PX = zeta_numerator_from_counts(I.F.q(), g, a);
        I.PXp = zeta_numerator_from_counts(I.F.q(), gp, ap);
        I.zeta_ready = true;
    }
    return I.PX;
}

QPoly CurveData::cover_zeta_numerator() const
{
    zeta_numerator();
    std::lock_guard lock(impl_->mu);
    return impl_->PXp;
}

// ---- free functions ----

std::vector<ClosedPoint> places_up_to(const CurveData& C, int N)
{
    std::vector<ClosedPoint> out;
    for (int id : C.places_up_to(N)) out.push_back(C.place(id));
    return out;
}

int eta(const CurveData& C, const Divisor& D) { return C.eta(D); }
Divisor principal_divisor(const CurveData& C, const FFElement& h) { return C.principal_divisor(h); }
std::vector<FFElement> rr_basis(const CurveData& C, int m) { return C.rr_basis(m); }
PicClass divisor_class(const CurveData& C, const Divisor& D) { return C.divisor_class(D); }
PicClass canonical_class(const CurveData& C) { return C.canonical_class(); }

Divisor canonical_divisor(const CurveData& C)
{
    need_hyperelliptic(C, "canonical_divisor");
    const int g = C.genus();
    if (g == 1) return {};
    if (g < 1) throw std::logic_error("canonical divisor of a genus-0 curve is not effective");
    return Divisor{{C.inf_plus(), g - 1}, {C.inf_minus(), g - 1}};
}

void for_each_effective(const CurveData& C, int n, const std::function<bool(const Divisor&)>& visit)
{
    if (n < 0) throw std::invalid_argument("effective divisors need n >= 0");
    if (n == 0) {
        visit(Divisor{});
        return;
    }
    std::vector<int> ids = C.places_up_to(n);
    std::vector<int> degs;
    for (int id : ids) degs.push_back(C.place(id).degree);
    Divisor D;
    bool stop = false;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int r) {
        if (stop) return;
        if (r == 0) {
            if (!visit(D)) stop = true;
            return;
        }
        for (std::size_t j = i; j < ids.size() && !stop; ++j) {
            const int d = degs[j];
            if (d > r) continue;
            for (int k = 1; k * d <= r && !stop; ++k) {
                D[ids[j]] = k;
                rec(j + 1, r - k * d);
            }
            D.erase(ids[j]);
        }
    };
    rec(0, n);
}

std::vector<Divisor> effective_divisors(const CurveData& C, int n)
{
    std::vector<Divisor> out;
    for_each_effective(C, n, [&](const Divisor& D) {
        out.push_back(D);
        return true;
    });
    return out;
}

void for_each_subdivisor(const Divisor& D, const std::function<void(const Divisor&)>& visit)
{
    std::vector<std::pair<int, int>> v(D.begin(), D.end());
    for (const auto& [id, m] : v)
        if (m < 0) throw std::invalid_argument("subdivisors need an effective divisor");
    Divisor cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == v.size()) {
            visit(cur);
            return;
        }
        for (int k = 0; k <= v[i].second; ++k) {
            if (k)
                cur[v[i].first] = k;
            else
                cur.erase(v[i].first);
            rec(i + 1);
        }
        cur.erase(v[i].first);
    };
    rec(0);
}

Divisor divisor_add(const Divisor& a, const Divisor& b)
{
    Divisor r = a;
    for (const auto& [id, m] : b) {
        int& s = r[id];
        s += m;
        if (s == 0) r.erase(id);
    }
    return r;
}

Divisor divisor_sub(const Divisor& a, const Divisor& b) { return divisor_add(a, divisor_scale(b, -1)); }

Divisor divisor_scale(const Divisor& a, int k)
{
    Divisor r;
    if (k == 0) return r;
    for (const auto& [id, m] : a) r[id] = m * k;
    return r;
}

bool is_effective(const Divisor& D)
{
    for (const auto& [id, m] : D)
        if (m < 0) return false;
    return true;
}

bool divisor_leq(const Divisor& a, const Divisor& b) { return is_effective(divisor_sub(b, a)); }

QPoly zeta_numerator_from_counts(long q, int g, const std::vector<Integer>& counts)
{
    if (static_cast<int>(counts.size()) < 2 * g) throw std::invalid_argument("insufficient place data for the zeta numerator");
    std::vector<Integer> c(counts.begin(), counts.begin() + 2 * g);
    return to_qpoly(numerator_series(q, c, 2 * g), 2 * g);
}

Integer cover_jacobian_order(const CurveData& C)
{
    need_hyperelliptic(C, "cover_jacobian_order");
    const Field& F = C.field();
    Integer h = C.jacobian_order();
    for (const Poly* fi : {&C.f1(), &C.f2()}) {
        const int gi = poly::deg(*fi) / 2 - 1;
        if (gi == 0) continue;
        fe r;
        if (F.sqrt(poly::lc(*fi), r)) {
            h *= auxiliary_curve(F, *fi).jacobian_order();
            continue;
        }
        // twist by a nonsquare constant: P_twist(T) = P(-T)
        fe ns = 1;
        while (F.chi(ns) >= 0) ++ns;
        CurveData tw = auxiliary_curve(F, poly::scale(F, *fi, ns));
        if (gi == 1) {
            // P(1) + P(-1) = 2(1 + q) in genus 1
            h *= 2 * (Integer(F.q()) + 1) - tw.jacobian_order();
        } else {
            QPoly P = tw.zeta_numerator();
            Rational v = 0;
            for (std::size_t k = 0; k < P.size(); ++k) v += (k % 2 ? -1 : 1) * P[k];
            h *= v.get_num();
        }
    }
    return h;
}

std::string to_string(const Field& F, const Poly& p)
{
    (void)F;
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (!p[i]) continue;
        if (!first) os << "+";
        first = false;
        if (p[i] != 1 || i == 0) os << p[i];
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::string place_label(const CurveData& C, int id) { return place_label(C.field(), C.place(id)); }

int find_place(const CurveData& C, const std::string& label, int max_degree)
{
    for (int n = 1; n <= max_degree; ++n) {
        if (C.backend() == Backend::synthetic && n > C.max_degree()) break;
        for (int id : C.places_of_degree(n))
            if (place_label(C, id) == label) return id;
    }
    throw std::invalid_argument("no place labelled '" + label + "' of degree <= " + std::to_string(max_degree));
}

std::string to_string(const CurveData& C, const Divisor& D)
{
    if (D.empty()) return "0";
    std::vector<std::pair<PlaceKey, std::string>> parts;
    for (const auto& [id, m] : D) {
        const ClosedPoint& x = C.place(id);
        std::string t = place_label(C.field(), x);
        if (m != 1) t = std::to_string(m) + "*" + t;
        parts.emplace_back(x.key, t);
    }
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& [k, t] : parts) s += (s.empty() ? "" : " + ") + t;
    return s;
}

} // namespace ffrtf
