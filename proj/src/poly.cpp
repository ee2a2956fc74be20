// SPDX-License-Identifier: MIT
#include "ffrtf/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ffrtf {
namespace poly {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

fe lc(const Poly& a) { return a.empty() ? 0 : a.back(); }

Poly constant(fe c)
{
    if (c == 0) return {};
    return {c};
}

Poly x_pow(int n)
{
    Poly r(static_cast<std::size_t>(n) + 1, 0);
    r.back() = 1;
    return r;
}

Poly add(const Field& F, const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        fe x = i < a.size() ? a[i] : 0;
        fe y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    trim(r);
    return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        fe x = i < a.size() ? a[i] : 0;
        fe y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    trim(r);
    return r;
}

Poly neg(const Field& F, const Poly& a)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
}

Poly scale(const Field& F, const Poly& a, fe c)
{
    if (c == 0) return {};
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

Poly pow(const Field& F, const Poly& a, unsigned e)
{
    Poly r = {1}, b = a;
    while (e) {
        if (e & 1) r = mul(F, r, b);
        e >>= 1;
        if (e) b = mul(F, b, b);
    }
    return r;
}

void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r)
{
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    r = a;
    trim(r);
    const int db = deg(b);
    if (deg(r) < db) {
        q.clear();
        return;
    }
    q.assign(static_cast<std::size_t>(deg(r) - db + 1), 0);
    const fe il = F.inv(b.back());
    for (int i = deg(r); i >= db; --i) {
        fe c = r[static_cast<std::size_t>(i)];
        if (!c) continue;
        c = F.mul(c, il);
        q[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto idx = static_cast<std::size_t>(i - db + j);
            r[idx] = F.sub(r[idx], F.mul(c, b[static_cast<std::size_t>(j)]));
        }
    }
    trim(r);
    trim(q);
}

Poly mod(const Field& F, const Poly& a, const Poly& b)
{
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (deg(a) < deg(b)) return a;
    Poly r = a;
    const int db = deg(b);
    const fe il = F.inv(b.back());
    for (int i = deg(r); i >= db; --i) {
        fe c = r[static_cast<std::size_t>(i)];
        if (!c) continue;
        c = F.mul(c, il);
        for (int j = 0; j <= db; ++j) {
            auto idx = static_cast<std::size_t>(i - db + j);
            r[idx] = F.sub(r[idx], F.mul(c, b[static_cast<std::size_t>(j)]));
        }
    }
    trim(r);
    return r;
}

Poly quo(const Field& F, const Poly& a, const Poly& b)
{
    Poly q, r;
    divmod(F, a, b, q, r);
    return q;
}

Poly monic(const Field& F, const Poly& a)
{
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

Poly gcd(const Field& F, Poly a, Poly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

Poly inv_mod(const Field& F, const Poly& a, const Poly& m)
{
    Poly r0 = m, r1 = mod(F, a, m);
    Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        Poly q, r;
        divmod(F, r0, r1, q, r);
        Poly s = sub(F, s0, mul(F, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (deg(r0) != 0) throw std::domain_error("polynomial not invertible modulo m");
    return mod(F, scale(F, s0, F.inv(r0[0])), m);
}

Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) { return mod(F, mul(F, a, b), m); }

Poly powmod(const Field& F, const Poly& a, const mpz_class& e, const Poly& m)
{
    Poly r = mod(F, Poly{1}, m);
    Poly b = mod(F, a, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(F, r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(F, r, b, m);
    }
    return r;
}

Poly derivative(const Field& F, const Poly& a)
{
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<long>(i)));
    trim(r);
    return r;
}

fe eval(const Field& F, const Poly& a, fe x)
{
    fe acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

Poly reverse(const Poly& a, int n)
{
    Poly r(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(n) - i] = a[i];
    trim(r);
    return r;
}

bool is_squarefree(const Field& F, const Poly& a)
{
    if (a.empty()) return false;
    Poly d = derivative(F, a);
    if (d.empty()) return deg(a) <= 0;
    return deg(gcd(F, a, d)) == 0;
}

namespace {

mpz_class qpow(unsigned q, unsigned n)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, n);
    return r;
}

Poly frobenius(const Field& F, const Poly& h, const Poly& f) { return powmod(F, h, mpz_class(F.q()), f); }

std::vector<unsigned> prime_divisors(unsigned n)
{
    std::vector<unsigned> r;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            r.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) r.push_back(n);
    return r;
}

Poly pth_root(const Field& F, const Poly& a)
{
    // coefficient-wise inverse Frobenius on a polynomial in x^p
    const unsigned p = F.p();
    std::uint64_t e = 1;
    for (unsigned i = 1; i < F.k(); ++i) e *= p;
    Poly r(a.size() / p + 1, 0);
    for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = F.pow(a[i], e);
    trim(r);
    return r;
}

void squarefree_parts(const Field& F, const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out)
{
    if (deg(f) <= 0) return;
    Poly d = derivative(F, f);
    if (d.empty()) {
        squarefree_parts(F, pth_root(F, f), mult * static_cast<int>(F.p()), out);
        return;
    }
    Poly c = gcd(F, f, d);
    Poly w = quo(F, f, c);
    int i = 1;
    while (deg(w) > 0) {
        Poly y = gcd(F, w, c);
        Poly z = quo(F, w, y);
        if (deg(z) > 0) out.emplace_back(monic(F, z), i * mult);
        ++i;
        w = y;
        c = quo(F, c, y);
    }
    if (deg(c) > 0) squarefree_parts(F, pth_root(F, monic(F, c)), mult * static_cast<int>(F.p()), out);
}

void equal_degree(const Field& F, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out)
{
    const int n = deg(g);
    if (n == d) {
        out.push_back(monic(F, g));
        return;
    }
    if (d == 1 && n <= 2) {
        // exhaustive root search
        for (unsigned a = 0; a < F.q(); ++a) {
            if (eval(F, g, static_cast<fe>(a)) == 0) out.push_back(Poly{F.neg(static_cast<fe>(a)), 1});
        }
        return;
    }
    const mpz_class e = (qpow(F.q(), static_cast<unsigned>(d)) - 1) / 2;
    std::uniform_int_distribution<unsigned> dist(0, F.q() - 1);
    for (;;) {
        Poly r(static_cast<std::size_t>(n), 0);
        for (auto& c : r) c = static_cast<fe>(dist(rng));
        trim(r);
        if (deg(r) <= 0) continue;
        Poly b = sub(F, powmod(F, r, e, g), Poly{1});
        Poly u = gcd(F, b, g);
        if (deg(u) > 0 && deg(u) < n) {
            equal_degree(F, u, d, rng, out);
            equal_degree(F, quo(F, g, u), d, rng, out);
            return;
        }
    }
}

} // namespace

bool is_irreducible(const Field& F, const Poly& a)
{
    const int n = deg(a);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly f = monic(F, a);
    std::vector<Poly> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = Poly{0, 1};
    for (int i = 1; i <= n; ++i) frob[static_cast<std::size_t>(i)] = frobenius(F, frob[static_cast<std::size_t>(i) - 1], f);
    if (sub(F, frob[static_cast<std::size_t>(n)], mod(F, Poly{0, 1}, f)).size() != 0) return false;
    for (unsigned r : prime_divisors(static_cast<unsigned>(n))) {
        Poly h = sub(F, frob[static_cast<std::size_t>(n / static_cast<int>(r))], Poly{0, 1});
        if (deg(gcd(F, h, f)) != 0) return false;
    }
    return true;
}

int valuation(const Field& F, Poly a, const Poly& p)
{
    if (a.empty()) throw std::domain_error("valuation of zero polynomial");
    int v = 0;
    for (;;) {
        Poly q, r;
        divmod(F, a, p, q, r);
        if (!r.empty()) return v;
        ++v;
        a = std::move(q);
    }
}

fe resultant(const Field& F, const Poly& a0, const Poly& b0)
{
    Poly a = a0, b = b0;
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    fe acc = 1;
    for (;;) {
        const int m = deg(a), n = deg(b);
        if (n == 0) return F.mul(acc, F.pow(b[0], static_cast<std::uint64_t>(m)));
        if (m == 0) return F.mul(acc, F.pow(a[0], static_cast<std::uint64_t>(n)));
        Poly r = mod(F, a, b);
        if (r.empty()) return 0;
        // Res(a,b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        if ((m * n) % 2) acc = F.neg(acc);
        acc = F.mul(acc, F.pow(b.back(), static_cast<std::uint64_t>(m - deg(r))));
        a = std::move(b);
        b = std::move(r);
    }
}

int legendre(const Field& F, const Poly& a, const Poly& p)
{
    Poly r = mod(F, a, p);
    if (r.empty()) return 0;
    return F.chi(resultant(F, monic(F, p), r));
}

Poly sqrt_mod(const Field& F, const Poly& a0, const Poly& p, std::uint64_t seed)
{
    const Poly a = mod(F, a0, p);
    if (a.empty()) return {};
    if (legendre(F, a, p) != 1) throw std::domain_error("sqrt_mod of a non-square");
    const mpz_class Q = qpow(F.q(), static_cast<unsigned>(deg(p)));
    mpz_class t = Q - 1;
    unsigned s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t /= 2;
        ++s;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> dist(0, F.q() - 1);
    Poly z;
    for (;;) {
        Poly r(static_cast<std::size_t>(deg(p)), 0);
        for (auto& c : r) c = static_cast<fe>(dist(rng));
        trim(r);
        if (!r.empty() && legendre(F, r, p) == -1) {
            z = r;
            break;
        }
    }
    Poly c = powmod(F, z, t, p);
    Poly x = powmod(F, a, (t + 1) / 2, p);
    Poly b = powmod(F, a, t, p);
    unsigned m = s;
    const Poly one = {1};
    while (b != one) {
        unsigned i = 0;
        Poly bb = b;
        while (bb != one) {
            bb = mulmod(F, bb, bb, p);
            ++i;
        }
        Poly w = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) w = mulmod(F, w, w, p);
        x = mulmod(F, x, w, p);
        c = mulmod(F, w, w, p);
        b = mulmod(F, b, c, p);
        m = i;
    }
    return x;
}

bool less(const Poly& a, const Poly& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::uint64_t encode_monic(const Field& F, const Poly& a)
{
    std::uint64_t v = 0;
    for (int i = deg(a) - 1; i >= 0; --i) v = v * F.q() + a[static_cast<std::size_t>(i)];
    return v;
}

Poly decode_monic(const Field& F, std::uint64_t v, int n)
{
    Poly r(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        r[static_cast<std::size_t>(i)] = static_cast<fe>(v % F.q());
        v /= F.q();
    }
    r[static_cast<std::size_t>(n)] = 1;
    return r;
}

std::vector<Factor> factor(const Field& F, const Poly& a0, fe* unit, std::uint64_t seed)
{
    Poly a = a0;
    trim(a);
    if (a.empty()) throw std::domain_error("factorization of the zero polynomial");
    if (unit) *unit = a.back();
    std::vector<std::pair<Poly, int>> parts;
    squarefree_parts(F, monic(F, a), 1, parts);
    std::mt19937_64 rng(seed);
    std::map<Poly, int, bool (*)(const Poly&, const Poly&)> acc(&less);
    for (auto& [sf, mult] : parts) {
        Poly f = sf;
        Poly h = {0, 1};
        for (int d = 1; deg(f) >= 2 * d; ++d) {
            h = frobenius(F, mod(F, h, f), f);
            Poly g = gcd(F, sub(F, h, Poly{0, 1}), f);
            if (deg(g) > 0) {
                std::vector<Poly> pieces;
                equal_degree(F, g, d, rng, pieces);
                for (auto& pc : pieces) acc[pc] += mult;
                f = quo(F, f, g);
                h = mod(F, h, f);
            }
        }
        if (deg(f) > 0) acc[monic(F, f)] += mult;
    }
    std::vector<Factor> out;
    for (auto& [p, m] : acc) out.push_back({p, m});
    return out;
}

} // namespace poly

std::uint64_t necklace_count(std::uint64_t q, int n)
{
    auto mu = [](int m) {
        int r = 1;
        for (int d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                m /= d;
                if (m % d == 0) return 0;
                r = -r;
            }
        }
        if (m > 1) r = -r;
        return r;
    };
    std::int64_t s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        std::int64_t pw = 1;
        for (int i = 0; i < n / d; ++i) pw *= static_cast<std::int64_t>(q);
        s += mu(d) * pw;
    }
    return static_cast<std::uint64_t>(s / n);
}

namespace {

struct IrrCache {
    std::mutex m;
    std::map<std::tuple<unsigned, unsigned, int>, std::vector<Poly>> data;
};

IrrCache& irr_cache()
{
    static IrrCache c;
    return c;
}

} // namespace

std::vector<Poly> irreducibles_of_degree(const Field& F, int n)
{
    if (n < 1) return {};
    auto key = std::make_tuple(F.p(), F.k(), n);
    {
        std::lock_guard<std::mutex> lock(irr_cache().m);
        auto it = irr_cache().data.find(key);
        if (it != irr_cache().data.end()) return it->second;
    }
    std::vector<Poly> out;
    std::uint64_t count = 1;
    bool sieve = true;
    for (int i = 0; i < n; ++i) {
        count *= F.q();
        if (count > (1ull << 24)) sieve = false;
    }
    if (sieve) {
        std::vector<bool> reducible(count, false);
        for (int i = 1; 2 * i <= n; ++i) {
            std::vector<Poly> low = irreducibles_of_degree(F, i);
            std::uint64_t other = 1;
            for (int j = 0; j < n - i; ++j) other *= F.q();
            for (const Poly& p : low) {
                for (std::uint64_t v = 0; v < other; ++v) {
                    Poly r = poly::decode_monic(F, v, n - i);
                    reducible[poly::encode_monic(F, poly::mul(F, p, r))] = true;
                }
            }
        }
        for (std::uint64_t v = 0; v < count; ++v)
            if (!reducible[v]) out.push_back(poly::decode_monic(F, v, n));
    } else {
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly c = poly::decode_monic(F, v, n);
            if (poly::is_irreducible(F, c)) out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), poly::less);
    std::lock_guard<std::mutex> lock(irr_cache().m);
    irr_cache().data[key] = out;
    return out;
}

std::vector<Poly> irreducibles_up_to(const Field& F, int N)
{
    if (N < 1) throw std::invalid_argument("irreducibles_up_to requires N >= 1");
    std::vector<Poly> out;
    for (int n = 1; n <= N; ++n) {
        auto v = irreducibles_of_degree(F, n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

} // namespace ffrtf
