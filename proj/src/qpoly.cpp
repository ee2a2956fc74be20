// SPDX-License-Identifier: MIT
#include "ffrtf/qpoly.hpp"

#include <stdexcept>

namespace ffrtf {
namespace qpoly {

void trim(QPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const QPoly& a) { return static_cast<int>(a.size()) - 1; }

QPoly add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly scale(const QPoly& a, const Rational& c)
{
    QPoly r(a);
    for (auto& v : r) v *= c;
    trim(r);
    return r;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r)
{
    if (b.empty()) throw std::domain_error("rational polynomial division by zero");
    r = a;
    trim(r);
    const int db = deg(b);
    q.assign(deg(r) >= db ? static_cast<std::size_t>(deg(r) - db + 1) : 0, Rational(0));
    for (int i = deg(r); i >= db; --i) {
        Rational c = r[static_cast<std::size_t>(i)] / b.back();
        if (c == 0) continue;
        q[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
    }
    trim(r);
    trim(q);
}

QPoly monic(const QPoly& a)
{
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

QPoly gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

QPoly derivative(const QPoly& a)
{
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
    trim(r);
    return r;
}

Rational eval(const QPoly& a, const Rational& x)
{
    Rational acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

QuadNum eval(const QPoly& a, const QuadNum& x)
{
    QuadNum acc(0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + QuadNum(a[i]);
    return acc;
}

std::vector<std::pair<QPoly, int>> squarefree(const QPoly& a0)
{
    std::vector<std::pair<QPoly, int>> out;
    QPoly a = monic(a0);
    if (deg(a) <= 0) return out;
    QPoly d = derivative(a);
    QPoly c = gcd(a, d);
    QPoly q, r;
    divmod(a, c, q, r);
    QPoly w = q;
    int i = 1;
    while (deg(w) > 0) {
        QPoly y = gcd(w, c);
        QPoly z;
        divmod(w, y, z, r);
        if (deg(z) > 0) out.emplace_back(monic(z), i);
        ++i;
        w = y;
        divmod(c, y, q, r);
        c = q;
    }
    return out;
}

std::vector<QPoly> sturm(const QPoly& a)
{
    std::vector<QPoly> seq{a, derivative(a)};
    while (!seq.back().empty() && deg(seq.back()) > 0) {
        QPoly q, r;
        divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.empty()) break;
        seq.push_back(scale(r, Rational(-1)));
    }
    if (seq.back().empty()) seq.pop_back();
    return seq;
}

int sign_changes(const std::vector<QPoly>& seq, const QuadNum& x)
{
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = eval(p, x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

std::vector<std::pair<Rational, Rational>> real_roots(const QPoly& a, unsigned bits)
{
    std::vector<std::pair<Rational, Rational>> out;
    if (deg(a) <= 0) return out;
    // Cauchy bound
    Rational bound = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        Rational t = abs(a[i] / a.back());
        if (t > bound) bound = t;
    }
    bound += 1;
    auto seq = sturm(a);
    auto count = [&](const Rational& lo, const Rational& hi) {
        return sign_changes(seq, QuadNum(lo)) - sign_changes(seq, QuadNum(hi));
    };
    Rational width(1);
    mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), bits);
    std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = count(lo, hi);
        if (n == 0) continue;
        if (n == 1 && hi - lo < width) {
            out.emplace_back(lo, hi);
            continue;
        }
        Rational mid = (lo + hi) / 2;
        if (eval(a, mid) == 0) {
            out.emplace_back(mid, mid);
            // nudge around the exact root
            Rational eps = (hi - lo) / 1024;
            while (count(mid - eps, mid + eps) != 1 || eval(a, mid - eps) == 0 || eval(a, mid + eps) == 0) eps /= 2;
            stack.emplace_back(lo, mid - eps);
            stack.emplace_back(mid + eps, hi);
            continue;
        }
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qpoly

namespace {

QuadNum qpow(const QuadNum& x, int e)
{
    QuadNum r(1), b = x;
    bool inv = e < 0;
    unsigned n = static_cast<unsigned>(inv ? -e : e);
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return inv ? QuadNum(1) / r : r;
}

bool divide_out(QPoly& P, const QPoly& factor)
{
    QPoly q, r;
    qpoly::divmod(P, factor, q, r);
    if (!r.empty()) return false;
    P = q;
    return true;
}

} // namespace

WeilAnalysis analyze_weil(const QPoly& P0, long q, int w)
{
    WeilAnalysis out;
    QPoly P = P0;
    qpoly::trim(P);
    if (P.empty() || P[0] != 1) throw std::invalid_argument("L-polynomial must have constant term 1");
    mpz_class qw;
    mpz_ui_pow_ui(qw.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(w));
    if (w % 2 == 0) {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(w / 2));
        out.s = QuadNum(Rational(s));
    } else {
        out.s = quad_sqrt(qw.get_si());
    }
    const int n = qpoly::deg(P);
    // P(T) = eps (sT)^n P(1/(q^w T))  <=>  p_{n-k} = eps s^{n-2k} p_k
    QuadNum epsq = QuadNum(P[static_cast<std::size_t>(n)]) / qpow(out.s, n);
    if (epsq == QuadNum(1) || epsq == QuadNum(-1)) {
        out.epsilon = epsq == QuadNum(1) ? 1 : -1;
        out.functional_equation = true;
        for (int k = 0; k <= n; ++k) {
            QuadNum rhs = QuadNum(out.epsilon) * qpow(out.s, n - 2 * k) * QuadNum(P[static_cast<std::size_t>(k)]);
            if (!(QuadNum(P[static_cast<std::size_t>(n - k)]) == rhs)) {
                out.functional_equation = false;
                break;
            }
        }
    }
    if (!out.functional_equation) {
        out.epsilon = 0;
        return out;
    }
    QPoly R = P;
    if (out.s.is_rational()) {
        const Rational s = out.s.a();
        while (divide_out(R, QPoly{Rational(1), -s})) ++out.a;
        while (divide_out(R, QPoly{Rational(1), s})) ++out.b;
    } else {
        while (divide_out(R, QPoly{Rational(1), Rational(0), Rational(-qw)})) {
            ++out.a;
            ++out.b;
        }
    }
    const int d = qpoly::deg(R);
    if (d % 2) return out;
    const int m = d / 2;
    // h(u) = r_m + sum_j r_{m-j} e_j(u), e_0 = 2, e_1 = u, e_{j+1} = u e_j - q^w e_{j-1}
    std::vector<QPoly> e(static_cast<std::size_t>(m) + 1);
    e[0] = QPoly{Rational(2)};
    if (m >= 1) e[1] = QPoly{Rational(0), Rational(1)};
    for (int j = 1; j < m; ++j)
        e[static_cast<std::size_t>(j) + 1] =
            qpoly::sub(qpoly::mul(QPoly{Rational(0), Rational(1)}, e[static_cast<std::size_t>(j)]),
                       qpoly::scale(e[static_cast<std::size_t>(j) - 1], Rational(qw)));
    QPoly h{R[static_cast<std::size_t>(m)]};
    for (int j = 1; j <= m; ++j) h = qpoly::add(h, qpoly::scale(e[static_cast<std::size_t>(j)], R[static_cast<std::size_t>(m - j)]));
    out.trace_poly = h;
    // real roots of h must fill (-2s, 2s)
    bool ok = true;
    const QuadNum lo = QuadNum(-2) * out.s, hi = QuadNum(2) * out.s;
    for (auto& [part, mult] : qpoly::squarefree(h)) {
        (void)mult;
        auto seq = qpoly::sturm(part);
        if (qpoly::eval(part, lo).sign() == 0 || qpoly::eval(part, hi).sign() == 0) {
            ok = false;
            break;
        }
        int inside = qpoly::sign_changes(seq, lo) - qpoly::sign_changes(seq, hi);
        if (inside != qpoly::deg(part)) {
            ok = false;
            break;
        }
    }
    out.riemann_hypothesis = ok;
    return out;
}

} // namespace ffrtf
