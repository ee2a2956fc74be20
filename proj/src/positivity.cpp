// SPDX-License-Identifier: MIT
#include "ffrtf/positivity.hpp"

#include "ffrtf/io.hpp"

#include <algorithm>
#include <sstream>

namespace ffrtf {

namespace {

Rational factorial(int n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational half_power(int k)
{
    Rational r(1);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(k));
    return r;
}

// the three factor shapes as rational series in z up to z^R
std::vector<Rational> sinh_half(int R)
{
    std::vector<Rational> s(static_cast<std::size_t>(R) + 1, 0);
    for (int k = 1; k <= R; k += 2) s[static_cast<std::size_t>(k)] = 2 * half_power(k) / factorial(k);
    return s;
}

std::vector<Rational> cosh_half(int R)
{
    std::vector<Rational> s(static_cast<std::size_t>(R) + 1, 0);
    for (int k = 0; k <= R; k += 2) s[static_cast<std::size_t>(k)] = 2 * half_power(k) / factorial(k);
    return s;
}

// 2 cosh z without its constant term
std::vector<Rational> cosh_tail(int R)
{
    std::vector<Rational> s(static_cast<std::size_t>(R) + 1, 0);
    for (int k = 2; k <= R; k += 2) s[static_cast<std::size_t>(k)] = 2 / factorial(k);
    return s;
}

template <class T>
std::vector<T> mul_trunc(const std::vector<T>& x, const std::vector<T>& y, int R, const T& zero)
{
    std::vector<T> out(static_cast<std::size_t>(R) + 1, zero);
    for (int i = 0; i <= R; ++i)
        for (int j = 0; i + j <= R; ++j) out[static_cast<std::size_t>(i + j)] = out[static_cast<std::size_t>(i + j)] + x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    return out;
}

template <class T, class Lift>
std::vector<T> lambda_series(const RootData& rd, int R, const std::vector<T>& two_re, const T& zero, const T& one, Lift lift)
{
    auto lifted = [&](const std::vector<Rational>& v) {
        std::vector<T> out;
        for (const auto& c : v) out.push_back(lift(c));
        return out;
    };
    std::vector<T> acc(static_cast<std::size_t>(R) + 1, zero);
    acc[0] = one;
    const auto sh = lifted(sinh_half(R)), ch = lifted(cosh_half(R)), tail = lifted(cosh_tail(R));
    for (int i = 0; i < rd.a; ++i) acc = mul_trunc(acc, sh, R, zero);
    for (int i = 0; i < rd.b; ++i) acc = mul_trunc(acc, ch, R, zero);
    for (std::size_t p = 0; p < rd.pairs.size(); ++p) {
        std::vector<T> A = tail;
        A[0] = lift(Rational(2)) - two_re[p];
        for (int m = 0; m < rd.pairs[p].mult; ++m) acc = mul_trunc(acc, A, R, zero);
    }
    return acc;
}

// integer roots test for a rational polynomial: candidates num/den with
// num | constant and den | leading coefficient after clearing denominators
std::vector<Rational> rational_roots(QPoly a)
{
    std::vector<Rational> out;
    qpoly::trim(a);
    while (!a.empty() && a[0] == 0) {
        out.push_back(0);
        a.erase(a.begin());
    }
    if (qpoly::deg(a) < 1) return out;
    Integer l = 1;
    for (const auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> z;
    for (const auto& c : a) z.push_back(Integer(c * Rational(l)));
    auto divisors = [](Integer n) {
        n = abs(n);
        std::vector<Integer> d;
        for (Integer k = 1; k * k <= n; ++k)
            if (n % k == 0) {
                d.push_back(k);
                if (k * k != n) d.push_back(n / k);
            }
        return d;
    };
    const Integer c0 = z.front(), cn = z.back();
    if (abs(c0) > Integer(1000000000) || abs(cn) > Integer(1000000000)) return out;
    for (const Integer& p : divisors(c0))
        for (const Integer& r : divisors(cn))
            for (int sgn : {1, -1}) {
                Rational x(p * sgn, r);
                x.canonicalize();
                if (qpoly::eval(a, x) == 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
            }
    return out;
}

} // namespace

int RootData::degree() const
{
    int d = a + b;
    for (const auto& p : pairs) d += 2 * p.mult;
    return d;
}

RootData root_data(const LPolynomial& P, unsigned prec)
{
    const WeilAnalysis w = analyze_weil(P.coeffs, P.q, P.weight);
    if (!w.functional_equation) throw std::domain_error("L-polynomial is not self-inversive");
    if (!w.riemann_hypothesis) throw std::domain_error("L-polynomial violates the Riemann hypothesis");
    RootData rd;
    rd.a = w.a;
    rd.b = w.b;
    rd.q = P.q;
    // 2 s Re(alpha) = root of the trace polynomial
    RealBall s(w.s.a(), prec + 16);
    if (!w.s.is_rational()) {
        Integer qw;
        mpz_ui_pow_ui(qw.get_mpz_t(), static_cast<unsigned long>(P.q), static_cast<unsigned long>(P.weight));
        s = RealBall(Rational(qw), prec + 16).sqrt();
    }
    const RealBall two_s = RealBall(2L, prec + 16) * s;
    for (auto [part, mult] : qpoly::squarefree(w.trace_poly)) {
        for (const Rational& c : rational_roots(part)) {
            const QuadNum re = QuadNum(c) / (QuadNum(2) * w.s);
            rd.pairs.push_back({RealBall(c, prec + 16) / two_s, re, mult});
            QPoly quo, rem;
            qpoly::divmod(part, QPoly{-c, Rational(1)}, quo, rem);
            part = quo;
        }
        for (const auto& [lo, hi] : qpoly::real_roots(part, prec + 16)) {
            const RealBall c = RealBall::with_radius((lo + hi) / 2, (hi - lo) / 2, prec + 16);
            rd.pairs.push_back({c / two_s, std::nullopt, mult});
        }
    }
    std::sort(rd.pairs.begin(), rd.pairs.end(), [](const RootPair& x, const RootPair& y) { return x.re.mid() < y.re.mid(); });
    if (rd.degree() != P.degree()) throw std::logic_error("root data does not account for every root");
    return rd;
}

RootData make_root_data(int a, int b, const std::vector<std::pair<Rational, int>>& pairs, long q)
{
    if (a < 0 || b < 0) throw std::invalid_argument("multiplicities must be nonnegative");
    RootData rd;
    rd.a = a;
    rd.b = b;
    rd.q = q;
    for (const auto& [re, m] : pairs) {
        if (abs(re) > 1) throw std::domain_error("root off the unit circle: |Re alpha| > 1");
        if (m < 1) throw std::invalid_argument("pair multiplicity must be positive");
        if (re == 1) rd.a += 2 * m;
        else if (re == -1) rd.b += 2 * m;
        else rd.pairs.push_back({RealBall(re, default_precision), QuadNum(re), m});
    }
    return rd;
}

int vanishing_order(const RootData& rd) { return rd.a; }

std::string to_string(Sign s)
{
    switch (s) {
    case Sign::positive: return "positive";
    case Sign::zero: return "zero";
    case Sign::negative: return "NEGATIVE";
    case Sign::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

TaylorReport taylor_coeffs(const RootData& rd, int R, unsigned prec)
{
    if (R < 0) throw std::invalid_argument("R must be nonnegative");
    TaylorReport rep;
    rep.precision = prec;
    rep.vanishing_order = vanishing_order(rd);
    const bool constant = rd.a == 0 && rd.b == 0 && rd.pairs.empty();
    std::vector<RealBall> two_re;
    bool exact = true;
    std::vector<QuadNum> two_re_exact;
    for (const auto& p : rd.pairs) {
        RealBall re = p.re;
        two_re.push_back(RealBall(2L, prec) * re);
        if (p.exact) two_re_exact.push_back(QuadNum(2) * *p.exact);
        else exact = false;
    }
    const auto balls = lambda_series<RealBall>(rd, R, two_re, RealBall(0L, prec), RealBall(1L, prec), [prec](const Rational& c) { return RealBall(c, prec); });
    std::optional<std::vector<QuadNum>> exact_series;
    if (exact) exact_series = lambda_series<QuadNum>(rd, R, two_re_exact, QuadNum(0), QuadNum(1), [](const Rational& c) { return QuadNum(c); });
    rep.max_radius = 0;
    for (int r = 0; r <= R; ++r) {
        TaylorEntry e;
        e.r = r;
        e.series = balls[static_cast<std::size_t>(r)];
        e.t = RealBall(factorial(r), prec) * e.series;
        // a constant lambda has no zeros to propagate from
        e.forced_zero = r < rep.vanishing_order || (r - rep.vanishing_order) % 2 != 0 || (constant && r > 0);
        if (exact_series) {
            e.exact_series = (*exact_series)[static_cast<std::size_t>(r)];
            e.exact_t = QuadNum(factorial(r)) * *e.exact_series;
            const int sg = e.exact_t->sign();
            e.sign = sg > 0 ? Sign::positive : sg < 0 ? Sign::negative : Sign::zero;
        } else if (e.t.positive()) {
            e.sign = Sign::positive;
        } else if (e.t.negative()) {
            e.sign = Sign::negative;
        } else if (e.t.mid() == 0 && e.t.rad() == 0) {
            e.sign = Sign::zero;
        } else {
            e.sign = Sign::inconclusive;
        }
        rep.max_radius = std::max(rep.max_radius, e.t.rad());
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

PositivityVerdict superpositivity_verdict(const TaylorReport& report)
{
    PositivityVerdict v;
    v.nonnegative = v.parity = v.propagation = true;
    bool inconclusive = false;
    std::ostringstream why;
    for (const auto& e : report.entries) {
        if (e.sign == Sign::negative) {
            v.nonnegative = false;
            why << "t_" << e.r << " is negative; ";
        }
        if (e.sign == Sign::inconclusive) {
            inconclusive = true;
            why << "t_" << e.r << " sign undetermined; ";
        }
        if (e.forced_zero && e.sign != Sign::zero) {
            v.parity = false;
            why << "t_" << e.r << " should vanish; ";
        }
        if (!e.forced_zero && e.sign == Sign::zero) {
            // nonvanishing must propagate from t_m in steps of 2
            v.propagation = false;
            why << "t_" << e.r << " vanishes after t_" << report.vanishing_order << "; ";
        }
        if (e.exact_t) {
            const QuadNum& x = *e.exact_t;
            if (x.is_rational()) {
                if (!e.t.contains(x.a())) v.exact_consistent = false;
            } else {
                // compare through a rational enclosure of the exact value
                const RealBall enclosure = RealBall(x.a(), e.t.prec()) + RealBall(x.b(), e.t.prec()) * RealBall(Rational(x.d()), e.t.prec()).sqrt();
                if ((enclosure - e.t).lower() > 0 || (enclosure - e.t).upper() < 0) v.exact_consistent = false;
            }
            if (!v.exact_consistent) why << "ball and exact t_" << e.r << " disagree; ";
        }
    }
    if (!v.nonnegative || !v.parity || !v.propagation || !v.exact_consistent) v.status = Status::fail;
    else v.status = inconclusive ? Status::inconclusive : Status::pass;
    v.detail = why.str();
    return v;
}

PositivityResult positivity_check(const RootData& rd0, int R, unsigned prec, unsigned max_prec, const Rational& radius_bound)
{
    PositivityResult res;
    for (unsigned p = prec;; p *= 2) {
        res.roots = rd0;
        res.report = taylor_coeffs(res.roots, R, p);
        res.verdict = superpositivity_verdict(res.report);
        const bool tight = res.report.max_radius < radius_bound;
        if (res.verdict.status != Status::inconclusive && tight) return res;
        if (p * 2 > max_prec)
            throw PrecisionError("inconclusive at " + std::to_string(p) + " bits: " + res.verdict.detail +
                                 (tight ? "" : "largest radius " + res.report.max_radius.get_str() + " above bound"));
    }
}

PositivityResult positivity_check(const LPolynomial& P, int R, unsigned prec, unsigned max_prec, const Rational& radius_bound)
{
    PositivityResult res;
    for (unsigned p = prec;; p *= 2) {
        res.roots = root_data(P, p);
        res.report = taylor_coeffs(res.roots, R, p);
        res.verdict = superpositivity_verdict(res.report);
        const bool tight = res.report.max_radius < radius_bound;
        if (res.verdict.status != Status::inconclusive && tight) return res;
        if (p * 2 > max_prec)
            throw PrecisionError("inconclusive at " + std::to_string(p) + " bits: " + res.verdict.detail +
                                 (tight ? "" : "largest radius " + res.report.max_radius.get_str() + " above bound"));
    }
}

RootData parse_root_data(std::istream& in)
{
    auto kv = parse_key_values(in);
    const int a = kv.count("a") ? static_cast<int>(parse_integers(kv["a"]).at(0)) : 0;
    const int b = kv.count("b") ? static_cast<int>(parse_integers(kv["b"]).at(0)) : 0;
    const long q = kv.count("q") ? parse_integers(kv["q"]).at(0) : 0;
    std::vector<Rational> re = kv.count("re") ? parse_rationals(kv["re"]) : std::vector<Rational>{};
    std::vector<long> mult = kv.count("mult") ? parse_integers(kv["mult"]) : std::vector<long>(re.size(), 1);
    if (mult.size() != re.size()) throw std::invalid_argument("re and mult lists differ in length");
    std::vector<std::pair<Rational, int>> pairs;
    for (std::size_t i = 0; i < re.size(); ++i) pairs.emplace_back(re[i], static_cast<int>(mult[i]));
    return make_root_data(a, b, pairs, q);
}

} // namespace ffrtf
