// SPDX-License-Identifier: MIT
#ifndef FFRTF_LAURENT_HPP
#define FFRTF_LAURENT_HPP

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace ffrtf {

using Rational = mpq_class;
using Integer = mpz_class;

// Exact Laurent polynomial in q^s: the term c * q^{ms} is stored at key m.
template <class R>
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(long q) : q_(q) {}
    Laurent(long q, R constant) : q_(q)
    {
        if (!(constant == R(0))) c_[0] = constant;
    }

    long base() const { return q_; }
    const std::map<long, R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    R coeff(long n) const
    {
        auto it = c_.find(n);
        return it == c_.end() ? R(0) : it->second;
    }

    void add_term(long n, const R& v)
    {
        if (v == R(0)) return;
        R& slot = c_[n];
        slot = slot + v;
        if (slot == R(0)) c_.erase(n);
    }

    Laurent& operator+=(const Laurent& o)
    {
        check(o);
        for (const auto& [n, v] : o.c_) add_term(n, v);
        return *this;
    }
    Laurent& operator-=(const Laurent& o)
    {
        check(o);
        for (const auto& [n, v] : o.c_) add_term(n, R(0) - v);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        a.check(b);
        Laurent r(a.q_ ? a.q_ : b.q_);
        for (const auto& [m, x] : a.c_)
            for (const auto& [n, y] : b.c_) r.add_term(m + n, R(x * y));
        return r;
    }
    friend Laurent operator*(const R& s, const Laurent& a)
    {
        Laurent r(a.q_);
        for (const auto& [n, v] : a.c_) r.add_term(n, R(s * v));
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    // s -> -s
    Laurent reflect() const
    {
        Laurent r(q_);
        for (const auto& [n, v] : c_) r.c_[-n] = v;
        return r;
    }

    // s -> k s
    Laurent dilate(long k) const
    {
        Laurent r(q_);
        for (const auto& [n, v] : c_) r.add_term(n * k, v);
        return r;
    }

    Laurent shift(long k) const
    {
        Laurent r(q_);
        for (const auto& [n, v] : c_) r.c_[n + k] = v;
        return r;
    }

private:
    void check(const Laurent& o) const
    {
        if (q_ && o.q_ && q_ != o.q_) throw std::invalid_argument("Laurent base mismatch");
    }

    long q_ = 0;
    std::map<long, R> c_;
};

using LaurentQ = Laurent<Rational>;

inline LaurentQ laurent_add(const LaurentQ& a, const LaurentQ& b) { return a + b; }
inline LaurentQ laurent_mul(const LaurentQ& a, const LaurentQ& b) { return a * b; }

// (log q)^{-r} (d/ds)^r at s = 0: sum_n c_n n^r
template <class R>
R normalized_derivative(const Laurent<R>& a, int r)
{
    if (r < 0) throw std::invalid_argument("derivative order must be nonnegative");
    R s(0);
    for (const auto& [n, v] : a.coeffs()) {
        mpz_class pw;
        mpz_class base(n);
        mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r));
        s = s + R(v * R(mpq_class(pw)));
    }
    return s;
}

template <class R>
bool symmetry_check(const Laurent<R>& a)
{
    for (const auto& [n, v] : a.coeffs())
        if (!(a.coeff(-n) == v)) return false;
    return true;
}

// value at s = 0
template <class R>
R coefficient_sum(const Laurent<R>& a)
{
    R s(0);
    for (const auto& [n, v] : a.coeffs()) s = s + v;
    return s;
}

std::string to_string(const Rational& r);
std::string to_string(const LaurentQ& a);

} // namespace ffrtf

#endif
