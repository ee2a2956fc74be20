// SPDX-License-Identifier: MIT
#include "ffrtf/realball.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

namespace {

long approx_log2(const Rational& x)
{
    return static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
}

Rational pow2(long e)
{
    Rational r(1);
    if (e >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    return r;
}

// nearest dyadic with about `bits` significant bits
Rational round_near(const Rational& x, unsigned bits)
{
    if (x == 0) return x;
    long shift = static_cast<long>(bits) - approx_log2(abs(x));
    Rational scaled = x * pow2(shift);
    mpz_class n = scaled.get_num(), d = scaled.get_den();
    mpz_class m;
    mpz_class twice = 2 * n + d;
    mpz_fdiv_q(m.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * d).get_mpz_t());
    return Rational(m) * pow2(-shift);
}

Rational round_up(const Rational& x)
{
    if (x <= 0) return Rational(0);
    long shift = 30 - approx_log2(x);
    Rational scaled = x * pow2(shift);
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return Rational(m) * pow2(-shift);
}

mpz_class isqrt_floor(const Rational& x, long k)
{
    // floor(sqrt(x * 4^k))
    Rational s = x * pow2(2 * k);
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
    return r;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

} // namespace

RealBall::RealBall(const Rational& v, unsigned prec) : mid_(v), rad_(0), prec_(prec) { round(); }

RealBall RealBall::with_radius(const Rational& mid, const Rational& rad, unsigned prec)
{
    if (rad < 0) throw std::invalid_argument("negative ball radius");
    RealBall b(prec);
    b.mid_ = mid;
    b.rad_ = rad;
    b.round();
    return b;
}

void RealBall::round()
{
    Rational m = round_near(mid_, prec_);
    Rational err = abs(mid_ - m);
    mid_ = m;
    rad_ = round_up(rad_ + err);
}

RealBall operator+(const RealBall& a, const RealBall& b)
{
    RealBall r(std::max(a.prec_, b.prec_));
    r.mid_ = a.mid_ + b.mid_;
    r.rad_ = a.rad_ + b.rad_;
    r.round();
    return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) { return a + (-b); }

RealBall RealBall::operator-() const
{
    RealBall r(*this);
    r.mid_ = -mid_;
    return r;
}

RealBall operator*(const RealBall& a, const RealBall& b)
{
    RealBall r(std::max(a.prec_, b.prec_));
    r.mid_ = a.mid_ * b.mid_;
    r.rad_ = abs(a.mid_) * b.rad_ + abs(b.mid_) * a.rad_ + a.rad_ * b.rad_;
    r.round();
    return r;
}

RealBall operator/(const RealBall& a, const RealBall& b)
{
    if (b.contains_zero()) throw std::domain_error("ball division by an interval containing zero");
    RealBall inv(std::max(a.prec_, b.prec_));
    Rational m = abs(b.mid_);
    inv.mid_ = 1 / b.mid_;
    inv.rad_ = b.rad_ / (m * (m - b.rad_));
    inv.round();
    return a * inv;
}

RealBall RealBall::sqrt() const
{
    if (!(lower() > 0)) throw std::domain_error("ball square root needs a positive interval");
    const long k = static_cast<long>(prec_) + 8 - approx_log2(mid_) / 2;
    Rational s = Rational(isqrt_floor(mid_, k)) * pow2(-k);
    Rational slow = Rational(isqrt_floor(lower(), k)) * pow2(-k);
    if (!(s > 0) || !(slow > 0)) throw std::domain_error("ball square root underflow");
    RealBall r(prec_);
    r.mid_ = s;
    r.rad_ = abs(mid_ - s * s) / s + rad_ / slow;
    r.round();
    return r;
}

RealBall RealBall::exp() const
{
    // argument reduction to |t| <= 1/2, Taylor series, repeated squaring
    const unsigned wp = prec_ + 32;
    long j = 0;
    Rational bound = abs(mid_) + rad_;
    while (bound > Rational(1, 2)) {
        bound /= 2;
        ++j;
    }
    RealBall t = RealBall::with_radius(mid_ * pow2(-j), rad_ * pow2(-j), wp);
    RealBall sum(Rational(1), wp), term(Rational(1), wp);
    unsigned n = 1;
    for (;; ++n) {
        term = term * t / RealBall(Rational(static_cast<long>(n)), wp);
        sum = sum + term;
        // tail after term n is at most 2 |t|^{n+1} / (n+1)!
        Rational tail = 2 * Rational(1) / factorial(n + 1);
        Rational tb = abs(t.mid_) + t.rad_;
        Rational p = 1;
        for (unsigned i = 0; i <= n; ++i) p *= tb;
        tail *= p;
        if (tail < pow2(-static_cast<long>(wp)) || n > 4 * wp) {
            sum = sum + RealBall::with_radius(Rational(0), tail, wp);
            break;
        }
    }
    for (long i = 0; i < j; ++i) sum = sum * sum;
    RealBall r = sum;
    r.prec_ = prec_;
    r.round();
    return r;
}

RealBall RealBall::log(long n, unsigned prec)
{
    if (n <= 0) throw std::domain_error("log of a nonpositive integer");
    if (n == 1) return RealBall(Rational(0), prec);
    // log n = 2 atanh(y), y = (n-1)/(n+1)
    const unsigned wp = prec + 32;
    const Rational y(n - 1, n + 1);
    const Rational y2 = y * y;
    Rational pw = y, sum = 0;
    for (unsigned k = 1;; k += 2) {
        sum += pw / k;
        pw *= y2;
        Rational tail = pw / ((k + 2) * (1 - y2));
        if (tail < pow2(-static_cast<long>(wp))) {
            RealBall r = RealBall::with_radius(2 * sum, 2 * tail, prec);
            return r;
        }
    }
}

bool RealBall::contains(const Rational& v) const { return abs(v - mid_) <= rad_; }

std::string decimal(const Rational& v, int digits)
{
    if (v == 0) return "0";
    // scientific notation with `digits` significant digits, rounded
    Rational a = abs(v);
    long e10 = 0;
    while (a >= 10) {
        a /= 10;
        ++e10;
    }
    while (a < 1) {
        a *= 10;
        --e10;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
    Rational s = a * scale;
    mpz_class m;
    s += Rational(1, 2);
    mpz_fdiv_q(m.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    std::string ds = m.get_str();
    if (ds.size() > static_cast<std::size_t>(digits)) {
        ds.pop_back();
        ++e10;
    }
    std::ostringstream os;
    if (v < 0) os << '-';
    os << ds[0];
    if (ds.size() > 1) os << '.' << ds.substr(1);
    os << 'e' << (e10 >= 0 ? "+" : "") << e10;
    return os.str();
}

std::string RealBall::mid_str(int digits) const { return decimal(mid_, digits); }

std::string RealBall::rad_str() const { return decimal(rad_, 3); }

std::string RealBall::str(int digits) const { return mid_str(digits) + " +/- " + rad_str(); }

} // namespace ffrtf
