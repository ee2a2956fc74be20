// SPDX-License-Identifier: MIT
#include "ffrtf/quadnum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ffrtf {

QuadNum::QuadNum(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d)
{
    if (b_ != 0 && d_ <= 1) throw std::invalid_argument("quadratic radicand must exceed 1");
    normalize();
}

void QuadNum::normalize()
{
    a_.canonicalize();
    b_.canonicalize();
    if (b_ == 0) d_ = 0;
}

long QuadNum::common(const QuadNum& x, const QuadNum& y)
{
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw std::invalid_argument("quadratic fields differ");
    return x.d_;
}

QuadNum operator+(const QuadNum& x, const QuadNum& y)
{
    long d = QuadNum::common(x, y);
    QuadNum r;
    r.a_ = x.a_ + y.a_;
    r.b_ = x.b_ + y.b_;
    r.d_ = d;
    r.normalize();
    return r;
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) { return x + (-y); }

QuadNum operator*(const QuadNum& x, const QuadNum& y)
{
    long d = QuadNum::common(x, y);
    QuadNum r;
    r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * d;
    r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    r.d_ = d;
    r.normalize();
    return r;
}

QuadNum operator/(const QuadNum& x, const QuadNum& y)
{
    Rational n = y.a_ * y.a_ - y.b_ * y.b_ * (y.d_ ? y.d_ : 0);
    if (n == 0) throw std::domain_error("division by zero quadratic number");
    QuadNum t = x * y.conjugate();
    QuadNum r;
    r.a_ = t.a_ / n;
    r.b_ = t.b_ / n;
    r.d_ = t.d_;
    r.normalize();
    return r;
}

bool operator==(const QuadNum& x, const QuadNum& y)
{
    if (x.a_ != y.a_ || x.b_ != y.b_) return false;
    return x.b_ == 0 || x.d_ == y.d_;
}

int QuadNum::sign() const
{
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
}

double QuadNum::approx() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_)); }

std::string QuadNum::str() const
{
    std::ostringstream os;
    if (b_ == 0) {
        os << a_.get_str();
    } else {
        if (a_ != 0) os << a_.get_str() << (sgn(b_) < 0 ? "-" : "+");
        else if (sgn(b_) < 0) os << '-';
        os << Rational(abs(b_)).get_str() << "*sqrt(" << d_ << ")";
    }
    return os.str();
}

QuadNum quad_sqrt(long n)
{
    if (n < 0) throw std::domain_error("square root of a negative integer");
    long s = 1, d = 1, m = n;
    for (long f = 2; f * f <= m; ++f) {
        while (m % (f * f) == 0) {
            m /= f * f;
            s *= f;
        }
    }
    d = m;
    if (d == 1) return QuadNum(Rational(s));
    return QuadNum(Rational(0), Rational(s), d);
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const LaurentQ& a)
{
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.get_str() << ")";
        if (it->first != 0) os << "*q^(" << it->first << "s)";
    }
    return os.str();
}

} // namespace ffrtf
