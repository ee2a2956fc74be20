// SPDX-License-Identifier: MIT
#ifndef FFRTF_QUADNUM_HPP
#define FFRTF_QUADNUM_HPP

#include "ffrtf/laurent.hpp"

#include <string>

namespace ffrtf {

// a + b*sqrt(d) with rational a, b and a positive non-square integer d;
// d = 0 marks a plain rational.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(long v) : a_(v) {}
    QuadNum(const Rational& a) : a_(a) {}
    QuadNum(const Rational& a, const Rational& b, long d);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    friend QuadNum operator+(const QuadNum& x, const QuadNum& y);
    friend QuadNum operator-(const QuadNum& x, const QuadNum& y);
    friend QuadNum operator*(const QuadNum& x, const QuadNum& y);
    friend QuadNum operator/(const QuadNum& x, const QuadNum& y);
    QuadNum operator-() const { return QuadNum(-a_, -b_, d_); }
    friend bool operator==(const QuadNum& x, const QuadNum& y);
    friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }

    QuadNum conjugate() const { return QuadNum(a_, -b_, d_); }
    // exact sign: -1, 0, +1
    int sign() const;
    double approx() const;
    std::string str() const;

private:
    static long common(const QuadNum& x, const QuadNum& y);
    void normalize();
    Rational a_ = 0, b_ = 0;
    long d_ = 0;
};

// sqrt of n as an exact QuadNum when n is a square or squarefree-reducible
QuadNum quad_sqrt(long n);

using LaurentQuad = Laurent<QuadNum>;

} // namespace ffrtf

#endif
