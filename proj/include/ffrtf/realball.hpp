// SPDX-License-Identifier: MIT
#ifndef FFRTF_REALBALL_HPP
#define FFRTF_REALBALL_HPP

#include "ffrtf/laurent.hpp"

#include <string>

namespace ffrtf {

inline constexpr unsigned default_precision = 128;

// Midpoint-radius interval. The midpoint is a dyadic rational with about
// prec significant bits; every operation is computed exactly and then
// rounded, with the rounding error added to the radius.
class RealBall {
public:
    explicit RealBall(unsigned prec = default_precision) : prec_(prec) {}
    RealBall(const Rational& v, unsigned prec = default_precision);
    RealBall(long v, unsigned prec = default_precision) : RealBall(Rational(v), prec) {}
    static RealBall with_radius(const Rational& mid, const Rational& rad, unsigned prec = default_precision);

    const Rational& mid() const { return mid_; }
    const Rational& rad() const { return rad_; }
    unsigned prec() const { return prec_; }
    Rational lower() const { return mid_ - rad_; }
    Rational upper() const { return mid_ + rad_; }

    friend RealBall operator+(const RealBall& a, const RealBall& b);
    friend RealBall operator-(const RealBall& a, const RealBall& b);
    friend RealBall operator*(const RealBall& a, const RealBall& b);
    friend RealBall operator/(const RealBall& a, const RealBall& b);
    RealBall operator-() const;

    RealBall sqrt() const;
    RealBall exp() const;
    static RealBall log(long n, unsigned prec = default_precision);

    bool contains(const Rational& v) const;
    bool contains_zero() const { return contains(Rational(0)); }
    bool positive() const { return lower() > 0; }
    bool negative() const { return upper() < 0; }
    bool nonnegative() const { return lower() >= 0; }

    double approx() const { return mid_.get_d(); }
    std::string mid_str(int digits = 30) const;
    std::string rad_str() const;
    std::string str(int digits = 30) const;

private:
    void round();
    Rational mid_ = 0, rad_ = 0;
    unsigned prec_;
};

std::string decimal(const Rational& v, int digits);

} // namespace ffrtf

#endif
