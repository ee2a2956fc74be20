// SPDX-License-Identifier: MIT
#ifndef FFRTF_FIELD_HPP
#define FFRTF_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ffrtf {

using fe = std::uint16_t;

struct FieldSpec {
    unsigned p = 3;
    unsigned k = 1;
    unsigned q() const;
    void validate() const;
};

// F_q with q = p^k, p odd, q <= 256. Elements are encoded as integers whose
// base-p digits are the coefficients of a polynomial in a root of the
// defining polynomial; for k = 1 this is the residue itself.
class Field {
public:
    explicit Field(FieldSpec spec);
    Field(unsigned p, unsigned k) : Field(FieldSpec{p, k}) {}

    const FieldSpec& spec() const { return spec_; }
    unsigned p() const { return spec_.p; }
    unsigned k() const { return spec_.k; }
    unsigned q() const { return q_; }

    fe add(fe a, fe b) const { return add_[a * q_ + b]; }
    fe sub(fe a, fe b) const { return add_[a * q_ + neg_[b]]; }
    fe neg(fe a) const { return neg_[a]; }
    fe mul(fe a, fe b) const { return mul_[a * q_ + b]; }
    fe inv(fe a) const;
    fe div(fe a, fe b) const { return mul(a, inv(b)); }
    fe pow(fe a, std::uint64_t e) const;

    // quadratic character: 0, +1, -1
    int chi(fe a) const { return chi_[a]; }
    // true if a is a square; r receives the smaller-encoded root
    bool sqrt(fe a, fe& r) const;
    fe from_int(long n) const;
    std::vector<unsigned> digits(fe a) const;
    // defining polynomial over F_p (coefficients low to high, monic, degree k)
    const std::vector<unsigned>& modulus() const { return modulus_; }

    bool operator==(const Field& o) const { return spec_.p == o.spec_.p && spec_.k == o.spec_.k; }

private:
    FieldSpec spec_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    std::vector<fe> add_, mul_, neg_, inv_, sqrt_;
    std::vector<signed char> chi_;
};

// F_{q^m} built over F_p with log tables, for brute-force counting.
class ExtField {
public:
    ExtField(const Field& base, unsigned m);
    std::uint32_t size() const { return size_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    int chi(std::uint32_t a) const;
    std::uint32_t embed(fe a) const { return embed_[a]; }

private:
    unsigned p_, n_;
    std::uint32_t size_;
    std::vector<std::uint32_t> exp_, log_, embed_;
};

} // namespace ffrtf

#endif
