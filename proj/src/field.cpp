// SPDX-License-Identifier: MIT
#include "ffrtf/field.hpp"

#include <stdexcept>

namespace ffrtf {

namespace {

bool is_prime(unsigned n)
{
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using digits_t = std::vector<unsigned>;

digits_t to_digits(std::uint64_t v, unsigned p, unsigned n)
{
    digits_t d(n, 0);
    for (unsigned i = 0; i < n; ++i) {
        d[i] = static_cast<unsigned>(v % p);
        v /= p;
    }
    return d;
}

std::uint64_t from_digits(const digits_t& d, unsigned p)
{
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// product of two residues modulo a monic polynomial m of degree n over F_p
digits_t mul_mod(const digits_t& a, const digits_t& b, const digits_t& m, unsigned p)
{
    const std::size_t n = m.size() - 1;
    std::vector<unsigned> prod(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (std::size_t i = 2 * n; i-- > n;) {
        unsigned c = prod[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= n; ++j) prod[i - n + j] = (prod[i - n + j] + (p - c) * m[j]) % p;
    }
    return digits_t(prod.begin(), prod.begin() + static_cast<long>(n));
}

bool divides_some(const digits_t& m, unsigned p)
{
    // trial division by every monic polynomial of degree 1..deg(m)/2
    const unsigned n = static_cast<unsigned>(m.size() - 1);
    for (unsigned d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            digits_t div = to_digits(v, p, d);
            div.push_back(1);
            digits_t r = m;
            for (std::size_t i = r.size(); i-- > d;) {
                unsigned c = r[i];
                if (!c) continue;
                for (unsigned j = 0; j <= d; ++j) r[i - d + j] = (r[i - d + j] + (p - c) * div[j]) % p;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i)
                if (r[i]) zero = false;
            if (zero) return true;
        }
    }
    return false;
}

} // namespace

unsigned FieldSpec::q() const
{
    unsigned r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
}

void FieldSpec::validate() const
{
    if (!is_prime(p) || p == 2) throw std::invalid_argument("field characteristic must be an odd prime");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > 256) throw std::invalid_argument("field size above 256 is not supported");
    }
}

Field::Field(FieldSpec spec) : spec_(spec)
{
    spec_.validate();
    q_ = spec_.q();
    const unsigned p = spec_.p, k = spec_.k;
    if (k == 1) {
        modulus_ = {0, 1};
    } else {
        std::uint64_t count = q_;
        for (std::uint64_t v = 0; v < count; ++v) {
            digits_t m = to_digits(v, p, k);
            m.push_back(1);
            if (m[0] == 0) continue;
            if (!divides_some(m, p)) {
                modulus_ = m;
                break;
            }
        }
    }
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    sqrt_.assign(q_, static_cast<fe>(0xffff));
    chi_.assign(q_, -1);
    std::vector<digits_t> dig(q_);
    for (unsigned a = 0; a < q_; ++a) dig[a] = to_digits(a, p, k);
    for (unsigned a = 0; a < q_; ++a) {
        digits_t n(k);
        for (unsigned i = 0; i < k; ++i) n[i] = (p - dig[a][i]) % p;
        neg_[a] = static_cast<fe>(from_digits(n, p));
        for (unsigned b = 0; b < q_; ++b) {
            digits_t s(k);
            for (unsigned i = 0; i < k; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
            add_[a * q_ + b] = static_cast<fe>(from_digits(s, p));
            if (k == 1)
                mul_[a * q_ + b] = static_cast<fe>((a * b) % p);
            else
                mul_[a * q_ + b] = static_cast<fe>(from_digits(mul_mod(dig[a], dig[b], modulus_, p), p));
        }
    }
    for (unsigned a = 1; a < q_; ++a)
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<fe>(b);
    chi_[0] = 0;
    for (unsigned r = 0; r < q_; ++r) {
        fe s = mul_[r * q_ + r];
        if (sqrt_[s] == 0xffff) sqrt_[s] = static_cast<fe>(r);
        if (s) chi_[s] = 1;
    }
}

fe Field::inv(fe a) const
{
    if (a == 0) throw std::domain_error("inverse of zero in finite field");
    return inv_[a];
}

fe Field::pow(fe a, std::uint64_t e) const
{
    fe r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool Field::sqrt(fe a, fe& r) const
{
    if (sqrt_[a] == 0xffff) return false;
    r = sqrt_[a];
    return true;
}

fe Field::from_int(long n) const
{
    long r = n % static_cast<long>(spec_.p);
    if (r < 0) r += spec_.p;
    return static_cast<fe>(r);
}

std::vector<unsigned> Field::digits(fe a) const { return to_digits(a, spec_.p, spec_.k); }

ExtField::ExtField(const Field& base, unsigned m) : p_(base.p()), n_(base.k() * m)
{
    std::uint64_t sz = 1;
    for (unsigned i = 0; i < n_; ++i) {
        sz *= p_;
        if (sz > (1u << 26)) throw std::invalid_argument("extension field too large for brute force");
    }
    size_ = static_cast<std::uint32_t>(sz);
    exp_.assign(size_, 0);
    log_.assign(size_, 0);
    std::vector<std::uint32_t> pw(n_ + 1, 1);
    for (unsigned i = 1; i <= n_; ++i) pw[i] = pw[i - 1] * p_;
    // search a primitive polynomial: t generates the multiplicative group
    for (std::uint64_t v = 1; v < sz; ++v) {
        digits_t mm = to_digits(v, p_, n_);
        if (mm[0] == 0) continue;
        std::uint32_t cur = 1;
        std::uint32_t order = 0;
        bool ok = true;
        for (std::uint32_t i = 0; i + 1 < size_; ++i) {
            exp_[i] = cur;
            // multiply cur by t modulo t^n + mm
            digits_t d = to_digits(cur, p_, n_);
            unsigned top = d[n_ - 1];
            for (unsigned j = n_ - 1; j > 0; --j) d[j] = d[j - 1];
            d[0] = 0;
            for (unsigned j = 0; j < n_; ++j) d[j] = (d[j] + (p_ - top) * mm[j]) % p_;
            cur = static_cast<std::uint32_t>(from_digits(d, p_));
            order = i + 1;
            if (cur == 1 && i + 2 < size_) {
                ok = false;
                break;
            }
        }
        if (ok && cur == 1 && order == size_ - 1) break;
    }
    for (std::uint32_t i = 0; i + 1 < size_; ++i) log_[exp_[i]] = i;
    embed_.assign(base.q(), 0);
    if (base.k() == 1) {
        for (unsigned a = 0; a < base.q(); ++a) embed_[a] = a;
    } else {
        const auto& bm = base.modulus();
        std::uint32_t rho = 0;
        bool found = false;
        for (std::uint32_t x = 1; x < size_ && !found; ++x) {
            std::uint32_t acc = 0;
            for (std::size_t i = bm.size(); i-- > 0;) acc = add(mul(acc, x), bm[i]);
            if (acc == 0) {
                rho = x;
                found = true;
            }
        }
        if (!found) throw std::logic_error("base field does not embed");
        for (unsigned a = 0; a < base.q(); ++a) {
            auto d = base.digits(static_cast<fe>(a));
            std::uint32_t acc = 0;
            for (std::size_t i = d.size(); i-- > 0;) acc = add(mul(acc, rho), d[i]);
            embed_[a] = acc;
        }
    }
}

std::uint32_t ExtField::add(std::uint32_t a, std::uint32_t b) const
{
    std::uint32_t r = 0, pw = 1;
    for (unsigned i = 0; i < n_; ++i) {
        r += ((a % p_ + b % p_) % p_) * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

std::uint32_t ExtField::mul(std::uint32_t a, std::uint32_t b) const
{
    if (!a || !b) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
    return exp_[e % (size_ - 1)];
}

int ExtField::chi(std::uint32_t a) const
{
    if (!a) return 0;
    return (log_[a] % 2 == 0) ? 1 : -1;
}

} // namespace ffrtf
