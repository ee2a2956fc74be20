// SPDX-License-Identifier: MIT
#include "ffrtf/linalg.hpp"

#include <stdexcept>

namespace ffrtf {

namespace {

std::vector<std::size_t> reduce_rows(const Field& F, FqMatrix& A, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ncols && row < A.size(); ++c) {
        std::size_t piv = row;
        while (piv < A.size() && A[piv][c] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[row]);
        const fe inv = F.inv(A[row][c]);
        for (auto& v : A[row]) v = F.mul(v, inv);
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == row || A[i][c] == 0) continue;
            const fe f = A[i][c];
            for (std::size_t j = 0; j < ncols; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[row][j]));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

} // namespace

std::vector<std::vector<fe>> nullspace(const Field& F, FqMatrix A, std::size_t ncols)
{
    for (auto& r : A)
        if (r.size() != ncols) throw std::invalid_argument("ragged matrix");
    auto pivots = reduce_rows(F, A, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<fe>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<fe> v(ncols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(A[i][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const Field& F, FqMatrix A, std::size_t ncols) { return reduce_rows(F, A, ncols).size(); }

std::vector<std::vector<Integer>> integer_kernel(IntMatrix A, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < ncols && row < A.size(); ++c) {
        std::size_t piv = row;
        while (piv < A.size() && A[piv][c] == 0) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[row]);
        for (std::size_t i = row + 1; i < A.size(); ++i) {
            for (std::size_t j = c + 1; j < ncols; ++j) {
                Integer t = A[row][c] * A[i][j] - A[i][c] * A[row][j];
                if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
                    throw std::logic_error("fraction-free elimination lost exactness");
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                A[i][j] = t;
            }
            A[i][c] = 0;
        }
        prev = A[row][c];
        pivots.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Integer>> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(ncols, Rational(0));
        x[f] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            Rational s = 0;
            for (std::size_t j = pivots[i] + 1; j < ncols; ++j)
                if (x[j] != 0) s += Rational(A[i][j]) * x[j];
            x[pivots[i]] = -s / Rational(A[i][pivots[i]]);
        }
        Integer l = 1;
        for (auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Integer> iv(ncols);
        Integer g = 0;
        for (std::size_t j = 0; j < ncols; ++j) {
            Rational t = x[j] * l;
            iv[j] = t.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv[j].get_mpz_t());
        }
        if (g > 1)
            for (auto& v : iv) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        out.push_back(std::move(iv));
    }
    return out;
}

} // namespace ffrtf
