#pragma once

#include "cm/matrix.hpp"

namespace cm {

// Exact inverse. Rows are scaled to integers, then fraction-free
// Gauss-Jordan runs with the smallest-bit-size pivot in each column.
// Throws SingularMatrix.
Matrix<Rational> invert(const Matrix<Rational>& m);

// Partial-pivoting Gauss-Jordan; floating mode only.
Matrix<double> invert(const Matrix<double>& m);

// d(A^-1) = -A^-1 dA A^-1, applied per partial.
template <class T>
Matrix<Jet<T>> invert(const Matrix<Jet<T>>& m)
{
    const std::size_t n = m.rows();
    Matrix<T> inv = invert(values(m));
    std::size_t dim = 0;
    for (const auto& x : m.data()) dim = std::max(dim, x.dim());
    Matrix<Jet<T>> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j).v = inv(i, j);
            r(i, j).d.assign(dim, T(0));
        }
    for (std::size_t k = 0; k < dim; ++k) {
        Matrix<T> dk = -(inv * partials(m, k) * inv);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r(i, j).d[k] = dk(i, j);
    }
    return r;
}

// Exact determinant via the same fraction-free elimination.
Rational determinant(const Matrix<Rational>& m);

// Solves m x = b exactly; throws SingularMatrix.
std::vector<Rational> solve(const Matrix<Rational>& m, const std::vector<Rational>& b);

}  // namespace cm
