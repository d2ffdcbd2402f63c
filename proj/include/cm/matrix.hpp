#pragma once

#include "cm/errors.hpp"
#include "cm/jet.hpp"
#include "cm/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

namespace cm {

// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
public:
    using Scalar = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    // e_ij in an n x n space, zero-based indices.
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j)
    {
        Matrix m(n, n);
        m(i, j) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(const Matrix& a)
    {
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = T(-a.a_[k]);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (is_zero(x)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += T(x * b(k, j));
            }
        return r;
    }

    friend Matrix operator*(const T& s, const Matrix& m)
    {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = T(s * m.a_[k]);
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    bool is_zero_matrix() const
    {
        return std::all_of(a_.begin(), a_.end(), [](const T& x) { return is_zero(x); });
    }

    const std::vector<T>& data() const { return a_; }

private:
    void check_same(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix sum: dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T> transpose(const Matrix<T>& m)
{
    Matrix<T> r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

template <class T>
T trace(const Matrix<T>& m)
{
    T t(0);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b)
{
    return a * b - b * a;
}

template <class U, class T, class F>
Matrix<U> map(const Matrix<T>& m, F f)
{
    Matrix<U> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = f(m(i, j));
    return r;
}

// Entry-wise value of a jet matrix.
template <class T>
Matrix<T> values(const Matrix<Jet<T>>& m)
{
    return map<T>(m, [](const Jet<T>& x) { return x.v; });
}

// Entry-wise k-th partial of a jet matrix.
template <class T>
Matrix<T> partials(const Matrix<Jet<T>>& m, std::size_t k)
{
    return map<T>(m, [k](const Jet<T>& x) { return x.partial(k); });
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const T& x = a(i, j);
            if (is_zero(x)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = T(x * b(k, l));
        }
    return r;
}

// Places an n^2 x n^2 matrix on tensor legs (i,j) of a three-fold product
// (legs numbered 1..3, leg 1 leftmost), identity on the remaining leg.
template <class T>
Matrix<T> embed_leg(const Matrix<T>& m, int i, int j, std::size_t n)
{
    if (i == j || i < 1 || i > 3 || j < 1 || j > 3) throw InvalidArgument("embed_leg: invalid leg indices");
    if (m.rows() != n * n || m.cols() != n * n) throw InvalidArgument("embed_leg: expected n^2 x n^2 matrix");
    const int o = 6 - i - j;
    Matrix<T> r(n * n * n, n * n * n);
    auto index = [n](const std::array<std::size_t, 3>& x) { return (x[0] * n + x[1]) * n + x[2]; };
    for (std::size_t row = 0; row < n * n; ++row)
        for (std::size_t col = 0; col < n * n; ++col) {
            const T& v = m(row, col);
            if (is_zero(v)) continue;
            for (std::size_t t = 0; t < n; ++t) {
                std::array<std::size_t, 3> ri{}, ci{};
                ri[i - 1] = row / n;
                ri[j - 1] = row % n;
                ri[o - 1] = t;
                ci[i - 1] = col / n;
                ci[j - 1] = col % n;
                ci[o - 1] = t;
                r(index(ri), index(ci)) += v;
            }
        }
    return r;
}

// Swap of the two tensor legs: m_12 -> m_21.
template <class T>
Matrix<T> swap_legs(const Matrix<T>& m, std::size_t n)
{
    Matrix<T> r(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) r(b * n + a, d * n + c) = m(a * n + b, c * n + d);
    return r;
}

// Single matrix on one leg of a three-fold product.
template <class T>
Matrix<T> on_leg(const Matrix<T>& m, int leg)
{
    const std::size_t n = m.rows();
    Matrix<T> id = Matrix<T>::identity(n);
    switch (leg) {
    case 1: return kron(kron(m, id), id);
    case 2: return kron(kron(id, m), id);
    case 3: return kron(kron(id, id), m);
    default: throw InvalidArgument("on_leg: leg must be 1, 2 or 3");
    }
}

}  // namespace cm
