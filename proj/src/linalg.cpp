#include "cm/linalg.hpp"

#include <cmath>
#include <utility>

namespace cm {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Scales row i by the lcm of its denominators. Returns the integer rows and
// the scale factors.
IntMatrix integer_rows(const Matrix<Rational>& m, std::vector<mpz_class>& scale)
{
    const std::size_t n = m.rows();
    IntMatrix a(n, std::vector<mpz_class>(m.cols()));
    scale.assign(n, mpz_class(1));
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale[i] = l;
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    return a;
}

// Fraction-free Gauss-Jordan on the augmented integer matrix [A | B].
// On success every left diagonal entry equals the last pivot D and the right
// block holds D * A^-1 B. Returns false if singular.
bool bareiss_jordan(IntMatrix& a, std::size_t n)
{
    const std::size_t width = a.empty() ? 0 : a[0].size();
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        std::size_t best = 0;
        for (std::size_t r = k; r < n; ++r) {
            if (a[r][k] == 0) continue;
            std::size_t bits = mpz_sizeinbase(a[r][k].get_mpz_t(), 2);
            if (pivot == n || bits < best) {
                pivot = r;
                best = bits;
            }
        }
        if (pivot == n) return false;
        std::swap(a[k], a[pivot]);
        const mpz_class pk = a[k][k];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const mpz_class f = a[i][k];
            for (std::size_t j = 0; j < width; ++j) {
                mpz_class t = pk * a[i][j] - f * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = pk;
    }
    return true;
}

}  // namespace

Matrix<Rational> invert(const Matrix<Rational>& m)
{
    if (m.rows() != m.cols()) throw InvalidArgument("invert: matrix not square");
    const std::size_t n = m.rows();
    std::vector<mpz_class> scale;
    IntMatrix a = integer_rows(m, scale);
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n, mpz_class(0));
        a[i][n + i] = 1;
    }
    if (!bareiss_jordan(a, n)) throw SingularMatrix();
    // B^-1 with B = S A, so A^-1 = B^-1 S.
    Matrix<Rational> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational x(a[i][n + j] * scale[j], a[i][i]);
            x.canonicalize();
            r(i, j) = x;
        }
    return r;
}

Rational determinant(const Matrix<Rational>& m)
{
    if (m.rows() != m.cols()) throw InvalidArgument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<mpz_class> scale;
    IntMatrix a = integer_rows(m, scale);
    IntMatrix work = a;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t r = k; r < n; ++r)
            if (work[r][k] != 0) {
                pivot = r;
                break;
            }
        if (pivot == n) return Rational(0);
        if (pivot != k) {
            std::swap(work[k], work[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = work[k][k] * work[i][j] - work[i][k] * work[k][j];
                mpz_divexact(work[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            work[i][k] = 0;
        }
        prev = work[k][k];
    }
    mpz_class s = 1;
    for (const auto& x : scale) s *= x;
    Rational det(prev * sign, s);
    det.canonicalize();
    return det;
}

std::vector<Rational> solve(const Matrix<Rational>& m, const std::vector<Rational>& b)
{
    Matrix<Rational> inv = invert(m);
    std::vector<Rational> x(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) x[i] += inv(i, j) * b[j];
    return x;
}

Matrix<double> invert(const Matrix<double>& m)
{
    if (m.rows() != m.cols()) throw InvalidArgument("invert: matrix not square");
    const std::size_t n = m.rows();
    Matrix<double> a = m;
    Matrix<double> r = Matrix<double>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
        if (a(pivot, k) == 0.0) throw SingularMatrix();
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(k, j), a(pivot, j));
            std::swap(r(k, j), r(pivot, j));
        }
        const double inv = 1.0 / a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) *= inv;
            r(k, j) *= inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0.0) continue;
            const double f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                r(i, j) -= f * r(k, j);
            }
        }
    }
    return r;
}

}  // namespace cm
