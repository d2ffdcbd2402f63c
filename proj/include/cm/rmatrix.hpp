#pragma once

#include "cm/oracle.hpp"

#include <array>

namespace cm {

// (a, b, c, d) on C^n (x) C^n, basis e1(x)e1, e1(x)e2, ..., leg 1 leftmost.
template <class T>
struct QuadStructure {
    Matrix<T> a, b, c, d;
};

// a = d = [[0,0,0,0],[0,-w/(2x),1/(2x),0],[0,-1/(2x),w/(2x),0],[0,0,0,0]],
// b = c = [[-w/(2x),0,0,1/(2x)],[0,0,0,0],[0,0,0,0],[-1/(2x),0,0,w/(2x)]],
// x = q1 - q2.
template <class T>
QuadStructure<T> quad_structure(const T& q1, const T& q2, const Rational& w1)
{
    const T x = T(q1 - q2);
    if (is_zero(base_value(x))) throw DegenerateConfiguration("quad_structure: q1 = q2");
    const T half = T(T(1) / T(T(2) * x));
    const T hw = T(T(w1) * half);
    Matrix<T> a(4, 4), b(4, 4);
    a(1, 1) = T(-hw);
    a(1, 2) = half;
    a(2, 1) = T(-half);
    a(2, 2) = hw;
    b(0, 0) = T(-hw);
    b(0, 3) = half;
    b(3, 0) = T(-half);
    b(3, 3) = hw;
    return {a, b, b, a};
}

// Same structure with entries carrying d/dq1, d/dq2.
QuadStructure<Jet<Rational>> quad_structure_jet(const Rational& q1, const Rational& q2, const Rational& w1);

// a l1 l2 + l1 b l2 - l2 c l1 - l1 l2 d with l1 = l(x)I, l2 = I(x)l.
template <class T>
Matrix<T> quadratic_rhs(const QuadStructure<T>& s, const Matrix<T>& l)
{
    const Matrix<T> id = Matrix<T>::identity(l.rows());
    const Matrix<T> l1 = kron(l, id);
    const Matrix<T> l2 = kron(id, l);
    return s.a * l1 * l2 + l1 * s.b * l2 - l2 * s.c * l1 - l1 * l2 * s.d;
}

// Displayed N=2 bracket table {l1, l2}.
Matrix<Rational> pbl_printed(const PhasePoint<Rational>& pt);

// sum {L_ij, L_kl} e_ij (x) e_kl under the tensor P.
Matrix<Rational> lax_bracket_table(const PhasePoint<Rational>& pt, const Matrix<Rational>& P);

struct Eps {
    Rational left;
    Rational right;
};

// Zero-weight conditions, max over h = e_ss: epsR [h1+h2, a], epsL [h1+h2, d],
// [epsR h1 - epsL h2, c], [epsL h1 - epsR h2, b]. Returned in order a, b, c, d.
std::array<Rational, 4> zero_weight_residuals(const QuadStructure<Rational>& s, std::size_t n, Eps eps);

// Residuals of the four classical dynamical YBEs for a structure whose
// entries are jets in q (dim n), with h_k d m = sum_s mu (e_ss on leg k) d m/d q_s.
// Returned in order a, b, c, d.
std::array<Matrix<Rational>, 4> dybe_residuals(const QuadStructure<Jet<Rational>>& s, std::size_t n, Eps eps,
                                               const Rational& mu = Rational(1));

// {r12, l3} - epsR (h3 d r12) l3 - epsL l3 (h3 d r12) for r in {a,b,c,d},
// with the left side from the oracle second tensor.
std::array<Matrix<Rational>, 4> rl_postulate_residual(const PhasePoint<Rational>& pt, const Rational& w1, Eps eps,
                                                      const Rational& mu = Rational(1));

// r = (a L2 + L2 a)/2 - L2 b; throws PreconditionViolated unless b is swap-symmetric.
Matrix<Rational> linear_from_quadratic(const QuadStructure<Rational>& s, const Matrix<Rational>& l);

// [r12, L1] - [r21, L2] - table
Matrix<Rational> pb1_residual(const Matrix<Rational>& r, const Matrix<Rational>& l, const Matrix<Rational>& table);

// sum_{i!=j} e_ij (x) e_ji / q_ij + sum_{k!=j} e_kk (x) e_kj / q_kj
template <class T>
Matrix<T> first_bracket_r(const std::vector<T>& q)
{
    const std::size_t n = q.size();
    Matrix<T> r(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const T inv = T(T(1) / T(q[i] - q[j]));
            r(i * n + j, j * n + i) += inv;  // e_ij (x) e_ji
            r(i * n + i, i * n + j) += inv;  // e_ii (x) e_ij
        }
    return r;
}

struct FirstBracketReport {
    Rational pb1;         // max |[r12,L1] - [r21,L2] - {L1,L2}|
    Rational pb1_canonical;  // same with {p,q} = delta (expected nonzero)
    Rational gnf;         // max |{r12,L3} - sum_s h_s^(3) d r12/d q_s|
    Rational assoc;       // five-term residual
    bool has_three_leg = false;
};

// Runs the first-bracket checks under {q_i, p_j} = delta_ij. GNF and assoc
// are evaluated when n <= 3.
FirstBracketReport first_bracket_check(const PhasePoint<Rational>& pt);

// Splits the first-bracket r into a quadruplet (d12 = sum e_ij(x)e_ji/q_ij,
// c12 = sum e_kk(x)e_kj/q_kj, b = c21, a = d + c - b) for the quadratic-family
// negative control.
QuadStructure<Jet<Rational>> first_bracket_quad_jet(const std::vector<Rational>& q);

}  // namespace cm
