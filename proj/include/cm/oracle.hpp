#pragma once

#include "cm/linalg.hpp"
#include "cm/model.hpp"

#include <string>
#include <vector>

namespace cm {

enum class Which { First, Second };

// Sign of the {J,J} block of the generator algebra. `Consistent` is
// {J_a,J_b} = (b-a) J_{a+b-1}, the sign under which the pulled-back tensor
// satisfies Jacobi. `Printed` is (a-b) J_{a+b-1}, kept for the negative control.
enum class JJSign { Consistent, Printed };

// Jacobian of Phi = (I_1..I_N, J_1..J_N) with respect to (p, q), via jets.
template <class T>
Matrix<T> generator_jacobian(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    Generators<Jet<T>> g = generators(lift(pt), n);
    Matrix<T> D(2 * n, 2 * n);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            D(k - 1, b) = g.I[k].partial(b);
            D(n + k - 1, b) = g.J[k].partial(b);
        }
    return D;
}

// Same Jacobian through closed-form trace derivatives:
// dI_k = Tr(L^(k-1) dL), dJ_k = sum_m Tr(Q L^m dL L^(k-2-m)) + Tr(dQ L^(k-1)).
template <class T>
Matrix<T> generator_jacobian_trace(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    Matrix<T> L = lax(pt);
    Matrix<T> Q = position_matrix(pt);
    std::vector<Matrix<T>> pw{Matrix<T>::identity(n)};
    for (std::size_t k = 1; k <= n; ++k) pw.push_back(pw.back() * L);
    CoordinateDerivatives<T> cd = coordinate_derivatives(pt);
    Matrix<T> D(2 * n, 2 * n);
    for (std::size_t b = 0; b < 2 * n; ++b) {
        const bool is_p = b < n;
        const Matrix<T>& dL = is_p ? cd.dL_dp[b] : cd.dL_dq[b - n];
        Matrix<T> dQ = is_p ? Matrix<T>(n, n) : cd.dQ_dq[b - n];
        for (std::size_t k = 1; k <= n; ++k) {
            D(k - 1, b) = trace(Matrix<T>(pw[k - 1] * dL));
            T dj = trace(Matrix<T>(dQ * pw[k - 1]));
            for (std::size_t m = 0; k >= 2 && m + 2 <= k; ++m) dj += trace(Matrix<T>(Q * pw[m] * dL * pw[k - 2 - m]));
            D(n + k - 1, b) = dj;
        }
    }
    return D;
}

// Generator brackets on rows/cols (I_1..I_N, J_1..J_N); g must reach 2N-1.
template <class T>
Matrix<T> generator_brackets(const Generators<T>& g, std::size_t n, JJSign sign = JJSign::Consistent)
{
    Matrix<T> P(2 * n, 2 * n);
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b) {
            const std::size_t k = a + b - 1;
            T ji = T(T(static_cast<long>(k)) * g.I[k]);
            P(n + a - 1, b - 1) = ji;
            P(b - 1, n + a - 1) = T(-ji);
            long c = sign == JJSign::Consistent ? static_cast<long>(b) - static_cast<long>(a)
                                                : static_cast<long>(a) - static_cast<long>(b);
            P(n + a - 1, n + b - 1) = T(T(c) * g.J[k]);
        }
    return P;
}

template <class T>
Matrix<T> pullback(const Matrix<T>& D, const Matrix<T>& P)
{
    Matrix<T> Di;
    try {
        Di = invert(D);
    } catch (const SingularMatrix&) {
        throw SingularJacobian();
    }
    return Di * P * transpose(Di);
}

// Pi_ab = {x_a, x_b} for x = (p, q): DPhi^-1 Pi_IJ DPhi^-T.
template <class T>
Matrix<T> second_tensor(const PhasePoint<T>& pt, JJSign sign = JJSign::Consistent)
{
    const std::size_t n = pt.n();
    Generators<Jet<T>> g = generators(lift(pt), 2 * n - 1);
    Matrix<T> D(2 * n, 2 * n);
    Generators<T> gv{std::vector<T>(2 * n, T(0)), std::vector<T>(2 * n, T(0))};
    for (std::size_t k = 1; k < 2 * n; ++k) {
        gv.I[k] = g.I[k].v;
        gv.J[k] = g.J[k].v;
    }
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            D(k - 1, b) = g.I[k].partial(b);
            D(n + k - 1, b) = g.J[k].partial(b);
        }
    return pullback(D, generator_brackets(gv, n, sign));
}

// Second tensor with exact first partials of every entry (for Jacobi,
// brackets of x0, and the x0 ODE). Runs the generators over second-order jets.
template <class T>
Matrix<Jet<T>> second_tensor_jet(const PhasePoint<T>& pt, JJSign sign = JJSign::Consistent)
{
    const std::size_t n = pt.n();
    Generators<Jet<Jet<T>>> g = generators(lift(lift(pt)), 2 * n - 1);
    Generators<Jet<T>> gv{std::vector<Jet<T>>(2 * n), std::vector<Jet<T>>(2 * n)};
    for (std::size_t k = 1; k < 2 * n; ++k) {
        gv.I[k] = truncate(g.I[k]);
        gv.J[k] = truncate(g.J[k]);
    }
    Matrix<Jet<T>> D(2 * n, 2 * n);
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            D(k - 1, b) = g.I[k].partial(b);
            D(n + k - 1, b) = g.J[k].partial(b);
        }
    return pullback(D, generator_brackets(gv, n, sign));
}

// Canonical tensor {p_i, q_j} = delta_ij.
template <class T>
Matrix<T> first_tensor(std::size_t n)
{
    Matrix<T> P(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        P(i, n + i) = T(1);
        P(n + i, i) = T(-1);
    }
    return P;
}

template <class T>
Matrix<T> tensor(const PhasePoint<T>& pt, Which which)
{
    return which == Which::First ? first_tensor<T>(pt.n()) : second_tensor(pt);
}

// {f, g} = grad f . Pi . grad g
template <class T>
T bracket(const Jet<T>& f, const Jet<T>& g, const Matrix<T>& P)
{
    T s(0);
    for (std::size_t a = 0; a < P.rows(); ++a) {
        T fa = f.partial(a);
        if (is_zero(fa)) continue;
        for (std::size_t b = 0; b < P.cols(); ++b) {
            if (is_zero(P(a, b))) continue;
            s += T(fa * T(P(a, b) * g.partial(b)));
        }
    }
    return s;
}

// sum_d (Pi_ad d_d Pi_bc + Pi_bd d_d Pi_ca + Pi_cd d_d Pi_ab)
template <class T>
T jacobi_residual(const Matrix<Jet<T>>& P, std::size_t a, std::size_t b, std::size_t c)
{
    T s(0);
    for (std::size_t d = 0; d < P.rows(); ++d) {
        s += T(P(a, d).v * P(b, c).partial(d));
        s += T(P(b, d).v * P(c, a).partial(d));
        s += T(P(c, d).v * P(a, b).partial(d));
    }
    return s;
}

// Named exact residual. `expect_zero` false marks a negative control that
// must come out nonzero.
struct Residual {
    std::string name;
    Rational value;
    bool expect_zero = true;
    std::string note;

    bool passed() const { return expect_zero == is_zero(value); }
};

Rational max_abs(const Matrix<Rational>& m);

// Antisymmetry and all coordinate-triple Jacobiators of the second tensor.
std::vector<Residual> jacobi_check(const PhasePoint<Rational>& pt, JJSign sign = JJSign::Consistent);

// {p0, L} = [L,K], {p0, Q} = [Q,K] - L, component formulas, and the
// generator-level identities {p0, I_k} = 0, {p0, J_{k+1}} = -(k+1) I_{k+1}.
std::vector<Residual> p0_identities(const PhasePoint<Rational>& pt);

struct DOperatorReport {
    Rational oracle;            // {p0, f}
    Rational printed;           // D f with both terms in d/dq
    Rational variant;           // D f with the second term in d/dp
    // Which combination reproduces {p0, f}: "+printed", "-printed",
    // "+variant", "-variant", joined by ',' if several, or "none".
    std::string matches;
};

DOperatorReport d_operator_check(const PhasePoint<Rational>& pt, const Jet<Rational>& f);

// D_ii f = sum p_j d f/d q_j - 2 sum_j (sum_{n!=j} q_jn^-3) d f/d p_j
template <class T>
T d_operator_variant(const PhasePoint<T>& pt, const Jet<T>& f)
{
    const std::size_t n = pt.n();
    T s(0);
    for (std::size_t j = 0; j < n; ++j) {
        T sj(0);
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            T d = q_diff(pt, j, m);
            sj += T(T(1) / T(d * T(d * d)));
        }
        s += T(pt.p[j] * f.partial(n + j));
        s -= T(T(2) * T(sj * f.partial(j)));
    }
    return s;
}

template <class T>
T d_operator_printed(const PhasePoint<T>& pt, const Jet<T>& f)
{
    const std::size_t n = pt.n();
    T s(0);
    for (std::size_t j = 0; j < n; ++j) {
        T sj(0);
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            T d = q_diff(pt, j, m);
            sj += T(T(1) / T(d * T(d * d)));
        }
        s += T(pt.p[j] * f.partial(n + j));
        s -= T(T(2) * T(sj * f.partial(n + j)));
    }
    return s;
}

// Center-of-mass algebra: {q0,I_m} = m I_m, {q0,J~_{n+1}} = n J~_{n+1},
// {J~_{n+1},I_m} = (m+n) I_{m+n} - (mn/N) I_m I_n and
// {J~_{n+1},J~_{m+1}} = (m-n) J~_{m+n+1} + (mn/N)(J~_{n+1} I_m - J~_{m+1} I_n).
std::vector<Residual> com_algebra_check(const PhasePoint<Rational>& pt);

// sigma from {J_2,I_1}_2 = sigma {J_2,I_2}_1 at an N=2 point.
int measure_magri_sigma(const PhasePoint<Rational>& pt);

// {J_m,I_k}_2 = sigma {J_m,I_{k+1}}_1 for k+m <= 2N-1, and
// {I_j,I_k}_2 = {I_{j+1},I_k}_1 = 0.
std::vector<Residual> magri_duality_check(const PhasePoint<Rational>& pt, int sigma);

// Gradients of I_1..I_kmax, J_1..J_kmax as jets.
Generators<Jet<Rational>> generator_jets(const PhasePoint<Rational>& pt, std::size_t kmax);

}  // namespace cm
