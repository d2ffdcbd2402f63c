#pragma once

#include "cm/jet.hpp"
#include "cm/matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cm {

template <class T>
struct PhasePoint {
    std::vector<T> p;
    std::vector<T> q;

    std::size_t n() const { return p.size(); }
    std::size_t dim() const { return 2 * p.size(); }
    // Coordinate by global index in (p1..pN, q1..qN) order.
    const T& x(std::size_t a) const { return a < p.size() ? p[a] : q[a - p.size()]; }
};

// Validated exact point: n >= 2, equal lengths, pairwise distinct q.
PhasePoint<Rational> make_point(std::vector<Rational> p, std::vector<Rational> q);

// "p=a/b,c,... q=..." (the two fields separated by whitespace).
PhasePoint<Rational> parse_point(std::string_view text);
std::string to_string(const PhasePoint<Rational>& pt);

// Seeds every coordinate with its unit gradient.
template <class T>
PhasePoint<Jet<T>> lift(const PhasePoint<T>& pt)
{
    const std::size_t dim = pt.dim();
    PhasePoint<Jet<T>> r;
    for (std::size_t i = 0; i < pt.n(); ++i) r.p.push_back(Jet<T>::variable(pt.p[i], dim, i));
    for (std::size_t i = 0; i < pt.n(); ++i) r.q.push_back(Jet<T>::variable(pt.q[i], dim, pt.n() + i));
    return r;
}

template <class U, class T, class F>
PhasePoint<U> map_point(const PhasePoint<T>& pt, F f)
{
    PhasePoint<U> r;
    for (const auto& x : pt.p) r.p.push_back(f(x));
    for (const auto& x : pt.q) r.q.push_back(f(x));
    return r;
}

template <class T>
T q_diff(const PhasePoint<T>& pt, std::size_t i, std::size_t j)
{
    return T(pt.q[i] - pt.q[j]);
}

template <class T>
Matrix<T> lax(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    Matrix<T> L(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) L(i, j) = i == j ? pt.p[i] : T(T(1) / q_diff(pt, i, j));
    return L;
}

template <class T>
Matrix<T> position_matrix(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    Matrix<T> Q(n, n);
    for (std::size_t i = 0; i < n; ++i) Q(i, i) = pt.q[i];
    return Q;
}

template <class T>
T center_position(const PhasePoint<T>& pt)
{
    T s(0);
    for (const auto& x : pt.q) s += x;
    return s;
}

template <class T>
T center_momentum(const PhasePoint<T>& pt)
{
    T s(0);
    for (const auto& x : pt.p) s += x;
    return s;
}

template <class T>
Matrix<T> centered_position(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    const T mean = T(center_position(pt) / T(static_cast<long>(n)));
    Matrix<T> Q(n, n);
    for (std::size_t i = 0; i < n; ++i) Q(i, i) = T(pt.q[i] - mean);
    return Q;
}

// K_ij = q_ij^-2 off the diagonal, K_jj = -sum_{n != j} q_nj^-2.
template <class T>
Matrix<T> k_matrix(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    Matrix<T> K(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            T d = q_diff(pt, i, j);
            K(i, j) = T(T(1) / T(d * d));
            K(j, j) -= K(i, j);
        }
    return K;
}

// mu = sum_{i != j} e_ij
template <class T>
Matrix<T> moment_matrix(std::size_t n)
{
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) m(i, j) = T(1);
    return m;
}

// I[k] = Tr(L^k)/k and J[k] = Tr(Q L^(k-1)) for 1 <= k <= kmax; index 0 unused.
template <class T>
struct Generators {
    std::vector<T> I;
    std::vector<T> J;
};

template <class T>
Generators<T> generators(const PhasePoint<T>& pt, std::size_t kmax)
{
    const std::size_t n = pt.n();
    Matrix<T> L = lax(pt);
    Generators<T> g{std::vector<T>(kmax + 1, T(0)), std::vector<T>(kmax + 1, T(0))};
    Matrix<T> power = Matrix<T>::identity(n);
    for (std::size_t k = 1; k <= kmax; ++k) {
        // J_k uses L^(k-1), which is `power` before the update.
        T j(0);
        for (std::size_t i = 0; i < n; ++i) j += T(pt.q[i] * power(i, i));
        g.J[k] = j;
        power = power * L;
        g.I[k] = T(trace(power) / T(static_cast<long>(k)));
    }
    return g;
}

enum class InvariantKind { I, J, TildeJ };

struct InvariantId {
    InvariantKind kind;
    int index;
};

// J~_{k+1} = J_{k+1} - (k/N) q0 I_k, with J~_1 = 0.
template <class T>
T tilde_j(const PhasePoint<T>& pt, const Generators<T>& g, std::size_t index)
{
    if (index == 1) return T(0);
    const std::size_t k = index - 1;
    const T coef = T(T(static_cast<long>(k)) / T(static_cast<long>(pt.n())));
    return T(g.J[index] - T(coef * T(center_position(pt) * g.I[k])));
}

template <class T>
T invariant(const PhasePoint<T>& pt, InvariantId id)
{
    if (id.index < 1) throw InvalidArgument("invariant index must be >= 1");
    const auto k = static_cast<std::size_t>(id.index);
    Generators<T> g = generators(pt, k);
    switch (id.kind) {
    case InvariantKind::I: return g.I[k];
    case InvariantKind::J: return g.J[k];
    case InvariantKind::TildeJ: return tilde_j(pt, g, k);
    }
    return T(0);
}

// Tr(Q~ L^n), the trace form of J~_{n+1}.
template <class T>
T tilde_j_trace(const PhasePoint<T>& pt, std::size_t index)
{
    Matrix<T> L = lax(pt);
    Matrix<T> power = Matrix<T>::identity(pt.n());
    for (std::size_t k = 1; k < index; ++k) power = power * L;
    return trace(Matrix<T>(centered_position(pt) * power));
}

// H = 2 I_2, the object the algebra uses.
template <class T>
T hamiltonian(const PhasePoint<T>& pt)
{
    return T(T(2) * generators(pt, 2).I[2]);
}

// Printed form sum p^2 - 2 sum_{i != j} q_ij^-2 with the sum over ordered pairs.
template <class T>
T printed_hamiltonian(const PhasePoint<T>& pt)
{
    T h(0);
    for (const auto& x : pt.p) h += T(x * x);
    for (std::size_t i = 0; i < pt.n(); ++i)
        for (std::size_t j = 0; j < pt.n(); ++j) {
            if (i == j) continue;
            T d = q_diff(pt, i, j);
            h -= T(T(2) / T(d * d));
        }
    return h;
}

template <class T>
struct CoordinateDerivatives {
    std::vector<Matrix<T>> dL_dp;
    std::vector<Matrix<T>> dL_dq;
    std::vector<Matrix<T>> dQ_dq;
};

// Closed forms: dL/dp_i = e_ii, dQ/dq_i = e_ii, dL_ij/dq_i = -1/q_ij^2,
// dL_ij/dq_j = +1/q_ij^2.
template <class T>
CoordinateDerivatives<T> coordinate_derivatives(const PhasePoint<T>& pt)
{
    const std::size_t n = pt.n();
    CoordinateDerivatives<T> r;
    for (std::size_t s = 0; s < n; ++s) {
        r.dL_dp.push_back(Matrix<T>::unit(n, s, s));
        r.dQ_dq.push_back(Matrix<T>::unit(n, s, s));
        Matrix<T> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                T d = q_diff(pt, i, j);
                T inv2 = T(T(1) / T(d * d));
                if (i == s) m(i, j) = T(-inv2);
                if (j == s) m(i, j) = inv2;
            }
        r.dL_dq.push_back(std::move(m));
    }
    return r;
}

}  // namespace cm
