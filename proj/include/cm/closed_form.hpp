#pragma once

#include "cm/oracle.hpp"

#include <array>
#include <string>
#include <vector>

namespace cm {

// Verbatim N=2 display: {p1,p2} = -1/q12^3, {p_j,q_k} = -delta_jk p_j + z_jk,
// z11 = -z22 = -z21 = z12 = (p1-p2)/q12^2 / (4/q12^2 - (p1-p2)^2),
// {q1,q2} = 1/q12 / (4/q12^2 - (p1-p2)^2).
template <class T>
struct N2Brackets {
    T pp;
    Matrix<T> z;
    T qq;
};

template <class T>
N2Brackets<T> n2_brackets(const PhasePoint<T>& pt)
{
    if (pt.n() != 2) throw InvalidArgument("n2_brackets needs N=2");
    const T x = q_diff(pt, 0, 1);
    const T y = T(pt.p[0] - pt.p[1]);
    const T den = T(T(T(4) / T(x * x)) - T(y * y));
    if (is_zero(base_value(den))) throw SingularDenominator("(p1-p2)^2 = 4/q12^2");
    N2Brackets<T> b{T(T(-1) / T(x * T(x * x))), Matrix<T>(2, 2), T(T(T(1) / x) / den)};
    const T z12 = T(T(y / T(x * x)) / den);
    b.z(0, 0) = z12;
    b.z(0, 1) = z12;
    b.z(1, 0) = T(-z12);
    b.z(1, 1) = T(-z12);
    return b;
}

// Per-family factors that map the N=2 display onto the oracle:
// pp times 2, z times -1, qq times 2.
struct N2Convention {
    long pp = 2;
    long z = -1;
    long qq = 2;
};

// Full 4x4 tensor from the N=2 display with the frozen convention.
template <class T>
Matrix<T> n2_tensor(const PhasePoint<T>& pt, N2Convention conv = {})
{
    N2Brackets<T> b = n2_brackets(pt);
    Matrix<T> P(4, 4);
    auto set = [&P](std::size_t a, std::size_t c, const T& v) {
        P(a, c) = v;
        P(c, a) = T(-v);
    };
    set(0, 1, T(T(conv.pp) * b.pp));
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) {
            T v = T(T(conv.z) * b.z(j, k));
            if (j == k) v -= pt.p[j];
            set(j, 2 + k, v);
        }
    set(2, 3, T(T(conv.qq) * b.qq));
    return P;
}

// x0 = {p1,p2} + 2/q12^3 read off a second tensor; also checks that
// x12 = x23 = x31.
template <class T>
T x0_from_tensor(const Matrix<T>& P, const PhasePoint<T>& pt)
{
    auto x = [&](std::size_t i, std::size_t j) {
        T d = q_diff(pt, i, j);
        return T(P(i, j) + T(T(2) / T(d * T(d * d))));
    };
    T x12 = x(0, 1);
    if (!(base_value(x12) == base_value(x(1, 2))) || !(base_value(x12) == base_value(x(2, 0))))
        throw InconsistentX0("x12, x23, x31 differ");
    return x12;
}

Rational x0_from_oracle(const PhasePoint<Rational>& pt);

// x0 carrying its exact gradient, through the jet oracle.
Jet<Rational> x0_jet(const PhasePoint<Rational>& pt);

enum class Transcription { Printed, Resolved };

struct N3Brackets {
    Rational x0;
    Matrix<Rational> x;                                 // x_ij, antisymmetric
    std::array<std::array<std::array<Rational, 3>, 3>, 3> z{};  // z[i][j][k] = z_{i;jk}
    std::array<std::array<std::array<Rational, 3>, 3>, 3> n{};  // n[i][j][k] = n_{i;jk} where defined
    Rational d;
    Rational qsq;
    Rational n12n23;
    Rational q12q23;
};

// Evaluates the N=3 displays at the point with the supplied x0. Throws ZeroD.
N3Brackets n3_brackets(const PhasePoint<Rational>& pt, const Rational& x0,
                       Transcription t = Transcription::Resolved);

// z_{i;jk} = {p_i,q_j} - {p_i,q_k} - (delta_ik - delta_ij) p_i from a tensor.
Rational z_from_tensor(const Matrix<Rational>& P, const PhasePoint<Rational>& pt, std::size_t i, std::size_t j,
                       std::size_t k);

// {q12, q23} from tensor entries.
Rational q12q23_from_tensor(const Matrix<Rational>& P);

// d = -q^2 (p1(q12+q13) + p2(q23+q21) + p3(q31+q32)), q^2 = q12^2+q23^2+q13^2.
template <class T>
T n3_qsq(const PhasePoint<T>& pt)
{
    T a = q_diff(pt, 0, 1), b = q_diff(pt, 1, 2), c = q_diff(pt, 0, 2);
    return T(T(a * a) + T(b * b) + T(c * c));
}

template <class T>
T n3_d(const PhasePoint<T>& pt)
{
    auto q = [&](std::size_t i, std::size_t j) { return q_diff(pt, i, j); };
    T s = T(T(pt.p[0] * T(q(0, 1) + q(0, 2))) + T(pt.p[1] * T(q(1, 2) + q(1, 0))) +
            T(pt.p[2] * T(q(2, 0) + q(2, 1))));
    return T(T(-n3_qsq(pt)) * s);
}

// Closed-form N=3 tensor: displays for the p and q_ij sector, x0 supplied,
// and the q0 row solved from {q0,I_m} = m I_m, {q0,J~_{n+1}} = n J~_{n+1}.
Matrix<Rational> n3_tensor(const PhasePoint<Rational>& pt, const Rational& x0);

// Special value at q12 = q23.
Rational x0_special_value(const PhasePoint<Rational>& pt);

// x0 ~ -2/(q23 q13 q12) as q12 -> 0.
template <class T>
T x0_asymptotic_collision(const PhasePoint<T>& pt)
{
    return T(T(-2) / T(q_diff(pt, 1, 2) * T(q_diff(pt, 0, 2) * q_diff(pt, 0, 1))));
}

// x0 ~ 9/(4(p2-p1)(p2-p3) q12^5) for q12 = q23 -> infinity.
template <class T>
T x0_asymptotic_free3(const PhasePoint<T>& pt)
{
    const T s = q_diff(pt, 0, 1);
    return T(T(9) / T(T(4) * T(T(pt.p[1] - pt.p[0]) * T(pt.p[1] - pt.p[2])) * ipow(s, 5)));
}

// One-free-particle asymptotic. The printed prefactor has
// q23^2 (p1^2 - p1(p3-p2) + p2p3) + 1; the resolved one q23^2 (p1-p2)(p1-p3) + 1.
template <class T>
T x0_asymptotic_free1(const PhasePoint<T>& pt, Transcription t)
{
    const T& p1 = pt.p[0];
    const T& p2 = pt.p[1];
    const T& p3 = pt.p[2];
    const T q12 = q_diff(pt, 0, 1);
    const T q23 = q_diff(pt, 1, 2);
    const T mix = t == Transcription::Printed ? T(p3 - p2) : T(p3 + p2);
    const T pden = T(T(T(q23 * q23) * T(T(T(p1 * p1) - T(p1 * mix)) + T(p2 * p3))) + T(1));
    if (is_zero(base_value(pden))) throw SingularDenominator("x0 free-one-particle prefactor has a zero denominator");
    const T pref = T(T(2) / pden);
    const T s = T(q23 + q12);
    const T t1 = T(T(T(-1) / q23) / T(s * q12));
    const T num = T(T(T(p3 - p2) * T(T(T(2) * p1) - p3 - p2)) * T(q23 * q23));
    const T den = T(T(T(T(q23 * q23) * T(T(p3 - p2) * T(p3 - p2))) - T(4)) * T(s * T(q12 * q12)));
    return T(pref * T(t1 + T(num / den)));
}

struct OdeReport {
    Rational resolved;  // D_ii x0 minus the repaired right-hand side
    Rational printed;   // printed D x0 minus the printed right-hand side
};

// Residual of the x0 differential equation with x0 and its gradient from the
// jet oracle.
OdeReport x0_ode_residual(const PhasePoint<Rational>& pt);

// Decoupling limits.
enum class LimitScenario { Free3, Free1 };

struct LimitMetric {
    std::string name;
    std::vector<double> deviation;  // one per scale
    double rate = 0;                // decades of decrease per decade of s, last step before the final scale
    double tolerance = 0;           // 2x the rate-study extrapolation to the last scale
    double ceiling = 0;             // fixed bound at the last scale, 0 if none
    bool monotone = false;
    bool passed = false;
    std::string note;
};

struct LimitReport {
    LimitScenario scenario;
    std::vector<double> scales;
    std::vector<LimitMetric> metrics;
    bool passed() const;
};

// Evaluates the oracle exactly at q placed at the given power-of-ten scales
// and reports deviations from the decoupled tables as doubles. The last scale
// is the tested one; the earlier ones fix the tolerance.
LimitReport limit_suite(LimitScenario scenario, const std::vector<Rational>& p, const std::vector<int>& exponents,
                        const Rational& q23 = Rational(1, 2));

}  // namespace cm
