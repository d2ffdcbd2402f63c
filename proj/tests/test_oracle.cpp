#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/oracle.hpp"
#include "cm/sampling.hpp"

using namespace cm;
using R = Rational;

namespace {

void require_all(const std::vector<Residual>& rs)
{
    for (const auto& r : rs) {
        INFO(r.name << " = " << to_string(r.value));
        CHECK(r.passed());
    }
}

}  // namespace

TEST_CASE("golden N=2 tensor entries")
{
    // coordinates (p1, p2, q1, q2)
    PhasePoint<R> a = make_point({R(0), R(0)}, {R(1), R(-1)});
    Matrix<R> P = second_tensor(a);
    CHECK(P(2, 3) == 1);          // {q1,q2}; the verbatim display gives 1/2
    CHECK(P(0, 1) == R(-1, 4));   // {p1,p2} = -2/q12^3
    PhasePoint<R> b = make_point({R(1), R(0)}, {R(1), R(0)});
    Matrix<R> Q = second_tensor(b);
    CHECK(Q(2, 3) == R(2, 3));
    CHECK(Q(0, 1) == -2);
    CHECK(Q(0, 3) == R(-1, 3));                   // z12
    CHECK(R(Q(0, 2) + b.p[0]) == Q(0, 3));        // z11 = z12
}

TEST_CASE("second tensor is antisymmetric and satisfies Jacobi")
{
    for (std::size_t n = 2; n <= 3; ++n)
        for (const auto& pt : sample_points(300 + n, n, 4)) require_all(jacobi_check(pt));
}

TEST_CASE("printed JJ sign breaks Jacobi")
{
    for (std::size_t n = 2; n <= 3; ++n) {
        PhasePoint<R> pt = sample_points(400 + n, n, 1)[0];
        auto rs = jacobi_check(pt, JJSign::Printed);
        CHECK_FALSE(is_zero(rs[1].value));
        CHECK(rs[1].passed());  // expect_zero is false for this one
    }
}

TEST_CASE("pullback reproduces the generator algebra")
{
    for (const auto& pt : sample_points(17, 3, 3)) {
        Matrix<R> P = second_tensor(pt);
        Generators<Jet<R>> g = generator_jets(pt, 5);
        for (std::size_t a = 1; a <= 3; ++a)
            for (std::size_t b = 1; b <= 3; ++b) {
                const long k = static_cast<long>(a + b - 1);
                CHECK(bracket(g.I[a], g.I[b], P) == 0);
                CHECK(bracket(g.J[a], g.I[b], P) == R(k * g.I[k].v));
                CHECK(bracket(g.J[a], g.J[b], P) == R((long(b) - long(a)) * g.J[k].v));
            }
    }
}

TEST_CASE("second_tensor_jet values equal second_tensor")
{
    PhasePoint<R> pt = sample_points(23, 3, 1)[0];
    CHECK(values(second_tensor_jet(pt)) == second_tensor(pt));
}

TEST_CASE("degenerate inputs")
{
    CHECK_THROWS_AS(second_tensor(make_point({R(2), R(0)}, {R(1), R(0)})), SingularJacobian);
    CHECK_THROWS_AS(second_tensor(make_point({R(0), R(2)}, {R(1), R(0)})), SingularJacobian);
}

TEST_CASE("first tensor is canonical")
{
    Matrix<R> P = first_tensor<R>(3);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            R expect(0);
            if (i < 3 && j == i + 3) expect = 1;
            if (i >= 3 && j == i - 3) expect = -1;
            CHECK(P(i, j) == expect);
        }
}

TEST_CASE("center of mass brackets")
{
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& pt : sample_points(500 + n, n, 3)) {
            require_all(p0_identities(pt));
            if (n <= 3) require_all(com_algebra_check(pt));
        }
}

TEST_CASE("D operator resolution")
{
    PhasePoint<R> pt = make_point({R(1), R(-2), R(1, 3)}, {R(2), R(0), R(-1)});
    PhasePoint<Jet<R>> lp = lift(pt);
    // f = q_j: the oracle gives -p_j. The printed D, with its second term also
    // in d/dq, gives p_j - 2 sum q_jn^-3 and matches neither sign.
    DOperatorReport q = d_operator_check(pt, lp.q[1]);
    CHECK(q.oracle == -pt.p[1]);
    CHECK(q.variant == pt.p[1]);
    CHECK(q.printed == pt.p[1] - 2 * (R(-1, 8) + 1));
    CHECK(q.matches == "-variant");
    // constants
    DOperatorReport c = d_operator_check(pt, Jet<R>(R(5)));
    CHECK(c.oracle == 0);
    CHECK(c.variant == 0);
    // f = p_j: the d/dp variant gives -2 sum q_jn^-3
    DOperatorReport p = d_operator_check(pt, lp.p[0]);
    R s = R(-2) * (R(1) / R(8) + R(1) / R(27));
    CHECK(p.variant == s);
    CHECK(p.oracle == -s);
    // generic observable
    Jet<R> f = Jet<R>(lp.p[0] * lp.q[2] * lp.q[1] + lp.p[2] * lp.p[1] / lp.q[0]);
    DOperatorReport g = d_operator_check(pt, f);
    CHECK(g.matches == "-variant");
}

TEST_CASE("Magri sigma and duality")
{
    PhasePoint<R> pt = make_point({R(1), R(0)}, {R(1), R(0)});
    CHECK(measure_magri_sigma(pt) == -1);
    for (std::size_t n = 2; n <= 3; ++n)
        for (const auto& q : sample_points(600 + n, n, 3)) require_all(magri_duality_check(q, -1));
    PhasePoint<R> q = sample_points(700, 3, 1)[0];
    auto wrong = magri_duality_check(q, 1);
    CHECK_FALSE(wrong[0].passed());
}
