#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/rmatrix.hpp"
#include "cm/sampling.hpp"

using namespace cm;
using R = Rational;
using JR = Jet<R>;

namespace {

R worst(const std::array<Matrix<R>, 4>& m)
{
    R w(0);
    for (const auto& x : m) {
        R v = max_abs(x);
        if (v > w) w = v;
    }
    return w;
}

const std::vector<R> w1s{R(0), R(1), R(-3, 2)};
const Eps half{R(1, 2), R(1, 2)};

}  // namespace

TEST_CASE("quadruplet golden entries")
{
    QuadStructure<R> s = quad_structure(R(1), R(-1), R(0));
    CHECK(s.a(1, 2) == R(1, 4));
    CHECK(s.a(2, 1) == R(-1, 4));
    CHECK(s.a(1, 1) == 0);
    CHECK(s.b(0, 3) == R(1, 4));
    CHECK(s.b(3, 0) == R(-1, 4));
    CHECK(s.c == s.b);
    CHECK(s.d == s.a);
    QuadStructure<R> w = quad_structure(R(1), R(-1), R(2));
    CHECK(w.a(1, 1) == R(-1, 2));
    CHECK(w.b(3, 3) == R(1, 2));
    CHECK_THROWS_AS(quad_structure(R(1), R(1), R(0)), DegenerateConfiguration);
}

TEST_CASE("quadratic right side at hand points")
{
    PhasePoint<R> z = make_point({R(0), R(0)}, {R(1), R(-1)});
    Matrix<R> m = quadratic_rhs(quad_structure(z.q[0], z.q[1], R(0)), lax(z));
    CHECK(m(1, 1) == R(-1, 4));
    CHECK(m(2, 2) == R(1, 4));
    PhasePoint<R> h = make_point({R(1), R(0)}, {R(1), R(0)});
    Matrix<R> n = quadratic_rhs(quad_structure(h.q[0], h.q[1], R(0)), lax(h));
    CHECK(n(0, 1) == 1);
}

TEST_CASE("quadratic bracket reproduces the second tensor for every w1")
{
    for (const auto& pt : sample_points(2001, 2, 10)) {
        const Matrix<R> table = lax_bracket_table(pt, second_tensor(pt));
        CHECK(pbl_printed(pt) == table);
        for (const R& w : w1s) {
            QuadStructure<R> s = quad_structure(pt.q[0], pt.q[1], w);
            CHECK(quadratic_rhs(s, lax(pt)) == table);
            CHECK(swap_legs(s.a, 2) == -s.a);
            CHECK(s.b == swap_legs(s.c, 2));
            CHECK(s.a + s.b - s.c - s.d == Matrix<R>(4, 4));
            for (const R& r : zero_weight_residuals(s, 2, half)) CHECK(r == 0);
            CHECK(pb1_residual(linear_from_quadratic(s, lax(pt)), lax(pt), table) == Matrix<R>(4, 4));
        }
    }
}

TEST_CASE("dynamical YBE holds only at epsilon = (1/2, 1/2)")
{
    PhasePoint<R> pt = sample_points(2002, 2, 1)[0];
    for (const R& w : w1s) {
        QuadStructure<JR> s = quad_structure_jet(pt.q[0], pt.q[1], w);
        CHECK(worst(dybe_residuals(s, 2, half)) == 0);
        CHECK(worst(dybe_residuals(s, 2, {R(0), R(1)})) != 0);
        CHECK(worst(dybe_residuals(s, 2, half, R(2))) != 0);
    }
    QuadStructure<JR> s = quad_structure_jet(pt.q[0], pt.q[1], R(0));
    const R grid[3] = {R(0), R(1, 2), R(1)};
    for (const R& l : grid)
        for (const R& r : grid) {
            if (l == R(1, 2) && r == R(1, 2)) continue;
            CHECK(worst(dybe_residuals(s, 2, {l, r})) != 0);
        }
}

TEST_CASE("rl postulate")
{
    for (const auto& pt : sample_points(2003, 2, 5)) {
        for (const R& w : w1s) CHECK(worst(rl_postulate_residual(pt, w, half)) == 0);
        CHECK(worst(rl_postulate_residual(pt, R(0), {R(0), R(1)})) != 0);
    }
    // at p = 0 the left side vanishes, so epsL = epsR cannot be told apart
    PhasePoint<R> z = make_point({R(0), R(0)}, {R(1), R(-1)});
    CHECK(worst(rl_postulate_residual(z, R(0), {R(0), R(0)})) == 0);
    CHECK(worst(rl_postulate_residual(z, R(0), {R(1), R(1)})) == 0);
}

TEST_CASE("linear reduction needs a swap-symmetric b")
{
    QuadStructure<R> s = quad_structure(R(2), R(0), R(0));
    s.b(0, 1) = 1;
    PhasePoint<R> pt = make_point({R(1), R(3)}, {R(2), R(0)});
    CHECK_THROWS_AS(linear_from_quadratic(s, lax(pt)), PreconditionViolated);
}

TEST_CASE("first bracket r-matrix")
{
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& pt : sample_points(2004 + n, n, 3)) {
            FirstBracketReport r = first_bracket_check(pt);
            CHECK(r.pb1 == 0);
            CHECK(r.pb1_canonical != 0);
            if (n <= 3) {
                CHECK(r.gnf == 0);
                CHECK(r.assoc == 0);
            }
        }
    FirstBracketReport h = first_bracket_check(make_point({R(1), R(0)}, {R(1), R(0)}));
    CHECK(h.pb1 == 0);
    CHECK(h.gnf == 0);
    CHECK(h.assoc == 0);
    Matrix<R> r = first_bracket_r(std::vector<R>{R(1), R(0)});
    CHECK(r(1, 2) == 1);  // e12 (x) e21
    CHECK(r(0, 1) == 1);  // e11 (x) e12
    CHECK(r(2, 1) == -1);
    CHECK(r(3, 2) == -1);
}

TEST_CASE("first bracket split is not a quadratic-family solution")
{
    for (std::size_t n = 2; n <= 3; ++n) {
        PhasePoint<R> pt = sample_points(2010 + n, n, 1)[0];
        QuadStructure<JR> s = first_bracket_quad_jet(pt.q);
        auto d = dybe_residuals(s, n, half);
        for (const auto& m : d) CHECK(max_abs(m) != 0);
        QuadStructure<R> v{values(s.a), values(s.b), values(s.c), values(s.d)};
        auto zw = zero_weight_residuals(v, n, half);
        CHECK(zw[0] != 0);
        CHECK(zw[1] != 0);
        CHECK(zw[2] != 0);
        CHECK(quadratic_rhs(v, lax(pt)) != lax_bracket_table(pt, second_tensor(pt)));
    }
}
