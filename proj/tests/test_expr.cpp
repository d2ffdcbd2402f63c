#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/closed_form.hpp"
#include "cm/expr.hpp"
#include "cm/sampling.hpp"

#include <cmath>

using namespace cm;
using R = Rational;

namespace {

PhasePoint<double> to_float(const PhasePoint<R>& pt)
{
    return map_point<double>(pt, [](const R& x) { return x.get_d(); });
}

// Random tree over p_i, q_i, I_k, J_k and small literals. Division only by
// shifted squares so evaluation stays finite.
NodePtr random_tree(PointSampler& s, std::size_t n, int depth)
{
    if (depth == 0 || s.below(4) == 0) {
        switch (s.below(5)) {
        case 0: return make_literal(R(static_cast<long>(s.below(7)) - 3, static_cast<unsigned long>(s.below(3) + 1)));
        case 1: return make_symbol('p', s.below(n) + 1);
        case 2: return make_symbol('q', s.below(n) + 1);
        case 3: return make_symbol('I', s.below(2 * n - 1) + 1);
        default: return make_symbol('J', s.below(2 * n - 1) + 1);
        }
    }
    NodePtr a = random_tree(s, n, depth - 1), b = random_tree(s, n, depth - 1);
    switch (s.below(6)) {
    case 0: return make_binary(Node::Add, a, b);
    case 1: return make_binary(Node::Sub, a, b);
    case 2: return make_binary(Node::Mul, a, b);
    case 3: return make_unary_minus(a);
    case 4: return make_power(a, static_cast<long>(s.below(3)));
    default: {
        NodePtr sq = make_power(b, 2);
        return make_binary(Node::Div, a, make_binary(Node::Add, sq, make_literal(R(1))));
    }
    }
}

}  // namespace

TEST_CASE("evaluation at hand points")
{
    PhasePoint<R> pt = make_point({R(1), R(0)}, {R(1), R(0)});
    CHECK(eval(parse("p1 + q2", 2), pt) == 1);
    CHECK(eval(parse("I2", 2), pt) == R(-1, 2));
    CHECK(eval(parse("2^-2 * (q1 - -q1)", 2), pt) == R(1, 2));
    CHECK(eval(parse("p0", 2), pt) == 1);
    CHECK(eval(parse("q0", 2), pt) == 1);
    CHECK(eval(parse("1/3 + 1/6", 2), pt) == R(1, 2));
    Jet<R> j = eval_jet(parse("J2", 2), pt);
    CHECK(j.v == 1);
    CHECK(j.d == std::vector<R>{R(1), R(0), R(1), R(0)});
}

TEST_CASE("x0 through the expression layer")
{
    PhasePoint<R> pt = make_point({R(0), R(0), R(0)}, {R(1), R(0), R(-1)});
    Observable x0 = parse("x0", 3);
    CHECK(x0.uses_x0());
    CHECK(eval(x0, pt) == -1);
    CHECK_THROWS_AS(parse("x0", 2), UnknownSymbol);
    PhasePoint<R> q = sample_points(31, 3, 1)[0];
    Jet<R> g = eval_jet(parse("x0 * p1", 3), q);
    Jet<R> xj = x0_jet(q);
    CHECK(g.v == R(xj.v * q.p[0]));
    CHECK(g.partial(0) == R(xj.partial(0) * q.p[0] + xj.v));
    CHECK(g.partial(4) == R(xj.partial(4) * q.p[0]));
}

TEST_CASE("syntax errors carry byte offsets")
{
    try {
        parse("p1 + * q1", 2);
        FAIL("no throw");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 5);
    }
    try {
        parse("(p1 + q1", 2);
        FAIL("no throw");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 8);
    }
    CHECK_THROWS_AS(parse("", 2), SyntaxError);
    CHECK_THROWS_AS(parse("1.5", 2), SyntaxError);
    CHECK_THROWS_AS(parse("2p1", 2), SyntaxError);
    CHECK_THROWS_AS(parse("p1 \xc3\xa9", 2), SyntaxError);
    CHECK_THROWS_AS(parse("p3", 2), UnknownSymbol);
    CHECK_THROWS_AS(parse("I4", 2), UnknownSymbol);
    CHECK_THROWS_AS(parse("foo", 2), UnknownSymbol);
    CHECK_THROWS_AS(parse("p01", 2), UnknownSymbol);
    CHECK_THROWS_AS(parse("p1^q1", 2), PowerNotInteger);
    CHECK_THROWS_AS(parse("p1^1.5", 2), PowerNotInteger);
}

TEST_CASE("division by zero names the subexpression")
{
    PhasePoint<R> pt = make_point({R(0), R(0)}, {R(2), R(1)});
    try {
        eval(parse("1 / (q1 - q2 - 1)", 2), pt);
        FAIL("no throw");
    } catch (const DivisionByZero& e) {
        CHECK(std::string(e.what()).find("((q1 - q2) - 1)") != std::string::npos);
    }
    CHECK_THROWS_AS(eval(parse("p1^-1", 2), pt), DivisionByZero);
}

TEST_CASE("print is canonical and round trips")
{
    CHECK(print(parse("p1+q2*3", 2)) == "(p1 + (q2 * 3))");
    CHECK(print(parse("-p1^2", 2)) == "(-(p1^2))");
    CHECK(print(parse("(p1-q1)^-3", 2)) == "((p1 - q1)^-3)");
    PointSampler s(77);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + s.below(2);
        Observable o(random_tree(s, n, 4), n);
        const std::string text = print(o);
        Observable back = parse(text, n);
        CHECK(print(back) == text);
    }
}

TEST_CASE("parsed and printed trees evaluate identically")
{
    PointSampler s(78);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + s.below(2);
        Observable o(random_tree(s, n, 3), n);
        PhasePoint<R> pt = s.next(n);
        CHECK(eval(parse(print(o), n), pt) == eval(o, pt));
    }
}

TEST_CASE("jet gradient matches central differences in float mode")
{
    PointSampler s(79);
    int compared = 0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + s.below(2);
        Observable o(random_tree(s, n, 3), n);
        PhasePoint<R> pt = s.next(n);
        Jet<R> exact = eval_jet(o, pt);
        const double scale = 1 + std::fabs(exact.v.get_d());
        if (scale > 1e6) continue;
        PhasePoint<double> base = to_float(pt);
        CHECK(eval_float(o, base) == doctest::Approx(exact.v.get_d()).epsilon(1e-9));
        const double h = 1e-5;
        for (std::size_t a = 0; a < pt.dim(); ++a) {
            PhasePoint<double> up = base, dn = base;
            (a < n ? up.p[a] : up.q[a - n]) += h;
            (a < n ? dn.p[a] : dn.q[a - n]) -= h;
            const double fd = (eval_float(o, up) - eval_float(o, dn)) / (2 * h);
            const double g = exact.partial(a).get_d();
            CHECK(std::fabs(fd - g) <= 1e-4 * (1 + std::fabs(g)));
        }
        Jet<double> jf = eval_jet_float(o, base);
        for (std::size_t a = 0; a < pt.dim(); ++a)
            CHECK(jf.partial(a) == doctest::Approx(exact.partial(a).get_d()).epsilon(1e-8));
        ++compared;
    }
    CHECK(compared > 20);
}

TEST_CASE("observables are bound to their particle count")
{
    PhasePoint<R> pt = make_point({R(0), R(1), R(2)}, {R(0), R(1), R(2)});
    CHECK_THROWS_AS(eval(parse("p1", 2), pt), InvalidArgument);
}
