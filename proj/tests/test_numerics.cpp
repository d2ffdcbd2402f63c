#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cm/linalg.hpp"
#include "cm/sampling.hpp"

using namespace cm;
using R = Rational;
using JR = Jet<R>;

namespace {

Matrix<R> random_matrix(PointSampler& s, std::size_t n)
{
    Matrix<R> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = s.rational();
    return m;
}

}  // namespace

TEST_CASE("rational parse and print round trip")
{
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("0")) == "0");
    CHECK(to_string(parse_rational("-0/5")) == "0");
    CHECK(parse_rational("10").get_den() == 1);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("1.5"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("0x10"), InvalidArgument);
    auto v = parse_rational_list("1/2,-3,0");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == R(1, 2));
    CHECK(v[1] == -3);
}

TEST_CASE("rationals stay canonical under field operations")
{
    PointSampler s(11);
    for (int t = 0; t < 200; ++t) {
        R a = s.rational(), b = s.rational(), c = s.rational();
        R x = R((a + b) * c);
        CHECK(x == R(a * c + b * c));
        if (!is_zero(b)) CHECK(R(R(a / b) * b) == a);
        CHECK(x.get_den() > 0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        CHECK((g == 1 || is_zero(x)));
    }
}

TEST_CASE("jet arithmetic follows the Leibniz rule exactly")
{
    JR x = JR::variable(R(3), 2, 0), y = JR::variable(R(-1, 2), 2, 1);
    JR f = JR(x * y + x / y);
    // d/dx = y + 1/y, d/dy = x - x/y^2
    CHECK(f.v == R(-3, 2) - 6);
    CHECK(f.partial(0) == R(-1, 2) - 2);
    CHECK(f.partial(1) == R(3) - 12);
    JR p = ipow(x, 4);
    CHECK(p.v == 81);
    CHECK(p.partial(0) == 108);
    CHECK(p.partial(1) == 0);
}

TEST_CASE("nested jets give exact second derivatives")
{
    using JJ = Jet<JR>;
    // f = x^2 y^3 at (2, -1)
    JR xv = JR::variable(R(2), 2, 0), yv = JR::variable(R(-1), 2, 1);
    JJ x = JJ::variable(xv, 2, 0), y = JJ::variable(yv, 2, 1);
    JJ f = JJ(JJ(x * x) * JJ(y * JJ(y * y)));
    CHECK(f.v.v == -4);
    CHECK(f.partial(0).v == -4);              // 2xy^3
    CHECK(f.partial(0).partial(0) == -2);     // 2y^3
    CHECK(f.partial(0).partial(1) == 12);     // 6xy^2
    CHECK(f.partial(1).partial(1) == -24);    // 6x^2 y
    CHECK(truncate(f).partial(1) == 12);      // 3x^2y^2
}

TEST_CASE("is_zero on a jet needs value and gradient to vanish")
{
    JR z(R(0), {R(0), R(1)});
    CHECK_FALSE(is_zero(z));
    CHECK(is_zero(base_value(z)));
    CHECK(is_zero(JR(R(0), {R(0), R(0)})));
}

TEST_CASE("matrix products keep gradients of zero-valued jet entries")
{
    // Regression: an entry with value 0 but a nonzero gradient must not be
    // skipped in a product.
    Matrix<JR> a(1, 1), b(1, 1);
    a(0, 0) = JR(R(0), {R(1)});
    b(0, 0) = JR(R(5), {R(0)});
    Matrix<JR> c = a * b;
    CHECK(c(0, 0).v == 0);
    CHECK(c(0, 0).partial(0) == 5);
    Matrix<JR> k = kron(a, b);
    CHECK(k(0, 0).partial(0) == 5);
    Matrix<JR> e = embed_leg(kron(Matrix<JR>::identity(1), a), 1, 2, 1);
    CHECK(e(0, 0).partial(0) == 1);
}

TEST_CASE("exact inverse and determinant on random matrices")
{
    PointSampler s(5);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int t = 0; t < 5; ++t) {
            Matrix<R> m = random_matrix(s, n);
            R det = determinant(m);
            if (is_zero(det)) {
                CHECK_THROWS_AS(invert(m), SingularMatrix);
                continue;
            }
            CHECK(m * invert(m) == Matrix<R>::identity(n));
            CHECK(invert(m) * m == Matrix<R>::identity(n));
            Matrix<R> m2 = m * m;
            CHECK(determinant(m2) == R(det * det));
            std::vector<R> b(n);
            for (auto& x : b) x = s.rational();
            std::vector<R> x = solve(m, b);
            for (std::size_t i = 0; i < n; ++i) {
                R row(0);
                for (std::size_t j = 0; j < n; ++j) row += m(i, j) * x[j];
                CHECK(row == b[i]);
            }
        }
}

TEST_CASE("singular matrices are reported")
{
    Matrix<R> m(3, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(2, 2) = 1;
    CHECK(determinant(m) == 0);
    CHECK_THROWS_AS(invert(m), SingularMatrix);
}

TEST_CASE("jet inverse matches the derivative of the inverse")
{
    // A(t) = [[1+t, 2],[3, 4-t]] at t=0: d(A^-1) = -A^-1 A' A^-1
    Matrix<JR> a(2, 2);
    a(0, 0) = JR(R(1), {R(1)});
    a(0, 1) = JR(R(2), {R(0)});
    a(1, 0) = JR(R(3), {R(0)});
    a(1, 1) = JR(R(4), {R(-1)});
    Matrix<JR> inv = invert(a);
    Matrix<R> a0 = values(a), ai = invert(a0);
    Matrix<R> expect = -(ai * partials(a, 0) * ai);
    CHECK(partials(inv, 0) == expect);
    CHECK(values(inv) == ai);
}

TEST_CASE("floating inverse agrees with the exact one")
{
    PointSampler s(9);
    Matrix<R> m = random_matrix(s, 4);
    while (is_zero(determinant(m))) m = random_matrix(s, 4);
    Matrix<double> md = map<double>(m, [](const R& x) { return x.get_d(); });
    Matrix<double> inv = invert(md);
    Matrix<R> ex = invert(m);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(inv(i, j) == doctest::Approx(ex(i, j).get_d()).epsilon(1e-9));
}

TEST_CASE("kronecker, leg embedding and leg swap")
{
    PointSampler s(3);
    const std::size_t n = 2;
    Matrix<R> a = random_matrix(s, n), b = random_matrix(s, n), c = random_matrix(s, n);
    Matrix<R> ab = kron(a, b);
    CHECK(embed_leg(ab, 1, 2, n) == kron(kron(a, b), Matrix<R>::identity(n)));
    CHECK(embed_leg(ab, 2, 3, n) == kron(Matrix<R>::identity(n), kron(a, b)));
    CHECK(embed_leg(ab, 1, 3, n) == on_leg(a, 1) * on_leg(b, 3));
    CHECK(embed_leg(ab, 3, 1, n) == on_leg(a, 3) * on_leg(b, 1));
    CHECK(swap_legs(ab, n) == kron(b, a));
    CHECK(swap_legs(swap_legs(ab, n), n) == ab);
    CHECK(on_leg(c, 2) == kron(kron(Matrix<R>::identity(n), c), Matrix<R>::identity(n)));
    CHECK_THROWS_AS(embed_leg(ab, 1, 1, n), InvalidArgument);
    CHECK_THROWS_AS(a * ab, InvalidArgument);
}

TEST_CASE("sampler is deterministic and respects its rules")
{
    auto a = sample_points(42, 3, 10), b = sample_points(42, 3, 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p == b[i].p);
        CHECK(a[i].q == b[i].q);
        CHECK(irregularity(a[i]).empty());
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(abs(a[i].p[j]) <= 30);
            CHECK(a[i].p[j].get_den() <= 6);
        }
    }
    CHECK(sample_points(43, 3, 1)[0].q != a[0].q);
    SampleRules slice;
    slice.q12_equals_q23 = true;
    for (const auto& pt : sample_points(1, 3, 5, slice)) CHECK(R(pt.q[0] - pt.q[1]) == R(pt.q[1] - pt.q[2]));
    PhasePoint<R> close = make_point({R(0), R(1)}, {R(0), R(1, 8)});
    CHECK_FALSE(irregularity(close).empty());
    PhasePoint<R> locus = make_point({R(2), R(0)}, {R(1), R(0)});
    CHECK(irregularity(locus).find("locus") != std::string::npos);
}
