#include "cm/oracle.hpp"

namespace cm {

namespace {

Rational abs_q(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

void track(Rational& worst, const Rational& x)
{
    Rational a = abs_q(x);
    if (a > worst) worst = a;
}

Rational r(long v) { return Rational(v); }

}  // namespace

Rational max_abs(const Matrix<Rational>& m)
{
    Rational worst(0);
    for (const auto& x : m.data()) track(worst, x);
    return worst;
}

Generators<Jet<Rational>> generator_jets(const PhasePoint<Rational>& pt, std::size_t kmax)
{
    return generators(lift(pt), kmax);
}

std::vector<Residual> jacobi_check(const PhasePoint<Rational>& pt, JJSign sign)
{
    Matrix<Jet<Rational>> P = second_tensor_jet(pt, sign);
    const std::size_t dim = P.rows();
    Rational anti(0);
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) track(anti, Rational(P(a, b).v + P(b, a).v));
    Rational worst(0);
    std::size_t triples = 0;
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b)
            for (std::size_t c = b + 1; c < dim; ++c) {
                track(worst, jacobi_residual(P, a, b, c));
                ++triples;
            }
    const bool printed = sign == JJSign::Printed;
    return {
        {"antisymmetry", anti, true, ""},
        {printed ? "jacobi-printed-jj-sign" : "jacobi", worst, !printed,
         "max over " + std::to_string(triples) + " coordinate triples"},
    };
}

std::vector<Residual> p0_identities(const PhasePoint<Rational>& pt)
{
    const std::size_t n = pt.n();
    Matrix<Rational> P = second_tensor(pt);
    PhasePoint<Jet<Rational>> lp = lift(pt);
    Jet<Rational> p0 = center_momentum(lp);
    Jet<Rational> q0 = center_position(lp);
    Matrix<Jet<Rational>> Lj = lax(lp);
    Matrix<Rational> L = lax(pt);
    Matrix<Rational> Q = position_matrix(pt);
    Matrix<Rational> K = k_matrix(pt);

    Matrix<Rational> bL(n, n), bQ(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bL(i, j) = bracket(p0, Lj(i, j), P);
    for (std::size_t i = 0; i < n; ++i) bQ(i, i) = bracket(p0, lp.q[i], P);

    std::vector<Residual> out;
    out.push_back({"p0-L=[L,K]", max_abs(bL - commutator(L, K)), true, ""});
    out.push_back({"p0-Q=[Q,K]-L", max_abs(bQ - (commutator(Q, K) - L)), true, ""});

    Rational qj(0), pj_resolved(0), pj_printed(0);
    for (std::size_t j = 0; j < n; ++j) {
        Rational s(0);
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) continue;
            Rational d = pt.q[j] - pt.q[m];
            s += 1 / (d * d * d);
        }
        Rational b = bracket(p0, lp.p[j], P);
        track(pj_resolved, Rational(b - 2 * s));
        track(pj_printed, Rational(b + 2 * s));
        track(qj, Rational(bracket(p0, lp.q[j], P) + pt.p[j]));
    }
    out.push_back({"p0-qj=-pj", qj, true, ""});
    out.push_back({"p0-pj=+2sum(q_jn^-3)", pj_resolved, true, "sign-corrected component formula"});
    out.push_back({"p0-pj-printed-sign-differs", pj_printed, false, "printed -2sum(q_jn^-3) disagrees with the oracle"});

    Generators<Jet<Rational>> g = generators(lp, 2 * n - 1);
    Rational pi(0), pjk(0);
    for (std::size_t k = 1; k <= 2 * n - 1; ++k) track(pi, bracket(p0, g.I[k], P));
    for (std::size_t k = 1; k + 1 <= 2 * n - 1; ++k)
        track(pjk, Rational(bracket(p0, g.J[k + 1], P) + Rational(static_cast<long>(k + 1)) * g.I[k + 1].v));
    out.push_back({"p0-Ik=0", pi, true, "k <= 2N-1"});
    out.push_back({"p0-J(k+1)=-(k+1)I(k+1)", pjk, true, "k+1 <= 2N-1"});
    out.push_back({"q0-p0=I1", Rational(bracket(q0, p0, P) - g.I[1].v), true, ""});
    return out;
}

DOperatorReport d_operator_check(const PhasePoint<Rational>& pt, const Jet<Rational>& f)
{
    Matrix<Rational> P = second_tensor(pt);
    Jet<Rational> p0 = center_momentum(lift(pt));
    DOperatorReport rep;
    rep.oracle = bracket(p0, f, P);
    rep.printed = d_operator_printed(pt, f);
    rep.variant = d_operator_variant(pt, f);
    std::string m;
    auto add = [&m](bool ok, const char* name) {
        if (!ok) return;
        if (!m.empty()) m += ",";
        m += name;
    };
    add(rep.oracle == rep.printed, "+printed");
    add(rep.oracle == -rep.printed, "-printed");
    add(rep.oracle == rep.variant, "+variant");
    add(rep.oracle == -rep.variant, "-variant");
    rep.matches = m.empty() ? "none" : m;
    return rep;
}

std::vector<Residual> com_algebra_check(const PhasePoint<Rational>& pt)
{
    const std::size_t n = pt.n();
    const long N = static_cast<long>(n);
    const std::size_t top = 2 * n - 1;
    Matrix<Rational> P = second_tensor(pt);
    PhasePoint<Jet<Rational>> lp = lift(pt);
    Generators<Jet<Rational>> g = generators(lp, top);
    Jet<Rational> q0 = center_position(lp);
    std::vector<Jet<Rational>> tj(top + 1);
    for (std::size_t k = 1; k <= top; ++k) tj[k] = tilde_j(lp, g, k);

    Rational q0i(0), q0j(0), jti(0), jtjt(0), jtjt_printed(0), trace_form(0);
    for (std::size_t m = 1; m <= top; ++m)
        track(q0i, Rational(bracket(q0, g.I[m], P) - r(static_cast<long>(m)) * g.I[m].v));
    for (std::size_t k = 1; k + 1 <= top; ++k)
        track(q0j, Rational(bracket(q0, tj[k + 1], P) - r(static_cast<long>(k)) * tj[k + 1].v));
    for (std::size_t a = 1; a <= top; ++a)
        for (std::size_t m = 1; a + m <= top; ++m) {
            const long nn = static_cast<long>(a), mm = static_cast<long>(m);
            Rational rhs = r(mm + nn) * g.I[m + a].v - Rational(mm * nn, N) * g.I[m].v * g.I[a].v;
            track(jti, Rational(bracket(tj[a + 1], g.I[m], P) - rhs));
        }
    for (std::size_t a = 1; a <= top; ++a)
        for (std::size_t m = 1; a + m + 1 <= top; ++m) {
            const long nn = static_cast<long>(a), mm = static_cast<long>(m);
            Rational lhs = bracket(tj[a + 1], tj[m + 1], P);
            Rational printed = r(nn - mm) * tj[m + a + 1].v +
                               Rational(mm * nn, N) * (tj[m + 1].v * g.I[a].v - tj[a + 1].v * g.I[m].v);
            track(jtjt, Rational(lhs + printed));
            track(jtjt_printed, Rational(lhs - printed));
        }
    for (std::size_t k = 1; k <= top; ++k) track(trace_form, Rational(tj[k].v - tilde_j_trace(pt, k)));

    std::vector<Residual> out;
    out.push_back({"q0-Im=m*Im", q0i, true, "m <= 2N-1"});
    out.push_back({"q0-tJ(n+1)=n*tJ(n+1)", q0j, true, "n+1 <= 2N-1"});
    out.push_back({"tJ(n+1)-Im", jti, true, "m+n <= 2N-1"});
    out.push_back({"tJ-tJ", jtjt, true, "overall sign opposite to the printed bracket"});
    // At N=2 the only admissible pair is n = m = 1, where both signs give 0.
    if (top >= 4)
        out.push_back({"tJ-tJ-printed-sign-differs", jtjt_printed, false, "printed sign disagrees with the oracle"});
    out.push_back({"tJ=Tr(tQ L^n)", trace_form, true, ""});
    out.push_back({"tJ1=0", tj[1].v, true, ""});
    return out;
}

int measure_magri_sigma(const PhasePoint<Rational>& pt)
{
    if (pt.n() != 2) throw InvalidArgument("sigma is measured at N=2");
    PhasePoint<Jet<Rational>> lp = lift(pt);
    Generators<Jet<Rational>> g = generators(lp, 3);
    Rational second = bracket(g.J[2], g.I[1], second_tensor(pt));
    Rational first = bracket(g.J[2], g.I[2], first_tensor<Rational>(2));
    if (is_zero(first) || is_zero(second)) throw PreconditionViolated("sigma undetermined at a point with I2 = 0");
    Rational ratio = second / first;
    if (ratio == 1) return 1;
    if (ratio == -1) return -1;
    throw PreconditionViolated("Magri ratio " + to_string(ratio) + " is not +-1");
}

std::vector<Residual> magri_duality_check(const PhasePoint<Rational>& pt, int sigma)
{
    const std::size_t n = pt.n();
    const std::size_t top = 2 * n - 1;
    Matrix<Rational> P2 = second_tensor(pt);
    Matrix<Rational> P1 = first_tensor<Rational>(n);
    Generators<Jet<Rational>> g = generators(lift(pt), top + 1);
    Rational jm(0), ii2(0), ii1(0);
    for (std::size_t k = 1; k <= top; ++k)
        for (std::size_t m = 1; k + m <= top; ++m)
            track(jm, Rational(bracket(g.J[m], g.I[k], P2) - sigma * bracket(g.J[m], g.I[k + 1], P1)));
    for (std::size_t j = 1; j <= top; ++j)
        for (std::size_t k = 1; k <= top; ++k) {
            track(ii2, bracket(g.I[j], g.I[k], P2));
            track(ii1, bracket(g.I[j + 1], g.I[k], P1));
        }
    return {
        {"Jm-Ik:(2)=sigma*(1)", jm, true, "sigma=" + std::to_string(sigma) + ", k+m <= 2N-1"},
        {"Ij-Ik:(2)=0", ii2, true, ""},
        {"I(j+1)-Ik:(1)=0", ii1, true, ""},
    };
}

}  // namespace cm
