#include "cm/rmatrix.hpp"

namespace cm {

namespace {

using R = Rational;
using JR = Jet<R>;

Matrix<R> unit(std::size_t n, std::size_t i, std::size_t j) { return Matrix<R>::unit(n, i, j); }

// sum_s mu (e_ss on leg k) * (d m / d q_s on legs (i,j))
Matrix<R> hd(const Matrix<JR>& m, std::size_t n, int i, int j, int k, const R& mu)
{
    Matrix<R> out(n * n * n, n * n * n);
    for (std::size_t s = 0; s < n; ++s) {
        Matrix<R> dm = partials(m, s);
        if (dm.is_zero_matrix()) continue;
        out += mu * (on_leg(unit(n, s, s), k) * embed_leg(dm, i, j, n));
    }
    return out;
}

Matrix<R> leg(const Matrix<JR>& m, int i, int j, std::size_t n) { return embed_leg(values(m), i, j, n); }

// sum_cd (sum_s dm/dq_s {q_s, L_cd}) (x) e_cd, as an n^2 x n^2 block on legs
// (i,j) and e_cd on leg k, with {q_s, L_cd} supplied.
Matrix<R> bracket_with_l(const Matrix<JR>& m, std::size_t n, int i, int j, int k,
                         const std::vector<std::vector<Matrix<R>>>& q_l)
{
    Matrix<R> out(n * n * n, n * n * n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
            Matrix<R> dm(n * n, n * n);
            for (std::size_t s = 0; s < n; ++s) {
                const R& b = q_l[s][c](d, 0);
                if (is_zero(b)) continue;
                dm += b * partials(m, s);
            }
            if (dm.is_zero_matrix()) continue;
            out += embed_leg(dm, i, j, n) * on_leg(unit(n, c, d), k);
        }
    return out;
}

// q_l[s][c](d,0) = {q_s, L_cd} under P.
std::vector<std::vector<Matrix<R>>> q_lax_brackets(const PhasePoint<R>& pt, const Matrix<R>& P)
{
    const std::size_t n = pt.n();
    PhasePoint<JR> lp = lift(pt);
    Matrix<JR> L = lax(lp);
    std::vector<std::vector<Matrix<R>>> out(n, std::vector<Matrix<R>>(n, Matrix<R>(n, 1)));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t d = 0; d < n; ++d) out[s][c](d, 0) = bracket(lp.q[s], L(c, d), P);
    return out;
}

std::vector<JR> q_jets(const std::vector<R>& q)
{
    std::vector<JR> out;
    for (std::size_t i = 0; i < q.size(); ++i) out.push_back(JR::variable(q[i], q.size(), i));
    return out;
}

}  // namespace

QuadStructure<Jet<Rational>> quad_structure_jet(const Rational& q1, const Rational& q2, const Rational& w1)
{
    std::vector<JR> q = q_jets({q1, q2});
    return quad_structure(q[0], q[1], w1);
}

Matrix<Rational> pbl_printed(const PhasePoint<Rational>& pt)
{
    if (pt.n() != 2) throw InvalidArgument("pbl_printed needs N=2");
    const R x = q_diff(pt, 0, 1);
    const R p1 = R(pt.p[0] / x), p2 = R(pt.p[1] / x), two = R(2 / (x * x));
    Matrix<R> m(4, 4);
    m(0, 1) = p1;
    m(0, 2) = R(-p1);
    m(1, 0) = R(-p1);
    m(1, 1) = R(-two);
    m(1, 3) = p2;
    m(2, 0) = p1;
    m(2, 2) = two;
    m(2, 3) = R(-p2);
    m(3, 1) = R(-p2);
    m(3, 2) = p2;
    return R(1 / x) * m;
}

Matrix<Rational> lax_bracket_table(const PhasePoint<Rational>& pt, const Matrix<Rational>& P)
{
    const std::size_t n = pt.n();
    Matrix<JR> L = lax(lift(pt));
    Matrix<R> t(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) t(i * n + k, j * n + l) = bracket(L(i, j), L(k, l), P);
    return t;
}

std::array<Rational, 4> zero_weight_residuals(const QuadStructure<Rational>& s, std::size_t n, Eps eps)
{
    const Matrix<R> id = Matrix<R>::identity(n);
    std::array<R, 4> out{R(0), R(0), R(0), R(0)};
    auto track = [](R& w, const Matrix<R>& m) {
        R v = max_abs(m);
        if (v > w) w = v;
    };
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix<R> h1 = kron(unit(n, k, k), id), h2 = kron(id, unit(n, k, k));
        track(out[0], eps.right * commutator(h1 + h2, s.a));
        track(out[1], commutator(eps.left * h1 - eps.right * h2, s.b));
        track(out[2], commutator(eps.right * h1 - eps.left * h2, s.c));
        track(out[3], eps.left * commutator(h1 + h2, s.d));
    }
    return out;
}

std::array<Matrix<Rational>, 4> dybe_residuals(const QuadStructure<Jet<Rational>>& s, std::size_t n, Eps eps,
                                               const Rational& mu)
{
    const R& eL = eps.left;
    const R& eR = eps.right;
    const Matrix<R> a12 = leg(s.a, 1, 2, n), a13 = leg(s.a, 1, 3, n), a23 = leg(s.a, 2, 3, n);
    const Matrix<R> d12 = leg(s.d, 1, 2, n), d13 = leg(s.d, 1, 3, n), d23 = leg(s.d, 2, 3, n);
    const Matrix<R> b13 = leg(s.b, 1, 3, n), b23 = leg(s.b, 2, 3, n);
    const Matrix<R> c13 = leg(s.c, 1, 3, n), c23 = leg(s.c, 2, 3, n);
    auto h = [&](const Matrix<JR>& m, int i, int j, int k) { return hd(m, n, i, j, k, mu); };

    Matrix<R> ra = commutator(a12, a13) + commutator(a12, a23) + commutator(a13, a23) +
                   eR * (h(s.a, 1, 2, 3) + h(s.a, 2, 3, 1) - h(s.a, 1, 3, 2));
    Matrix<R> rd = commutator(d12, d13) + commutator(d12, d23) + commutator(d13, d23) +
                   eL * (h(s.d, 1, 2, 3) + h(s.d, 2, 3, 1) - h(s.d, 1, 3, 2));
    Matrix<R> rc = commutator(a12, c13) + commutator(a12, c23) + commutator(c13, c23) - eR * h(s.c, 1, 3, 2) +
                   eR * h(s.c, 2, 3, 1) - eL * h(s.a, 1, 2, 3);
    Matrix<R> rb = commutator(d12, b13) + commutator(d12, b23) + commutator(b13, b23) - eR * h(s.d, 1, 2, 3) +
                   eL * h(s.b, 2, 3, 1) - eL * h(s.b, 1, 3, 2);
    return {ra, rb, rc, rd};
}

std::array<Matrix<Rational>, 4> rl_postulate_residual(const PhasePoint<Rational>& pt, const Rational& w1, Eps eps,
                                                      const Rational& mu)
{
    if (pt.n() != 2) throw InvalidArgument("rl postulate is stated at N=2");
    const std::size_t n = 2;
    QuadStructure<JR> s = quad_structure_jet(pt.q[0], pt.q[1], w1);
    auto q_l = q_lax_brackets(pt, second_tensor(pt));
    const Matrix<R> l3 = on_leg(lax(pt), 3);
    std::array<Matrix<R>, 4> out;
    const Matrix<JR>* rs[4] = {&s.a, &s.b, &s.c, &s.d};
    for (std::size_t k = 0; k < 4; ++k) {
        const Matrix<R> lhs = bracket_with_l(*rs[k], n, 1, 2, 3, q_l);
        const Matrix<R> h = hd(*rs[k], n, 1, 2, 3, mu);
        out[k] = lhs - eps.right * (h * l3) - eps.left * (l3 * h);
    }
    return out;
}

Matrix<Rational> linear_from_quadratic(const QuadStructure<Rational>& s, const Matrix<Rational>& l)
{
    const std::size_t n = l.rows();
    if (!(swap_legs(s.b, n) == s.b)) throw PreconditionViolated("b is not symmetric under leg swap");
    const Matrix<R> l2 = kron(Matrix<R>::identity(n), l);
    return R(1, 2) * (s.a * l2 + l2 * s.a) - l2 * s.b;
}

Matrix<Rational> pb1_residual(const Matrix<Rational>& r, const Matrix<Rational>& l, const Matrix<Rational>& table)
{
    const std::size_t n = l.rows();
    const Matrix<R> id = Matrix<R>::identity(n);
    return commutator(r, kron(l, id)) - commutator(swap_legs(r, n), kron(id, l)) - table;
}

FirstBracketReport first_bracket_check(const PhasePoint<Rational>& pt)
{
    const std::size_t n = pt.n();
    const Matrix<R> canonical = first_tensor<R>(n);
    const Matrix<R> reversed = -canonical;
    const Matrix<R> l = lax(pt);
    Matrix<JR> rj = first_bracket_r(q_jets(pt.q));
    const Matrix<R> r = values(rj);

    FirstBracketReport rep;
    rep.pb1 = max_abs(pb1_residual(r, l, lax_bracket_table(pt, reversed)));
    rep.pb1_canonical = max_abs(pb1_residual(r, l, lax_bracket_table(pt, canonical)));
    if (n > 3) return rep;
    rep.has_three_leg = true;

    auto q_l = q_lax_brackets(pt, reversed);
    const Matrix<R> r12_l3 = bracket_with_l(rj, n, 1, 2, 3, q_l);
    const Matrix<R> r13_l2 = bracket_with_l(rj, n, 1, 3, 2, q_l);
    Matrix<R> gnf(n * n * n, n * n * n);
    for (std::size_t s = 0; s < n; ++s) gnf += embed_leg(partials(rj, s), 1, 2, n) * on_leg(unit(n, s, s), 3);
    rep.gnf = max_abs(r12_l3 - gnf);

    const Matrix<R> r12 = embed_leg(r, 1, 2, n), r13 = embed_leg(r, 1, 3, n), r23 = embed_leg(r, 2, 3, n),
                    r32 = embed_leg(r, 3, 2, n);
    rep.assoc = max_abs(commutator(r12, r13) + commutator(r12, r23) + commutator(r32, r13) + r12_l3 - r13_l2);
    return rep;
}

QuadStructure<Jet<Rational>> first_bracket_quad_jet(const std::vector<Rational>& q)
{
    const std::size_t n = q.size();
    std::vector<JR> qj = q_jets(q);
    Matrix<JR> d(n * n, n * n), c(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const JR inv = JR(JR(1) / JR(qj[i] - qj[j]));
            d(i * n + j, j * n + i) += inv;
            c(i * n + i, i * n + j) += inv;
        }
    Matrix<JR> b = swap_legs(c, n);
    Matrix<JR> a = d + c - b;
    return {a, b, c, d};
}

}  // namespace cm
