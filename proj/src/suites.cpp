#include "cm/suites.hpp"

#include "cm/closed_form.hpp"
#include "cm/oracle.hpp"
#include "cm/rmatrix.hpp"
#include "cm/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <json.hpp>
#include <thread>

namespace cm {

namespace {

using R = Rational;
using JR = Jet<R>;
using Point = PhasePoint<R>;

const std::vector<R>& w1_values()
{
    static const std::vector<R> w{R(0), R(1), R(-3, 2)};
    return w;
}

std::string w1_tag(const R& w) { return "w1=" + to_string(w); }

std::string eps_tag(const Eps& e) { return "(" + to_string(e.left) + "," + to_string(e.right) + ")"; }

Check check(std::string name, const R& residual, bool expect_zero, const Point* pt, std::string notes = {})
{
    Check c;
    c.name = std::move(name);
    c.status = expect_zero == is_zero(residual) ? "pass" : "fail";
    c.residual = to_string(residual);
    if (pt) c.point = *pt;
    c.notes = std::move(notes);
    return c;
}

Check from_residual(const Residual& r, const std::string& tag, const Point& pt)
{
    std::string notes = r.note;
    if (!r.expect_zero) notes = "negative control, expected nonzero" + (notes.empty() ? "" : "; " + notes);
    return check(r.name + tag, r.value, r.expect_zero, &pt, notes);
}

R worst_of(std::initializer_list<R> xs)
{
    R w(0);
    for (const R& x : xs) {
        R a = abs(x);
        if (a > w) w = a;
    }
    return w;
}

void track(R& w, const R& x)
{
    R a = abs(x);
    if (a > w) w = a;
}

std::string trial_tag(std::size_t n, std::size_t i) { return "[n=" + std::to_string(n) + ",#" + std::to_string(i) + "]"; }

std::uint64_t sub_seed(std::uint64_t seed, std::size_t n, std::uint64_t salt)
{
    return seed ^ (0x9E3779B97F4A7C15ULL * (n + 1)) ^ (0xC2B2AE3D27D4EB4FULL * salt);
}

// Runs one job per trial on a small thread pool; output keeps trial order.
std::vector<Check> per_trial(std::size_t count, const std::function<std::vector<Check>(std::size_t)>& job)
{
    std::vector<std::vector<Check>> parts(count);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> fs;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
        fs.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    parts[i] = job(i);
                } catch (const Error& e) {
                    Check c;
                    c.name = "error #" + std::to_string(i);
                    c.status = "fail";
                    c.residual = "";
                    c.notes = e.what();
                    parts[i] = {c};
                }
            }
        }));
    for (auto& f : fs) f.get();
    std::vector<Check> out;
    for (auto& p : parts)
        for (auto& c : p) out.push_back(std::move(c));
    return out;
}

void append(std::vector<Check>& out, std::vector<Check> more)
{
    for (auto& c : more) out.push_back(std::move(c));
}

// {I_a,I_b} = 0, {J_a,I_b} = (a+b-1) I_{a+b-1}, {J_a,J_b} = (b-a) J_{a+b-1}
// for a, b <= n under the tensor P.
R closure_residual(const Point& pt, const Matrix<R>& P)
{
    const std::size_t n = pt.n();
    Generators<JR> g = generator_jets(pt, 2 * n - 1);
    R w(0);
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = 1; b <= n; ++b) {
            const std::size_t k = a + b - 1;
            track(w, bracket(g.I[a], g.I[b], P));
            track(w, R(bracket(g.J[a], g.I[b], P) - R(static_cast<long>(k)) * g.I[k].v));
            track(w, R(bracket(g.J[a], g.J[b], P) - R(static_cast<long>(b) - static_cast<long>(a)) * g.J[k].v));
        }
    return w;
}

const char* closure_note = "JJ block with the consistent (b-a) sign";

// ---- suites ----

std::vector<Check> suite_jacobi(std::size_t n, std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, n, 1), n, trials);
    return per_trial(trials, [&](std::size_t i) {
        std::vector<Check> out;
        const std::string tag = trial_tag(n, i);
        for (const auto& r : jacobi_check(pts[i])) out.push_back(from_residual(r, tag, pts[i]));
        if (i == 0)
            for (const auto& r : jacobi_check(pts[i], JJSign::Printed))
                if (!r.expect_zero) out.push_back(from_residual(r, tag, pts[i]));
        return out;
    });
}

std::vector<Check> suite_n2(std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, 2, 2), 2, trials);
    return per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(2, i);
        std::vector<Check> out;
        const Matrix<R> closed = n2_tensor(pt);
        out.push_back(check("closed-form=oracle" + tag, max_abs(closed - second_tensor(pt)), true, &pt,
                            "display with factors pp*2, z*(-1), qq*2"));
        out.push_back(check("PB-IJ-closure(closed-form)" + tag, closure_residual(pt, closed), true, &pt, closure_note));
        N2Brackets<R> b = n2_brackets(pt);
        out.push_back(check("display-z-pattern" + tag,
                            worst_of({R(b.z(0, 0) + b.z(1, 1)), R(b.z(0, 0) + b.z(1, 0)), R(b.z(0, 0) - b.z(0, 1)),
                                      R(b.z(0, 0) + b.z(1, 0)), R(b.z(0, 1) + b.z(1, 1))}),
                            true, &pt, "z11=-z22=-z21=z12, z1j+z2j=0"));
        const R pp_ratio = R(closed(0, 1) / second_tensor(pt)(0, 1));
        out.push_back(check("display-pp-factor" + tag, R(b.pp * 2 - second_tensor(pt)(0, 1)), true, &pt,
                            "oracle {p1,p2} = 2 x displayed value; ratio closed/oracle = " + to_string(pp_ratio)));
        return out;
    });
}

std::vector<Check> suite_n3(std::uint64_t seed, std::size_t trials)
{
    SampleRules rules;
    rules.require_d_nonzero = true;
    auto pts = sample_points(sub_seed(seed, 3, 3), 3, trials, rules);
    std::vector<Check> out = per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(3, i);
        std::vector<Check> c;
        const Matrix<R> P = second_tensor(pt);
        R x[3];
        for (std::size_t k = 0; k < 3; ++k) {
            const std::size_t a = k, b = (k + 1) % 3;
            const R q = R(pt.q[a] - pt.q[b]);
            x[k] = R(P(a, b) + 2 / R(q * q * q));
        }
        c.push_back(check("x12=x23=x31" + tag, worst_of({R(x[0] - x[1]), R(x[1] - x[2])}), true, &pt));
        const R x0 = x[0];
        N3Brackets nb = n3_brackets(pt, x0);
        R sums(0), zdiff(0);
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                if (j == k) continue;
                track(sums, R(nb.z[0][j][k] + nb.z[1][j][k] + nb.z[2][j][k]));
                for (std::size_t i2 = 0; i2 < 3; ++i2) track(zdiff, R(nb.z[i2][j][k] - z_from_tensor(P, pt, i2, j, k)));
            }
        for (std::size_t i2 = 0; i2 < 3; ++i2) track(sums, R(nb.z[i2][0][1] + nb.z[i2][1][2] + nb.z[i2][2][0]));
        c.push_back(check("z-constraint-sums" + tag, sums, true, &pt));
        c.push_back(check("z-display=oracle" + tag, zdiff, true, &pt, "repaired n coefficients, see README"));
        c.push_back(check("q12q23-display=oracle" + tag, R(nb.q12q23 - q12q23_from_tensor(P)), true, &pt,
                          "repaired cubic and linear x0 terms"));
        N3Brackets printed = n3_brackets(pt, x0, Transcription::Printed);
        R pdiff(0);
        for (std::size_t i2 = 0; i2 < 3; ++i2)
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < 3; ++k)
                    if (j != k) track(pdiff, R(printed.z[i2][j][k] - z_from_tensor(P, pt, i2, j, k)));
        c.push_back(check("z-verbatim-display-differs" + tag, pdiff, false, &pt, "negative control, expected nonzero"));
        const Matrix<R> closed = n3_tensor(pt, x0);
        c.push_back(check("closed-form-tensor=oracle" + tag, max_abs(closed - P), true, &pt, "x0 from the oracle"));
        c.push_back(check("PB-IJ-closure(closed-form)" + tag, closure_residual(pt, closed), true, &pt, closure_note));
        OdeReport ode = x0_ode_residual(pt);
        c.push_back(check("x0-ode" + tag, ode.resolved, true, &pt, "D with the second term in d/dp, repaired right side"));
        c.push_back(check("x0-ode-verbatim-differs" + tag, ode.printed, false, &pt,
                          "negative control, expected nonzero"));
        return c;
    });

    SampleRules slice;
    slice.q12_equals_q23 = true;
    auto special = sample_points(sub_seed(seed, 3, 4), 3, 4, slice);
    special.insert(special.begin(), make_point({R(0), R(0), R(0)}, {R(1), R(0), R(-1)}));
    for (std::size_t i = 0; i < special.size(); ++i) {
        const Point& pt = special[i];
        const R oracle = x0_from_oracle(pt);
        std::string note = "q12 = q23";
        if (i == 0) note += "; x0 = " + to_string(oracle) + " (expected -1)";
        R res = R(x0_special_value(pt) - oracle);
        if (i == 0 && oracle != -1) res = R(oracle + 1);
        out.push_back(check("x0-special-value[n=3,#" + std::to_string(i) + "]", res, true, &pt, note));
    }
    const Point zero_p = make_point({R(0), R(0), R(0)}, {R(1), R(0), R(-1)});
    Check zd = check("ZeroD-at-p=0", R(0), true, &zero_p, "n3_brackets throws ZeroD");
    try {
        (void)n3_brackets(zero_p, R(-1));
        zd.status = "fail";
        zd.notes = "no ZeroD raised";
    } catch (const ZeroD&) {
    }
    out.push_back(zd);
    return out;
}

std::vector<Check> suite_p0(std::size_t n, std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, n, 5), n, trials);
    return per_trial(trials, [&](std::size_t i) {
        std::vector<Check> out;
        for (const auto& r : p0_identities(pts[i])) out.push_back(from_residual(r, trial_tag(n, i), pts[i]));
        if (i == 0) {
            // D operator resolution on a generic observable.
            PhasePoint<JR> lp = lift(pts[i]);
            JR f = JR(lp.p[0] * lp.q[n - 1] * lp.q[n - 1] + lp.p[n - 1] * lp.p[n - 1] * lp.q[0]);
            DOperatorReport d = d_operator_check(pts[i], f);
            out.push_back(check("D-operator{p0,f}=-Df" + trial_tag(n, i), R(d.oracle + d.variant), true, &pts[i],
                                "matches: " + d.matches + "; f = p1 qN^2 + pN^2 q1"));
        }
        return out;
    });
}

std::vector<Check> suite_com(std::size_t n, std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, n, 6), n, trials);
    return per_trial(trials, [&](std::size_t i) {
        std::vector<Check> out;
        for (const auto& r : com_algebra_check(pts[i]))
            out.push_back(from_residual(r, trial_tag(n, i), pts[i]));
        return out;
    });
}

std::vector<Check> suite_magri(const std::vector<std::size_t>& ns, std::uint64_t seed, std::size_t trials)
{
    std::vector<Check> out;
    PointSampler s(sub_seed(seed, 2, 7));
    Point probe = s.next(2);
    int sigma = 0;
    for (;;) {
        try {
            sigma = measure_magri_sigma(probe);
            break;
        } catch (const PreconditionViolated&) {
            probe = s.next(2);
        }
    }
    Check c = check("sigma-measured", R(0), true, &probe,
                    "sigma = " + std::to_string(sigma) + " from {J2,I1}_2 = sigma {J2,I2}_1 under {p,q}=delta");
    c.residual = std::to_string(sigma);
    out.push_back(c);
    for (std::size_t n : ns) {
        auto pts = sample_points(sub_seed(seed, n, 8), n, trials);
        append(out, per_trial(trials, [&](std::size_t i) {
                   std::vector<Check> v;
                   for (const auto& r : magri_duality_check(pts[i], sigma))
                       v.push_back(from_residual(r, trial_tag(n, i), pts[i]));
                   return v;
               }));
    }
    return out;
}

std::vector<Check> suite_quadratic(std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, 2, 9), 2, trials);
    return per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(2, i);
        std::vector<Check> out;
        const Matrix<R> l = lax(pt);
        const Matrix<R> table = lax_bracket_table(pt, second_tensor(pt));
        out.push_back(check("pbL-display=oracle" + tag, max_abs(pbl_printed(pt) - table), true, &pt));
        const Matrix<R> base = quadratic_rhs(quad_structure(pt.q[0], pt.q[1], R(0)), l);
        for (const R& w : w1_values()) {
            const std::string wt = "[" + w1_tag(w) + "]";
            QuadStructure<R> s = quad_structure(pt.q[0], pt.q[1], w);
            const Matrix<R> rhs = quadratic_rhs(s, l);
            out.push_back(check("quadratic-rhs=oracle" + tag + wt, max_abs(rhs - table), true, &pt));
            if (!is_zero(w)) out.push_back(check("w1-independence" + tag + wt, max_abs(rhs - base), true, &pt));
            auto zw = zero_weight_residuals(s, 2, {R(1, 2), R(1, 2)});
            R inv = worst_of({max_abs(swap_legs(s.a, 2) + s.a), max_abs(swap_legs(s.d, 2) + s.d),
                              max_abs(s.b - swap_legs(s.c, 2)), max_abs(s.a + s.b - s.c - s.d), zw[0], zw[1], zw[2],
                              zw[3]});
            out.push_back(check("structure-invariants" + tag + wt, inv, true, &pt,
                                "a12=-a21, d12=-d21, b12=c21, a+b=c+d, zero weight"));
            out.push_back(check("linear-reduction-PB1" + tag + wt,
                                max_abs(pb1_residual(linear_from_quadratic(s, l), l, table)), true, &pt,
                                "r = (a L2 + L2 a)/2 - L2 b against the second tensor"));
        }
        return out;
    });
}

R max_of(const std::array<Matrix<R>, 4>& r)
{
    return worst_of({max_abs(r[0]), max_abs(r[1]), max_abs(r[2]), max_abs(r[3])});
}

std::string vanishing(const std::array<Matrix<R>, 4>& r)
{
    std::string s;
    const char* names[4] = {"a", "b", "c", "d"};
    for (std::size_t k = 0; k < 4; ++k)
        if (r[k].is_zero_matrix()) s += names[k];
    return "vanishing equations: " + (s.empty() ? std::string("none") : s);
}

std::vector<Check> suite_dybe(std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, 2, 10), 2, trials);
    const R half(1, 2);
    return per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(2, i);
        std::vector<Check> out;
        for (const R& w : w1_values()) {
            const std::string wt = "[" + w1_tag(w) + "]";
            QuadStructure<JR> s = quad_structure_jet(pt.q[0], pt.q[1], w);
            auto pos = dybe_residuals(s, 2, {half, half});
            out.push_back(check("dYBE(1/2,1/2)" + tag + wt, max_of(pos), true, &pt, "mu = 1; " + vanishing(pos)));
            auto neg = dybe_residuals(s, 2, {R(0), R(1)});
            out.push_back(check("dYBE(0,1)-fails" + tag + wt, max_of(neg), false, &pt,
                                "negative control, expected nonzero; " + vanishing(neg)));
        }
        QuadStructure<JR> s = quad_structure_jet(pt.q[0], pt.q[1], R(0));
        const R grid[3] = {R(0), half, R(1)};
        for (const R& l : grid)
            for (const R& r : grid) {
                if ((l == half && r == half) || (l == 0 && r == 1)) continue;
                auto res = dybe_residuals(s, 2, {l, r});
                out.push_back(check("dYBE" + eps_tag({l, r}) + "-not-all-zero" + tag, max_of(res), false, &pt,
                                    "grid point; " + vanishing(res)));
            }
        auto mu2 = dybe_residuals(s, 2, {half, half}, R(2));
        out.push_back(check("dYBE(1/2,1/2)-mu=2-fails" + tag, max_of(mu2), false, &pt,
                            "mu is fixed at 1 by this measurement; " + vanishing(mu2)));
        return out;
    });
}

std::vector<Check> suite_rl(std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, 2, 11), 2, trials);
    const R half(1, 2);
    return per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(2, i);
        std::vector<Check> out;
        for (const R& w : w1_values()) {
            auto r = rl_postulate_residual(pt, w, {half, half});
            out.push_back(check("rl-postulate(1/2,1/2)" + tag + "[" + w1_tag(w) + "]", max_of(r), true, &pt,
                                "r in {a,b,c,d}, {r12,l3} from the oracle"));
        }
        auto neg = rl_postulate_residual(pt, R(0), {R(1), R(1)});
        Check c11 = check("rl-postulate(1,1)-fails" + tag, max_of(neg), false, &pt, "negative control, expected nonzero");
        // With epsL = epsR the (1,1) residual is -1/2 of the left side, so it
        // says nothing where {r12,l3} vanishes (p = 0).
        if (is_zero(max_of(rl_postulate_residual(pt, R(0), {R(0), R(0)})))) {
            c11.status = "skipped";
            c11.notes = "{r12,l3} = 0 at this point, so every epsL = epsR gives 0";
        }
        out.push_back(c11);
        auto neg01 = rl_postulate_residual(pt, R(0), {R(0), R(1)});
        out.push_back(check("rl-postulate(0,1)-fails" + tag, max_of(neg01), false, &pt,
                            "negative control, expected nonzero"));
        Point eq = pt;
        eq.p[1] = eq.p[0];
        if (irregularity(eq).empty()) {
            out.push_back(check("rl-postulate(1/2,1/2)-p1=p2" + tag, max_of(rl_postulate_residual(eq, R(0), {half, half})),
                                true, &eq));
        } else {
            Check c;
            c.name = "rl-postulate(1/2,1/2)-p1=p2" + tag;
            c.status = "skipped";
            c.point = eq;
            c.notes = irregularity(eq);
            out.push_back(c);
        }
        return out;
    });
}

std::vector<Check> suite_first(std::size_t n, std::uint64_t seed, std::size_t trials)
{
    auto pts = sample_points(sub_seed(seed, n, 12), n, trials);
    const R half(1, 2);
    return per_trial(trials, [&](std::size_t i) {
        const Point& pt = pts[i];
        const std::string tag = trial_tag(n, i);
        std::vector<Check> out;
        FirstBracketReport rep = first_bracket_check(pt);
        const char* orient = "under {q_i,p_j} = delta_ij";
        out.push_back(check("PB1" + tag, rep.pb1, true, &pt, orient));
        out.push_back(check("PB1-{p,q}=delta-differs" + tag, rep.pb1_canonical, false, &pt,
                            "negative control, expected nonzero; residual is -2{L1,L2}"));
        if (rep.has_three_leg) {
            out.push_back(check("GNF" + tag, rep.gnf, true, &pt, orient));
            out.push_back(check("assoc-five-term" + tag, rep.assoc, true, &pt, orient));
        }
        if (n <= 3) {
            QuadStructure<JR> s = first_bracket_quad_jet(pt.q);
            auto d = dybe_residuals(s, n, {half, half});
            out.push_back(check("quadratic-family-dYBE(1/2,1/2)-fails" + tag, max_of(d), false, &pt,
                                "negative control, expected nonzero; " + vanishing(d)));
            QuadStructure<R> sv{values(s.a), values(s.b), values(s.c), values(s.d)};
            auto zw = zero_weight_residuals(sv, n, {half, half});
            out.push_back(check("quadratic-family-zero-weight(1/2,1/2)-fails" + tag,
                                worst_of({zw[0], zw[1], zw[2], zw[3]}), false, &pt,
                                "negative control, expected nonzero; a,b,c,d = " + to_string(zw[0]) + "," +
                                    to_string(zw[1]) + "," + to_string(zw[2]) + "," + to_string(zw[3])));
            const Matrix<R> table = lax_bracket_table(pt, second_tensor(pt));
            out.push_back(check("quadratic-rhs-vs-second-bracket-differs" + tag,
                                max_abs(quadratic_rhs(sv, lax(pt)) - table), false, &pt,
                                "negative control, expected nonzero"));
        }
        return out;
    });
}

std::vector<Check> suite_limits(std::uint64_t seed, std::size_t trials)
{
    PointSampler s(sub_seed(seed, 3, 13));
    std::vector<std::vector<R>> ps;
    while (ps.size() < trials) {
        std::vector<R> p{s.rational(), s.rational(), s.rational()};
        const R a = abs(R(p[1] - p[0])), b = abs(R(p[1] - p[2])), c = abs(R(p[0] - p[2]));
        // Distinct momenta, and away from the 2-body locus (p2-p3)^2 q23^2 = 4 at q23 = 1/2.
        if (a < 1 || b < 1 || c < 1) continue;
        if (abs(R(b * b - 16)) < 4) continue;
        // and from the pole of the x0 prefactor, q23^2 (p1-p2)(p1-p3) = -1.
        if (abs(R((p[0] - p[1]) * (p[0] - p[2]) + 4)) < 4) continue;
        ps.push_back(p);
    }
    const std::vector<int> exps{3, 4, 5, 6};
    return per_trial(trials, [&](std::size_t i) {
        std::vector<Check> out;
        for (LimitScenario sc : {LimitScenario::Free3, LimitScenario::Free1}) {
            LimitReport rep = limit_suite(sc, ps[i], exps);
            const R top(1000000);
            const Point pt = sc == LimitScenario::Free3 ? make_point(ps[i], {top, R(0), R(-top)})
                                                        : make_point(ps[i], {top, R(0), R(-1, 2)});
            const std::string scn = sc == LimitScenario::Free3 ? "free3/" : "free1/";
            for (const auto& m : rep.metrics) {
                Check c;
                c.name = scn + m.name + trial_tag(3, i);
                c.status = m.passed ? "pass" : "fail";
                c.residual = format_double(m.deviation.back());
                c.point = pt;
                std::string t = "s=1e3..1e6:";
                for (double d : m.deviation) t += " " + format_double(d);
                t += "; rate " + format_double(m.rate) + "; tol " + format_double(m.tolerance);
                if (m.ceiling > 0) t += "; ceiling " + format_double(m.ceiling);
                t += m.monotone ? "; monotone" : "; NOT monotone";
                if (!m.note.empty()) t += "; " + m.note;
                c.notes = t;
                out.push_back(c);
            }
        }
        return out;
    });
}

struct SuiteDef {
    std::string name;
    std::vector<std::size_t> sizes;  // defaults
    std::vector<std::size_t> allowed;
};

const std::vector<SuiteDef>& defs()
{
    static const std::vector<SuiteDef> d{
        {"n2-closed-form", {2}, {2}},
        {"n3-closed-form", {3}, {3}},
        {"jacobi", {2, 3}, {2, 3, 4}},
        {"p0", {2, 3, 4}, {2, 3, 4, 5}},
        {"com-algebra", {2, 3}, {2, 3, 4}},
        {"magri", {2, 3}, {2, 3, 4}},
        {"rmatrix-quadratic", {2}, {2}},
        {"dybe", {2}, {2}},
        {"rl-postulate", {2}, {2}},
        {"first-bracket-r", {2, 3, 4}, {2, 3, 4}},
        {"limits", {3}, {3}},
    };
    return d;
}

std::vector<Check> run_one(const SuiteDef& def, const std::vector<std::size_t>& ns, std::uint64_t seed,
                           std::size_t trials)
{
    const std::string& s = def.name;
    if (s == "n2-closed-form") return suite_n2(seed, trials);
    if (s == "n3-closed-form") return suite_n3(seed, trials);
    if (s == "rmatrix-quadratic") return suite_quadratic(seed, trials);
    if (s == "dybe") return suite_dybe(seed, trials);
    if (s == "rl-postulate") return suite_rl(seed, trials);
    if (s == "limits") return suite_limits(seed, trials);
    if (s == "magri") return suite_magri(ns, seed, trials);
    std::vector<Check> out;
    for (std::size_t n : ns) {
        if (s == "jacobi") append(out, suite_jacobi(n, seed, trials));
        if (s == "p0") append(out, suite_p0(n, seed, trials));
        if (s == "com-algebra") append(out, suite_com(n, seed, trials));
        if (s == "first-bracket-r") append(out, suite_first(n, seed, trials));
    }
    return out;
}

}  // namespace

bool Report::passed() const
{
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& d : defs()) v.push_back(d.name);
        v.push_back("all");
        return v;
    }();
    return names;
}

Report run_suite(const SuiteOptions& opt)
{
    if (opt.trials == 0) throw InvalidArgument("--trials must be positive");
    Report rep{opt.suite, opt.n, opt.seed, opt.trials, {}};
    if (opt.suite == "all") {
        if (opt.n != 0) throw InvalidArgument("suite all runs every suite at its default sizes; drop --n");
        for (const auto& d : defs())
            for (auto& c : run_one(d, d.sizes, opt.seed, opt.trials)) {
                c.name = d.name + "/" + c.name;
                rep.checks.push_back(std::move(c));
            }
        return rep;
    }
    auto it = std::find_if(defs().begin(), defs().end(), [&](const SuiteDef& d) { return d.name == opt.suite; });
    if (it == defs().end()) throw InvalidArgument("unknown suite '" + opt.suite + "'");
    if (opt.mode == Mode::Float && it->name != "limits")
        throw InvalidArgument("--mode float applies to the limits suite only");
    std::vector<std::size_t> ns = it->sizes;
    if (opt.n != 0) {
        if (std::find(it->allowed.begin(), it->allowed.end(), opt.n) == it->allowed.end())
            throw InvalidArgument("suite " + it->name + " does not run at N=" + std::to_string(opt.n));
        ns = {opt.n};
    }
    if (ns.size() == 1) rep.n = ns[0];
    rep.checks = run_one(*it, ns, opt.seed, opt.trials);
    return rep;
}

std::string to_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json p = nlohmann::ordered_json::array(), q = nlohmann::ordered_json::array();
        if (c.point) {
            for (const auto& x : c.point->p) p.push_back(to_string(x));
            for (const auto& x : c.point->q) q.push_back(to_string(x));
        }
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.status;
        e["residual"] = c.residual;
        e["point"] = {{"p", p}, {"q", q}};
        e["notes"] = c.notes;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

}  // namespace cm
