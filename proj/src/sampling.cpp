#include "cm/sampling.hpp"

#include "cm/closed_form.hpp"
#include "cm/oracle.hpp"

namespace cm {

Rational PointSampler::rational()
{
    const long num = static_cast<long>(below(61)) - 30;
    const long den = static_cast<long>(below(6)) + 1;
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

std::string irregularity(const PhasePoint<Rational>& pt, SampleRules rules)
{
    const std::size_t n = pt.n();
    const Rational quarter(1, 4);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (Rational(abs(pt.q[i] - pt.q[j])) < quarter) return "positions closer than 1/4";
    if (n == 2) {
        const Rational y = pt.p[0] - pt.p[1], x = pt.q[0] - pt.q[1];
        if (Rational(y * y * x * x) == 4) return "on the N=2 locus (p1-p2)^2 q12^2 = 4";
    }
    if (rules.require_d_nonzero && n == 3 && is_zero(n3_d(pt))) return "d = 0";
    if (is_zero(determinant(generator_jacobian(pt)))) return "generator jacobian is singular";
    return {};
}

PhasePoint<Rational> PointSampler::next(std::size_t n, SampleRules rules)
{
    if (n < 2) throw InvalidArgument("N must be at least 2");
    if (rules.q12_equals_q23 && n != 3) throw InvalidArgument("q12 = q23 slice needs N=3");
    for (;;) {
        PhasePoint<Rational> pt;
        for (std::size_t i = 0; i < n; ++i) pt.p.push_back(rational());
        for (std::size_t i = 0; i < n; ++i) pt.q.push_back(rational());
        if (rules.q12_equals_q23) pt.q[2] = Rational(2 * pt.q[1] - pt.q[0]);
        if (irregularity(pt, rules).empty()) return pt;
    }
}

std::vector<PhasePoint<Rational>> sample_points(std::uint64_t seed, std::size_t n, std::size_t count, SampleRules rules)
{
    PointSampler s(seed);
    std::vector<PhasePoint<Rational>> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(s.next(n, rules));
    return out;
}

}  // namespace cm
