// One line per acceptance criterion; exit status is nonzero if any fails.
#include "cm/suites.hpp"

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace cm;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Run {
    std::string suite;
    std::size_t n;
    std::size_t trials;
    Mode mode = Mode::Exact;
};

// check name without its "[n=..,#..]" and "[w1=..]" tags
std::string base_name(const std::string& name)
{
    std::size_t cut = name.find("[n=");
    if (cut == std::string::npos) cut = name.find("[w1=");
    return name.substr(0, cut);
}

struct Outcome {
    bool ok = true;
    std::size_t checks = 0;
    std::string why;
};

// Runs the suites, then requires every check to pass (skips allowed) and
// each named check to appear at least the given number of times.
Outcome require(const std::vector<Run>& runs, const std::map<std::string, std::size_t>& need)
{
    Outcome o;
    std::map<std::string, std::size_t> seen;
    for (const Run& r : runs) {
        SuiteOptions opt;
        opt.suite = r.suite;
        opt.n = r.n;
        opt.seed = kSeed;
        opt.trials = r.trials;
        opt.mode = r.mode;
        Report rep = run_suite(opt);
        for (const Check& c : rep.checks) {
            ++o.checks;
            ++seen[base_name(c.name)];
            if (c.status == "fail" && o.ok) {
                o.ok = false;
                o.why = c.name + " residual " + c.residual;
            }
        }
    }
    for (const auto& [name, count] : need)
        if (seen[name] < count && o.ok) {
            o.ok = false;
            o.why = name + " ran " + std::to_string(seen[name]) + " times, need " + std::to_string(count);
        }
    return o;
}

std::string capture(const std::string& args)
{
    std::string out;
    FILE* f = popen((std::string(CMCALC_PATH) + " " + args).c_str(), "r");
    if (!f) return out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
    pclose(f);
    return out;
}

int failures = 0;

void report(int id, const std::string& what, const Outcome& o)
{
    std::cout << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << what << " (" << o.checks
              << " checks)";
    if (!o.ok) {
        std::cout << "  -- " << o.why;
        ++failures;
    }
    std::cout << "\n" << std::flush;
}

}  // namespace

int main()
{
    report(1, "antisymmetry and Jacobi of the second tensor, N=2,3, 20 points each",
           require({{"jacobi", 2, 20}, {"jacobi", 3, 20}}, {{"antisymmetry", 40}, {"jacobi", 40}}));

    report(2, "I/J algebra closes on the closed-form tensors, N=2 and N=3 with oracle x0",
           require({{"n2-closed-form", 2, 20}, {"n3-closed-form", 3, 20}}, {{"PB-IJ-closure(closed-form)", 40}}));

    report(3, "N=2 display equals the oracle at 50 points with the logged factors",
           require({{"n2-closed-form", 2, 50}}, {{"closed-form=oracle", 50}, {"display-pp-factor", 50}}));

    report(4, "N=3 x_ij, z sums, z and {q12,q23} displays at 20 points; x0 special value at 5",
           require({{"n3-closed-form", 3, 20}}, {{"x12=x23=x31", 20},
                                                  {"z-constraint-sums", 20},
                                                  {"z-display=oracle", 20},
                                                  {"q12q23-display=oracle", 20},
                                                  {"x0-special-value", 5}}));

    report(5, "x0 differential equation at 20 points",
           require({{"n3-closed-form", 3, 20}}, {{"x0-ode", 20}}));

    report(6, "center-of-mass brackets N=2,3 and p0 identities N=2,3,4, 20 points each",
           require({{"com-algebra", 2, 20}, {"com-algebra", 3, 20}, {"p0", 2, 20}, {"p0", 3, 20}, {"p0", 4, 20}},
                   {{"q0-Im=m*Im", 40},
                    {"q0-tJ(n+1)=n*tJ(n+1)", 40},
                    {"tJ(n+1)-Im", 40},
                    {"tJ-tJ", 40},
                    {"p0-pj=+2sum(q_jn^-3)", 60},
                    {"p0-L=[L,K]", 60},
                    {"p0-Q=[Q,K]-L", 60}}));

    report(7, "quadratic r-matrix bracket equals the oracle table, 20 points x 3 w1, w1-independent",
           require({{"rmatrix-quadratic", 2, 20}}, {{"quadratic-rhs=oracle", 60}, {"w1-independence", 40}}));

    report(8, "dYBE at (1/2,1/2) 20 points x 3 w1, (0,1) fails, rl postulate at (1/2,1/2)",
           require({{"dybe", 2, 20}, {"rl-postulate", 2, 20}},
                   {{"dYBE(1/2,1/2)", 60}, {"dYBE(0,1)-fails", 60}, {"rl-postulate(1/2,1/2)", 60}}));

    report(9, "first-bracket PB1 N=2,3,4; GNF and five-term N=2,3; quadratic-family checks fail",
           require({{"first-bracket-r", 2, 20}, {"first-bracket-r", 3, 20}, {"first-bracket-r", 4, 20}},
                   {{"PB1", 60},
                    {"GNF", 40},
                    {"assoc-five-term", 40},
                    {"quadratic-family-dYBE(1/2,1/2)-fails", 40},
                    {"quadratic-family-zero-weight(1/2,1/2)-fails", 40}}));

    report(10, "Magri duality with one measured sigma, N=2,3, 20 points each",
           require({{"magri", 2, 20}, {"magri", 3, 20}}, {{"sigma-measured", 1}, {"Jm-Ik:(2)=sigma*(1)", 40}}));

    report(11, "decoupling limits at s=1e6 with rate-study tolerances, x0 asymptotics",
           require({{"limits", 3, 20, Mode::Float}},
                   {{"free3/x0 / (9/(4(p2-p1)(p2-p3)q12^5)) - 1", 20}, {"free1/x0 / x0_free1 - 1", 20}}));

    {
        Outcome o;
        const std::string args = "verify --suite all --trials 5 --seed " + std::to_string(kSeed);
        const std::string a = capture(args), b = capture(args);
        o.checks = 1;
        o.ok = !a.empty() && a == b;
        if (!o.ok) o.why = a.empty() ? "no output" : "reports differ";
        report(12, "repeated verify runs give byte-identical JSON", o);
    }

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
    return failures == 0 ? 0 : 1;
}
