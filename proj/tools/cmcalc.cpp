// cmcalc: tensors, brackets and verification suites from the command line.
// Exit codes: 0 ok, 1 check failure, 2 usage or parse error, 3 degenerate input.

#include "cm/expr.hpp"
#include "cm/oracle.hpp"
#include "cm/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

namespace {

using cm::Rational;

struct PointArgs {
    std::size_t n = 0;
    std::string p, q;
    std::string bracket = "second";
    std::string mode = "exact";
};

void add_point_flags(CLI::App* cmd, PointArgs& a)
{
    cmd->add_option("--n", a.n, "particle count")->required();
    cmd->add_option("--p", a.p, "momenta, comma separated rationals")->required();
    cmd->add_option("--q", a.q, "positions, comma separated rationals")->required();
    cmd->add_option("--bracket", a.bracket, "first | second")->check(CLI::IsMember({"first", "second"}));
    cmd->add_option("--mode", a.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
}

cm::PhasePoint<Rational> read_point(const PointArgs& a)
{
    std::vector<Rational> p = cm::parse_rational_list(a.p), q = cm::parse_rational_list(a.q);
    if (p.size() != a.n || q.size() != a.n)
        throw cm::InvalidArgument("--n " + std::to_string(a.n) + " needs " + std::to_string(a.n) +
                                  " momenta and positions");
    return cm::make_point(std::move(p), std::move(q));
}

cm::PhasePoint<double> to_float(const cm::PhasePoint<Rational>& pt)
{
    return cm::map_point<double>(pt, [](const Rational& x) { return x.get_d(); });
}

std::vector<std::string> labels(std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back("p" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) v.push_back("q" + std::to_string(i));
    return v;
}

int cmd_tensor(const PointArgs& a, const std::string& format)
{
    const cm::PhasePoint<Rational> pt = read_point(a);
    const cm::Which which = a.bracket == "first" ? cm::Which::First : cm::Which::Second;
    const std::size_t dim = pt.dim();
    std::vector<std::vector<std::string>> cells(dim, std::vector<std::string>(dim));
    nlohmann::ordered_json numbers = nlohmann::ordered_json::array();
    if (a.mode == "exact") {
        cm::Matrix<Rational> P = cm::tensor(pt, which);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) cells[i][j] = cm::to_string(P(i, j));
    } else {
        cm::Matrix<double> P = cm::tensor(to_float(pt), which);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) cells[i][j] = cm::format_double(P(i, j));
        // JSON carries floats as numbers, rationals as strings
        for (std::size_t i = 0; i < dim; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (std::size_t j = 0; j < dim; ++j) row.push_back(P(i, j));
            numbers.push_back(row);
        }
    }
    const auto lab = labels(pt.n());
    if (format == "csv") {
        std::cout << "{row;col}";
        for (const auto& l : lab) std::cout << "," << l;
        std::cout << "\n";
        for (std::size_t i = 0; i < dim; ++i) {
            std::cout << lab[i];
            for (const auto& c : cells[i]) std::cout << "," << c;
            std::cout << "\n";
        }
        return 0;
    }
    nlohmann::ordered_json j;
    j["n"] = pt.n();
    j["bracket"] = a.bracket;
    j["mode"] = a.mode;
    j["coordinates"] = lab;
    if (a.mode == "exact")
        j["tensor"] = cells;
    else
        j["tensor"] = numbers;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_bracket(const PointArgs& a, const std::string& f, const std::string& g)
{
    const cm::PhasePoint<Rational> pt = read_point(a);
    const cm::Observable of = cm::parse(f, pt.n()), og = cm::parse(g, pt.n());
    const cm::Which which = a.bracket == "first" ? cm::Which::First : cm::Which::Second;
    if (a.mode == "exact") {
        const cm::Matrix<Rational> P = cm::tensor(pt, which);
        std::cout << cm::to_string(cm::bracket(cm::eval_jet(of, pt), cm::eval_jet(og, pt), P)) << "\n";
    } else {
        const cm::PhasePoint<double> fp = to_float(pt);
        const cm::Matrix<double> P = cm::tensor(fp, which);
        std::cout << cm::format_double(cm::bracket(cm::eval_jet_float(of, fp), cm::eval_jet_float(og, fp), P)) << "\n";
    }
    return 0;
}

int cmd_verify(const cm::SuiteOptions& opt)
{
    cm::Report r = cm::run_suite(opt);
    std::cout << cm::to_json(r);
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact second Poisson structure of the rational Calogero-Moser model"};
    app.require_subcommand(1);

    PointArgs tensor_args;
    std::string format = "json";
    CLI::App* tensor = app.add_subcommand("tensor", "print the 2N x 2N coordinate bracket tensor");
    add_point_flags(tensor, tensor_args);
    tensor->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    PointArgs bracket_args;
    std::string f, g;
    CLI::App* bracket = app.add_subcommand("bracket", "exact {f,g} at a point");
    add_point_flags(bracket, bracket_args);
    bracket->add_option("--f", f, "observable")->required();
    bracket->add_option("--g", g, "observable")->required();

    cm::SuiteOptions vopt;
    std::string vmode = "exact";
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite and print a JSON report");
    verify->add_option("--suite", vopt.suite, "suite name")->required()->check(CLI::IsMember(cm::suite_names()));
    verify->add_option("--n", vopt.n, "particle count (default: the suite's sizes)");
    verify->add_option("--trials", vopt.trials, "random points per size")->check(CLI::PositiveNumber);
    verify->add_option("--seed", vopt.seed, "RNG seed")->required();
    verify->add_option("--mode", vmode, "exact | float")->check(CLI::IsMember({"exact", "float"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*tensor) return cmd_tensor(tensor_args, format);
        if (*bracket) return cmd_bracket(bracket_args, f, g);
        vopt.mode = vmode == "float" ? cm::Mode::Float : cm::Mode::Exact;
        return cmd_verify(vopt);
    } catch (const cm::SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cm::UnknownSymbol& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cm::PowerNotInteger& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cm::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const cm::DegenerateConfiguration& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 3;
    } catch (const cm::SingularJacobian& e) {
        std::cerr << "degenerate input: " << e.what() << " (the (p,q) -> (I,J) map must be locally invertible)\n";
        return 3;
    } catch (const cm::DivisionByZero& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 3;
    } catch (const cm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
