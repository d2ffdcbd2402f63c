#pragma once

#include "cm/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cm {

struct Check {
    std::string name;
    std::string status;    // pass | fail | skipped
    std::string residual;  // exact rational, or a %.9e double in the limits suite
    std::optional<PhasePoint<Rational>> point;
    std::string notes;
};

struct Report {
    std::string suite;
    std::size_t n = 0;  // 0 when the suite ran its default set of sizes
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<Check> checks;

    bool passed() const;
};

enum class Mode { Exact, Float };

struct SuiteOptions {
    std::string suite;
    std::size_t n = 0;  // 0: suite default sizes
    std::uint64_t seed = 0;
    std::size_t trials = 20;
    Mode mode = Mode::Exact;
};

const std::vector<std::string>& suite_names();

// Throws InvalidArgument for an unknown suite, an unsupported n, or a mode the
// suite does not run in.
Report run_suite(const SuiteOptions& opt);

// {"suite","n","seed","trials","checks":[{"name","status","residual","point":{"p","q"},"notes"}]}
std::string to_json(const Report& r);

}  // namespace cm
