#pragma once

#include "cm/model.hpp"

#include <cstdint>
#include <random>

namespace cm {

struct SampleRules {
    // |q_i - q_j| >= 1/4, DPhi invertible, and for N=2 (p1-p2)^2 q12^2 != 4.
    bool require_d_nonzero = false;  // N=3 parametrization, d != 0
    bool q12_equals_q23 = false;     // N=3 special-value slice, q3 = 2 q2 - q1
};

// Seeded source of regular rational points. Numerators in [-30,30],
// denominators 1..6, drawn by modular reduction of mt19937_64 output so the
// stream is the same on every platform.
class PointSampler {
public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t bound) { return rng_() % bound; }
    Rational rational();
    PhasePoint<Rational> next(std::size_t n, SampleRules rules = {});

private:
    std::mt19937_64 rng_;
};

// Why a point is outside the sampled regular set, or empty if it is inside.
std::string irregularity(const PhasePoint<Rational>& pt, SampleRules rules = {});

std::vector<PhasePoint<Rational>> sample_points(std::uint64_t seed, std::size_t n, std::size_t count,
                                                SampleRules rules = {});

}  // namespace cm
