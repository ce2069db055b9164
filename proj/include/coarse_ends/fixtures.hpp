#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coarse_ends/almost_invariance.hpp"
#include "coarse_ends/builtin.hpp"
#include "coarse_ends/glacial.hpp"

namespace coarse_ends {

// Named set predicates: positives, ray:<k>, evens, mod:<m>:<r>, finite,
// empty, halfplane, quadrant, box:<k>, cofinite:<k>, prefix:<letters>,
// msb_even, bit:<i>, branch:<cut>, and list:<e1>;<e2>;... in the group's
// element syntax.
SetOracle make_predicate(const std::string& spec, const Group& group);

struct SetFixture {
    std::string name;
    std::string group;
    std::string predicate;
    Norm radius = 0;
    std::string family;
    bool expected_clopen = false;
};

std::vector<SetFixture> equivalence_battery();

struct BatteryParams {
    std::vector<Norm> M = {1, 2, 4, 8};
    double epsilon = 0.5;
    std::size_t window_w = 5;
    std::size_t product_samples = 16;
    std::uint64_t seed = 1;
};

struct ScaleOutcome {
    std::string scale;
    bool absorbed = false;
    bool glacial_pass = false;
    AbsorptionVerdict leak;
    OscillationVerdict oscillation;
};

struct BatteryRow {
    SetFixture fixture;
    std::size_t window_size = 0;
    std::size_t set_size = 0;
    std::vector<ScaleOutcome> scales;
    bool absorbed = false;      // some candidate scale absorbs chains
    bool glacial_pass = false;  // some candidate scale passes at epsilon
    CrossCheck cross;           // clopen window check and almost invariance
    std::optional<bool> components_pass;  // plain components, unit weights only
    bool definitive() const;
    bool all_agree() const;
};

// Candidate scales {(B(c + m - 1), m)} and {(B(c + 2^i), i)} for core
// offsets c in {0, ceil(sqrt R)}.
std::vector<std::pair<std::string, GlacialScale>> candidate_scales(const FiniteWindow& window);

BatteryRow run_fixture(const SetFixture& fixture, const BatteryParams& params = {});

// Adds up to `extra` random short elements (weight 1 or 2) to the
// generating set of a finitely generated group.
Group perturbed_generators(const Group& base, std::mt19937_64& rng, std::size_t extra = 2);

}  // namespace coarse_ends
