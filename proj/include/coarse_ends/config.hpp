#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarse_ends/group.hpp"

namespace coarse_ends {

struct RunConfig {
    std::string command;
    std::string group = "Z";
    std::string radii = "1..10";  // "a..b", comma list, or "auto"
    double horizon_factor = 3.0;
    std::size_t window_w = 5;
    std::size_t memory_cap = kDefaultMemoryCap;
    std::uint64_t seed = 1;
    std::vector<Norm> M = {1, 2, 4, 8};
    double epsilon = 0.5;
    Norm core_base = 0;
    std::vector<Norm> schedule;
    std::string set = "positives";
    Norm set_radius = 40;
    std::vector<std::string> fixtures;  // empty: the default battery
    std::string space = "cross:4:50";
    std::vector<Norm> cover_radii = {1, 2, 4, 8};
    std::size_t trials = 1000;
    std::size_t trial_points = 200;
    std::size_t max_certify = 64;
    std::size_t product_samples = 16;
    std::string output;
    std::string dot;
};

// Reads a JSON object; unknown keys and type errors raise ConfigError with
// the line of the offending key.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// "1..20" or "1,2,4,8"; "auto" handled by resolve_radii.
std::vector<Norm> parse_radii(const std::string& spec);

struct ResolvedRadii {
    std::vector<Norm> radii;
    std::string note;
};

// For "auto", picks 1..r with r <= 20 as large as a ball budget of
// min(memory_cap, 250000) elements allows at the configured horizon factor.
ResolvedRadii resolve_radii(const RunConfig& cfg, const Group& group);

void validate(const RunConfig& cfg);

}  // namespace coarse_ends
