#pragma once

#include <string>

#include "json.hpp"

#include "coarse_ends/config.hpp"

namespace coarse_ends {

// Result of one subcommand. exit_code: 0 definitive, 2 inconclusive.
struct CommandResult {
    nlohmann::json report;
    std::string table;
    std::string dot;
    int exit_code = 0;
};

CommandResult run_ends(const RunConfig& cfg);
CommandResult run_glacial(const RunConfig& cfg);
CommandResult run_almost_invariant(const RunConfig& cfg);
CommandResult run_coarse(const RunConfig& cfg);
CommandResult run_selftest(const RunConfig& cfg);
CommandResult run_command(const RunConfig& cfg);

// Re-serialises JSON deterministically (sorted keys, fixed indentation).
std::string dump_report(const nlohmann::json& j);

struct StarCalculusSummary {
    std::size_t trials = 0;
    std::size_t intersection_violations = 0;
    std::size_t complement_violations = 0;
    std::size_t star_inclusion_violations = 0;
};

// Random subsets and interval covers of a segment, one seeded generator
// per trial.
StarCalculusSummary star_calculus_trials(std::size_t trials, std::size_t points, std::uint64_t seed);

}  // namespace coarse_ends
