// coarse-ends: command line front end.
//
// Exit codes: 0 definitive verdict, 2 inconclusive, 1 error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "coarse_ends/errors.hpp"
#include "coarse_ends/report.hpp"

namespace ce = coarse_ends;

namespace {

struct Flags {
    std::string config;
    std::string group, radii, set, space, output, dot;
    double horizon_factor = 0;
    double epsilon = 0;
    std::size_t window_w = 0, memory_cap = 0, trials = 0, trial_points = 0;
    std::uint64_t seed = 0;
    std::vector<ce::Norm> M, schedule, cover_radii;
    std::vector<std::string> fixtures;
    ce::Norm set_radius = 0, core_base = 0;
    bool table = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file; flags override its values");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--memory-cap", f.memory_cap, "maximum number of enumerated elements");
    sub->add_option("--window", f.window_w, "stabilization window W");
    sub->add_option("--output,-o", f.output, "write the JSON report here instead of stdout");
    sub->add_flag("--table", f.table, "print a plain text table after writing the report");
}

ce::RunConfig build_config(const std::string& command, const Flags& f, const CLI::App& sub) {
    ce::RunConfig cfg;
    if (!f.config.empty()) cfg = ce::load_config(f.config);
    cfg.command = command;
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub.get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--group")) cfg.group = f.group;
    if (given("--radii")) cfg.radii = f.radii;
    if (given("--horizon-factor")) cfg.horizon_factor = f.horizon_factor;
    if (given("--window")) cfg.window_w = f.window_w;
    if (given("--memory-cap")) cfg.memory_cap = f.memory_cap;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--M")) cfg.M = f.M;
    if (given("--epsilon")) cfg.epsilon = f.epsilon;
    if (given("--core-base")) cfg.core_base = f.core_base;
    if (given("--schedule")) cfg.schedule = f.schedule;
    if (given("--set")) cfg.set = f.set;
    if (given("--set-radius")) cfg.set_radius = f.set_radius;
    if (given("--fixture")) cfg.fixtures = f.fixtures;
    if (given("--space")) cfg.space = f.space;
    if (given("--cover-radii")) cfg.cover_radii = f.cover_radii;
    if (given("--trials")) cfg.trials = f.trials;
    if (given("--trial-points")) cfg.trial_points = f.trial_points;
    if (given("--output")) cfg.output = f.output;
    if (given("--dot")) cfg.dot = f.dot;
    ce::validate(cfg);
    return cfg;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ce::ConfigError("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-window estimators for ends of groups and coarse spaces"};
    app.require_subcommand(1);
    Flags f;

    auto* ends = app.add_subcommand("ends", "classify the number of ends of a group");
    ends->add_option("--group,-g", f.group, "group spec, e.g. Z, Z^2, F2, D_inf, Z/2*Z/3, Q-like");
    ends->add_option("--radii,-r", f.radii, "cut radii: a..b, a comma list, or auto");
    ends->add_option("--horizon-factor", f.horizon_factor, "horizon R = ceil(h * last radius)");
    ends->add_option("--dot", f.dot, "write the component tree as DOT");

    auto* glacial = app.add_subcommand("glacial", "run the equivalence battery on set fixtures");
    glacial->add_option("--fixture", f.fixtures, "restrict to named fixtures");
    glacial->add_option("--M", f.M, "clopen test margins");
    glacial->add_option("--epsilon", f.epsilon, "oscillation threshold");

    auto* ai = app.add_subcommand("almost-invariant", "translate a set by generators and track differences");
    ai->add_option("--group,-g", f.group, "group spec");
    ai->add_option("--set", f.set, "set predicate, e.g. positives, evens, halfplane, prefix:a");
    ai->add_option("--set-radius", f.set_radius, "window radius");
    ai->add_option("--schedule", f.schedule, "radii at which differences are counted")->delimiter(',');
    ai->add_option("--M", f.M, "clopen test margins");
    ai->add_option("--core-base", f.core_base, "core radius base for the clopen window check");

    auto* coarse = app.add_subcommand("coarse", "approximate ends of a finite coarse space");
    coarse->add_option("--space", f.space, "cross:<rays>:<length>, segment:<radius> or window:<group>:<radius>");
    coarse->add_option("--cover-radii", f.cover_radii, "ball radii of the cover scale")->delimiter(',');
    coarse->add_option("--trials", f.trials, "randomized inclusion self-test trials");
    coarse->add_option("--trial-points", f.trial_points, "points in the self-test space");

    auto* self = app.add_subcommand("selftest", "quick built-in sanity checks");

    for (auto* s : {ends, glacial, ai, coarse, self}) add_common(s, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const ce::RunConfig cfg = build_config(sub->get_name(), f, *sub);
        const ce::CommandResult res = ce::run_command(cfg);
        const std::string text = ce::dump_report(res.report);
        if (cfg.output.empty())
            std::cout << text;
        else
            write_file(cfg.output, text);
        if (!cfg.dot.empty() && !res.dot.empty()) write_file(cfg.dot, res.dot);
        if (f.table) std::cout << res.table;
        return res.exit_code;
    } catch (const ce::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
