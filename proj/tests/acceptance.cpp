// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All thresholds are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "coarse_ends/almost_invariance.hpp"
#include "coarse_ends/builtin.hpp"
#include "coarse_ends/coarse_space.hpp"
#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/fixtures.hpp"
#include "coarse_ends/glacial.hpp"
#include "coarse_ends/report.hpp"

using namespace coarse_ends;

namespace {

constexpr double kRuntimeLimitSeconds = 120.0;  // criterion 1
constexpr std::size_t kPerturbationRuns = 24;   // criterion 2, at least 20
constexpr std::size_t kBatteryMinFixtures = 12;  // criterion 5
constexpr double kMaxInconclusiveRate = 0.20;   // criterion 5
constexpr std::size_t kStarTrials = 1000;      // criterion 6
constexpr std::size_t kStarPoints = 200;       // criterion 6
constexpr double kSlowTailBound = 0.01;         // criterion 8: adjacent differences beyond radius 100
constexpr double kGlacialEpsilon = 1.0;         // criterion 8

std::vector<Norm> range(Norm a, Norm b) {
    std::vector<Norm> v;
    for (Norm r = a; r <= b; ++r) v.push_back(r);
    return v;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " exception: " << e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s (%.1fs)%s\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), s,
                o.detail.str().c_str());
    std::fflush(stdout);
}

struct CatalogRun {
    const char* group;
    Norm last_radius;
    double horizon_factor;
    const char* expected;
};

// Radii <= 20, and <= 6 for exponential growth.
const std::vector<CatalogRun> kCatalog = {
    {"Z/5", 10, 3.0, "Zero"},          {"Z/2xZ/2", 10, 3.0, "Zero"},       {"Z", 10, 3.0, "Exactly(2)"},
    {"D_inf", 10, 3.0, "Exactly(2)"},  {"Z^2", 10, 3.0, "Exactly(1)"},     {"Z^3", 8, 3.0, "Exactly(1)"},
    {"Q-like", 8, 3.0, "Exactly(1)"},  {"F2", 6, 2.0, "Growing"},          {"Z/2*Z/3", 6, 2.0, "Growing"},
    {"sum_Z2", 20, 3.0, "Growing"},
};

std::map<std::string, EndsVerdict> catalog_verdicts;
std::shared_ptr<const FiniteWindow> f2_window;

bool exactly_three_or_more(const EndsVerdict& v) { return v.classification == EndsClass::Exactly && v.count >= 3; }

}  // namespace

int main() {
    report(1, "canonical end counts", [](Outcome& o) {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& c : kCatalog) {
            auto tree = build_component_tree(make_group(c.group), range(1, c.last_radius), c.horizon_factor);
            auto v = classify_ends(tree);
            catalog_verdicts[c.group] = v;
            if (std::string(c.group) == "F2") f2_window = tree.window;
            const bool ok = v.to_string() == c.expected;
            o.pass = o.pass && ok;
            o.detail << " " << c.group << "=" << v.to_string() << (ok ? "" : " (expected " + std::string(c.expected) + ")");
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > kRuntimeLimitSeconds) {
            o.pass = false;
            o.detail << " runtime over " << kRuntimeLimitSeconds << "s";
        }
    });

    report(2, "no Exactly(n) with n >= 3", [](Outcome& o) {
        for (const auto& [name, v] : catalog_verdicts)
            if (exactly_three_or_more(v)) {
                o.pass = false;
                o.detail << " " << name << "=" << v.to_string();
            }
        std::mt19937_64 rng(2024);
        const std::vector<std::pair<const char*, Norm>> bases = {{"Z", 10},   {"Z^2", 8},   {"D_inf", 10},
                                                                 {"Z/5", 10}, {"Z/2xZ/2", 10}, {"Z/2*Z/3", 5}};
        std::map<std::string, std::size_t> tally;
        for (std::size_t run = 0; run < kPerturbationRuns; ++run) {
            const auto& [name, last] = bases[run % bases.size()];
            Group g = perturbed_generators(make_group(name), rng, 2);
            const double h = std::string(name) == "Z/2*Z/3" ? 2.0 : 3.0;
            auto v = classify_ends(build_component_tree(g, range(1, last), h));
            ++tally[v.to_string()];
            if (exactly_three_or_more(v)) {
                o.pass = false;
                o.detail << " " << g.name() << "=" << v.to_string();
            }
        }
        o.detail << " catalog " << catalog_verdicts.size() << " groups, " << kPerturbationRuns << " perturbed runs:";
        for (const auto& [k, n] : tally) o.detail << " " << k << "x" << n;
    });

    report(3, "generating-set invariance", [](Outcome& o) {
        Group z = integers();
        Group z23 = with_generators(z, {{{2}, 1, "s"}, {{3}, 1, "t"}}, "Z with 2, 3");
        auto a = classify_ends(build_component_tree(z, range(1, 10), 3.0));
        auto b = classify_ends(build_component_tree(z23, range(1, 10), 3.0));
        Group f2 = free_group(2);
        const Element ab = f2.multiply({1}, {2});
        Group r1 = with_generators(f2, {{{1}, 1, "a"}, {{2}, 1, "b"}, {ab, 1, "ab"}}, "F2 with ab");
        Group r2 = with_generators(f2, {{{1}, 1, "a"}, {{2}, 1, "b"}, {ab, 2, "ab"}}, "F2 with ab, weight 2");
        auto c = classify_ends(build_component_tree(f2, range(1, 5), 1.6));
        auto d = classify_ends(build_component_tree(r1, range(1, 5), 1.6));
        auto e = classify_ends(build_component_tree(r2, range(1, 5), 1.6));
        o.pass = a.to_string() == b.to_string() && c.to_string() == d.to_string() && c.to_string() == e.to_string() &&
                 a.classification != EndsClass::Inconclusive && c.classification != EndsClass::Inconclusive;
        o.detail << " Z{1}=" << a.to_string() << " Z{2,3}=" << b.to_string() << " F2=" << c.to_string()
                 << " F2+ab=" << d.to_string() << " F2+ab(w2)=" << e.to_string();
    });

    report(4, "F2 horizon component law 4*3^(r-1)", [](Outcome& o) {
        if (!f2_window) f2_window = std::make_shared<const FiniteWindow>(generate_window(free_group(2), 12));
        // Components of {|x| >= r} are the cut r - 1 annulus components.
        auto tree = build_component_tree(f2_window, range(0, 5), f2_window->radius());
        std::function<std::size_t(int, int, int)> words = [&](int len, int target, int last) -> std::size_t {
            if (len == target) return 1;
            std::size_t n = 0;
            for (int l : {1, -1, 2, -2})
                if (l != -last) n += words(len + 1, target, l);
            return n;
        };
        std::size_t law = 4;
        for (int r = 1; r <= 6; ++r) {
            const std::size_t got = tree.levels[static_cast<std::size_t>(r - 1)].end_count;
            const std::size_t oracle = words(0, r, 0);
            if (got != law || got != oracle) o.pass = false;
            o.detail << " r=" << r << ":" << got;
            law *= 3;
        }
    });

    report(5, "three-way equivalence battery", [](Outcome& o) {
        const auto battery = equivalence_battery();
        std::size_t definitive = 0, agree = 0;
        std::map<std::string, std::size_t> families;
        for (const auto& f : battery) {
            ++families[f.family];
            auto row = run_fixture(f);
            if (!row.definitive()) continue;
            ++definitive;
            if (row.all_agree())
                ++agree;
            else
                o.detail << " disagree:" << f.name;
        }
        const double rate = static_cast<double>(battery.size() - definitive) / static_cast<double>(battery.size());
        o.pass = battery.size() >= kBatteryMinFixtures && agree == definitive && rate < kMaxInconclusiveRate &&
                 families.size() >= 6;
        o.detail << " fixtures=" << battery.size() << " families=" << families.size() << " definitive=" << definitive
                 << " agreeing=" << agree << " inconclusive_rate=" << rate;
    });

    report(6, "star-calculus inclusions on random covers", [](Outcome& o) {
        auto s = star_calculus_trials(kStarTrials, kStarPoints, 1);
        o.pass = s.trials == kStarTrials && s.intersection_violations == 0 && s.complement_violations == 0 &&
                 s.star_inclusion_violations == 0;
        o.detail << " trials=" << s.trials << " points=" << kStarPoints << " violations " << s.intersection_violations
                 << "/" << s.complement_violations << "/" << s.star_inclusion_violations;
    });

    report(7, "geodesic criteria", [](Outcome& o) {
        std::size_t checks = 0;
        for (const auto& [name, R] : std::vector<std::pair<const char*, Norm>>{
                 {"Z", 20}, {"Z^2", 12}, {"Z^3", 8}, {"D_inf", 20}, {"F2", 7}, {"Z/2*Z/3", 9}, {"Z/5", 6}}) {
            FiniteWindow w = generate_window(make_group(name), R);
            for (Norm r = 0; r <= 3; ++r)
                for (Norm m = 1; m <= 3 && r + m <= R; ++m) {
                    ++checks;
                    if (!geodesic_coarse_check(w, r, m)) {
                        o.pass = false;
                        o.detail << " " << name << " r=" << r << " m=" << m << " false";
                    }
                }
        }
        std::size_t rows = 0;
        for (const auto& f : equivalence_battery()) {
            auto row = run_fixture(f);
            if (!row.components_pass) continue;
            ++rows;
            if (*row.components_pass != row.glacial_pass) {
                o.pass = false;
                o.detail << " components/glacial mismatch on " << f.name;
            }
        }
        Group g = with_generators(integers(), {{{1}, 1, "a"}, {{2}, 1, "b"}}, "Z with 1, 2");
        FiniteWindow w = generate_window(g, 12);
        std::vector<std::size_t> twos;
        for (std::size_t j = 0; j < w.generators().size(); ++j)
            if (std::abs(w.generators()[j].element[0]) == 2) twos.push_back(j);
        const bool nongeo = geodesic_coarse_check(w, 3, 1, twos);
        if (nongeo) o.pass = false;
        o.detail << " cayley checks=" << checks << " battery rows=" << rows
                 << " non-geodesic fixture=" << (nongeo ? "true" : "false");
    });

    report(8, "slow but not glacial oscillation", [](Outcome& o) {
        FiniteWindow z = generate_window(integers(), 400);
        auto f_of = [](std::int64_t n) { return std::sin(std::log(1.0 + std::abs(static_cast<double>(n)))); };
        const PointFunction f = [&](Index i) { return f_of(z.element(i)[0]); };
        double prev = INFINITY;
        bool vanishing = true;
        o.detail << " adjacent diffs beyond r:";
        for (Norm r : {10, 50, 100, 200, 399}) {
            double worst = 0;
            for (std::int64_t n = r; n < 400; ++n)
                worst = std::max({worst, std::abs(f_of(n + 1) - f_of(n)), std::abs(f_of(-n - 1) - f_of(-n))});
            if (worst > prev) vanishing = false;
            if (r >= 100 && worst > kSlowTailBound) vanishing = false;
            prev = worst;
            o.detail << " " << r << ":" << worst;
        }
        bool all_fail = true;
        OscillationVerdict shown;
        for (std::size_t depth = 1; depth <= 5; ++depth)
            for (const auto& scale : {linear_scale(z, depth), dyadic_scale(z, depth)}) {
                auto v = glacial_oscillation_test(f, kGlacialEpsilon, scale, z);
                if (v.pass) all_fail = false;
                if (!v.pass && shown.chain.empty()) shown = v;
            }
        o.pass = vanishing && all_fail && !shown.chain.empty();
        if (!shown.chain.empty())
            o.detail << "; witness x=" << z.label(shown.x) << " y=" << z.label(shown.y) << " gap=" << shown.gap
                     << " chain length=" << shown.chain.size();
    });

    report(9, "cover-scale ends match component-tree ends", [](Outcome& o) {
        for (const char* name : {"Z", "Z^2", "D_inf"}) {
            auto tree = build_component_tree(make_group(name), range(1, 10), 3.0);
            auto v = classify_ends(tree);
            const auto& w = *tree.window;
            // Candidates: end components at the first level of the stable run.
            const std::size_t start = tree.levels.size() - v.stabilization_window;
            std::vector<PointSet> candidates;
            for (const auto& n : tree.levels[start].nodes)
                if (n.kind == NodeKind::EndCandidate) candidates.push_back(PointSet::from_indices(w.size(), n.elements));
            CoverScale scale = ball_cover_scale(w, {1, 2, 4, 8});
            auto ends = approximate_ends(scale, candidates);
            const bool ok = v.classification == EndsClass::Exactly && ends.atoms.size() == v.count;
            o.pass = o.pass && ok;
            o.detail << " " << name << ": atoms=" << ends.atoms.size() << " tree=" << v.to_string();
        }
    });

    report(10, "byte-identical reports", [](Outcome& o) {
        std::vector<RunConfig> configs;
        auto add = [&](const std::string& command, const std::function<void(RunConfig&)>& edit) {
            RunConfig c;
            c.command = command;
            c.seed = 5;
            edit(c);
            configs.push_back(c);
        };
        add("ends", [](RunConfig& c) { c.radii = "1..20"; });
        add("ends", [](RunConfig& c) { c.group = "Q-like"; c.radii = "auto"; });
        add("ends", [](RunConfig& c) { c.group = "sum_Z2"; c.radii = "1..20"; });
        add("glacial", [](RunConfig&) {});
        add("almost-invariant", [](RunConfig& c) { c.group = "F2"; c.set = "prefix:a"; c.set_radius = 8; });
        add("coarse", [](RunConfig&) {});
        add("selftest", [](RunConfig&) {});
        for (const auto& c : configs) {
            const std::string a = dump_report(run_command(c).report);
            const std::string b = dump_report(run_command(c).report);
            if (a != b) {
                o.pass = false;
                o.detail << " " << c.command << " differs";
            }
        }
        o.detail << " " << configs.size() << " configs compared";
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
