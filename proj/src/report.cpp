#include "coarse_ends/report.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "coarse_ends/almost_invariance.hpp"
#include "coarse_ends/builtin.hpp"
#include "coarse_ends/coarse_space.hpp"
#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/errors.hpp"
#include "coarse_ends/fixtures.hpp"
#include "coarse_ends/glacial.hpp"

namespace coarse_ends {

using nlohmann::json;

namespace {

constexpr std::size_t kDotNodeLimit = 5000;
constexpr const char* kEvidenceNote = "verdicts are radius-bounded evidence on finite windows, not proofs";

json generators_json(const FiniteWindow& w) {
    json gens = json::array();
    for (const auto& g : w.generators())
        gens.push_back({{"element", w.group().canonical(g.element)}, {"weight", g.weight}, {"label", g.label}});
    return gens;
}

json trace_json(const GeneratorTrace& t, const Group& g) {
    return {{"generator", g.canonical(t.g)},
            {"label", t.label},
            {"weight", t.weight},
            {"radii", t.radii},
            {"diff_counts", t.counts},
            {"max_diff_norm", t.unbounded ? json("Unbounded") : json(t.max_diff_norm)},
            {"stable", t.stable},
            {"growing", t.growing}};
}

json ai_json(const AlmostInvarianceReport& r, const Group& g) {
    json traces = json::array();
    for (const auto& t : r.traces) traces.push_back(trace_json(t, g));
    json j = {{"verdict", to_string(r.verdict)}, {"traces", traces}, {"note", r.note}};
    if (r.verdict == AIClass::NotAlmostInvariant) {
        const auto& w = r.traces[r.witness];
        j["witness"] = {{"generator", g.canonical(w.g)}, {"diff_counts", w.counts}};
    }
    if (r.reached_radius) j["reached_radius"] = *r.reached_radius;
    return j;
}

std::string pad(std::string s, std::size_t n) {
    if (s.size() < n) s.append(n - s.size(), ' ');
    return s;
}

}  // namespace

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

CommandResult run_ends(const RunConfig& cfg) {
    CommandResult res;
    Group group = make_group(cfg.group);
    json& rep = res.report;
    rep["command"] = "ends";
    rep["seed"] = cfg.seed;
    rep["evidence"] = kEvidenceNote;
    rep["group"] = {{"name", group.name()}, {"generators_note", group.generator_note()}};
    ResolvedRadii rr;
    try {
        rr = resolve_radii(cfg, group);
    } catch (const BallTooLarge& e) {
        rep["verdict"] = {{"classification", "Inconclusive"}, {"rule", e.what()}};
        res.exit_code = 2;
        res.table = "Inconclusive: " + std::string(e.what()) + "\n";
        return res;
    }
    ComponentTree tree;
    try {
        tree = build_component_tree(group, rr.radii, cfg.horizon_factor, cfg.memory_cap);
    } catch (const BallTooLarge& e) {
        rep["verdict"] = {{"classification", "Inconclusive"}, {"rule", e.what()}, {"reached_radius", e.radius_reached}};
        res.exit_code = 2;
        res.table = "Inconclusive: " + std::string(e.what()) + "\n";
        return res;
    }
    const EndsVerdict v = classify_ends(tree, cfg.window_w);
    const FiniteWindow& w = *tree.window;
    rep["group"]["generators"] = generators_json(w);
    rep["parameters"] = {{"radii", rr.radii},
                         {"radii_note", rr.note},
                         {"horizon_factor", cfg.horizon_factor},
                         {"requested_horizon", tree.requested_horizon},
                         {"horizon", w.radius()},
                         {"window_size", w.size()},
                         {"memory_cap", cfg.memory_cap},
                         {"stabilization_window", cfg.window_w},
                         {"truncated", tree.truncated},
                         {"dropped_radii", tree.dropped_radii}};
    json levels = json::array();
    for (const auto& l : tree.levels)
        levels.push_back({{"cut", l.cut},
                          {"horizon", l.horizon},
                          {"end_candidates", l.end_count},
                          {"islands", l.island_count},
                          {"fragments", l.fragment_count},
                          {"nodes", l.nodes.size()}});
    rep["levels"] = levels;
    rep["verdict"] = {{"classification", v.to_string()},
                      {"count", v.count},
                      {"rule", v.rule},
                      {"stabilization_run", v.stabilization_window},
                      {"per_level_counts", v.per_level_counts}};
    json ncc;
    try {
        NccOptions opt;
        opt.window_w = cfg.window_w;
        opt.max_certify = cfg.max_certify;
        NccCount n = disjoint_ncc_count(tree, opt);
        ncc = {{"lower_bound", n.lower_bound},
               {"candidates", n.candidates},
               {"mode", n.mode},
               {"level_cut", n.cut},
               {"set_sizes", json::array()}};
        for (const auto& s : n.sets) ncc["set_sizes"].push_back(s.count());
    } catch (const CertificationFailed& e) {
        ncc = {{"error", e.what()}, {"branch", e.branch}};
    }
    rep["ncc"] = ncc;
    if (tree.node_count() < kDotNodeLimit)
        res.dot = tree_to_dot(tree);
    else
        rep["dot_note"] = "tree has " + std::to_string(tree.node_count()) + " nodes; DOT export skipped";

    std::ostringstream t;
    t << "group " << group.name() << "  horizon " << w.radius() << "  window " << w.size() << " elements\n";
    t << pad("cut", 6) << pad("ends", 8) << pad("islands", 9) << "fragments\n";
    for (const auto& l : tree.levels)
        t << pad(std::to_string(l.cut), 6) << pad(std::to_string(l.end_count), 8)
          << pad(std::to_string(l.island_count), 9) << l.fragment_count << "\n";
    t << "verdict: " << v.to_string() << " (" << v.rule << ")\n";
    if (ncc.contains("lower_bound")) t << "certified NCC sets: " << ncc["lower_bound"].get<std::size_t>() << "\n";
    res.table = t.str();
    res.exit_code = v.classification == EndsClass::Inconclusive ? 2 : 0;
    return res;
}

CommandResult run_glacial(const RunConfig& cfg) {
    CommandResult res;
    json& rep = res.report;
    rep["command"] = "glacial";
    rep["seed"] = cfg.seed;
    rep["evidence"] = kEvidenceNote;
    BatteryParams params;
    params.M = cfg.M;
    params.epsilon = cfg.epsilon;
    params.window_w = cfg.window_w;
    params.seed = cfg.seed;
    params.product_samples = cfg.product_samples;
    rep["grid"] = {{"M", cfg.M}, {"epsilon", cfg.epsilon}, {"stabilization_window", cfg.window_w},
                   {"core_base", "ceil(sqrt(window radius))"}, {"schedule", "window radius / 2 .. window radius"}};
    std::vector<SetFixture> fixtures;
    const auto battery = equivalence_battery();
    if (cfg.fixtures.empty()) {
        fixtures = battery;
    } else {
        for (const auto& name : cfg.fixtures) {
            auto it = std::find_if(battery.begin(), battery.end(), [&](const SetFixture& f) { return f.name == name; });
            if (it == battery.end()) throw ConfigError("unknown fixture '" + name + "'");
            fixtures.push_back(*it);
        }
    }
    json rows = json::array();
    std::size_t definitive = 0, agree = 0;
    std::size_t ab_cl = 0, ab_ai = 0, cl_ai = 0;
    std::ostringstream t;
    t << pad("fixture", 30) << pad("absorb", 8) << pad("glacial", 9) << pad("clopen", 8) << pad("a.i.", 20)
      << "agree\n";
    for (const auto& f : fixtures) {
        BatteryRow row = run_fixture(f, params);
        const Group g = make_group(f.group);
        json scales = json::array();
        for (const auto& s : row.scales) {
            json sj = {{"scale", s.scale}, {"absorbed", s.absorbed}, {"glacial_pass", s.glacial_pass}};
            if (!s.absorbed) sj["leak"] = {{"from", s.leak.from}, {"to", s.leak.to}, {"step", s.leak.step}, {"m", s.leak.witness_m}};
            if (!s.glacial_pass) sj["oscillation_witness"] = {{"x", s.oscillation.x}, {"y", s.oscillation.y}, {"chain_length", s.oscillation.chain.size()}};
            scales.push_back(sj);
        }
        const bool ai = row.cross.almost_invariance.verdict == AIClass::AlmostInvariant;
        json rj = {{"name", f.name},
                   {"group", f.group},
                   {"predicate", f.predicate},
                   {"family", f.family},
                   {"window_radius", f.radius},
                   {"window_size", row.window_size},
                   {"set_size", row.set_size},
                   {"chain_absorption", row.absorbed},
                   {"glacial_oscillation", row.glacial_pass},
                   {"coarsely_clopen", row.cross.clopen ? json(*row.cross.clopen) : json("Inconclusive")},
                   {"tested_M", row.cross.tested_M},
                   {"core_base", row.cross.core_base},
                   {"almost_invariance", ai_json(row.cross.almost_invariance, g)},
                   {"components_criterion", row.components_pass ? json(*row.components_pass) : json(nullptr)},
                   {"scales", scales},
                   {"definitive", row.definitive()},
                   {"agree", row.all_agree()}};
        rows.push_back(rj);
        if (row.definitive()) {
            ++definitive;
            if (row.all_agree()) ++agree;
            if (row.absorbed == *row.cross.clopen) ++ab_cl;
            if (row.absorbed == ai) ++ab_ai;
            if (*row.cross.clopen == ai) ++cl_ai;
        }
        t << pad(f.name, 30) << pad(row.absorbed ? "yes" : "no", 8) << pad(row.glacial_pass ? "pass" : "fail", 9)
          << pad(row.cross.clopen ? (*row.cross.clopen ? "yes" : "no") : "?", 8)
          << pad(to_string(row.cross.almost_invariance.verdict), 20)
          << (row.definitive() ? (row.all_agree() ? "yes" : "NO") : "-") << "\n";
    }
    rep["fixtures"] = rows;
    const double inconclusive_rate =
        fixtures.empty() ? 0.0 : static_cast<double>(fixtures.size() - definitive) / static_cast<double>(fixtures.size());
    rep["summary"] = {{"fixtures", fixtures.size()},
                      {"definitive", definitive},
                      {"agreeing", agree},
                      {"inconclusive_rate", inconclusive_rate},
                      {"agreement_matrix",
                       {{"absorption_vs_clopen", ab_cl}, {"absorption_vs_almost_invariance", ab_ai},
                        {"clopen_vs_almost_invariance", cl_ai}}}};
    t << "definitive " << definitive << "/" << fixtures.size() << ", agreeing " << agree << "\n";
    res.table = t.str();
    res.exit_code = definitive == fixtures.size() ? 0 : 2;
    return res;
}

CommandResult run_almost_invariant(const RunConfig& cfg) {
    CommandResult res;
    json& rep = res.report;
    Group group = make_group(cfg.group);
    rep["command"] = "almost-invariant";
    rep["seed"] = cfg.seed;
    rep["evidence"] = kEvidenceNote;
    const SetOracle A = make_predicate(cfg.set, group);
    rep["set"] = {{"predicate", cfg.set}, {"description", A.description}};
    FiniteWindow w = generate_window_capped(group, cfg.set_radius, cfg.memory_cap);
    CrossCheckGrid grid;
    grid.M = cfg.M;
    grid.core_base = cfg.core_base;
    grid.schedule = cfg.schedule;
    grid.ai.window_w = cfg.window_w;
    grid.ai.seed = cfg.seed;
    grid.ai.product_samples = cfg.product_samples;
    grid.ai.memory_cap = cfg.memory_cap;
    for (Norm r : cfg.schedule)
        if (r > w.radius()) throw ConfigError("schedule radius " + std::to_string(r) + " exceeds window radius");
    CrossCheck cc = clopen_invariance_crosscheck(A, w, grid);
    const auto schedule = cfg.schedule.empty() ? default_schedule(w.radius(), cfg.window_w) : cfg.schedule;
    rep["group"] = {{"name", group.name()}, {"generators", generators_json(w)}};
    rep["parameters"] = {{"window_radius", w.radius()},
                         {"requested_radius", w.requested_radius()},
                         {"window_size", w.size()},
                         {"schedule", schedule},
                         {"M", cfg.M},
                         {"tested_M", cc.tested_M},
                         {"core_base", cc.core_base},
                         {"stabilization_window", cfg.window_w},
                         {"product_samples", cfg.product_samples}};
    rep["almost_invariance"] = ai_json(cc.almost_invariance, group);
    rep["coarsely_clopen"] = cc.clopen ? json(*cc.clopen) : json("Inconclusive");
    rep["crosscheck"] = {{"result", to_string(cc.agreement)}, {"details", cc.details}};
    std::ostringstream t;
    t << "set " << A.description << " in " << group.name() << " (window radius " << w.radius() << ")\n";
    for (const auto& tr : cc.almost_invariance.traces) {
        t << "  " << pad(tr.label, 14);
        for (auto c : tr.counts) t << " " << c;
        t << (tr.stable ? "  stable" : tr.growing ? "  growing" : "") << "\n";
    }
    t << "almost invariance: " << to_string(cc.almost_invariance.verdict) << "; clopen window check: "
      << (cc.clopen ? (*cc.clopen ? "accept" : "reject") : "inconclusive") << "; " << to_string(cc.agreement) << "\n";
    res.table = t.str();
    res.exit_code = cc.almost_invariance.verdict == AIClass::Inconclusive ? 2 : 0;
    return res;
}

namespace {

std::vector<std::string> split_colon(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) out.push_back(tok);
    return out;
}

Norm int_arg(const std::vector<std::string>& p, std::size_t i, const std::string& spec) {
    try {
        if (p.size() > i) return std::stoll(p[i]);
    } catch (const std::logic_error&) {
    }
    throw ConfigError("bad space spec '" + spec + "'");
}

struct Space {
    std::unique_ptr<MetricSpace> owned;
    std::unique_ptr<FiniteWindow> window_owned;
    const MetricSpace* space = nullptr;
    std::string description;
};

Space make_space(const std::string& spec, std::size_t memory_cap) {
    Space s;
    const auto p = split_colon(spec);
    if (p.empty()) throw ConfigError("empty space spec");
    if (p[0] == "cross") {
        const auto rays = static_cast<std::size_t>(int_arg(p, 1, spec));
        const auto len = static_cast<std::size_t>(int_arg(p, 2, spec));
        if (rays < 1 || len < 1) throw ConfigError("cross space needs rays >= 1 and length >= 1");
        s.owned = std::make_unique<DistanceMatrixSpace>(graph_metric(cross_graph(len, rays)));
        s.description = std::to_string(rays) + " rays of length " + std::to_string(len) + " glued at a point";
    } else if (p[0] == "segment") {
        const Norm r = int_arg(p, 1, spec);
        if (r < 1) throw ConfigError("segment radius must be >= 1");
        s.owned = std::make_unique<DistanceMatrixSpace>(integer_segment(r));
        s.description = "integer segment of radius " + std::to_string(r);
    } else if (p[0] == "window" && p.size() >= 3) {
        Group g = make_group(p[1]);
        s.window_owned = std::make_unique<FiniteWindow>(generate_window(g, int_arg(p, 2, spec), memory_cap));
        s.space = s.window_owned.get();
        s.description = "ball of radius " + p[2] + " in " + g.name();
        return s;
    } else {
        throw ConfigError("unknown space spec '" + spec + "'");
    }
    s.space = s.owned.get();
    return s;
}

json set_json(const PointSet& s, const MetricSpace& space) {
    json members = json::array();
    for (Index x : s.indices()) members.push_back(space.label(x));
    return {{"size", s.count()}, {"members", members}};
}

}  // namespace

CommandResult run_coarse(const RunConfig& cfg) {
    CommandResult res;
    json& rep = res.report;
    rep["command"] = "coarse";
    rep["seed"] = cfg.seed;
    rep["evidence"] = kEvidenceNote;
    Space sp = make_space(cfg.space, cfg.memory_cap);
    const MetricSpace& space = *sp.space;
    if (cfg.cover_radii.empty()) throw ConfigError("cover_radii must not be empty");
    CoverScale scale = ball_cover_scale(space, cfg.cover_radii);
    rep["space"] = {{"spec", cfg.space}, {"description", sp.description}, {"points", space.size()}};
    rep["covers"] = scale.labels;
    // Candidates: one-hop components outside the ball whose radius is the
    // deepest cover radius.
    const Norm core = cfg.cover_radii.back();
    const Partition part = m_components(space, space.ball(core), 1);
    std::vector<PointSet> candidates;
    for (const auto& cls : part.classes) candidates.push_back(PointSet::from_indices(space.size(), cls));
    json cands = json::array();
    for (const auto& c : candidates) {
        json per = json::array();
        for (const auto& v : lss_coarsely_clopen(c, scale))
            per.push_back({{"cover", v.cover_index}, {"overlap_size", v.overlap.count()}, {"bounded", v.bounded},
                           {"finite_caveat", v.finite_caveat}});
        cands.push_back({{"size", c.count()}, {"clopen_by_cover", per}});
    }
    rep["candidates"] = {{"rule", "components outside B(base, " + std::to_string(core) + ")"}, {"sets", cands}};
    std::ostringstream t;
    t << sp.description << ": " << space.size() << " points, " << candidates.size() << " candidate sets\n";
    try {
        const CoarseEndApprox approx = approximate_ends(scale, candidates);
        json atoms = json::array();
        for (const auto& a : approx.atoms) atoms.push_back(set_json(a, space));
        json bounded = json::array();
        for (const auto& a : approx.bounded_atoms) bounded.push_back(set_json(a, space));
        rep["ends"] = {{"atoms", atoms},
                       {"atom_count", approx.atoms.size()},
                       {"bounded_atoms", bounded},
                       {"rejected_candidates", approx.rejected_candidates},
                       {"cover_index", approx.cover_index},
                       {"note", approx.note}};
        t << "end atoms: " << approx.atoms.size() << "\n";
        res.exit_code = 0;
    } catch (const EmptyAlgebra& e) {
        rep["ends"] = {{"error", e.what()}};
        t << "end atoms: none (" << e.what() << ")\n";
        res.exit_code = 2;
    }
    const StarCalculusSummary s = star_calculus_trials(cfg.trials, cfg.trial_points, cfg.seed);
    rep["star_calculus_selftest"] = {{"trials", s.trials},
                               {"points", cfg.trial_points},
                               {"passes", s.trials - s.intersection_violations},
                               {"intersection_violations", s.intersection_violations},
                               {"complement_violations", s.complement_violations},
                               {"star_inclusion_violations", s.star_inclusion_violations}};
    t << "inclusion self-test: " << s.trials - s.intersection_violations << "/" << s.trials << " passes\n";
    res.table = t.str();
    return res;
}

StarCalculusSummary star_calculus_trials(std::size_t trials, std::size_t points, std::uint64_t seed) {
    StarCalculusSummary out;
    out.trials = trials;
    if (points < 2) throw ConfigError("trial_points must be >= 2");
    auto random_cover = [&](std::mt19937_64& rng) {
        Cover c;
        std::uniform_int_distribution<std::size_t> len(1, 12);
        std::size_t s = 0;
        while (s < points) {
            std::size_t L = len(rng);
            std::size_t e = std::min(points, s + L);
            PointSet m(points);
            for (std::size_t i = s; i < e; ++i) m.insert(static_cast<Index>(i));
            c.push_back(std::move(m));
            std::uniform_int_distribution<std::size_t> back(0, L - 1);
            s = e - std::min(e - s - 1, back(rng)) ;
            if (e == points) break;
        }
        // A few scattered members so covers are not only intervals.
        std::uniform_int_distribution<std::size_t> pt(0, points - 1);
        for (int k = 0; k < 4; ++k) {
            PointSet m(points);
            for (int j = 0; j < 3; ++j) m.insert(static_cast<Index>(pt(rng)));
            c.push_back(std::move(m));
        }
        return c;
    };
    auto random_set = [&](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        PointSet a(points);
        if (unit(rng) < 0.5) {
            const double p = unit(rng);
            for (Index i = 0; i < points; ++i)
                if (unit(rng) < p) a.insert(i);
        } else {
            std::uniform_int_distribution<std::size_t> pt(0, points - 1);
            std::size_t lo = pt(rng), hi = pt(rng);
            if (lo > hi) std::swap(lo, hi);
            for (std::size_t i = lo; i <= hi; ++i) a.insert(static_cast<Index>(i));
        }
        return a;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(sq);
        const Cover U = random_cover(rng);
        const Cover V = random_cover(rng);
        const PointSet A1 = random_set(rng);
        const PointSet A2 = random_set(rng);
        if (!star_intersection_check(A1, A2, U)) ++out.intersection_violations;
        if (!complement_star_check(A1, A2, U)) ++out.complement_violations;
        if (!star_preserves_clopen_check(A1, U, V)) ++out.star_inclusion_violations;
    }
    return out;
}

CommandResult run_selftest(const RunConfig& cfg) {
    CommandResult res;
    json& rep = res.report;
    rep["command"] = "selftest";
    rep["seed"] = cfg.seed;
    json checks = json::array();
    bool ok_all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
        ok_all = ok_all && ok;
    };
    struct Expect {
        const char* group;
        std::vector<Norm> radii;
        double h;
        const char* verdict;
    };
    const std::vector<Expect> expect = {
        {"Z", parse_radii("1..10"), 3, "Exactly(2)"},   {"Z^2", parse_radii("1..8"), 3, "Exactly(1)"},
        {"D_inf", parse_radii("1..10"), 3, "Exactly(2)"}, {"Z/5", parse_radii("1..10"), 3, "Zero"},
        {"Z/2*Z/3", parse_radii("1..6"), 2, "Growing"},  {"sum_Z2", parse_radii("1..20"), 3, "Growing"},
        {"Q-like", parse_radii("1..6"), 3, "Exactly(1)"},
    };
    for (const auto& e : expect) {
        auto tree = build_component_tree(make_group(e.group), e.radii, e.h, cfg.memory_cap);
        auto v = classify_ends(tree, 5);
        record(std::string("ends ") + e.group, v.to_string() == e.verdict, v.to_string());
    }
    BatteryParams params;
    std::size_t agree = 0, total = 0;
    for (const auto& f : equivalence_battery()) {
        if (f.group == "F2") continue;  // the slowest fixtures; covered by the glacial command
        auto row = run_fixture(f, params);
        ++total;
        if (row.all_agree()) ++agree;
    }
    record("equivalence battery", agree == total, std::to_string(agree) + "/" + std::to_string(total));
    const auto s = star_calculus_trials(200, 200, cfg.seed);
    record("star inclusions", s.intersection_violations + s.complement_violations + s.star_inclusion_violations == 0,
           std::to_string(s.trials) + " trials");
    rep["checks"] = checks;
    rep["pass"] = ok_all;
    std::ostringstream t;
    for (const auto& c : checks)
        t << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << " ("
          << c["detail"].get<std::string>() << ")\n";
    res.table = t.str();
    res.exit_code = ok_all ? 0 : 1;
    return res;
}

CommandResult run_command(const RunConfig& cfg) {
    if (cfg.command == "ends") return run_ends(cfg);
    if (cfg.command == "glacial") return run_glacial(cfg);
    if (cfg.command == "almost-invariant") return run_almost_invariant(cfg);
    if (cfg.command == "coarse") return run_coarse(cfg);
    if (cfg.command == "selftest") return run_selftest(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace coarse_ends
