#include "coarse_ends/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/errors.hpp"

namespace coarse_ends {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

std::int64_t to_int(const std::string& s, const std::string& spec) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error("bad integer '" + s + "' in set predicate '" + spec + "'");
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

void need_coords(const Group& g, std::size_t k, const std::string& spec) {
    if (g.identity().size() < k) throw Error("predicate '" + spec + "' needs a group with " + std::to_string(k) + " coordinates");
}

}  // namespace

SetOracle make_predicate(const std::string& spec, const Group& group) {
    const auto parts = split(spec, ':');
    const std::string& kind = parts.empty() ? spec : parts[0];
    auto arg = [&](std::size_t i) {
        if (parts.size() <= i) throw Error("set predicate '" + spec + "' is missing an argument");
        return to_int(parts[i], spec);
    };
    if (kind == "empty") return {[](const Element&) { return false; }, "empty set"};
    if (kind == "all") return {[](const Element&) { return true; }, "whole group"};
    if (kind == "positives") {
        need_coords(group, 1, spec);
        return {[](const Element& e) { return !e.empty() && e[0] > 0; }, "first coordinate > 0"};
    }
    if (kind == "ray") {
        need_coords(group, 1, spec);
        std::int64_t k = arg(1);
        return {[k](const Element& e) { return e[0] > k; }, "first coordinate > " + std::to_string(k)};
    }
    if (kind == "evens") {
        need_coords(group, 1, spec);
        return {[](const Element& e) { return floor_mod(e[0], 2) == 0; }, "even first coordinate"};
    }
    if (kind == "mod") {
        need_coords(group, 1, spec);
        std::int64_t m = arg(1), r = arg(2);
        if (m < 1) throw Error("modulus must be positive in '" + spec + "'");
        return {[m, r](const Element& e) { return floor_mod(e[0], m) == floor_mod(r, m); },
                "first coordinate = " + std::to_string(r) + " mod " + std::to_string(m)};
    }
    if (kind == "halfplane") {
        need_coords(group, 2, spec);
        return {[](const Element& e) { return e[0] > 0; }, "half-plane x > 0"};
    }
    if (kind == "quadrant") {
        need_coords(group, 2, spec);
        return {[](const Element& e) { return e[0] > 0 && e[1] > 0; }, "quadrant x > 0, y > 0"};
    }
    if (kind == "box" || kind == "cofinite") {
        std::int64_t k = arg(1);
        const bool inside = kind == "box";
        return {[k, inside](const Element& e) {
                    bool in = std::all_of(e.begin(), e.end(), [k](std::int64_t c) { return std::abs(c) <= k; });
                    return in == inside;
                },
                (inside ? "box of half-width " : "complement of the box of half-width ") + std::to_string(k)};
    }
    if (kind == "prefix") {
        if (parts.size() < 2) throw Error("prefix predicate needs letters");
        std::vector<Element> firsts;
        for (char c : parts[1]) firsts.push_back(group.law().parse(std::string(1, c)));
        return {[firsts](const Element& e) {
                    for (const auto& f : firsts)
                        if (!e.empty() && e.front() == f.front() && (f.size() < 2 || (e.size() >= 2 && e[1] == f[1])))
                            return true;
                    return false;
                },
                "words starting with one of '" + parts[1] + "'"};
    }
    if (kind == "msb_even") {
        return {[](const Element& e) { return !e.empty() && e.back() % 2 == 0; },
                "highest support index even"};
    }
    if (kind == "bit") {
        std::int64_t i = arg(1);
        return {[i](const Element& e) { return std::binary_search(e.begin(), e.end(), i); },
                "support contains " + std::to_string(i)};
    }
    if (kind == "branch") {
        // Branch of the component tree at the given cut, taken on a window
        // of radius `radius`; defaults to radius 80.
        Norm cut = arg(1);
        Norm radius = parts.size() > 2 ? arg(2) : 80;
        std::size_t which = parts.size() > 3 ? static_cast<std::size_t>(arg(3)) : 0;
        auto window = std::make_shared<const FiniteWindow>(generate_window(group, radius));
        auto nodes = annulus_components(*window, cut, radius);
        std::vector<const ComponentNode*> ends;
        for (const auto& n : nodes)
            if (n.kind == NodeKind::EndCandidate) ends.push_back(&n);
        if (which >= ends.size()) throw Error("branch index out of range in '" + spec + "'");
        return window_set_oracle(window, PointSet::from_indices(window->size(), ends[which]->elements),
                                 "branch " + std::to_string(which) + " beyond cut " + std::to_string(cut));
    }
    if (kind == "list" || kind == "finite") {
        std::vector<Element> members;
        if (parts.size() > 1)
            for (const auto& tok : split(parts[1], ';'))
                if (!tok.empty()) members.push_back(group.law().parse(tok));
        std::sort(members.begin(), members.end());
        return {[members](const Element& e) { return std::binary_search(members.begin(), members.end(), e); },
                "explicit list of " + std::to_string(members.size()) + " elements"};
    }
    throw Error("unknown set predicate '" + spec + "'");
}

std::vector<SetFixture> equivalence_battery() {
    return {
        {"Z positives", "Z", "positives", 40, "ray", true},
        {"Z shifted ray", "Z", "ray:5", 40, "ray", true},
        {"Z evens", "Z", "evens", 40, "evens", false},
        {"Z residue class", "Z", "mod:3:1", 40, "evens", false},
        {"Z finite set", "Z", "finite:[-3];[0];[2];[7]", 40, "finite", true},
        {"Z empty set", "Z", "empty", 40, "finite", true},
        {"Z branch set", "Z", "branch:4", 40, "branch", true},
        {"Z^2 half-plane", "Z^2", "halfplane", 24, "half-plane", false},
        {"Z^2 quadrant", "Z^2", "quadrant", 24, "half-plane", false},
        {"Z^2 finite box", "Z^2", "box:2", 24, "finite", true},
        {"Z^2 cofinite", "Z^2", "cofinite:2", 24, "finite", true},
        {"F2 prefix a", "F2", "prefix:a", 8, "branch", true},
        {"F2 prefix a or b", "F2", "prefix:ab", 8, "branch", true},
        {"D_inf branch set", "D_inf", "branch:4", 40, "branch", true},
        {"sum_Z2 msb parity cylinder", "sum_Z2", "msb_even", 128, "cylinder", true},
        {"sum_Z2 bit 0 cylinder", "sum_Z2", "bit:0", 128, "cylinder", false},
    };
}

bool BatteryRow::definitive() const { return cross.agreement != Agreement::Inconclusive; }

bool BatteryRow::all_agree() const {
    if (!definitive()) return false;
    const bool ai = cross.almost_invariance.verdict == AIClass::AlmostInvariant;
    bool ok = absorbed == glacial_pass && absorbed == *cross.clopen && absorbed == ai;
    if (components_pass) ok = ok && *components_pass == glacial_pass;
    return ok;
}

std::vector<std::pair<std::string, GlacialScale>> candidate_scales(const FiniteWindow& window) {
    const Norm R = window.radius();
    const Norm rho = default_core_base(R);
    std::vector<std::pair<std::string, GlacialScale>> out;
    for (Norm c : {Norm{0}, rho}) {
        std::vector<std::pair<Norm, Norm>> lin, dya;
        for (Norm m = 1; m <= std::max<Norm>(2, rho) && c + m - 1 < R; ++m) lin.emplace_back(c + m - 1, m);
        for (Norm i = 1; c + (Norm{1} << i) < R && i < 20; ++i) dya.emplace_back(c + (Norm{1} << i), i);
        const std::string core = "core " + std::to_string(c);
        if (!lin.empty()) out.emplace_back("linear, " + core, ball_scale(window, lin));
        if (!dya.empty()) out.emplace_back("dyadic, " + core, ball_scale(window, dya));
    }
    return out;
}

BatteryRow run_fixture(const SetFixture& fixture, const BatteryParams& params) {
    BatteryRow row;
    row.fixture = fixture;
    Group group = make_group(fixture.group);
    const FiniteWindow window = generate_window(group, fixture.radius);
    const SetOracle oracle = make_predicate(fixture.predicate, group);
    const PointSet A = restrict_to_window(oracle, window);
    row.window_size = window.size();
    row.set_size = A.count();
    const PointFunction chi = indicator(A);
    for (auto& [name, scale] : candidate_scales(window)) {
        ScaleOutcome o;
        o.scale = name;
        o.leak = chain_absorption_check(A, scale, window);
        o.absorbed = o.leak.absorbed;
        o.oscillation = glacial_oscillation_test(chi, params.epsilon, scale, window);
        o.glacial_pass = o.oscillation.pass;
        row.absorbed = row.absorbed || o.absorbed;
        row.glacial_pass = row.glacial_pass || o.glacial_pass;
        row.scales.push_back(std::move(o));
    }
    CrossCheckGrid grid;
    grid.M = params.M;
    grid.ai.window_w = params.window_w;
    grid.ai.product_samples = params.product_samples;
    grid.ai.seed = params.seed;
    row.cross = clopen_invariance_crosscheck(oracle, window, grid);
    const bool unit = std::all_of(window.generators().begin(), window.generators().end(),
                                  [](const Generator& g) { return g.weight == 1; });
    if (unit) row.components_pass = components_oscillation_test(chi, params.epsilon, window, default_core_base(window.radius()));
    return row;
}

Group perturbed_generators(const Group& base, std::mt19937_64& rng, std::size_t extra) {
    std::vector<Generator> gens = base.generators();
    const FiniteWindow ball = generate_window(base, 2);
    std::uniform_int_distribution<std::size_t> pick(1, ball.size() - 1);
    std::uniform_int_distribution<int> weight(1, 2);
    for (std::size_t k = 0; k < extra && ball.size() > 1; ++k) {
        const Element& e = ball.element(static_cast<Index>(pick(rng)));
        gens.push_back({e, weight(rng), "x" + std::to_string(k)});
    }
    // Keep the first weight seen for duplicates so the list stays symmetric.
    std::vector<Generator> unique;
    for (const auto& g : gens)
        if (std::none_of(unique.begin(), unique.end(), [&](const Generator& u) {
                return u.element == g.element || u.element == base.inverse(g.element);
            }))
            unique.push_back(g);
    return with_generators(base, unique, base.name() + " perturbed");
}

}  // namespace coarse_ends
