#include "coarse_ends/almost_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {

SetOracle window_set_oracle(std::shared_ptr<const FiniteWindow> window, PointSet members, std::string description) {
    auto shared = std::make_shared<const PointSet>(std::move(members));
    return {[window, shared](const Element& e) {
                auto i = window->find(e);
                return i && shared->contains(*i);
            },
            std::move(description)};
}

PointSet restrict_to_window(const SetOracle& A, const FiniteWindow& window) {
    PointSet s(window.size());
    for (Index x = 0; x < window.size(); ++x)
        if (A.contains(window.element(x))) s.insert(x);
    return s;
}

PointSet symmetric_difference_window(const SetOracle& A, const Element& g, const FiniteWindow& window) {
    const Group& G = window.group();
    const Element ginv = G.inverse(g);
    PointSet out(window.size());
    for (Index x = 0; x < window.size(); ++x) {
        const Element& e = window.element(x);
        if (A.contains(e) != A.contains(G.multiply(e, ginv))) out.insert(x);
    }
    return out;
}

std::string to_string(AIClass c) {
    switch (c) {
        case AIClass::AlmostInvariant: return "AlmostInvariant";
        case AIClass::NotAlmostInvariant: return "NotAlmostInvariant";
        case AIClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "Agreement";
        case Agreement::Disagree: return "Disagreement";
        case Agreement::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::vector<Norm> default_schedule(Norm R, std::size_t window_w) {
    std::vector<Norm> s;
    for (std::size_t k = 0; k < window_w; ++k) {
        Norm r = R / 2 + static_cast<Norm>((static_cast<double>(R - R / 2) * static_cast<double>(k)) /
                                           static_cast<double>(window_w - 1) + 0.5);
        if (s.empty() || r > s.back()) s.push_back(r);
    }
    return s;
}

std::vector<Generator> test_translations(const FiniteWindow& window, Norm weight_cap, std::size_t samples,
                                         std::uint64_t seed) {
    const Group& G = window.group();
    std::vector<Generator> base;
    for (const auto& g : window.generators())
        if (g.weight <= weight_cap) base.push_back(g);
    std::vector<Generator> out = base;
    std::set<Element> seen;
    for (const auto& g : base) seen.insert(g.element);
    seen.insert(G.identity());
    if (base.empty() || samples == 0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
    // Bounded number of draws keeps tiny generating sets from looping.
    for (std::size_t tries = 0; tries < samples * 8 && out.size() < base.size() + samples; ++tries) {
        const auto& a = base[pick(rng)];
        const auto& b = base[pick(rng)];
        Element p = G.multiply(a.element, b.element);
        if (!seen.insert(p).second) continue;
        auto idx = window.find(p);
        Norm w = idx ? window.norm(*idx) : a.weight + b.weight;
        out.push_back({p, w, a.label + "*" + b.label});
    }
    return out;
}

namespace {

void finish_trace(GeneratorTrace& t, std::vector<Norm>& diff_norms, const std::vector<Norm>& schedule,
                  std::size_t window_w) {
    std::sort(diff_norms.begin(), diff_norms.end());
    t.radii = schedule;
    for (Norm r : schedule)
        t.counts.push_back(static_cast<std::size_t>(
            std::upper_bound(diff_norms.begin(), diff_norms.end(), r) - diff_norms.begin()));
    t.max_diff_norm = diff_norms.empty() ? -1 : diff_norms.back();
    const std::size_t k = t.counts.size();
    if (k < window_w) return;
    const std::size_t first = k - window_w;
    t.stable = true;
    bool nondecreasing = true;
    for (std::size_t i = first + 1; i < k; ++i) {
        if (t.counts[i] != t.counts[first]) t.stable = false;
        if (t.counts[i] < t.counts[i - 1]) nondecreasing = false;
    }
    t.growing = nondecreasing && t.counts[k - 1] > t.counts[first];
    t.unbounded = !t.stable;
}

void assemble(AlmostInvarianceReport& rep, std::size_t window_w, std::size_t schedule_len) {
    if (schedule_len < window_w) {
        rep.verdict = AIClass::Inconclusive;
        rep.note = "radius schedule shorter than the stabilisation window";
        return;
    }
    for (std::size_t i = 0; i < rep.traces.size(); ++i)
        if (rep.traces[i].growing) {
            rep.verdict = AIClass::NotAlmostInvariant;
            rep.witness = i;
            return;
        }
    bool all = !rep.traces.empty() &&
               std::all_of(rep.traces.begin(), rep.traces.end(), [](const GeneratorTrace& t) { return t.stable; });
    rep.verdict = all ? AIClass::AlmostInvariant : AIClass::Inconclusive;
    if (rep.traces.empty()) rep.note = "no translations to test";
}

void check_schedule(const std::vector<Norm>& schedule) {
    if (schedule.empty()) throw InvalidRadii("radius schedule is empty");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw InvalidRadii("radius schedule must be increasing");
}

}  // namespace

AlmostInvarianceReport almost_invariant_verdict(const SetOracle& A, const FiniteWindow& window,
                                                const std::vector<Norm>& schedule, const AIOptions& opt) {
    check_schedule(schedule);
    if (schedule.back() > window.radius()) throw InvalidRadii("schedule exceeds the window radius");
    const Group& G = window.group();
    const Norm cap = opt.generator_weight_cap > 0 ? opt.generator_weight_cap : std::max<Norm>(1, schedule.front() / 4);
    AlmostInvarianceReport rep;
    const std::size_t n = window.ball_size(schedule.back());
    std::vector<char> member(n);
    for (Index x = 0; x < n; ++x) member[x] = A.contains(window.element(x));
    for (const auto& g : test_translations(window, cap, opt.product_samples, opt.seed)) {
        GeneratorTrace t;
        t.label = g.label;
        t.g = g.element;
        t.weight = g.weight;
        const Element ginv = G.inverse(g.element);
        std::vector<Norm> diff;
        for (Index x = 0; x < n; ++x) {
            const Element y = G.multiply(window.element(x), ginv);
            if (static_cast<bool>(member[x]) != A.contains(y)) diff.push_back(window.norm(x));
        }
        finish_trace(t, diff, schedule, opt.window_w);
        rep.traces.push_back(std::move(t));
    }
    assemble(rep, opt.window_w, schedule.size());
    return rep;
}

AlmostInvarianceReport almost_invariant_verdict(const SetOracle& A, const Group& group,
                                                const std::vector<Norm>& schedule, const AIOptions& opt) {
    check_schedule(schedule);
    try {
        FiniteWindow w = generate_window(group, schedule.back(), opt.memory_cap);
        return almost_invariant_verdict(A, w, schedule, opt);
    } catch (const BallTooLarge& e) {
        AlmostInvarianceReport rep;
        rep.verdict = AIClass::Inconclusive;
        rep.reached_radius = e.radius_reached;
        rep.note = e.what();
        return rep;
    }
}

AlmostInvarianceReport almost_invariant_set(const PointSet& A, const FiniteWindow& window,
                                            const std::vector<Norm>& schedule, const std::vector<Generator>& gens,
                                            std::size_t window_w) {
    check_schedule(schedule);
    Norm gmax = 0;
    for (const auto& g : gens) gmax = std::max(gmax, g.weight);
    if (schedule.back() + gmax > window.radius())
        throw InvalidRadii("schedule plus translation length exceeds the window radius");
    const Group& G = window.group();
    const Norm top = schedule.back();
    AlmostInvarianceReport rep;
    const auto members = A.indices();
    for (const auto& g : gens) {
        GeneratorTrace t;
        t.label = g.label;
        t.g = g.element;
        t.weight = g.weight;
        const Element ginv = G.inverse(g.element);
        std::vector<Norm> diff;
        for (Index a : members) {
            // a is in the difference when a g^-1 is not a member.
            if (window.norm(a) <= top) {
                auto y = window.find(G.multiply(window.element(a), ginv));
                if (!y || !A.contains(*y)) diff.push_back(window.norm(a));
            }
            // a g is in the difference when it is not a member.
            auto z = window.find(G.multiply(window.element(a), g.element));
            if (z && window.norm(*z) <= top && !A.contains(*z)) diff.push_back(window.norm(*z));
        }
        finish_trace(t, diff, schedule, window_w);
        rep.traces.push_back(std::move(t));
    }
    assemble(rep, window_w, schedule.size());
    return rep;
}

NccCount disjoint_ncc_count(const ComponentTree& tree, const NccOptions& opt) {
    NccCount out;
    out.mode = "none";
    if (tree.levels.empty() || !tree.window) return out;
    const FiniteWindow& w = *tree.window;
    const EndsVerdict verdict = classify_ends(tree, opt.window_w);
    const bool fragmentation = verdict.classification == EndsClass::Growing &&
                               verdict.rule.rfind("fragmentation", 0) == 0;
    std::size_t level = 0;
    if (!fragmentation && tree.levels.size() >= opt.window_w) level = tree.levels.size() - opt.window_w;
    if (!fragmentation && tree.levels.size() < opt.window_w) level = tree.levels.size() - 1;
    const TreeLevel& L = tree.levels[level];
    out.level = level;
    out.cut = L.cut;

    std::vector<PointSet> candidates;
    if (fragmentation) {
        out.mode = "fragmentation";
        std::vector<const ComponentNode*> islands;
        for (const auto& n : L.nodes)
            if (n.kind == NodeKind::Island) islands.push_back(&n);
        // Round-robin unions so that every class holds islands at several
        // distances from the identity.
        const std::size_t classes = islands.size() / 2;
        for (std::size_t c = 0; c < classes; ++c) {
            PointSet s(w.size());
            for (std::size_t i = c; i < islands.size(); i += classes)
                for (Index x : islands[i]->elements) s.insert(x);
            candidates.push_back(std::move(s));
        }
    } else {
        out.mode = "branches";
        for (const auto& n : L.nodes)
            if (n.kind == NodeKind::EndCandidate) candidates.push_back(PointSet::from_indices(w.size(), n.elements));
    }
    out.candidates = candidates.size();
    if (candidates.empty()) return out;

    const Norm cap = std::max<Norm>(1, L.cut);
    std::vector<Generator> gens;
    Norm gmax = 0;
    for (const auto& g : w.generators())
        if (g.weight <= cap) {
            gens.push_back(g);
            gmax = std::max(gmax, g.weight);
        }
    const Norm top = L.horizon - gmax;
    std::vector<Norm> schedule;
    for (Norm r = top - static_cast<Norm>(opt.window_w) + 1; r <= top; ++r)
        if (r > L.cut) schedule.push_back(r);
    if (schedule.size() < opt.window_w)
        throw CertificationFailed(0, "window too small for a certification schedule");

    for (std::size_t i = 0; i < candidates.size() && i < opt.max_certify; ++i) {
        auto rep = almost_invariant_set(candidates[i], w, schedule, gens, opt.window_w);
        if (rep.verdict != AIClass::AlmostInvariant) throw CertificationFailed(i, to_string(rep.verdict));
        out.sets.push_back(candidates[i]);
        out.certificates.push_back(std::move(rep));
    }
    out.lower_bound = out.sets.size();
    return out;
}

Norm default_core_base(Norm R) { return static_cast<Norm>(std::ceil(std::sqrt(static_cast<double>(std::max<Norm>(R, 1))))); }

CrossCheck clopen_invariance_crosscheck(const SetOracle& A, const FiniteWindow& window, const CrossCheckGrid& grid) {
    CrossCheck cc;
    const Norm R = window.radius();
    cc.core_base = grid.core_base > 0 ? grid.core_base : default_core_base(R);
    const PointSet members = restrict_to_window(A, window);
    bool all = true;
    for (Norm M : grid.M) {
        const Norm r = cc.core_base + M;
        if (r + M > R) continue;
        cc.tested_M.push_back(M);
        if (!coarsely_clopen_window_check(members, window, M, r)) all = false;
    }
    if (!cc.tested_M.empty()) cc.clopen = all;
    const auto schedule = grid.schedule.empty() ? default_schedule(R, grid.ai.window_w) : grid.schedule;
    cc.almost_invariance = almost_invariant_verdict(A, window, schedule, grid.ai);
    const AIClass ai = cc.almost_invariance.verdict;
    if (!cc.clopen || ai == AIClass::Inconclusive) {
        cc.agreement = Agreement::Inconclusive;
        cc.details = !cc.clopen ? "no M in the grid fits the window" : "almost invariance inconclusive";
        return cc;
    }
    const bool ai_yes = ai == AIClass::AlmostInvariant;
    cc.agreement = *cc.clopen == ai_yes ? Agreement::Agree : Agreement::Disagree;
    cc.details = std::string("clopen ") + (*cc.clopen ? "accepts" : "rejects") + ", almost invariance " +
                 (ai_yes ? "accepts" : "rejects");
    return cc;
}

}  // namespace coarse_ends
