#include "coarse_ends/component_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {
namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

// Labels annulus components; comp[k] is the node id of element lo + k.
std::vector<ComponentNode> label_annulus(const FiniteWindow& w, Norm cut, Norm horizon,
                                         std::vector<std::int32_t>& comp) {
    const std::size_t lo = w.ball_size(cut);
    const std::size_t hi = w.ball_size(horizon);
    const std::size_t n = hi - lo;
    const auto& gens = w.generators();
    DisjointSets ds(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Index x = static_cast<Index>(lo + k);
        const Norm nx = w.norm(x);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            std::int32_t y = w.neighbor(x, j);
            if (y == kOutside) continue;
            auto uy = static_cast<std::size_t>(y);
            if (uy < lo || uy >= hi) continue;
            if (admitted_step(gens[j].weight, nx, w.norm(static_cast<Index>(y)))) ds.unite(k, uy - lo);
        }
    }
    comp.assign(n, -1);
    std::vector<ComponentNode> nodes;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t root = ds.find(k);
        if (comp[root] < 0) {
            comp[root] = static_cast<std::int32_t>(nodes.size());
            ComponentNode node;
            node.id = nodes.size();
            node.min_norm = w.norm(static_cast<Index>(lo + k));
            nodes.push_back(node);
        }
        comp[k] = comp[root];
        ComponentNode& node = nodes[static_cast<std::size_t>(comp[k])];
        const Index x = static_cast<Index>(lo + k);
        const Norm nx = w.norm(x);
        node.elements.push_back(x);
        node.max_norm = std::max(node.max_norm, nx);
        for (std::size_t j = 0; j < gens.size(); ++j) {
            std::int32_t y = w.neighbor(x, j);
            Norm ny = y == kOutside ? w.radius() + 1 : w.norm(static_cast<Index>(y));
            if (!admitted_step(gens[j].weight, nx, ny)) continue;
            if (ny > horizon) node.horizon_touching = true;
            if (ny <= cut) node.cut_touching = true;
        }
    }
    for (auto& node : nodes) {
        if (!node.horizon_touching)
            node.kind = NodeKind::Island;
        else if (node.cut_touching)
            node.kind = NodeKind::EndCandidate;
        else
            node.kind = NodeKind::Fragment;
    }
    return nodes;
}

void check_radii(const std::vector<Norm>& radii) {
    if (radii.empty()) throw InvalidRadii("radii schedule is empty");
    if (radii.front() < 0) throw InvalidRadii("cut radii must be >= 0");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] <= radii[i - 1]) throw InvalidRadii("cut radii must be strictly increasing");
}

void tally(TreeLevel& level) {
    for (const auto& n : level.nodes) {
        if (n.kind == NodeKind::EndCandidate) ++level.end_count;
        if (n.kind == NodeKind::Island) ++level.island_count;
        if (n.kind == NodeKind::Fragment) ++level.fragment_count;
    }
}

}  // namespace

std::string to_string(NodeKind k) {
    switch (k) {
        case NodeKind::EndCandidate: return "end";
        case NodeKind::Island: return "island";
        case NodeKind::Fragment: return "fragment";
    }
    return "?";
}

std::vector<ComponentNode> annulus_components(const FiniteWindow& window, Norm cut, Norm horizon) {
    if (cut < 0 || cut > horizon || horizon > window.radius())
        throw InvalidRadii("need 0 <= cut <= horizon <= window radius, got cut " + std::to_string(cut) +
                           ", horizon " + std::to_string(horizon) + ", window " +
                           std::to_string(window.radius()));
    std::vector<std::int32_t> comp;
    return label_annulus(window, cut, horizon, comp);
}

std::size_t ComponentTree::node_count() const {
    std::size_t c = 0;
    for (const auto& l : levels) c += l.nodes.size();
    return c;
}

ComponentTree build_component_tree(std::shared_ptr<const FiniteWindow> window,
                                   const std::vector<Norm>& radii, Norm horizon) {
    check_radii(radii);
    if (horizon > window->radius()) throw InvalidRadii("horizon beyond the window radius");
    ComponentTree tree;
    tree.window = window;
    tree.requested_horizon = horizon;
    std::vector<std::int32_t> prev_comp, comp;
    std::size_t prev_lo = 0;
    for (Norm r : radii) {
        if (r > horizon) {
            tree.dropped_radii.push_back(r);
            continue;
        }
        TreeLevel level;
        level.cut = r;
        level.horizon = horizon;
        level.nodes = label_annulus(*window, r, horizon, comp);
        const std::size_t lo = window->ball_size(r);
        if (!tree.levels.empty()) {
            for (auto& node : level.nodes) {
                // Deeper annuli are subgraphs, so every element of a child
                // carries the same parent label.
                Index x = node.elements.front();
                node.parent = static_cast<std::size_t>(prev_comp[x - prev_lo]);
            }
        }
        tally(level);
        tree.levels.push_back(std::move(level));
        prev_comp.swap(comp);
        prev_lo = lo;
    }
    return tree;
}

ComponentTree build_component_tree(const Group& group, const std::vector<Norm>& radii,
                                   double horizon_factor, std::size_t memory_cap) {
    check_radii(radii);
    if (!(horizon_factor >= 1.0)) throw InvalidRadii("horizon factor must be >= 1");
    const Norm want = static_cast<Norm>(std::ceil(horizon_factor * static_cast<double>(radii.back()) - 1e-9));
    auto window = std::make_shared<const FiniteWindow>(generate_window_capped(group, want, memory_cap));
    std::vector<Norm> kept;
    ComponentTree tree;
    for (Norm r : radii) {
        if (window->truncated() && r >= window->radius())
            tree.dropped_radii.push_back(r);
        else
            kept.push_back(r);
    }
    if (kept.empty()) {
        tree.window = window;
    } else {
        auto dropped = tree.dropped_radii;
        tree = build_component_tree(window, kept, window->radius());
        tree.dropped_radii.insert(tree.dropped_radii.end(), dropped.begin(), dropped.end());
    }
    tree.horizon_factor = horizon_factor;
    tree.requested_horizon = want;
    tree.truncated = window->truncated();
    return tree;
}

std::string EndsVerdict::to_string() const {
    switch (classification) {
        case EndsClass::Zero: return "Zero";
        case EndsClass::Exactly: return "Exactly(" + std::to_string(count) + ")";
        case EndsClass::Growing: return "Growing";
        case EndsClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

// Every end candidate at `next` has an end-candidate parent and no two
// share one.
bool branches_persist(const TreeLevel& prev, const TreeLevel& next) {
    std::vector<bool> used(prev.nodes.size(), false);
    for (const auto& node : next.nodes) {
        if (node.kind != NodeKind::EndCandidate) continue;
        if (!node.parent) return false;
        std::size_t p = *node.parent;
        if (prev.nodes[p].kind != NodeKind::EndCandidate || used[p]) return false;
        used[p] = true;
    }
    return true;
}

}  // namespace

EndsVerdict classify_ends(const ComponentTree& tree, std::size_t window_w) {
    if (window_w < 2) throw InvalidRadii("stabilisation window must be >= 2");
    EndsVerdict v;
    for (const auto& l : tree.levels) {
        v.per_level_counts.push_back(l.end_count);
        v.per_level_islands.push_back(l.island_count);
    }
    const std::size_t L = tree.levels.size();
    // Length of the trailing run of equal counts with persistent branches.
    std::size_t run = L ? 1 : 0;
    for (std::size_t i = L; i >= 2; --i) {
        const auto& a = tree.levels[i - 2];
        const auto& b = tree.levels[i - 1];
        if (a.end_count != b.end_count || !branches_persist(a, b)) break;
        ++run;
    }
    v.stabilization_window = run;
    if (L < window_w) {
        v.rule = "fewer levels than the stabilisation window";
        return v;
    }
    const std::size_t first = L - window_w;
    bool all_empty = true, islands_everywhere = true, non_decreasing = true;
    for (std::size_t i = first; i < L; ++i) {
        const auto& l = tree.levels[i];
        if (!l.nodes.empty()) all_empty = false;
        if (l.island_count == 0) islands_everywhere = false;
        if (i > first && l.end_count < tree.levels[i - 1].end_count) non_decreasing = false;
    }
    if (all_empty) {
        v.classification = EndsClass::Zero;
        v.rule = "annuli empty beyond the group diameter";
        return v;
    }
    if (islands_everywhere) {
        v.classification = EndsClass::Growing;
        v.rule = "fragmentation: closed finite pieces beyond every cut";
        return v;
    }
    const std::size_t last = tree.levels[L - 1].end_count;
    if (run >= window_w && last > 0) {
        v.classification = EndsClass::Exactly;
        v.count = last;
        v.rule = "constant persistent branch count";
        return v;
    }
    if (non_decreasing && last > tree.levels[first].end_count) {
        v.classification = EndsClass::Growing;
        v.rule = "branching: count increasing";
        return v;
    }
    v.rule = "no stabilisation within the window";
    return v;
}

namespace {

std::vector<std::int32_t> components_outside(std::size_t n, const std::vector<bool>& inside,
                                             const std::function<void(Index, const std::function<void(Index)>&)>& nbrs) {
    std::vector<std::int32_t> comp(n, -1);
    std::int32_t next = 0;
    std::vector<Index> stack;
    for (Index s = 0; s < n; ++s) {
        if (!inside[s] || comp[s] >= 0) continue;
        comp[s] = next;
        stack.assign(1, s);
        while (!stack.empty()) {
            Index x = stack.back();
            stack.pop_back();
            nbrs(x, [&](Index y) {
                if (inside[y] && comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
            });
        }
        ++next;
    }
    return comp;
}

}  // namespace

bool geodesic_coarse_check(const FiniteWindow& window, Norm r, Norm m, const std::vector<std::size_t>& allowed) {
    if (r < 0 || m < 1 || r + m > window.radius()) throw InvalidRadii("need r >= 0, m >= 1, r + m <= window radius");
    std::vector<std::size_t> gens = allowed;
    if (gens.empty())
        for (std::size_t j = 0; j < window.generators().size(); ++j) gens.push_back(j);
    const std::size_t n = window.size();
    std::vector<bool> outside(n);
    for (Index x = 0; x < n; ++x) outside[x] = window.norm(x) > r;
    auto comp = components_outside(n, outside, [&](Index x, const std::function<void(Index)>& f) {
        for (std::size_t j : gens) {
            std::int32_t y = window.neighbor(x, j);
            if (y != kOutside) f(static_cast<Index>(y));
        }
    });
    for (Index x = static_cast<Index>(window.ball_size(r + m)); x < n; ++x) {
        bool ok = true;
        window.for_each_within(x, m, [&](Index y, Norm) {
            if (comp[y] != comp[x]) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

bool geodesic_coarse_check(const MetricSpace& space, const Adjacency& adjacency, Norm r, Norm m) {
    if (adjacency.size() != space.size()) throw Error("adjacency does not match the space");
    if (r < 0 || m < 1) throw InvalidRadii("need r >= 0 and m >= 1");
    const std::size_t n = space.size();
    std::vector<bool> outside(n);
    for (Index x = 0; x < n; ++x) outside[x] = space.base_norm(x) > r;
    auto comp = components_outside(n, outside, [&](Index x, const std::function<void(Index)>& f) {
        for (Index y : adjacency[x]) f(y);
    });
    for (Index x = 0; x < n; ++x) {
        if (space.base_norm(x) <= r + m) continue;
        bool ok = true;
        space.for_each_within(x, m, [&](Index y, Norm) {
            if (comp[y] != comp[x]) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

std::string tree_to_dot(const ComponentTree& tree) {
    std::ostringstream os;
    os << "digraph component_tree {\n  rankdir=TB;\n  node [shape=box, fontsize=10];\n";
    for (std::size_t i = 0; i < tree.levels.size(); ++i) {
        const auto& l = tree.levels[i];
        os << "  subgraph level" << i << " {\n    rank=same;\n";
        for (const auto& n : l.nodes) {
            os << "    n" << i << "_" << n.id << " [label=\"r=" << l.cut << " #" << n.id
               << "\\nsize=" << n.elements.size() << "\\n" << to_string(n.kind) << "\"";
            if (n.kind == NodeKind::EndCandidate) os << ", style=bold";
            if (n.kind == NodeKind::Island) os << ", style=dashed";
            os << "];\n";
        }
        os << "  }\n";
    }
    for (std::size_t i = 1; i < tree.levels.size(); ++i)
        for (const auto& n : tree.levels[i].nodes)
            if (n.parent) os << "  n" << i - 1 << "_" << *n.parent << " -> n" << i << "_" << n.id << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace coarse_ends
