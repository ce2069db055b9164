#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarse_ends/window.hpp"

namespace coarse_ends {

// A step x -> x g is admitted when |g| <= max(1, min(|x|, |x g|)): the
// glacial scale {(B(m - 1), m)} with unit steps always allowed. For unit
// weights this is plain Cayley adjacency.
inline bool admitted_step(Norm weight, Norm from, Norm to) {
    Norm lo = from < to ? from : to;
    return weight <= (lo > 1 ? lo : 1);
}

enum class NodeKind {
    EndCandidate,  // reaches both the cut sphere and the outer horizon
    Island,        // no admitted step leaves the horizon: finite and closed
    Fragment,      // reaches the horizon but never comes back to the cut
};

std::string to_string(NodeKind k);

struct ComponentNode {
    std::size_t id = 0;
    std::vector<Index> elements;  // window indices, ascending
    NodeKind kind = NodeKind::Island;
    bool horizon_touching = false;
    bool cut_touching = false;
    Norm min_norm = 0;
    Norm max_norm = 0;
    std::optional<std::size_t> parent;  // node id at the previous level
};

// Admitted-step components of {x : cut < |x| <= horizon}. An empty list is
// returned for cut == horizon.
std::vector<ComponentNode> annulus_components(const FiniteWindow& window, Norm cut, Norm horizon);

struct TreeLevel {
    Norm cut = 0;
    Norm horizon = 0;
    std::vector<ComponentNode> nodes;
    std::size_t end_count = 0;
    std::size_t island_count = 0;
    std::size_t fragment_count = 0;
};

struct ComponentTree {
    std::shared_ptr<const FiniteWindow> window;
    std::vector<TreeLevel> levels;
    double horizon_factor = 0;
    Norm requested_horizon = 0;
    bool truncated = false;          // the memory cap shrank the horizon
    std::vector<Norm> dropped_radii;  // cut radii lost to truncation
    std::size_t node_count() const;
};

// Levels share one horizon, ceil(h * r_last), capped by what the memory cap
// allows. Children attach to the unique previous-level node containing them.
ComponentTree build_component_tree(const Group& group, const std::vector<Norm>& radii,
                                   double horizon_factor, std::size_t memory_cap = kDefaultMemoryCap);
ComponentTree build_component_tree(std::shared_ptr<const FiniteWindow> window,
                                   const std::vector<Norm>& radii, Norm horizon);

enum class EndsClass { Zero, Exactly, Growing, Inconclusive };

struct EndsVerdict {
    EndsClass classification = EndsClass::Inconclusive;
    std::size_t count = 0;   // n for Exactly(n)
    std::size_t stabilization_window = 0;
    std::vector<std::size_t> per_level_counts;
    std::vector<std::size_t> per_level_islands;
    std::string rule;  // which criterion fired
    std::string to_string() const;
};

EndsVerdict classify_ends(const ComponentTree& tree, std::size_t window_w = 5);

// True iff for each x with |x| > r + m the m-ball around x (inside the
// window) lies in one component of the complement of B(r). Components use
// the generators listed in allowed (all window generators when empty),
// while the metric always uses the full generating set.
bool geodesic_coarse_check(const FiniteWindow& window, Norm r, Norm m,
                           const std::vector<std::size_t>& allowed = {});
bool geodesic_coarse_check(const MetricSpace& space, const Adjacency& adjacency, Norm r, Norm m);

// Graphviz rendering; labels carry level, size and kind.
std::string tree_to_dot(const ComponentTree& tree);

}  // namespace coarse_ends
