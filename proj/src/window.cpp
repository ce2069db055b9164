#include "coarse_ends/window.hpp"

#include <algorithm>
#include <unordered_set>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {
namespace {

struct Enumeration {
    std::vector<Element> elements;
    std::vector<Norm> norms;
    std::unordered_map<Element, Index, ElementHash> index;
    Norm complete_radius = 0;
    bool hit_cap = false;
};

// Uniform-cost search, one norm level at a time. Weights are positive, so
// the sphere of radius d is {e g : |e| + w(g) = d} minus the smaller ball;
// nothing beyond the current level is ever materialised. Stops before the
// first level that would push the ball past the cap.
Enumeration enumerate_ball(const Group& group, Norm radius, std::size_t cap) {
    Enumeration out;
    std::vector<std::vector<Generator>> by_weight(static_cast<std::size_t>(radius) + 1);
    for (auto& g : group.generators_up_to(radius)) by_weight[static_cast<std::size_t>(g.weight)].push_back(std::move(g));
    // level_start[n] is the first index of norm n; level_start[d] = size.
    std::vector<std::size_t> level_start{0};
    out.elements.push_back(group.identity());
    out.norms.push_back(0);
    out.index.emplace(group.identity(), 0);
    out.complete_radius = radius;
    if (cap < 1) {
        out.complete_radius = -1;
        out.hit_cap = true;
        return out;
    }
    level_start.push_back(1);
    for (Norm d = 1; d <= radius; ++d) {
        std::vector<Element> sphere;
        std::unordered_set<Element, ElementHash> seen;
        for (Norm n = 0; n < d; ++n) {
            const auto& gens = by_weight[static_cast<std::size_t>(d - n)];
            if (gens.empty()) continue;
            for (std::size_t i = level_start[n]; i < level_start[n + 1]; ++i)
                for (const auto& g : gens) {
                    Element y = group.multiply(out.elements[i], g.element);
                    if (out.index.count(y) || !seen.insert(y).second) continue;
                    sphere.push_back(std::move(y));
                }
        }
        if (out.elements.size() + sphere.size() > cap) {
            out.complete_radius = d - 1;
            out.hit_cap = true;
            return out;
        }
        for (auto& y : sphere) {
            out.index.emplace(y, static_cast<Index>(out.elements.size()));
            out.elements.push_back(std::move(y));
            out.norms.push_back(d);
        }
        level_start.push_back(out.elements.size());
    }
    return out;
}

}  // namespace

std::optional<Index> FiniteWindow::find(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Index FiniteWindow::index_of(const Element& e) const {
    auto i = find(e);
    if (!i) throw PointOutsideWindow(group_.canonical(e) + " is not in the window of radius " +
                                     std::to_string(radius_));
    return *i;
}

std::size_t FiniteWindow::ball_size(Norm r) const {
    return static_cast<std::size_t>(std::upper_bound(norms_.begin(), norms_.end(), r) - norms_.begin());
}

std::optional<Norm> FiniteWindow::distance(Index a, Index b) const {
    if (a == b) return 0;
    auto i = find(group_.multiply(group_.inverse(elements_[a]), elements_[b]));
    if (!i) return std::nullopt;
    return norms_[*i];
}

void FiniteWindow::for_each_within(Index x, Norm m, const std::function<void(Index, Norm)>& f) const {
    // Left invariance: d(x, x h) = |h|, so the m-ball around x is x B(m).
    const std::size_t n = ball_size(std::min(m, radius_));
    for (std::size_t k = 0; k < n; ++k) {
        auto y = find(group_.multiply(elements_[x], elements_[k]));
        if (y) f(*y, norms_[k]);
    }
}


struct WindowBuilder {
    static FiniteWindow build(const Group& group, Enumeration&& e, Norm radius, Norm requested) {
        FiniteWindow w(group);
        w.radius_ = radius;
        w.requested_ = requested;
        w.elements_ = std::move(e.elements);
        w.norms_ = std::move(e.norms);
        w.index_ = std::move(e.index);
        w.gens_ = group.generators_up_to(radius);
        const std::size_t ng = w.gens_.size();
        w.table_.assign(w.elements_.size() * ng, kOutside);
        for (std::size_t x = 0; x < w.elements_.size(); ++x)
            for (std::size_t j = 0; j < ng; ++j) {
                auto y = w.find(group.multiply(w.elements_[x], w.gens_[j].element));
                if (y) w.table_[x * ng + j] = static_cast<std::int32_t>(*y);
            }
        return w;
    }
};

FiniteWindow generate_window(const Group& group, Norm radius, std::size_t memory_cap) {
    if (radius < 0) throw InvalidRadii("window radius must be >= 0");
    Enumeration e = enumerate_ball(group, radius, memory_cap);
    if (e.hit_cap) throw BallTooLarge(e.complete_radius, memory_cap);
    return WindowBuilder::build(group, std::move(e), radius, radius);
}

FiniteWindow generate_window_capped(const Group& group, Norm radius, std::size_t memory_cap) {
    if (radius < 0) throw InvalidRadii("window radius must be >= 0");
    Enumeration e = enumerate_ball(group, radius, memory_cap);
    if (e.hit_cap && e.complete_radius < 0) throw BallTooLarge(-1, memory_cap);
    Norm r = e.hit_cap ? e.complete_radius : radius;
    return WindowBuilder::build(group, std::move(e), r, radius);
}

Norm largest_ball_within(const Group& group, Norm radius, std::size_t memory_cap) {
    if (radius < 0) throw InvalidRadii("window radius must be >= 0");
    return enumerate_ball(group, radius, memory_cap).complete_radius;
}

}  // namespace coarse_ends
