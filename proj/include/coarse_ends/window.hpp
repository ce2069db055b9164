#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coarse_ends/group.hpp"
#include "coarse_ends/metric_space.hpp"

namespace coarse_ends {

inline constexpr std::int32_t kOutside = -1;

// The ball B(1, R) of a Cayley graph. Elements are stored in non-decreasing
// norm order, so every smaller ball is a prefix. Immutable once built.
class FiniteWindow : public MetricSpace {
public:
    const Group& group() const { return group_; }
    Norm radius() const { return radius_; }
    // Radius that was asked for; larger than radius() when the memory cap
    // forced a smaller window.
    Norm requested_radius() const { return requested_; }
    bool truncated() const { return requested_ > radius_; }

    std::size_t size() const override { return elements_.size(); }
    const Element& element(Index i) const { return elements_[i]; }
    Norm norm(Index i) const { return norms_[i]; }
    const std::vector<Norm>& norms() const { return norms_; }
    std::optional<Index> find(const Element& e) const;
    Index index_of(const Element& e) const;  // throws PointOutsideWindow
    // Number of elements of norm <= r.
    std::size_t ball_size(Norm r) const;

    // Generators of weight <= radius(), with the neighbour table
    // neighbor(x, j) = index of x * generators()[j] or kOutside.
    const std::vector<Generator>& generators() const { return gens_; }
    std::int32_t neighbor(Index x, std::size_t j) const {
        return table_[static_cast<std::size_t>(x) * gens_.size() + j];
    }

    // d(a, b) = |a^-1 b| when that is <= radius(), otherwise nullopt.
    std::optional<Norm> distance(Index a, Index b) const override;
    void for_each_within(Index x, Norm m,
                         const std::function<void(Index, Norm)>& f) const override;
    Norm base_norm(Index x) const override { return norms_[x]; }
    std::string label(Index x) const override { return group_.canonical(elements_[x]); }
    Norm known_range() const override { return radius_; }

    friend struct WindowBuilder;

private:
    explicit FiniteWindow(Group g) : group_(std::move(g)) {}
    Group group_;
    Norm radius_ = 0;
    Norm requested_ = 0;
    std::vector<Element> elements_;
    std::vector<Norm> norms_;
    std::unordered_map<Element, Index, ElementHash> index_;
    std::vector<Generator> gens_;
    std::vector<std::int32_t> table_;
};

// Exactly the elements of norm <= R. Throws BallTooLarge when more than
// memory_cap elements would be needed.
FiniteWindow generate_window(const Group& group, Norm radius,
                             std::size_t memory_cap = kDefaultMemoryCap);

// Like generate_window but shrinks the radius to the largest complete ball
// that fits under the cap instead of throwing.
FiniteWindow generate_window_capped(const Group& group, Norm radius,
                                    std::size_t memory_cap = kDefaultMemoryCap);

// Largest r <= radius with |B(r)| <= memory_cap, or -1. No neighbour table.
Norm largest_ball_within(const Group& group, Norm radius, std::size_t memory_cap);

}  // namespace coarse_ends
