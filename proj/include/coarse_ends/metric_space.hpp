#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse_ends/group.hpp"
#include "coarse_ends/point_set.hpp"

namespace coarse_ends {

// Finite metric space with a base point (index 0 unless stated otherwise).
// distance() may return nullopt for pairs beyond the known range; such pairs
// are farther apart than any scale the space is asked about.
class MetricSpace {
public:
    virtual ~MetricSpace() = default;
    virtual std::size_t size() const = 0;
    virtual std::optional<Norm> distance(Index a, Index b) const = 0;
    // Calls f(y, d) for every y with d(x, y) <= m, including x itself.
    virtual void for_each_within(Index x, Norm m,
                                 const std::function<void(Index, Norm)>& f) const;
    virtual Norm base_norm(Index x) const = 0;
    virtual std::string label(Index x) const { return std::to_string(x); }
    // Largest distance the space can answer exactly.
    virtual Norm known_range() const = 0;

    PointSet ball(Norm r) const;  // base-point ball
    PointSet neighborhood(const PointSet& a, Norm r) const;
};

// Explicit symmetric distance matrix.
class DistanceMatrixSpace : public MetricSpace {
public:
    DistanceMatrixSpace(std::vector<std::vector<Norm>> d, Index base = 0,
                        std::vector<std::string> labels = {});
    std::size_t size() const override { return d_.size(); }
    std::optional<Norm> distance(Index a, Index b) const override { return d_[a][b]; }
    Norm base_norm(Index x) const override { return d_[base_][x]; }
    std::string label(Index x) const override;
    Norm known_range() const override { return range_; }

private:
    std::vector<std::vector<Norm>> d_;
    Index base_;
    std::vector<std::string> labels_;
    Norm range_ = 0;
};

// Shortest-path metric of a connected unweighted graph (all pairs BFS).
DistanceMatrixSpace graph_metric(const std::vector<std::vector<Index>>& adjacency, Index base = 0,
                                 std::vector<std::string> labels = {});

// Integer segment {-radius, ..., radius} with d(a, b) = |a - b|; index i
// holds the integer i - radius and the base point is 0.
DistanceMatrixSpace integer_segment(Norm radius);

// Points 0..2^bits - 1 with d(x, y) = 2^msb(x xor y): an ultrametric on a
// finite piece of the restricted sum of Z/2.
DistanceMatrixSpace dyadic_ultrametric(int bits);

// Plain adjacency lists over the points of a space.
using Adjacency = std::vector<std::vector<Index>>;

// Adjacency x ~ y iff label difference is one of the offsets; only for
// integer_segment spaces.
Adjacency segment_adjacency(Norm radius, const std::vector<Norm>& offsets);

}  // namespace coarse_ends
