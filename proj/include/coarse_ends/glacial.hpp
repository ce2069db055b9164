#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coarse_ends/metric_space.hpp"
#include "coarse_ends/point_set.hpp"
#include "coarse_ends/window.hpp"

namespace coarse_ends {

// Finite truncation {(K_i, n_i)}: K nested increasing, n strictly increasing.
struct GlacialScale {
    std::vector<PointSet> K;
    std::vector<Norm> n;
    std::size_t depth() const { return n.size(); }
    void validate(const MetricSpace& space) const;  // throws Error
    std::string describe(const MetricSpace& space) const;
};

// K_i = B(base, cut_i) paired with steps n_i.
GlacialScale ball_scale(const MetricSpace& space, const std::vector<std::pair<Norm, Norm>>& cuts_and_steps);
// {(B(m - 1), m)} for m = 1..depth: the scale behind admitted Cayley steps.
GlacialScale linear_scale(const MetricSpace& space, std::size_t depth);
// {(B(2^i), i)} for i = 1..depth.
GlacialScale dyadic_scale(const MetricSpace& space, std::size_t depth);
// Union of the K's and minimum of the n's, index by index, truncated to the
// shorter scale. Absorbs S-chains for every set either input absorbs.
GlacialScale merge_scales(const GlacialScale& a, const GlacialScale& b);

using ChainPath = std::vector<Index>;

// Largest m with x outside K_m (0 when x lies in K_1).
std::vector<std::size_t> exclusion_depths(const GlacialScale& scale, std::size_t n_points);
// Largest witnessing index m (1-based) for an S-step, or nullopt.
std::optional<std::size_t> s_step_witness(const MetricSpace& space, const GlacialScale& scale,
                                          Index x, Index y);

bool is_s_chain(const ChainPath& path, const GlacialScale& scale, const MetricSpace& space);
// Element form; throws PointOutsideWindow for points not in the window.
bool is_s_chain(const std::vector<Element>& path, const GlacialScale& scale, const FiniteWindow& window);

struct Partition {
    std::vector<std::int32_t> class_of;  // -1 outside the region
    std::vector<std::vector<Index>> classes;
    std::size_t size() const { return classes.size(); }
};

Partition s_components(const PointSet& region, const GlacialScale& scale, const MetricSpace& space);
// Classes of space \ K under hops of length <= M inside space \ K.
Partition m_components(const MetricSpace& space, const PointSet& K, Norm M);

using PointFunction = std::function<double(Index)>;

inline constexpr double kEpsilonSlack = 1e-12;

struct OscillationVerdict {
    bool pass = true;
    Index x = 0, y = 0;  // witness pair on failure
    double gap = 0;
    ChainPath chain;  // S-chain from x to y
};

OscillationVerdict glacial_oscillation_test(const PointFunction& f, double epsilon, const GlacialScale& scale,
                                            const MetricSpace& space);

// Plain-components form: diam f(C) <= epsilon over generator components of
// window \ B(cut).
bool components_oscillation_test(const PointFunction& f, double epsilon, const FiniteWindow& window, Norm cut);

struct AbsorptionVerdict {
    bool absorbed = true;
    Index from = 0, to = 0;  // leaking S-step on failure
    std::size_t witness_m = 0;
    Norm step = 0;
};

AbsorptionVerdict chain_absorption_check(const PointSet& A, const GlacialScale& scale, const MetricSpace& space);

// True iff every pair (a in A, b not in A) with d(a, b) <= M has both
// base norms <= r. Requires r + M <= space.known_range().
bool coarsely_clopen_window_check(const PointSet& A, const MetricSpace& space, Norm M, Norm r);
// Largest base norm met by a boundary pair at distance <= M; -1 if none.
Norm clopen_boundary_radius(const PointSet& A, const MetricSpace& space, Norm M);

// Exhaustive triple check; throws NotUltrametric with the first bad triple.
void require_ultrametric(const MetricSpace& space);

// L_1 = K_1, L_{n+1} = K_{n+1} u B(L_n, n), where K_n is the smallest base
// ball catching every pair at distance <= n on which f varies by >= epsilon.
// Stops before L_n fills the space or at max_depth.
GlacialScale ultrametric_scale_builder(const MetricSpace& space, const PointFunction& f, double epsilon,
                                       std::size_t max_depth = 0);

// Union of the A_i after checking that each A_i avoids K_i, is one n_i-hop
// class of space \ K_i, and that A_i \ K_{i+1} lies in A_{i+1}. Throws
// PreconditionViolated with the failing 1-based index.
PointSet union_construction(const std::vector<PointSet>& A, const std::vector<PointSet>& K,
                            const std::vector<Norm>& n, const MetricSpace& space);

PointFunction indicator(const PointSet& A);

}  // namespace coarse_ends
