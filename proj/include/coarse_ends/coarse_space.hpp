#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coarse_ends/metric_space.hpp"
#include "coarse_ends/point_set.hpp"

namespace coarse_ends {

using Cover = std::vector<PointSet>;

// Covers of one finite point set, coarser as the index grows.
struct CoverScale {
    std::size_t points = 0;
    std::vector<Cover> covers;
    std::vector<std::string> labels;
    // Every member lives in the universe, every point is covered, and each
    // member of cover i sits inside some member of cover i + 1.
    void validate() const;
};

// Union of the members meeting A, together with A.
PointSet star(const PointSet& A, const Cover& U);
// st(x, U) for a single point.
PointSet star(Index x, const Cover& U);
// {st(A, V) : A in U}
Cover star_composition(const Cover& U, const Cover& V);

bool covers_points(const Cover& U, std::size_t points);
// Contained in a single member of U.
bool is_bounded(const PointSet& A, const Cover& U);

Cover singleton_cover(std::size_t points);
// Members B(x, r) for every point x.
Cover ball_cover(const MetricSpace& space, Norm r);
CoverScale ball_cover_scale(const MetricSpace& space, const std::vector<Norm>& radii);

// st(A, U) n st(A^c, U)
PointSet clopen_overlap(const PointSet& A, const Cover& U);

struct ClopenAtScale {
    std::size_t cover_index = 0;
    PointSet overlap;
    bool bounded = false;       // overlap inside one member of st(U, U)
    bool finite_caveat = true;  // every subset of a finite set is bounded in the limit
};

std::vector<ClopenAtScale> lss_coarsely_clopen(const PointSet& A, const CoverScale& scale);

bool star_intersection_check(const PointSet& A1, const PointSet& A2, const Cover& U);
// Overlap of A n C lies in the union of the overlaps of A and C.
bool complement_star_check(const PointSet& A, const PointSet& C, const Cover& U);
// st(st(A, U), V) lies in st(A, st(U, V)), and the overlap of st(A, U) at V
// lies in the overlap of A at st(U, V).
bool star_preserves_clopen_check(const PointSet& A, const Cover& U, const Cover& V);

struct CoarseEndApprox {
    std::vector<PointSet> atoms;          // unbounded atoms: the end candidates
    std::vector<PointSet> bounded_atoms;  // discarded
    std::vector<std::size_t> rejected_candidates;  // failed the deepest clopen check
    std::size_t cover_index = 0;
    std::string note;
};

// Atoms of the Boolean algebra generated by the accepted candidates.
// Throws EmptyAlgebra when no candidate is accepted.
CoarseEndApprox approximate_ends(const CoverScale& scale, const std::vector<PointSet>& candidates);

// Four rays of the given length glued at a centre point (index 0).
Adjacency cross_graph(std::size_t ray_length, std::size_t rays = 4);

}  // namespace coarse_ends
