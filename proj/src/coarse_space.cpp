#include "coarse_ends/coarse_space.hpp"

#include <algorithm>
#include <map>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {

void CoverScale::validate() const {
    if (covers.empty()) throw Error("cover scale needs at least one cover");
    for (std::size_t i = 0; i < covers.size(); ++i) {
        for (const auto& m : covers[i])
            if (m.universe() != points) throw Error("cover member outside the point set");
        if (!covers_points(covers[i], points))
            throw Error("cover " + std::to_string(i) + " misses a point");
        if (i + 1 < covers.size())
            for (const auto& m : covers[i])
                if (std::none_of(covers[i + 1].begin(), covers[i + 1].end(),
                                 [&](const PointSet& big) { return m.subset_of(big); }))
                    throw Error("cover " + std::to_string(i) + " does not refine cover " + std::to_string(i + 1));
    }
}

PointSet star(const PointSet& A, const Cover& U) {
    PointSet out = A;
    for (const auto& m : U)
        if (m.intersects(A)) out |= m;
    return out;
}

PointSet star(Index x, const Cover& U) {
    PointSet out(U.empty() ? x + 1 : U.front().universe());
    out.insert(x);
    for (const auto& m : U)
        if (m.contains(x)) out |= m;
    return out;
}

Cover star_composition(const Cover& U, const Cover& V) {
    Cover out;
    out.reserve(U.size());
    for (const auto& m : U) out.push_back(star(m, V));
    return out;
}

bool covers_points(const Cover& U, std::size_t points) {
    PointSet all(points);
    for (const auto& m : U) all |= m;
    return all.count() == points;
}

bool is_bounded(const PointSet& A, const Cover& U) {
    return std::any_of(U.begin(), U.end(), [&](const PointSet& m) { return A.subset_of(m); });
}

Cover singleton_cover(std::size_t points) {
    Cover c;
    for (Index i = 0; i < points; ++i) c.push_back(PointSet::from_indices(points, {i}));
    return c;
}

Cover ball_cover(const MetricSpace& space, Norm r) {
    Cover c;
    for (Index x = 0; x < space.size(); ++x) {
        PointSet b(space.size());
        space.for_each_within(x, r, [&](Index y, Norm) { b.insert(y); });
        c.push_back(std::move(b));
    }
    return c;
}

CoverScale ball_cover_scale(const MetricSpace& space, const std::vector<Norm>& radii) {
    CoverScale s;
    s.points = space.size();
    for (Norm r : radii) {
        s.covers.push_back(ball_cover(space, r));
        s.labels.push_back("balls of radius " + std::to_string(r));
    }
    s.validate();
    return s;
}

PointSet clopen_overlap(const PointSet& A, const Cover& U) { return star(A, U) & star(A.complement(), U); }

std::vector<ClopenAtScale> lss_coarsely_clopen(const PointSet& A, const CoverScale& scale) {
    std::vector<ClopenAtScale> out;
    for (std::size_t i = 0; i < scale.covers.size(); ++i) {
        ClopenAtScale c;
        c.cover_index = i;
        c.overlap = clopen_overlap(A, scale.covers[i]);
        c.bounded = c.overlap.empty() || is_bounded(c.overlap, star_composition(scale.covers[i], scale.covers[i]));
        out.push_back(std::move(c));
    }
    return out;
}

bool star_intersection_check(const PointSet& A1, const PointSet& A2, const Cover& U) {
    const PointSet lhs = clopen_overlap(A1 & A2, U);
    const PointSet rhs = clopen_overlap(A1, U) | clopen_overlap(A2, U);
    return lhs.subset_of(rhs);
}

bool complement_star_check(const PointSet& A, const PointSet& C, const Cover& U) {
    return clopen_overlap(A & C, U).subset_of(clopen_overlap(A, U) | clopen_overlap(C, U));
}

bool star_preserves_clopen_check(const PointSet& A, const Cover& U, const Cover& V) {
    const Cover UV = star_composition(U, V);
    const PointSet sA = star(A, U);
    if (!star(sA, V).subset_of(star(A, UV))) return false;
    return clopen_overlap(sA, V).subset_of(clopen_overlap(A, UV));
}

CoarseEndApprox approximate_ends(const CoverScale& scale, const std::vector<PointSet>& candidates) {
    scale.validate();
    CoarseEndApprox out;
    out.cover_index = scale.covers.size() - 1;
    const Cover& deep = scale.covers.back();
    std::vector<const PointSet*> accepted;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto verdicts = lss_coarsely_clopen(candidates[i], scale);
        if (verdicts.back().bounded)
            accepted.push_back(&candidates[i]);
        else
            out.rejected_candidates.push_back(i);
    }
    if (accepted.empty()) throw EmptyAlgebra("no candidate set passes the deepest clopen check");
    // Atoms group points by their membership signature.
    std::map<std::vector<bool>, std::vector<Index>> by_signature;
    for (Index x = 0; x < scale.points; ++x) {
        std::vector<bool> sig;
        sig.reserve(accepted.size());
        for (const auto* c : accepted) sig.push_back(c->contains(x));
        by_signature[sig].push_back(x);
    }
    std::vector<PointSet> atoms;
    for (auto& [sig, pts] : by_signature) atoms.push_back(PointSet::from_indices(scale.points, pts));
    std::sort(atoms.begin(), atoms.end(), [](const PointSet& a, const PointSet& b) {
        return a.indices().front() < b.indices().front();
    });
    for (auto& a : atoms) (is_bounded(a, deep) ? out.bounded_atoms : out.atoms).push_back(std::move(a));
    out.note = "atoms of the finite algebra stand in for maximal intersection-closed families";
    return out;
}

Adjacency cross_graph(std::size_t ray_length, std::size_t rays) {
    const std::size_t n = 1 + rays * ray_length;
    Adjacency adj(n);
    auto link = [&](std::size_t a, std::size_t b) {
        adj[a].push_back(static_cast<Index>(b));
        adj[b].push_back(static_cast<Index>(a));
    };
    for (std::size_t r = 0; r < rays; ++r)
        for (std::size_t k = 0; k < ray_length; ++k) {
            std::size_t v = 1 + r * ray_length + k;
            link(k == 0 ? 0 : v - 1, v);
        }
    return adj;
}

}  // namespace coarse_ends
