#include "coarse_ends/glacial.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {
namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> p;
};

Partition to_partition(UnionFind& uf, const PointSet& region) {
    Partition part;
    part.class_of.assign(region.universe(), -1);
    std::vector<std::int32_t> root_class(region.universe(), -1);
    for (Index x : region.indices()) {
        std::size_t r = uf.find(x);
        if (root_class[r] < 0) {
            root_class[r] = static_cast<std::int32_t>(part.classes.size());
            part.classes.emplace_back();
        }
        part.class_of[x] = root_class[r];
        part.classes[static_cast<std::size_t>(root_class[r])].push_back(x);
    }
    return part;
}

void require_in_space(const MetricSpace& space, Index x) {
    if (x >= space.size()) throw PointOutsideWindow("point " + std::to_string(x) + " is not in the space");
}

}  // namespace

void GlacialScale::validate(const MetricSpace& space) const {
    if (K.size() != n.size()) throw Error("scale needs one step per set");
    if (K.empty()) throw Error("scale must have at least one pair");
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (K[i].universe() != space.size()) throw Error("scale set does not live in the space");
        if (n[i] < 1) throw Error("scale steps must be >= 1");
        if (i && !(n[i] > n[i - 1])) throw Error("scale steps must be strictly increasing");
        if (i && !K[i - 1].subset_of(K[i])) throw Error("scale sets must be nested");
    }
}

std::string GlacialScale::describe(const MetricSpace& space) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < K.size(); ++i) {
        Norm rad = -1;
        for (Index x : K[i].indices()) rad = std::max(rad, space.base_norm(x));
        os << (i ? ", " : "") << "(|K|=" << K[i].count() << " rad=" << rad << ", " << n[i] << ")";
    }
    return os.str();
}

GlacialScale ball_scale(const MetricSpace& space, const std::vector<std::pair<Norm, Norm>>& cuts_and_steps) {
    GlacialScale s;
    for (auto [cut, step] : cuts_and_steps) {
        s.K.push_back(space.ball(cut));
        s.n.push_back(step);
    }
    s.validate(space);
    return s;
}

GlacialScale linear_scale(const MetricSpace& space, std::size_t depth) {
    std::vector<std::pair<Norm, Norm>> cs;
    for (std::size_t m = 1; m <= depth; ++m) cs.emplace_back(static_cast<Norm>(m) - 1, static_cast<Norm>(m));
    return ball_scale(space, cs);
}

GlacialScale dyadic_scale(const MetricSpace& space, std::size_t depth) {
    std::vector<std::pair<Norm, Norm>> cs;
    for (std::size_t i = 1; i <= depth; ++i) cs.emplace_back(Norm{1} << i, static_cast<Norm>(i));
    return ball_scale(space, cs);
}

GlacialScale merge_scales(const GlacialScale& a, const GlacialScale& b) {
    GlacialScale s;
    const std::size_t d = std::min(a.depth(), b.depth());
    for (std::size_t i = 0; i < d; ++i) {
        s.K.push_back(a.K[i] | b.K[i]);
        s.n.push_back(std::min(a.n[i], b.n[i]));
    }
    return s;
}

std::vector<std::size_t> exclusion_depths(const GlacialScale& scale, std::size_t n_points) {
    std::vector<std::size_t> depth(n_points, 0);
    for (Index x = 0; x < n_points; ++x) {
        std::size_t m = 0;
        while (m < scale.depth() && !scale.K[m].contains(x)) ++m;
        depth[x] = m;
    }
    return depth;
}

std::optional<std::size_t> s_step_witness(const MetricSpace& space, const GlacialScale& scale, Index x, Index y) {
    auto d = space.distance(x, y);
    if (!d) return std::nullopt;
    // Largest exclusion first: it carries the largest permitted step.
    for (std::size_t m = scale.depth(); m >= 1; --m) {
        if (scale.K[m - 1].contains(x) || scale.K[m - 1].contains(y)) continue;
        // Smaller m only shrink the permitted step.
        if (*d <= scale.n[m - 1]) return m;
        break;
    }
    return std::nullopt;
}

bool is_s_chain(const ChainPath& path, const GlacialScale& scale, const MetricSpace& space) {
    for (Index x : path) require_in_space(space, x);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!s_step_witness(space, scale, path[i], path[i + 1])) return false;
    return true;
}

bool is_s_chain(const std::vector<Element>& path, const GlacialScale& scale, const FiniteWindow& window) {
    ChainPath idx;
    for (const auto& e : path) idx.push_back(window.index_of(e));
    return is_s_chain(idx, scale, window);
}

namespace {

template <class F>
void for_each_s_step(const MetricSpace& space, const GlacialScale& scale, const std::vector<std::size_t>& depth,
                     Index x, F&& f) {
    if (depth[x] == 0) return;
    space.for_each_within(x, scale.n[depth[x] - 1], [&](Index y, Norm d) {
        if (y == x) return;
        std::size_t m = std::min(depth[x], depth[y]);
        if (m >= 1 && d <= scale.n[m - 1]) f(y, m, d);
    });
}

}  // namespace

Partition s_components(const PointSet& region, const GlacialScale& scale, const MetricSpace& space) {
    const auto depth = exclusion_depths(scale, space.size());
    UnionFind uf(space.size());
    for (Index x : region.indices())
        for_each_s_step(space, scale, depth, x, [&](Index y, std::size_t, Norm) {
            if (region.contains(y)) uf.unite(x, y);
        });
    return to_partition(uf, region);
}

Partition m_components(const MetricSpace& space, const PointSet& K, Norm M) {
    const PointSet region = K.complement();
    UnionFind uf(space.size());
    for (Index x : region.indices())
        space.for_each_within(x, M, [&](Index y, Norm) {
            if (region.contains(y)) uf.unite(x, y);
        });
    return to_partition(uf, region);
}

OscillationVerdict glacial_oscillation_test(const PointFunction& f, double epsilon, const GlacialScale& scale,
                                            const MetricSpace& space) {
    const std::size_t n = space.size();
    const auto depth = exclusion_depths(scale, n);
    auto part = s_components(PointSet(n, true), scale, space);
    std::vector<double> val(n);
    for (Index x = 0; x < n; ++x) val[x] = f(x);
    OscillationVerdict v;
    for (const auto& cls : part.classes) {
        Index lo = cls.front(), hi = cls.front();
        for (Index x : cls) {
            if (val[x] < val[lo]) lo = x;
            if (val[x] > val[hi]) hi = x;
        }
        const double gap = val[hi] - val[lo];
        if (gap < epsilon - kEpsilonSlack) continue;
        v.pass = false;
        v.x = lo;
        v.y = hi;
        v.gap = gap;
        // Breadth-first S-chain from lo to hi for the witness.
        std::vector<std::int64_t> prev(n, -2);
        std::deque<Index> q{lo};
        prev[lo] = -1;
        while (!q.empty() && prev[hi] == -2) {
            Index x = q.front();
            q.pop_front();
            for_each_s_step(space, scale, depth, x, [&](Index y, std::size_t, Norm) {
                if (prev[y] == -2) {
                    prev[y] = x;
                    q.push_back(y);
                }
            });
        }
        for (std::int64_t c = hi; c >= 0; c = prev[static_cast<std::size_t>(c)]) v.chain.push_back(static_cast<Index>(c));
        std::reverse(v.chain.begin(), v.chain.end());
        return v;
    }
    return v;
}

bool components_oscillation_test(const PointFunction& f, double epsilon, const FiniteWindow& window, Norm cut) {
    const std::size_t n = window.size();
    const std::size_t lo = window.ball_size(cut);
    UnionFind uf(n);
    for (Index x = static_cast<Index>(lo); x < n; ++x)
        for (std::size_t j = 0; j < window.generators().size(); ++j) {
            std::int32_t y = window.neighbor(x, j);
            if (y != kOutside && static_cast<std::size_t>(y) >= lo) uf.unite(x, static_cast<std::size_t>(y));
        }
    std::vector<double> mn(n, INFINITY), mx(n, -INFINITY);
    for (Index x = static_cast<Index>(lo); x < n; ++x) {
        std::size_t r = uf.find(x);
        double v = f(x);
        mn[r] = std::min(mn[r], v);
        mx[r] = std::max(mx[r], v);
    }
    for (std::size_t r = lo; r < n; ++r)
        if (mx[r] >= mn[r] && mx[r] - mn[r] > epsilon + kEpsilonSlack) return false;
    return true;
}

AbsorptionVerdict chain_absorption_check(const PointSet& A, const GlacialScale& scale, const MetricSpace& space) {
    const auto depth = exclusion_depths(scale, space.size());
    AbsorptionVerdict v;
    for (Index x : A.indices()) {
        bool leak = false;
        for_each_s_step(space, scale, depth, x, [&](Index y, std::size_t m, Norm d) {
            if (leak || A.contains(y)) return;
            leak = true;
            v.absorbed = false;
            v.from = x;
            v.to = y;
            v.step = d;
            auto w = s_step_witness(space, scale, x, y);
            v.witness_m = w ? *w : m;
        });
        if (leak) return v;
    }
    return v;
}

Norm clopen_boundary_radius(const PointSet& A, const MetricSpace& space, Norm M) {
    Norm worst = -1;
    for (Index a : A.indices())
        space.for_each_within(a, M, [&](Index b, Norm) {
            if (!A.contains(b)) worst = std::max({worst, space.base_norm(a), space.base_norm(b)});
        });
    return worst;
}

bool coarsely_clopen_window_check(const PointSet& A, const MetricSpace& space, Norm M, Norm r) {
    if (M < 1 || r < 0 || r + M > space.known_range())
        throw InvalidRadii("need M >= 1, r >= 0 and r + M <= " + std::to_string(space.known_range()));
    return clopen_boundary_radius(A, space, M) <= r;
}

void require_ultrametric(const MetricSpace& space) {
    const std::size_t n = space.size();
    for (Index x = 0; x < n; ++x)
        for (Index y = x + 1; y < n; ++y) {
            auto dxy = space.distance(x, y);
            if (!dxy) continue;
            for (Index z = 0; z < n; ++z) {
                auto dxz = space.distance(x, z), dyz = space.distance(y, z);
                if (!dxz || !dyz) continue;
                if (*dxy > std::max(*dxz, *dyz)) throw NotUltrametric({x, y, z});
            }
        }
}

GlacialScale ultrametric_scale_builder(const MetricSpace& space, const PointFunction& f, double epsilon,
                                       std::size_t max_depth) {
    require_ultrametric(space);
    const std::size_t n = space.size();
    if (max_depth == 0) max_depth = static_cast<std::size_t>(std::max<Norm>(1, space.known_range()));
    std::vector<double> val(n);
    for (Index x = 0; x < n; ++x) val[x] = f(x);
    GlacialScale s;
    PointSet L(n);
    for (std::size_t step = 1; step <= max_depth; ++step) {
        const Norm m = static_cast<Norm>(step);
        Norm rho = -1;
        for (Index x = 0; x < n; ++x)
            space.for_each_within(x, m, [&](Index y, Norm) {
                if (std::abs(val[x] - val[y]) >= epsilon - kEpsilonSlack)
                    rho = std::max(rho, std::min(space.base_norm(x), space.base_norm(y)));
            });
        PointSet next = space.ball(rho);
        if (step > 1) next |= space.neighborhood(L, m - 1);
        if (next.count() == n && !s.K.empty()) break;
        L = next;
        s.K.push_back(L);
        s.n.push_back(m);
        if (L.count() == n) break;
    }
    s.validate(space);
    return s;
}

PointSet union_construction(const std::vector<PointSet>& A, const std::vector<PointSet>& K,
                            const std::vector<Norm>& n, const MetricSpace& space) {
    if (A.empty() || A.size() != K.size() || A.size() != n.size())
        throw Error("union construction needs equally many sets, cores and steps");
    PointSet out(space.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (i && !K[i - 1].subset_of(K[i])) throw PreconditionViolated(i + 1, "cores are not nested");
        if (i && n[i] <= n[i - 1]) throw PreconditionViolated(i + 1, "steps are not increasing");
        if (A[i].intersects(K[i])) throw PreconditionViolated(i + 1, "set meets its core");
        if (!A[i].empty()) {
            auto part = m_components(space, K[i], n[i]);
            std::int32_t c = part.class_of[A[i].indices().front()];
            for (Index x : A[i].indices())
                if (part.class_of[x] != c) throw PreconditionViolated(i + 1, "set is not chain connected outside its core");
        }
        if (i + 1 < A.size() && !(A[i] - K[i + 1]).subset_of(A[i + 1]))
            throw PreconditionViolated(i + 1, "set leaks outside the next set beyond the next core");
        out |= A[i];
    }
    return out;
}

PointFunction indicator(const PointSet& A) {
    return [A](Index x) { return A.contains(x) ? 1.0 : 0.0; };
}

}  // namespace coarse_ends
