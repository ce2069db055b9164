#include "coarse_ends/metric_space.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "coarse_ends/errors.hpp"

namespace coarse_ends {

void MetricSpace::for_each_within(Index x, Norm m, const std::function<void(Index, Norm)>& f) const {
    for (Index y = 0; y < size(); ++y) {
        auto d = distance(x, y);
        if (d && *d <= m) f(y, *d);
    }
}

PointSet MetricSpace::ball(Norm r) const {
    PointSet b(size());
    for (Index x = 0; x < size(); ++x)
        if (base_norm(x) <= r) b.insert(x);
    return b;
}

PointSet MetricSpace::neighborhood(const PointSet& a, Norm r) const {
    PointSet out(size());
    for (Index x : a.indices()) for_each_within(x, r, [&](Index y, Norm) { out.insert(y); });
    return out;
}

DistanceMatrixSpace::DistanceMatrixSpace(std::vector<std::vector<Norm>> d, Index base,
                                         std::vector<std::string> labels)
    : d_(std::move(d)), base_(base), labels_(std::move(labels)) {
    const std::size_t n = d_.size();
    if (n == 0) throw Error("distance matrix must be nonempty");
    if (base_ >= n) throw Error("base point outside the space");
    for (std::size_t i = 0; i < n; ++i) {
        if (d_[i].size() != n) throw Error("distance matrix must be square");
        if (d_[i][i] != 0) throw Error("distance matrix must vanish on the diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (d_[i][j] != d_[j][i] || (i != j && d_[i][j] <= 0))
                throw Error("distance matrix must be symmetric and positive off the diagonal");
            range_ = std::max(range_, d_[i][j]);
        }
    }
}

std::string DistanceMatrixSpace::label(Index x) const {
    return x < labels_.size() ? labels_[x] : std::to_string(x);
}

DistanceMatrixSpace graph_metric(const Adjacency& adjacency, Index base, std::vector<std::string> labels) {
    const std::size_t n = adjacency.size();
    std::vector<std::vector<Norm>> d(n, std::vector<Norm>(n, -1));
    for (Index s = 0; s < n; ++s) {
        std::deque<Index> q{s};
        d[s][s] = 0;
        while (!q.empty()) {
            Index x = q.front();
            q.pop_front();
            for (Index y : adjacency[x])
                if (d[s][y] < 0) {
                    d[s][y] = d[s][x] + 1;
                    q.push_back(y);
                }
        }
        for (Index y = 0; y < n; ++y)
            if (d[s][y] < 0) throw Error("graph must be connected");
    }
    return DistanceMatrixSpace(std::move(d), base, std::move(labels));
}

DistanceMatrixSpace integer_segment(Norm radius) {
    const std::size_t n = static_cast<std::size_t>(2 * radius + 1);
    std::vector<std::vector<Norm>> d(n, std::vector<Norm>(n));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = std::to_string(static_cast<Norm>(i) - radius);
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = static_cast<Norm>(i > j ? i - j : j - i);
    }
    return DistanceMatrixSpace(std::move(d), static_cast<Index>(radius), std::move(labels));
}

DistanceMatrixSpace dyadic_ultrametric(int bits) {
    if (bits < 1 || bits > 12) throw Error("dyadic ultrametric supports 1..12 bits");
    const std::size_t n = std::size_t{1} << bits;
    std::vector<std::vector<Norm>> d(n, std::vector<Norm>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                std::size_t x = i ^ j;
                int msb = 63 - __builtin_clzll(x);
                d[i][j] = Norm{1} << msb;
            }
    return DistanceMatrixSpace(std::move(d), 0);
}

Adjacency segment_adjacency(Norm radius, const std::vector<Norm>& offsets) {
    const Norm n = 2 * radius + 1;
    Adjacency adj(static_cast<std::size_t>(n));
    for (Norm i = 0; i < n; ++i)
        for (Norm o : offsets)
            for (Norm s : {o, -o}) {
                Norm j = i + s;
                if (j >= 0 && j < n && j != i) adj[static_cast<std::size_t>(i)].push_back(static_cast<Index>(j));
            }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

}  // namespace coarse_ends
