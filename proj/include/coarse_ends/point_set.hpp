#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace coarse_ends {

using Index = std::uint32_t;

// Fixed-universe subset of {0, ..., n-1}.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::size_t universe, bool full = false);
    static PointSet from_indices(std::size_t universe, const std::vector<Index>& idx);

    std::size_t universe() const { return n_; }
    bool contains(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void insert(Index i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void erase(Index i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    std::size_t count() const;
    bool empty() const;
    std::vector<Index> indices() const;

    PointSet complement() const;
    PointSet& operator|=(const PointSet& o);
    PointSet& operator&=(const PointSet& o);
    PointSet& operator-=(const PointSet& o);
    bool intersects(const PointSet& o) const;
    bool subset_of(const PointSet& o) const;
    bool operator==(const PointSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const PointSet& o) const { return !(*this == o); }

private:
    void trim();
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

PointSet operator|(PointSet a, const PointSet& b);
PointSet operator&(PointSet a, const PointSet& b);
PointSet operator-(PointSet a, const PointSet& b);

struct BooleanOps {
    PointSet intersection;
    PointSet difference;
    PointSet set_union;
};

BooleanOps boolean_ops(const PointSet& a, const PointSet& c);

}  // namespace coarse_ends
