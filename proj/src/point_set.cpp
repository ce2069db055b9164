#include "coarse_ends/point_set.hpp"

#include <bit>
#include <stdexcept>

namespace coarse_ends {

PointSet::PointSet(std::size_t universe, bool full)
    : n_(universe), words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    trim();
}

PointSet PointSet::from_indices(std::size_t universe, const std::vector<Index>& idx) {
    PointSet s(universe);
    for (Index i : idx) {
        if (i >= universe) throw std::out_of_range("point index outside universe");
        s.insert(i);
    }
    return s;
}

void PointSet::trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t PointSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool PointSet::empty() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::vector<Index> PointSet::indices() const {
    std::vector<Index> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
        std::uint64_t w = words_[k];
        while (w) {
            int b = std::countr_zero(w);
            out.push_back(static_cast<Index>(k * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

PointSet PointSet::complement() const {
    PointSet c = *this;
    for (auto& w : c.words_) w = ~w;
    c.trim();
    return c;
}

static void check_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("point sets over different universes");
}

PointSet& PointSet::operator|=(const PointSet& o) {
    check_same(n_, o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
}

PointSet& PointSet::operator&=(const PointSet& o) {
    check_same(n_, o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
}

PointSet& PointSet::operator-=(const PointSet& o) {
    check_same(n_, o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
}

bool PointSet::intersects(const PointSet& o) const {
    check_same(n_, o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] & o.words_[k]) return true;
    return false;
}

bool PointSet::subset_of(const PointSet& o) const {
    check_same(n_, o.n_);
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k] & ~o.words_[k]) return false;
    return true;
}

PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

BooleanOps boolean_ops(const PointSet& a, const PointSet& c) { return {a & c, a - c, a | c}; }

}  // namespace coarse_ends
