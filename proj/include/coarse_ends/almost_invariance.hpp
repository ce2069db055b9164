#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/glacial.hpp"
#include "coarse_ends/window.hpp"

namespace coarse_ends {

// Membership predicate on group elements; queries must be pure.
struct SetOracle {
    std::function<bool(const Element&)> contains;
    std::string description;
};

// Membership in an explicit subset of a window; elements outside the window
// are not members. The window is kept alive by the oracle.
SetOracle window_set_oracle(std::shared_ptr<const FiniteWindow> window, PointSet members, std::string description);

PointSet restrict_to_window(const SetOracle& A, const FiniteWindow& window);

// Window trace of A delta A g: {x : A(x) != A(x g^-1)}, with right
// translates A g = {a g : a in A}.
PointSet symmetric_difference_window(const SetOracle& A, const Element& g, const FiniteWindow& window);

enum class AIClass { AlmostInvariant, NotAlmostInvariant, Inconclusive };
std::string to_string(AIClass c);

struct GeneratorTrace {
    std::string label;
    Element g;
    Norm weight = 0;
    std::vector<Norm> radii;
    std::vector<std::size_t> counts;  // |A delta A g| inside B(radius)
    Norm max_diff_norm = -1;          // -1 when the trace is empty
    bool unbounded = false;           // differences keep appearing at the largest radii
    bool stable = false;
    bool growing = false;
};

struct AlmostInvarianceReport {
    std::vector<GeneratorTrace> traces;
    AIClass verdict = AIClass::Inconclusive;
    std::size_t witness = 0;  // index into traces when NotAlmostInvariant
    std::optional<Norm> reached_radius;  // set when the memory cap interfered
    std::string note;
};

struct AIOptions {
    std::size_t window_w = 5;
    std::size_t product_samples = 16;
    std::uint64_t seed = 1;
    Norm generator_weight_cap = 0;  // 0 means max(1, first radius / 4)
    std::size_t memory_cap = kDefaultMemoryCap;
};

// Default schedule: window_w radii evenly placed from R / 2 to R.
std::vector<Norm> default_schedule(Norm R, std::size_t window_w = 5);

// Generators of weight <= cap plus a seeded sample of pairwise products.
std::vector<Generator> test_translations(const FiniteWindow& window, Norm weight_cap, std::size_t samples,
                                         std::uint64_t seed);

AlmostInvarianceReport almost_invariant_verdict(const SetOracle& A, const Group& group,
                                                const std::vector<Norm>& schedule, const AIOptions& opt = {});
AlmostInvarianceReport almost_invariant_verdict(const SetOracle& A, const FiniteWindow& window,
                                                const std::vector<Norm>& schedule, const AIOptions& opt = {});
// Explicit subset of a window, differences found through the translates of
// members only. Needs schedule.back() + max |g| <= window radius.
AlmostInvarianceReport almost_invariant_set(const PointSet& A, const FiniteWindow& window,
                                            const std::vector<Norm>& schedule, const std::vector<Generator>& gens,
                                            std::size_t window_w = 5);

struct NccCount {
    std::size_t lower_bound = 0;
    std::size_t candidates = 0;
    std::string mode;  // "branches", "fragmentation" or "none"
    std::size_t level = 0;
    Norm cut = 0;
    std::vector<PointSet> sets;  // certified, pairwise disjoint
    std::vector<AlmostInvarianceReport> certificates;
};

struct NccOptions {
    std::size_t window_w = 5;
    std::size_t max_certify = 64;
};

// Certified disjoint non-trivial almost invariant sets read off the tree.
// Throws CertificationFailed when a candidate fails the window check.
NccCount disjoint_ncc_count(const ComponentTree& tree, const NccOptions& opt = {});

struct CrossCheckGrid {
    std::vector<Norm> M = {1, 2, 4, 8};
    Norm core_base = 0;  // 0 means ceil(sqrt(R))
    std::vector<Norm> schedule;  // empty means default_schedule(R)
    AIOptions ai;
};

enum class Agreement { Agree, Disagree, Inconclusive };
std::string to_string(Agreement a);

struct CrossCheck {
    Agreement agreement = Agreement::Inconclusive;
    std::optional<bool> clopen;
    AlmostInvarianceReport almost_invariance;
    std::vector<Norm> tested_M;
    Norm core_base = 0;
    std::string details;
};

Norm default_core_base(Norm R);

CrossCheck clopen_invariance_crosscheck(const SetOracle& A, const FiniteWindow& window, const CrossCheckGrid& grid = {});

}  // namespace coarse_ends
