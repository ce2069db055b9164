// Randomized and fixture-wide invariants.

#include <random>
#include <set>

#include "doctest.h"

#include "coarse_ends/almost_invariance.hpp"
#include "coarse_ends/builtin.hpp"
#include "coarse_ends/coarse_space.hpp"
#include "coarse_ends/component_tree.hpp"
#include "coarse_ends/fixtures.hpp"
#include "coarse_ends/glacial.hpp"
#include "coarse_ends/report.hpp"

using namespace coarse_ends;

namespace {

std::vector<Norm> range(Norm a, Norm b) {
    std::vector<Norm> v;
    for (Norm r = a; r <= b; ++r) v.push_back(r);
    return v;
}

PointSet where(const FiniteWindow& w, const std::function<bool(const Element&)>& pred) {
    PointSet s(w.size());
    for (Index i = 0; i < w.size(); ++i)
        if (pred(w.element(i))) s.insert(i);
    return s;
}

}  // namespace

TEST_CASE("component tree structure") {
    for (const char* g : {"Z", "Z^2", "D_inf", "Z/2*Z/3", "sum_Z2", "Q-like"}) {
        CAPTURE(g);
        Group group = make_group(g);
        const bool expo = std::string(g) == "Z/2*Z/3";
        auto tree = build_component_tree(group, range(1, expo ? 6 : 8), expo ? 2.0 : 3.0);
        const auto& w = *tree.window;
        for (std::size_t i = 0; i < tree.levels.size(); ++i) {
            const auto& level = tree.levels[i];
            PointSet seen(w.size());
            for (const auto& n : level.nodes) {
                for (Index x : n.elements) {
                    CHECK(w.norm(x) > level.cut);
                    CHECK(w.norm(x) <= level.horizon);
                    CHECK_FALSE(seen.contains(x));
                    seen.insert(x);
                }
                CHECK(n.kind == (n.horizon_touching ? (n.cut_touching ? NodeKind::EndCandidate : NodeKind::Fragment)
                                                    : NodeKind::Island));
            }
            // Every point of the annulus is in exactly one node.
            CHECK(seen.count() == w.ball_size(level.horizon) - w.ball_size(level.cut));
            if (i == 0) continue;
            const auto& prev = tree.levels[i - 1];
            for (const auto& n : level.nodes) {
                REQUIRE(n.parent.has_value());
                const PointSet parent = PointSet::from_indices(w.size(), prev.nodes[*n.parent].elements);
                CHECK(PointSet::from_indices(w.size(), n.elements).subset_of(parent));
                // Enclosed components never regain the horizon.
                if (prev.nodes[*n.parent].kind == NodeKind::Island) CHECK(n.kind == NodeKind::Island);
            }
        }
    }
}

TEST_CASE("Boolean preservation of the window clopen check") {
    Group z2 = lattice(2);
    FiniteWindow w = generate_window(z2, 20);
    std::vector<PointSet> sets;
    for (const char* spec : {"box:2", "cofinite:3", "empty", "all", "list:[0,0];[1,0];[5,5]"})
        sets.push_back(restrict_to_window(make_predicate(spec, z2), w));
    Group z = integers();
    FiniteWindow wz = generate_window(z, 40);
    std::vector<PointSet> zsets;
    for (const char* spec : {"positives", "ray:3", "ray:-4", "finite:[1];[9]", "branch:4"})
        zsets.push_back(restrict_to_window(make_predicate(spec, z), wz));
    auto check_family = [](const std::vector<PointSet>& family, const FiniteWindow& win) {
        for (Norm M : {1, 2, 4})
            for (Norm r : {8, 12}) {
                if (r + M > win.radius()) continue;
                for (const auto& A : family)
                    for (const auto& C : family) {
                        if (!coarsely_clopen_window_check(A, win, M, r) || !coarsely_clopen_window_check(C, win, M, r))
                            continue;
                        auto ops = boolean_ops(A, C);
                        CHECK(coarsely_clopen_window_check(ops.intersection, win, M, r));
                        CHECK(coarsely_clopen_window_check(ops.difference, win, M, r));
                        CHECK(coarsely_clopen_window_check(ops.set_union, win, M, r));
                    }
            }
    };
    check_family(sets, w);
    check_family(zsets, wz);
}

TEST_CASE("merged scales absorb every input set") {
    FiniteWindow z = generate_window(integers(), 60);
    const PointSet pos = where(z, [](const Element& e) { return e[0] > 0; });
    const PointSet far = where(z, [](const Element& e) { return e[0] > 10; });
    // The dyadic scale allows unit steps outside B(2), so boundaries sit inside it.
    const PointSet neg = where(z, [](const Element& e) { return e[0] < -1; });
    const GlacialScale a = dyadic_scale(z, 5);
    const GlacialScale b = ball_scale(z, {{10, 1}, {12, 3}, {14, 5}, {20, 7}, {30, 9}});
    REQUIRE(chain_absorption_check(pos, a, z).absorbed);
    REQUIRE(chain_absorption_check(far, b, z).absorbed);
    REQUIRE(chain_absorption_check(neg, a, z).absorbed);
    const GlacialScale m = merge_scales(a, b);
    CHECK_NOTHROW(m.validate(z));
    for (const auto* A : {&pos, &far, &neg}) CHECK(chain_absorption_check(*A, m, z).absorbed);
}

TEST_CASE("finite-image functions with clopen level sets") {
    FiniteWindow z = generate_window(integers(), 60);
    const PointFunction f = [&](Index i) {
        const auto n = z.element(i)[0];
        return n > 1 ? 3.0 : (n < -1 ? 1.0 : 0.0);
    };
    for (double level : {0.0, 1.0, 3.0}) {
        PointSet L(z.size());
        for (Index i = 0; i < z.size(); ++i)
            if (f(i) == level) L.insert(i);
        CHECK(coarsely_clopen_window_check(L, z, 4, 10));
    }
    // Minimal gap between image values is 1.
    CHECK(glacial_oscillation_test(f, 0.9, dyadic_scale(z, 5), z).pass);
}

TEST_CASE("M-components versus glacial oscillation") {
    FiniteWindow z = generate_window(integers(), 64);
    auto diam_ok = [&](const PointFunction& f, double eps, Norm M) {
        // Some cut in the grid makes every M-component nearly constant.
        for (Norm cut : {1, 2, 4, 8, 16}) {
            auto part = m_components(z, z.ball(cut), M);
            bool ok = true;
            for (const auto& cls : part.classes) {
                double lo = f(cls.front()), hi = lo;
                for (Index x : cls) {
                    lo = std::min(lo, f(x));
                    hi = std::max(hi, f(x));
                }
                if (hi - lo >= eps) ok = false;
            }
            if (ok) return true;
        }
        return false;
    };
    const PointFunction pos = indicator(where(z, [](const Element& e) { return e[0] > 0; }));
    const PointFunction evens = indicator(where(z, [](const Element& e) { return e[0] % 2 == 0; }));
    CHECK(glacial_oscillation_test(pos, 0.5, dyadic_scale(z, 5), z).pass);
    for (Norm M : {1, 2, 4, 8}) CHECK(diam_ok(pos, 0.5, M));
    for (std::size_t depth = 1; depth <= 5; ++depth) {
        CHECK_FALSE(glacial_oscillation_test(evens, 0.5, dyadic_scale(z, depth), z).pass);
        CHECK_FALSE(glacial_oscillation_test(evens, 0.5, linear_scale(z, depth), z).pass);
    }
    CHECK_FALSE(diam_ok(evens, 0.5, 1));
}

TEST_CASE("battery: geodesic components criterion matches glacial oscillation") {
    for (const auto& f : equivalence_battery()) {
        if (f.group == "F2" || f.group == "sum_Z2") continue;  // covered by the acceptance run
        CAPTURE(f.name);
        auto row = run_fixture(f);
        if (row.components_pass) CHECK(*row.components_pass == row.glacial_pass);
        CHECK(row.all_agree());
        CHECK(row.absorbed == f.expected_clopen);
    }
}

TEST_CASE("star inclusions on random covers") {
    auto s = star_calculus_trials(300, 120, 99);
    CHECK(s.trials == 300);
    CHECK(s.intersection_violations == 0);
    CHECK(s.complement_violations == 0);
    CHECK(s.star_inclusion_violations == 0);
}

TEST_CASE("complement star closure on segment covers") {
    auto seg = integer_segment(30);
    CoverScale scale = ball_cover_scale(seg, {1, 2, 4});
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> at(0, 60);
    for (int t = 0; t < 200; ++t) {
        // Random rays and intervals: clopen at every cover.
        auto random_set = [&] {
            PointSet s(seg.size());
            int a = at(rng), b = at(rng);
            if (a > b) std::swap(a, b);
            const int kind = at(rng) % 3;
            for (int i = 0; i < 61; ++i)
                if ((kind == 0 && i >= a) || (kind == 1 && i <= b) || (kind == 2 && i >= a && i <= b))
                    s.insert(static_cast<Index>(i));
            return s;
        };
        PointSet A = random_set(), C = random_set();
        for (std::size_t i = 0; i < scale.covers.size(); ++i) {
            CHECK(complement_star_check(A, C, scale.covers[i]));
            CHECK(star_intersection_check(A, C, scale.covers[i]));
        }
    }
}

TEST_CASE("no catalog verdict is Exactly(n) with n >= 3") {
    for (const auto& entry : builtin_groups()) {
        CAPTURE(entry.name);
        auto tree = build_component_tree(entry.make(), range(1, entry.exponential_growth ? 5 : 8),
                                         entry.exponential_growth ? 2.0 : 3.0);
        auto v = classify_ends(tree);
        if (v.classification == EndsClass::Exactly) CHECK(v.count <= 2);
    }
}
