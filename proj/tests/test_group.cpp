#include <map>
#include <queue>
#include <set>

#include "doctest.h"

#include "coarse_ends/builtin.hpp"
#include "coarse_ends/errors.hpp"
#include "coarse_ends/window.hpp"

using namespace coarse_ends;

namespace {

// Independent Dijkstra over the integers [-lim, lim] with weighted steps.
std::map<std::int64_t, Norm> integer_dijkstra(const std::vector<std::pair<std::int64_t, Norm>>& steps,
                                              std::int64_t lim) {
    std::map<std::int64_t, Norm> dist;
    using Item = std::pair<Norm, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, 0});
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (dist.count(x)) continue;
        dist[x] = d;
        for (auto [s, w] : steps)
            for (int sign : {1, -1}) {
                std::int64_t y = x + sign * s;
                if (y < -lim || y > lim || dist.count(y)) continue;
                pq.push({d + w, y});
            }
    }
    return dist;
}

Group weighted_z() {
    return with_generators(integers(), {{{1}, 3, "u"}, {{10}, 4, "t"}}, "Z weighted");
}

}  // namespace

TEST_CASE("word norm of the identity is zero") {
    for (const auto& entry : builtin_groups()) {
        Group g = entry.make();
        auto r = word_norm(g.identity(), g, 10);
        REQUIRE(r.value.has_value());
        CHECK(*r.value == 0);
    }
}

TEST_CASE("word norm on the line") {
    Group z = integers();
    CHECK(*word_norm({7}, z, 20).value == 7);
    CHECK(*word_norm({-7}, z, 20).value == 7);
    CHECK(word_norm({7}, z, 6).exceeds());
}

TEST_CASE("weighted integers use the long generator") {
    Group z = weighted_z();
    auto r = word_norm({20}, z, 60);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == 8);
    const auto oracle = integer_dijkstra({{1, 3}, {10, 4}}, 200);
    for (std::int64_t n = -40; n <= 40; ++n) {
        auto v = word_norm({n}, z, 200);
        REQUIRE(v.value.has_value());
        CHECK_MESSAGE(*v.value == oracle.at(n), "n = " << n);
    }
}

TEST_CASE("word norm rejects elements outside normal form") {
    Group f2 = free_group(2);
    CHECK_THROWS_AS(word_norm({1, -1}, f2, 5), MalformedElement);
    Group z5 = cyclic(5);
    CHECK_THROWS_AS(word_norm({7}, z5, 5), MalformedElement);
}

TEST_CASE("group axioms on small windows of every built-in") {
    for (const auto& entry : builtin_groups()) {
        Group g = entry.make();
        CAPTURE(entry.name);
        const Norm R = entry.exponential_growth ? 4 : 6;
        FiniteWindow w = generate_window(g, R);
        const Element id = g.identity();
        for (Index i = 0; i < w.size(); ++i) {
            const Element& x = w.element(i);
            CHECK(g.multiply(x, id) == x);
            CHECK(g.multiply(id, x) == x);
            CHECK(g.multiply(x, g.inverse(x)) == id);
            CHECK(g.law().is_valid(x));
            CHECK(g.law().parse(g.canonical(x)) == x);
        }
        const std::size_t n = std::min<std::size_t>(w.size(), 12);
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                for (Index c = 0; c < n; ++c) {
                    const auto& x = w.element(a);
                    const auto& y = w.element(b);
                    const auto& z = w.element(c);
                    CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
                }
    }
}

TEST_CASE("generator lists are symmetric with positive weights") {
    for (const auto& entry : builtin_groups()) {
        Group g = entry.make();
        CAPTURE(entry.name);
        const auto gens = g.generators_up_to(16);
        if (!entry.finite) CHECK(!gens.empty());
        std::set<std::pair<Element, Norm>> seen;
        for (const auto& x : gens) {
            CHECK(x.weight >= 1);
            seen.insert({x.element, x.weight});
        }
        for (const auto& x : gens) CHECK(seen.count({g.inverse(x.element), x.weight}) == 1);
    }
}

TEST_CASE("asymmetric generating lists are rejected") {
    auto law = integers().law_ptr();
    CHECK_THROWS_AS(validate_generators(*law, {{{1}, 1, "a"}}), Error);
    CHECK_THROWS_AS(validate_generators(*law, {{{1}, 0, "a"}, {{-1}, 0, "A"}}), Error);
    auto closed = symmetric_closure(*law, {{{2}, 1, "a"}, {{2}, 1, "a"}});
    CHECK(closed.size() == 2);
}

TEST_CASE("infinite dihedral: (ab)^k has norm 2k") {
    Group d = infinite_dihedral();
    CHECK(d.name() == "D_inf");
    const Element a = d.law().parse("a");
    const Element b = d.law().parse("b");
    CHECK(d.multiply(a, a) == d.identity());
    Element x = d.identity();
    for (int k = 1; k <= 8; ++k) {
        x = d.multiply(x, d.multiply(a, b));
        CHECK(*word_norm(x, d, 40).value == 2 * k);
        CHECK(x.size() == static_cast<std::size_t>(4 * k));  // 2k syllables, two entries each
    }
}

TEST_CASE("restricted sum: e_i has norm 2^i") {
    Group s = restricted_sum_z2();
    for (int i = 0; i <= 7; ++i) {
        const Element e{i};
        CHECK(*word_norm(e, s, Norm{1} << i).value == (Norm{1} << i));
        CHECK(word_norm(e, s, (Norm{1} << i) - 1).exceeds());
    }
    // Support {0, 3}: 1 + 8.
    CHECK(*word_norm({0, 3}, s, 20).value == 9);
}

TEST_CASE("finite cyclic groups have diameter floor(m/2)") {
    for (std::int64_t m = 2; m <= 12; ++m) {
        Group c = cyclic(m);
        FiniteWindow w = generate_window(c, m);
        CHECK(w.size() == static_cast<std::size_t>(m));
        CHECK(w.norms().back() == m / 2);
    }
}

TEST_CASE("rational chain arithmetic") {
    Group q = rational_chain();
    const auto gens = q.generators_up_to(4);
    auto find = [&](const std::string& label) {
        for (const auto& g : gens)
            if (g.label == label) return g;
        FAIL("missing generator " << label);
        return gens.front();
    };
    const Generator g3 = find("g3");
    CHECK(g3.weight == 3);
    Element x = q.identity();
    for (int i = 0; i < 6; ++i) x = q.multiply(x, g3.element);  // 6 * (1/6) = 1
    CHECK(x == find("g1").element);
    CHECK(*word_norm(x, q, 10).value == 1);
    // 1/2 + 1/3 = 5/6 costs at most 2 + 3.
    Element y = q.multiply(find("g2").element, find("g3").element);
    CHECK(*word_norm(y, q, 10).value <= 5);
}

TEST_CASE("group specs") {
    CHECK(make_group("Z^3").identity().size() == 3);
    CHECK(make_group("Z2xZ2").law().is_finite());
    CHECK(make_group("Z/2xZ/2").name() == "Z/2xZ/2");
    CHECK(make_group("F3").generators().size() == 6);
    CHECK(make_group("Z/2*Z/3").name() == "Z/2*Z/3");
    CHECK(make_group("Q").name() == "Q-like");
    CHECK_THROWS_AS(make_group("nonsense"), Error);
}
