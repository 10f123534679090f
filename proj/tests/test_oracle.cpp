#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "zzt/error.hpp"
#include "zzt/oracle.hpp"
#include "zzt/zigzag.hpp"

using namespace zzt;

namespace {

NeighborGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (coin(rng)) pairs.emplace_back(i, j);
    return test::graph_from_pairs(n, pairs);
}

FlagComplex octahedron() {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < 6; ++i)
        for (Vertex j = i + 1; j < 6; ++j)
            if (!(i % 2 == 0 && j == i + 1)) pairs.emplace_back(i, j);
    return expand(test::graph_from_pairs(6, pairs), 3);
}

// H1 dies across the first arrow pair and a new loop is born at index 2.
std::vector<FlagComplex> fill_and_rebirth_layers() {
    const auto k0 = expand(test::graph_from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2);
    const auto k1 = expand(
        test::graph_from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {4, 5}, {5, 6}, {6, 7}, {4, 7}}), 2);
    return {k0, k1};
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("Betti numbers of small fixtures") {
    const auto cycle = expand(test::cycle_graph(12), 3);
    CHECK(betti(cycle, 0) == 1);
    CHECK(betti(cycle, 1) == 1);
    CHECK(betti(cycle, 2) == 0);
    const auto oct = octahedron();
    CHECK(oct.count(3) == 0);
    CHECK(betti(oct, 0) == 1);
    CHECK(betti(oct, 1) == 0);
    CHECK(betti(oct, 2) == 1);
    CHECK(betti(expand(NeighborGraph{5, {}}, 2), 0) == 5);
    CHECK(betti(expand(test::complete_graph(6), 3), 1) == 0);
}

TEST_CASE("oracle refuses oversized complexes and bad dimensions") {
    const auto big = expand(test::complete_graph(14), 3);
    CHECK_THROWS_AS(betti(big, 1, 100), CapacityError);
    CHECK_THROWS_AS(betti(big, 3), ArgumentError);
}

TEST_CASE("Euler characteristic matches simplex counts") {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng() % 4;
        const auto g = random_graph(n, 0.6, rng);
        const int m = static_cast<int>(n) - 1;
        const auto cx = expand(g, m);
        if (cx.count(m) != 0) continue;  // complete graph: top dimension not captured
        long long by_betti = 0, by_count = 0;
        for (int p = 0; p <= m; ++p) by_count += (p % 2 ? -1 : 1) * static_cast<long long>(cx.count(p));
        for (int p = 0; p < m; ++p) by_betti += (p % 2 ? -1 : 1) * static_cast<long long>(betti(cx, p));
        CHECK(by_betti == by_count);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("induced map examples") {
    const auto cycle4 = expand(test::cycle_graph(4), 2);
    CHECK(induced_map_rank(cycle4, cycle4, 1) == 1);
    const auto filled = expand(test::complete_graph(4), 2);
    CHECK(induced_map_rank(cycle4, filled, 1) == 0);
    const auto one = expand(test::graph_from_pairs(6, {{0, 1}, {1, 2}, {0, 2}}), 1);
    const auto two = expand(test::graph_from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}), 1);
    CHECK(induced_map_rank(one, two, 0) == 2);
    CHECK_THROWS_AS(induced_map_rank(two, one, 0), ArgumentError);
}

TEST_CASE("two disjoint cycles, one included") {
    const auto one = expand(test::graph_from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2);
    const auto two = expand(test::graph_from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}}), 2);
    CHECK(induced_map_rank(one, two, 1) == 1);
    CHECK(betti(two, 1) == 2);
}

TEST_CASE("map rank is bounded by both Betti numbers") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        const auto super = expand(random_graph(9, 0.5, rng), 3);
        const auto sub = intersect(super, expand(random_graph(9, 0.6, rng), 3));
        for (int p = 0; p < 3; ++p) {
            const auto r = induced_map_rank(sub, super, p);
            CHECK(r <= betti(sub, p));
            CHECK(r <= betti(super, p));
        }
        for (int p = 0; p < 3; ++p) CHECK(induced_map_rank(sub, sub, p) == betti(sub, p));
    }
}

TEST_CASE("computed diagrams pass verification") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FlagComplex> layers;
        const std::size_t L = 2 + rng() % 4;
        for (std::size_t j = 0; j < L; ++j) layers.push_back(expand(random_graph(10, 0.45, rng), 3));
        const auto report = verify_diagram(compute_zigzag(build_filtration(layers)), zigzag_states(layers));
        CHECK(report.passed());
        REQUIRE(report.betti.size() == 2 * L - 1);
        REQUIRE(report.map_rank.size() == 2 * L - 2);
        for (std::size_t t = 0; t + 1 < report.betti.size(); ++t)
            for (std::size_t p = 0; p < 3; ++p) {
                CHECK(report.map_rank[t][p] <= report.betti[t][p]);
                CHECK(report.map_rank[t][p] <= report.betti[t + 1][p]);
            }
    }
}

TEST_CASE("artificially extended interval is caught") {
    const std::vector<FlagComplex> layers{
        expand(test::graph_from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2),
        expand(test::graph_from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}), 2)};
    auto d = compute_zigzag(build_filtration(layers));
    auto it = std::find(d.dims[1].begin(), d.dims[1].end(), Interval{0, 0, false});
    REQUIRE(it != d.dims[1].end());
    it->death = 1;
    const auto report = verify_diagram(d, zigzag_states(layers));
    CHECK_FALSE(report.passed());
    CHECK(std::any_of(report.violations.begin(), report.violations.end(), [](const OracleViolation& v) {
        return v.kind == OracleViolation::Kind::betti && v.index == 1 && v.p == 1;
    }));
}

TEST_CASE("intervals swapped across a death give a rank violation") {
    const auto layers = fill_and_rebirth_layers();
    const auto states = zigzag_states(layers);
    auto d = compute_zigzag(build_filtration(layers));
    auto h1 = d.dims[1];
    std::sort(h1.begin(), h1.end());
    REQUIRE(h1 == std::vector<Interval>{{0, 1, false}, {2, 2, true}});
    CHECK(verify_diagram(d, states).passed());

    d.dims[1] = {{0, 0, false}, {1, 2, true}};
    const auto report = verify_diagram(d, states);
    CHECK_FALSE(report.passed());
    for (const auto& v : report.violations) CHECK(v.kind == OracleViolation::Kind::rank);
    CHECK(std::any_of(report.violations.begin(), report.violations.end(), [](const OracleViolation& v) {
        return v.index == 0 && v.p == 1 && v.expected == 1 && v.found == 0;
    }));
}

TEST_CASE("state count must match the diagram") {
    const auto layers = fill_and_rebirth_layers();
    const auto d = compute_zigzag(build_filtration(layers));
    CHECK_THROWS_AS(verify_diagram(d, layers), ArgumentError);
}

}
