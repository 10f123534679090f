#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "support.hpp"
#include "zzt/error.hpp"
#include "zzt/neighborhood.hpp"

using namespace zzt;

namespace {

std::set<std::pair<Vertex, Vertex>> edge_set(const NeighborGraph& g) {
    std::set<std::pair<Vertex, Vertex>> s;
    for (const auto& e : g.edges) s.insert({e.u, e.v});
    return s;
}

// Brute-force kNN sets from independently computed distances.
std::set<std::pair<Vertex, Vertex>> brute_knn(const PointCloud& pc, std::size_t k) {
    const std::size_t n = pc.n_points();
    std::set<std::pair<Vertex, Vertex>> s;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, std::size_t>> cand;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double acc = 0;
            for (std::size_t c = 0; c < pc.dim(); ++c) {
                const double d = double(pc.row(i)[c]) - double(pc.row(j)[c]);
                acc += d * d;
            }
            cand.push_back({std::sqrt(acc), j});
        }
        std::sort(cand.begin(), cand.end());
        for (std::size_t r = 0; r < k; ++r) {
            const auto j = cand[r].second;
            s.insert({static_cast<Vertex>(std::min(i, j)), static_cast<Vertex>(std::max(i, j))});
        }
    }
    return s;
}

}  // namespace

TEST_SUITE("neighborhood") {

TEST_CASE("collinear points with k=1") {
    PointCloud pc(3, 1, {0.0f, 1.0f, 3.0f});
    const auto g = knn_graph(pc, 1);
    CHECK(edge_set(g) == std::set<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}});
    CHECK(g.edges[0].length == doctest::Approx(1.0));
    CHECK(g.edges[1].length == doctest::Approx(2.0));
}

TEST_CASE("12 points on a circle with k=2 give the 12-cycle") {
    const auto pc = test::circle_cloud(12);
    const auto g = knn_graph(pc, 2);
    CHECK(edge_set(g) == brute_knn(pc, 2));
    CHECK(edge_set(g) == edge_set(test::cycle_graph(12)));
}

TEST_CASE("k = n - 1 gives the complete graph") {
    std::mt19937_64 rng(3);
    const auto pc = test::random_cloud(9, 4, rng);
    CHECK(knn_graph(pc, 8).edges.size() == 36);
}

TEST_CASE("k out of range") {
    const auto pc = test::circle_cloud(5);
    CHECK_THROWS_AS(knn_graph(pc, 0), ArgumentError);
    CHECK_THROWS_AS(knn_graph(pc, 5), ArgumentError);
}

TEST_CASE("duplicate points produce zero-length edges") {
    PointCloud pc(3, 2, {0, 0, 0, 0, 5, 5});
    const auto g = knn_graph(pc, 1);
    REQUIRE(!g.edges.empty());
    CHECK(g.edges.front().u == 0);
    CHECK(g.edges.front().v == 1);
    CHECK(g.edges.front().length == 0.0);
}

TEST_CASE("distance ties go to the smaller index") {
    // 1 and 2 are both at distance 1 from 0; k=1 picks 1.
    PointCloud pc(3, 1, {0.0f, 1.0f, -1.0f});
    const auto g = knn_graph(pc, 1);
    CHECK(edge_set(g) == std::set<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}});
}

TEST_CASE("graph invariants against brute force on random clouds") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng() % 60, k = 1 + rng() % std::min<std::size_t>(6, n - 1);
        const auto pc = test::random_cloud(n, 1 + rng() % 5, rng);
        const auto g = knn_graph(pc, k);
        CHECK(edge_set(g) == brute_knn(pc, k));
        std::vector<std::size_t> degree(n, 0);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& ed = g.edges[e];
            CHECK(ed.u < ed.v);
            CHECK(ed.v < n);
            CHECK(ed.length == euclidean(pc, ed.u, ed.v));
            if (e > 0) CHECK((g.edges[e - 1].u < ed.u || (g.edges[e - 1].u == ed.u && g.edges[e - 1].v < ed.v)));
            ++degree[ed.u];
            ++degree[ed.v];
        }
        for (auto d : degree) CHECK(d >= k);
    }
}

TEST_CASE("relabeling points relabels the graph") {
    std::mt19937_64 rng(23);
    const auto pc = test::random_cloud(25, 3, rng);
    std::vector<std::size_t> perm(25);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    PointCloud shuffled(25, 3);
    for (std::size_t i = 0; i < 25; ++i) std::copy_n(pc.row(i).begin(), 3, shuffled.row(perm[i]).begin());
    std::set<std::pair<Vertex, Vertex>> mapped_back;
    std::vector<std::size_t> inverse(25);
    for (std::size_t i = 0; i < 25; ++i) inverse[perm[i]] = i;
    for (const auto& e : knn_graph(shuffled, 3).edges) {
        const auto a = static_cast<Vertex>(inverse[e.u]), b = static_cast<Vertex>(inverse[e.v]);
        mapped_back.insert({std::min(a, b), std::max(a, b)});
    }
    CHECK(mapped_back == edge_set(knn_graph(pc, 3)));
}

TEST_CASE("short-edge filter") {
    const auto pc = test::circle_cloud(12);
    const auto g = knn_graph(pc, 2);
    CHECK(filter_short_edges(g, 0.0) == g);
    double longest = 0;
    for (const auto& e : g.edges) longest = std::max(longest, e.length);
    CHECK(filter_short_edges(g, longest).edges.empty());
    const double chord = 2.0 * std::sin(std::numbers::pi / 12.0);
    CHECK(filter_short_edges(g, chord * 1.01).edges.empty());
    CHECK(filter_short_edges(g, chord * 0.99).edges.size() == 12);
    CHECK(filter_short_edges(g, chord * 1.01, EdgeFilter::keep_short).edges.size() == 12);
    CHECK_THROWS_AS(filter_short_edges(g, -1.0), ArgumentError);
}

TEST_CASE("connected components") {
    CHECK(connected_components(NeighborGraph{7, {}}) == 7);
    CHECK(connected_components(test::cycle_graph(12)) == 1);
    CHECK(connected_components(test::graph_from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})) == 2);
}

TEST_CASE("calibration to every vertex isolated returns the longest edge") {
    std::mt19937_64 rng(5);
    const auto g = knn_graph(test::random_cloud(40, 3, rng), 3);
    double longest = 0;
    for (const auto& e : g.edges) longest = std::max(longest, e.length);
    CHECK(calibrate_radius(g, 40, 0) == longest);
}

TEST_CASE("calibration to one component on a connected graph") {
    std::mt19937_64 rng(8);
    const auto g = knn_graph(test::random_cloud(30, 2, rng), 4);
    REQUIRE(connected_components(g) == 1);
    // Exhaustive scan of candidate radii: first length whose removal disconnects.
    std::vector<double> lengths{0.0};
    for (const auto& e : g.edges) lengths.push_back(e.length);
    std::sort(lengths.begin(), lengths.end());
    double disconnect = -1;
    for (double r : lengths) {
        if (connected_components(filter_short_edges(g, r)) > 1) {
            disconnect = r;
            break;
        }
    }
    REQUIRE(disconnect > 0);
    const double r = calibrate_radius(g, 1, 0);
    CHECK(r < disconnect);
    CHECK(connected_components(filter_short_edges(g, r)) == 1);
    CHECK(std::find(lengths.begin(), lengths.end(), r) != lengths.end());
}

TEST_CASE("calibration returns the smallest feasible candidate") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = knn_graph(test::random_cloud(50, 3, rng), 1 + rng() % 5);
        const std::size_t target = 1 + rng() % 50, tol = rng() % 6;
        std::vector<double> lengths{0.0};
        for (const auto& e : g.edges) lengths.push_back(e.length);
        std::sort(lengths.begin(), lengths.end());
        std::optional<double> expected;
        for (double r : lengths) {
            const auto b0 = connected_components(filter_short_edges(g, r));
            if (b0 + tol >= target && b0 <= target + tol) {
                expected = r;
                break;
            }
        }
        if (expected) {
            CHECK(calibrate_radius(g, target, tol) == *expected);
        } else {
            CHECK_THROWS_AS(calibrate_radius(g, target, tol), CalibrationError);
        }
    }
}

TEST_CASE("infeasible calibration reports the bracket") {
    // Two triangles plus an isolated vertex: beta_0 jumps 3 -> ... as edges go.
    auto g = test::graph_from_pairs(3, {{0, 1}, {1, 2}, {0, 2}});
    for (auto& e : g.edges) e.length = 1.0;  // all edges removed at once: 1 -> 3
    try {
        calibrate_radius(g, 2, 0);
        FAIL("expected CalibrationError");
    } catch (const CalibrationError& e) {
        CHECK(e.below == 1);
        CHECK(e.above == 3);
    }
    CHECK_THROWS_AS(calibrate_radius(g, 0, 0), ArgumentError);
}

TEST_CASE("beta_0 is monotone in the radius") {
    std::mt19937_64 rng(99);
    const auto g = knn_graph(test::random_cloud(80, 4, rng), 5);
    std::vector<double> lengths;
    for (const auto& e : g.edges) lengths.push_back(e.length);
    std::sort(lengths.begin(), lengths.end());
    std::size_t prev_b0 = 0, prev_edges = g.edges.size() + 1;
    for (double r : lengths) {
        const auto f = filter_short_edges(g, r);
        const auto b0 = connected_components(f);
        CHECK(b0 >= prev_b0);
        CHECK(f.edges.size() < prev_edges);
        prev_b0 = b0;
        prev_edges = f.edges.size();
    }
}

}
