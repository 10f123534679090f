#include <doctest.h>

#include <random>

#include "zzt/error.hpp"
#include "zzt/pruning.hpp"

using namespace zzt;

namespace {

DescriptorSeries series(std::vector<double> v) { return DescriptorSeries{std::move(v), {}, {}, false}; }

}  // namespace

TEST_SUITE("pruning") {

TEST_CASE("worked example") {
    const auto report = prune_layers(series({0.1, 0.5, 0.92, 0.95, 1.0, 0.93, 0.4}), 0.9);
    CHECK(report.layers_to_remove == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK(report.threshold == 0.9);
    CHECK(report.alpha_used == -1.0);
}

TEST_CASE("threshold 1 returns nothing") {
    CHECK(prune_layers(series({0.1, 0.5, 1.0, 0.3}), 1.0).layers_to_remove.empty());
}

TEST_CASE("constant series returns every layer") {
    CHECK(prune_layers(series(std::vector<double>(7, 0.6)), 0.9).layers_to_remove.size() == 7);
}

TEST_CASE("positive rescaling leaves the set unchanged") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(5 + rng() % 30);
        for (auto& x : v) x = u(rng);
        const double scale = std::exp(u(rng) * 8 - 4);
        std::vector<double> scaled = v;
        for (auto& x : scaled) x *= scale;
        const auto a = prune_layers(series(v), 0.8).layers_to_remove;
        CHECK(a == prune_layers(series(scaled), 0.8).layers_to_remove);
        CHECK(std::is_sorted(a.begin(), a.end()));
        CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
        for (auto l : a) CHECK(l < v.size());
    }
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(prune_layers(series({}), 0.9), ArgumentError);
    CHECK_THROWS_AS(prune_layers(series({0.0, 0.0}), 0.9), ArgumentError);
    CHECK_THROWS_AS(prune_layers(series({0.5, 0.2}), -0.1), ArgumentError);
    CHECK_THROWS_AS(prune_layers(series({0.5, 0.2}), 1.5), ArgumentError);
}

TEST_CASE("sliding windows") {
    const auto blocks = sliding_windows(32, 5, 2);
    REQUIRE(blocks.size() == 14);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        REQUIRE(blocks[i].size() == 5);
        CHECK(blocks[i].front() == 2 * i);
        for (std::size_t j = 1; j < 5; ++j) CHECK(blocks[i][j] == blocks[i][j - 1] + 1);
    }
    CHECK(blocks.back().back() == 30);
    CHECK(sliding_windows(7, 7, 3).size() == 1);
    CHECK(sliding_windows(5, 2, 1).size() == 4);
    CHECK_THROWS_AS(sliding_windows(5, 0, 1), ArgumentError);
    CHECK_THROWS_AS(sliding_windows(5, 6, 1), ArgumentError);
    CHECK_THROWS_AS(sliding_windows(5, 2, 0), ArgumentError);
}

}
