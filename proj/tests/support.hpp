#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "zzt/flagcomplex.hpp"
#include "zzt/layerstack.hpp"
#include "zzt/neighborhood.hpp"

namespace zzt::test {

/// Directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("zzt-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline NeighborGraph graph_from_pairs(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) {
    NeighborGraph g{n, {}};
    for (auto [u, v] : pairs) {
        if (u > v) std::swap(u, v);
        g.edges.push_back({u, v, 1.0});
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    return g;
}

inline NeighborGraph cycle_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i) pairs.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return graph_from_pairs(n, pairs);
}

inline NeighborGraph complete_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return graph_from_pairs(n, pairs);
}

inline PointCloud circle_cloud(std::size_t n, std::size_t dim = 2, double radius = 1.0) {
    PointCloud pc(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pc.row(i)[0] = static_cast<float>(radius * std::cos(t));
        pc.row(i)[1] = static_cast<float>(radius * std::sin(t));
    }
    return pc;
}

inline PointCloud random_cloud(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<float> g;
    PointCloud pc(n, dim);
    for (auto& x : pc.data()) x = g(rng);
    return pc;
}

/// Plain GF(2) rank of a dense 0/1 matrix given as rows; independent of the library.
inline std::size_t gf2_rank(std::vector<std::vector<int>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][c]) {
                for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace zzt::test
