#include "zzt/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "zzt/error.hpp"

namespace zzt {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
};

// beta_0 after removing every edge with length <= radius.
std::size_t components_above(const NeighborGraph& graph, double radius) {
    DisjointSet ds(graph.n_vertices);
    std::size_t count = graph.n_vertices;
    for (const auto& e : graph.edges) {
        if (e.length > radius && ds.unite(e.u, e.v)) --count;
    }
    return count;
}

}  // namespace

double euclidean(const PointCloud& cloud, std::size_t i, std::size_t j) {
    const auto a = cloud.row(i);
    const auto b = cloud.row(j);
    double sum = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double diff = static_cast<double>(a[c]) - static_cast<double>(b[c]);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

NeighborGraph knn_graph(const PointCloud& cloud, std::size_t k) {
    const std::size_t n = cloud.n_points();
    if (k < 1 || k >= n) throw ArgumentError("knn_graph: k must be in [1, n_points - 1]");

    std::vector<Edge> proposed;
    proposed.reserve(n * k);
    std::vector<std::uint32_t> order(n - 1);
    // euclidean(i, j) and euclidean(j, i) are bit-identical, so rows can be filled independently.
    std::vector<double> row_buf(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row_buf[j] = j == i ? 0.0 : euclidean(cloud, i, j);
        std::size_t w = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) order[w++] = static_cast<std::uint32_t>(j);
        }
        const double* row = row_buf.data();
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [row](std::uint32_t a, std::uint32_t b) {
                              return row[a] < row[b] || (row[a] == row[b] && a < b);
                          });
        for (std::size_t r = 0; r < k; ++r) {
            const auto j = order[r];
            const auto u = static_cast<Vertex>(std::min<std::size_t>(i, j));
            const auto v = static_cast<Vertex>(std::max<std::size_t>(i, j));
            proposed.push_back({u, v, row[j]});
        }
    }

    std::sort(proposed.begin(), proposed.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    proposed.erase(std::unique(proposed.begin(), proposed.end(),
                               [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                   proposed.end());
    return NeighborGraph{n, std::move(proposed)};
}

NeighborGraph filter_short_edges(const NeighborGraph& graph, double radius, EdgeFilter mode) {
    if (!(radius >= 0.0)) throw ArgumentError("filter_short_edges: radius must be >= 0");
    NeighborGraph out{graph.n_vertices, {}};
    for (const auto& e : graph.edges) {
        const bool keep = mode == EdgeFilter::drop_short ? e.length > radius : e.length <= radius;
        if (keep) out.edges.push_back(e);
    }
    return out;
}

std::size_t connected_components(const NeighborGraph& graph) {
    return components_above(graph, -1.0);
}

CalibrationError::CalibrationError(std::size_t below_, std::size_t above_, std::size_t target,
                                   std::size_t tolerance)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "no radius gives beta_0 in " << target << " +/- " << tolerance
             << "; achievable values bracketing the range: below=" << below_ << ", above=" << above_;
          return os.str();
      }()),
      below(below_),
      above(above_) {}

double calibrate_radius(const NeighborGraph& graph, std::size_t target, std::size_t tolerance) {
    if (target < 1) throw ArgumentError("calibrate_radius: target must be >= 1");
    const std::size_t lo = target > tolerance ? target - tolerance : 0;
    const std::size_t hi = target + tolerance;

    std::vector<double> radii{0.0};
    for (const auto& e : graph.edges) radii.push_back(e.length);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    // First candidate with beta_0 >= lo.
    std::size_t left = 0;
    std::size_t right = radii.size();
    while (left < right) {
        const std::size_t mid = left + (right - left) / 2;
        if (components_above(graph, radii[mid]) >= lo) {
            right = mid;
        } else {
            left = mid + 1;
        }
    }
    if (left < radii.size()) {
        const std::size_t b0 = components_above(graph, radii[left]);
        if (b0 <= hi) return radii[left];
        const std::size_t below = left > 0 ? components_above(graph, radii[left - 1]) : 0;
        throw CalibrationError(below, b0, target, tolerance);
    }
    throw CalibrationError(components_above(graph, radii.back()), 0, target, tolerance);
}

}  // namespace zzt
