#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zzt/layerstack.hpp"

namespace zzt {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u = 0;  // u < v
    Vertex v = 0;
    double length = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph. Edges are kept sorted by (u, v) with u < v.
struct NeighborGraph {
    std::size_t n_vertices = 0;
    std::vector<Edge> edges;

    friend bool operator==(const NeighborGraph&, const NeighborGraph&) = default;
};

/// Euclidean distance between rows i and j, accumulated in double.
double euclidean(const PointCloud& cloud, std::size_t i, std::size_t j);

/// Union-symmetrized kNN graph: {i,j} is an edge when j is among the k nearest
/// of i or i is among the k nearest of j. Ties in distance go to the smaller index.
NeighborGraph knn_graph(const PointCloud& cloud, std::size_t k);

enum class EdgeFilter {
    drop_short,  // keep edges with length > R
    keep_short,  // conventional Vietoris-Rips: keep edges with length <= R
};

NeighborGraph filter_short_edges(const NeighborGraph& graph, double radius,
                                 EdgeFilter mode = EdgeFilter::drop_short);

std::size_t connected_components(const NeighborGraph& graph);

/// No realized radius puts beta_0 into the requested range. `below` is the
/// largest achievable beta_0 under the range (or 0 when none), `above` the
/// smallest achievable beta_0 over it (or 0 when none).
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(std::size_t below, std::size_t above, std::size_t target, std::size_t tolerance);
    std::size_t below;
    std::size_t above;
};

/// Smallest candidate radius with connected_components(filter_short_edges(g, R))
/// in [target - tolerance, target + tolerance]. Candidates are 0 and the sorted
/// distinct edge lengths; beta_0 is monotone in R so the search bisects.
double calibrate_radius(const NeighborGraph& graph, std::size_t target, std::size_t tolerance);

struct VRCalibration {
    std::size_t beta0_target = 500;
    std::size_t beta0_tolerance = 100;
    EdgeFilter mode = EdgeFilter::drop_short;
    std::vector<double> per_layer_radius;
};

}  // namespace zzt
