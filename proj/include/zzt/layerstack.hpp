#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace zzt {

/// Row-major n_points x dim matrix of float32 coordinates for one layer.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(std::size_t n_points, std::size_t dim);
    PointCloud(std::size_t n_points, std::size_t dim, std::vector<float> coords);

    std::size_t n_points() const { return n_points_; }
    std::size_t dim() const { return dim_; }

    std::span<const float> row(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<float> row(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

    const std::vector<float>& data() const { return coords_; }
    std::vector<float>& data() { return coords_; }

    /// Copy of rows [first, first + count).
    PointCloud slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
    std::size_t n_points_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> coords_;
};

/// Ordered per-layer point clouds with a shared point set and embedding dimension.
///
/// Constructing a LayerStack validates the invariants: at least two layers,
/// identical shapes, finite coordinates. Throws ValidationError otherwise.
class LayerStack {
public:
    explicit LayerStack(std::vector<PointCloud> layers, nlohmann::json meta = nullptr);

    std::size_t n_layers() const { return layers_.size(); }
    std::size_t n_points() const { return layers_.front().n_points(); }
    std::size_t dim() const { return layers_.front().dim(); }

    const PointCloud& layer(std::size_t j) const { return layers_.at(j); }
    const std::vector<PointCloud>& layers() const { return layers_; }
    const nlohmann::json& meta() const { return meta_; }

    friend bool operator==(const LayerStack& a, const LayerStack& b) {
        return a.layers_ == b.layers_;
    }

private:
    std::vector<PointCloud> layers_;
    nlohmann::json meta_;
};

/// Reads a ZZLS directory (manifest.json + one raw f32le file per layer).
LayerStack read_layerstack(const std::filesystem::path& dir);

/// Writes `stack` as a ZZLS directory, creating `dir` if needed.
void write_layerstack(const LayerStack& stack, const std::filesystem::path& dir);

/// Splits the stack into floor(n_points / subset_size) consecutive prompt
/// blocks. Trailing points that do not fill a block are dropped.
std::vector<LayerStack> partition_subsets(const LayerStack& stack, std::size_t subset_size);

}  // namespace zzt
