#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zzt/descriptors.hpp"
#include "zzt/flagcomplex.hpp"
#include "zzt/layerstack.hpp"
#include "zzt/neighborhood.hpp"
#include "zzt/zigzag.hpp"

namespace zzt {

struct PipelineConfig {
    std::size_t k_nn = 4;
    int m = 4;
    std::size_t subset_size = 500;
    std::vector<double> alphas{-1.0, 0.0, 0.5, 1.0, 2.0};
    std::vector<int> homology_dims{1};
    std::optional<VRCalibration> vr;
    bool inclusive_death = true;
    BirthNormalization normalization = BirthNormalization::global;
    std::size_t max_simplices = kDefaultMaxSimplices;
    std::size_t threads = 0;  // 0 = hardware concurrency
    std::optional<std::filesystem::path> cache_dir;

    /// Throws ArgumentError when k_nn < 1, m < 2, or a homology dim is outside [0, m-1].
    void validate() const;
};

/// Reads the keys of PipelineConfig/DescriptorConfig from a JSON object into
/// `cfg`. Unknown keys are rejected with ArgumentError.
void apply_config_json(const nlohmann::json& j, PipelineConfig& cfg);
nlohmann::json config_to_json(const PipelineConfig& cfg);

struct SubsetResult {
    PersistenceDiagram diagram;
    std::vector<EffectiveImage> images;  // per homology dim 0..m-1
    std::vector<double> radii;           // per layer, when VR filtering is on
};

enum class DescriptorKind { births, zbar, betti };
std::string to_string(DescriptorKind kind);

struct DescriptorEntry {
    DescriptorKind kind = DescriptorKind::births;
    int p = 1;
    std::optional<double> alpha;  // unset for Betti curves
    DescriptorSeries series;      // values from the pooled image, stats across subsets
};

struct RunResult {
    std::size_t n_layers = 0;
    std::size_t subset_size = 0;  // effective size after clamping to n_points
    bool subset_clamped = false;
    std::vector<SubsetResult> subsets;
    std::vector<EffectiveImage> pooled_images;  // per homology dim 0..m-1
    std::vector<DescriptorEntry> descriptors;
};

/// Layer complexes for one stack: kNN graph, optional short-edge filter, flag expansion.
std::vector<FlagComplex> layer_complexes(const LayerStack& stack, const PipelineConfig& cfg,
                                         std::vector<double>* radii = nullptr);

/// Diagram and effective images for a single (sub)stack, through the cache when configured.
SubsetResult compute_subset(const LayerStack& stack, const PipelineConfig& cfg);

/// Full run: partition, per-subset diagrams, pooled images, descriptors with
/// subset statistics. When n_points < subset_size the whole stack is one subset.
RunResult run(const LayerStack& stack, const PipelineConfig& cfg);

/// Descriptors for already computed subset results (used when only alphas change).
std::vector<DescriptorEntry> compute_descriptors(const std::vector<SubsetResult>& subsets,
                                                 const std::vector<EffectiveImage>& pooled,
                                                 const PipelineConfig& cfg);

struct ScanRow {
    std::size_t k = 0;
    std::vector<std::size_t> interval_counts;  // per homology dim 0..m-1, summed over subsets
};

/// Total interval count per homology dimension for each k in [k_min, k_max].
std::vector<ScanRow> scan_k(const LayerStack& stack, std::size_t k_min, std::size_t k_max,
                            const PipelineConfig& cfg);

/// FNV-1a 64 over the subset coordinates and every setting that shapes the diagram.
std::uint64_t cache_key(const LayerStack& stack, const PipelineConfig& cfg);

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn);

}  // namespace zzt

#include "zzt/detail/parallel.hpp"
