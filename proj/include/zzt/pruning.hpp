#pragma once

#include <cstddef>
#include <vector>

#include "zzt/descriptors.hpp"

namespace zzt {

struct PruneReport {
    std::vector<std::size_t> layers_to_remove;
    double threshold = 0.9;
    double alpha_used = -1.0;
    DescriptorSeries zbar;
};

inline constexpr double kDefaultPruneThreshold = 0.9;
inline constexpr double kDefaultPruneAlpha = -1.0;

/// Layers whose inter-layer persistence exceeds max(zbar) * threshold (strict).
PruneReport prune_layers(const DescriptorSeries& zbar, double threshold = kDefaultPruneThreshold,
                         double alpha_used = kDefaultPruneAlpha);

/// Blocks of `window` consecutive layers starting at 0, step, 2*step, ...
std::vector<std::vector<std::size_t>> sliding_windows(std::size_t n_layers, std::size_t window, std::size_t step);

}  // namespace zzt
