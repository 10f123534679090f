#include "zzt/pruning.hpp"

#include <algorithm>
#include <cmath>

#include "zzt/error.hpp"

namespace zzt {

PruneReport prune_layers(const DescriptorSeries& zbar, double threshold, double alpha_used) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw ArgumentError("threshold must be in (0, 1]");
    if (zbar.values.empty()) throw ArgumentError("prune_layers: empty series");
    const double peak = *std::max_element(zbar.values.begin(), zbar.values.end());
    if (!(peak > 0.0)) throw ArgumentError("prune_layers: inter-layer persistence is zero everywhere");

    PruneReport report;
    report.threshold = threshold;
    report.alpha_used = alpha_used;
    report.zbar = zbar;
    const double cut = peak * threshold;
    for (std::size_t l = 0; l < zbar.values.size(); ++l) {
        if (zbar.values[l] > cut) report.layers_to_remove.push_back(l);
    }
    return report;
}

std::vector<std::vector<std::size_t>> sliding_windows(std::size_t n_layers, std::size_t window, std::size_t step) {
    if (window < 1 || window > n_layers) throw ArgumentError("window must be in [1, n_layers]");
    if (step < 1) throw ArgumentError("step must be >= 1");
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t s = 0; s + window <= n_layers; s += step) {
        std::vector<std::size_t> block(window);
        for (std::size_t i = 0; i < window; ++i) block[i] = s + i;
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace zzt
