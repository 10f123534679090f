#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zzt/zigzag.hpp"

namespace zzt {

enum class BirthNormalization {
    global,        // series sums to 1 over layers
    paper_literal  // per-layer denominator sum_d w(l,d) * sum_d E(l,d)
};

struct DescriptorConfig {
    double alpha = 0.0;
    int homology_dim = 1;
    bool inclusive_death = true;
    BirthNormalization normalization = BirthNormalization::global;
};

/// Per-layer values, optionally with mean/std across subsets.
struct DescriptorSeries {
    std::vector<double> values;
    std::optional<std::vector<double>> subset_mean;
    std::optional<std::vector<double>> subset_std;
    bool degenerate = false;  // all-zero input (births) or undefined std (single subset)
};

/// |l - li|^alpha, with the diagonal weight fixed at 0 for every alpha.
double layer_weight(std::size_t l, std::size_t li, double alpha);

DescriptorSeries births_relative_frequency(const EffectiveImage& img, const DescriptorConfig& cfg);

/// Sum of E(b, d) over b <= layer <= d. This is the normalizer of the
/// inter-layer persistence. It can exceed the true Betti number because an
/// odd raw death is rounded up to the next layer.
double betti_at(const EffectiveImage& img, std::size_t layer);
DescriptorSeries effective_betti_curve(const EffectiveImage& img);

/// True Betti numbers of the layer complexes: raw intervals containing 2l.
DescriptorSeries betti_curve(const PersistenceDiagram& diagram, int p);

/// Fraction of the classes alive at l1 that stay alive through l2.
double interlayer_persistence(const EffectiveImage& img, std::size_t l1, std::size_t l2,
                              const DescriptorConfig& cfg);

/// Weighted average of interlayer_persistence(l, li) over li != l.
double weighted_interlayer(const EffectiveImage& img, std::size_t l, const DescriptorConfig& cfg);
DescriptorSeries weighted_interlayer_series(const EffectiveImage& img, const DescriptorConfig& cfg);

/// Row-major grid of normalized differences a/|a| - b/|b|, entries in [-1, 1].
struct RealGrid {
    std::size_t size = 0;
    std::vector<double> cells;
    double at(std::size_t b, std::size_t d) const { return cells[b * size + d]; }
};
RealGrid epi_difference(const EffectiveImage& a, const EffectiveImage& b);

/// Per-layer sample mean and sample standard deviation (divisor n - 1).
DescriptorSeries subset_stats(const std::vector<DescriptorSeries>& series);

/// Least-squares slope of log(variance) against log(size).
double variance_scaling_fit(const std::vector<double>& sizes, const std::vector<double>& variances);

}  // namespace zzt
