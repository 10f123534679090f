#include "zzt/descriptors.hpp"

#include <cmath>

#include "zzt/error.hpp"

namespace zzt {

double layer_weight(std::size_t l, std::size_t li, double alpha) {
    if (l == li) return 0.0;
    const double gap = l > li ? static_cast<double>(l - li) : static_cast<double>(li - l);
    return std::pow(gap, alpha);
}

DescriptorSeries births_relative_frequency(const EffectiveImage& img, const DescriptorConfig& cfg) {
    if (!std::isfinite(cfg.alpha)) throw ArgumentError("alpha must be finite");
    const std::size_t n = img.n_layers;
    DescriptorSeries out;
    out.values.assign(n, 0.0);

    std::vector<double> weighted(n, 0.0);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t d = b; d < n; ++d) {
            weighted[b] += layer_weight(b, d, cfg.alpha) * static_cast<double>(img.at(b, d));
        }
    }

    if (cfg.normalization == BirthNormalization::global) {
        double total = 0.0;
        for (double w : weighted) total += w;
        if (total == 0.0) {
            out.degenerate = true;
            return out;
        }
        for (std::size_t b = 0; b < n; ++b) out.values[b] = weighted[b] / total;
        return out;
    }

    bool any = false;
    for (std::size_t b = 0; b < n; ++b) {
        double weight_sum = 0.0;
        double count = 0.0;
        for (std::size_t d = b; d < n; ++d) {
            weight_sum += layer_weight(b, d, cfg.alpha);
            count += static_cast<double>(img.at(b, d));
        }
        const double denom = weight_sum * count;
        if (denom != 0.0 && weighted[b] != 0.0) {
            out.values[b] = weighted[b] / denom;
            any = true;
        }
    }
    out.degenerate = !any;
    return out;
}

double betti_at(const EffectiveImage& img, std::size_t layer) {
    double total = 0.0;
    for (std::size_t b = 0; b <= layer; ++b) {
        for (std::size_t d = layer; d < img.n_layers; ++d) total += static_cast<double>(img.at(b, d));
    }
    return total;
}

DescriptorSeries effective_betti_curve(const EffectiveImage& img) {
    DescriptorSeries out;
    out.values.reserve(img.n_layers);
    for (std::size_t l = 0; l < img.n_layers; ++l) out.values.push_back(betti_at(img, l));
    return out;
}

DescriptorSeries betti_curve(const PersistenceDiagram& diagram, int p) {
    if (p < 0 || static_cast<std::size_t>(p) >= diagram.dims.size()) {
        throw ArgumentError("betti_curve: homology dimension not in the diagram");
    }
    DescriptorSeries out;
    out.values.assign(diagram.n_layers, 0.0);
    for (const auto& iv : diagram.dims[static_cast<std::size_t>(p)]) {
        for (std::size_t l = (iv.birth + 1) / 2; 2 * l <= iv.death; ++l) out.values[l] += 1.0;
    }
    return out;
}

double interlayer_persistence(const EffectiveImage& img, std::size_t l1, std::size_t l2,
                              const DescriptorConfig& cfg) {
    const std::size_t n = img.n_layers;
    if (l1 >= n || l2 >= n) throw ArgumentError("interlayer_persistence: layer out of range");
    const double alive = betti_at(img, l1);
    if (alive == 0.0) return 0.0;
    const std::size_t lo = std::min(l1, l2);
    const std::size_t hi = std::max(l1, l2);
    const std::size_t first_death = cfg.inclusive_death ? hi : hi + 1;
    double spanning = 0.0;
    for (std::size_t b = 0; b <= lo; ++b) {
        for (std::size_t d = first_death; d < n; ++d) spanning += static_cast<double>(img.at(b, d));
    }
    return spanning / alive;
}

double weighted_interlayer(const EffectiveImage& img, std::size_t l, const DescriptorConfig& cfg) {
    if (img.n_layers < 2) throw ArgumentError("weighted_interlayer needs at least 2 layers");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t li = 0; li < img.n_layers; ++li) {
        if (li == l) continue;
        const double w = layer_weight(l, li, cfg.alpha);
        num += w * interlayer_persistence(img, l, li, cfg);
        den += w;
    }
    return den == 0.0 ? 0.0 : num / den;
}

DescriptorSeries weighted_interlayer_series(const EffectiveImage& img, const DescriptorConfig& cfg) {
    DescriptorSeries out;
    out.values.reserve(img.n_layers);
    for (std::size_t l = 0; l < img.n_layers; ++l) out.values.push_back(weighted_interlayer(img, l, cfg));
    return out;
}

RealGrid epi_difference(const EffectiveImage& a, const EffectiveImage& b) {
    if (a.n_layers != b.n_layers) throw ArgumentError("epi_difference: images differ in shape");
    const double ta = static_cast<double>(a.counts.total());
    const double tb = static_cast<double>(b.counts.total());
    if (ta == 0.0 || tb == 0.0) throw ArgumentError("epi_difference: image has zero total mass");
    RealGrid out{a.n_layers, std::vector<double>(a.counts.cells.size())};
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        out.cells[i] = static_cast<double>(a.counts.cells[i]) / ta - static_cast<double>(b.counts.cells[i]) / tb;
    }
    return out;
}

DescriptorSeries subset_stats(const std::vector<DescriptorSeries>& series) {
    if (series.empty()) throw ArgumentError("subset_stats: no series");
    const std::size_t n = series.front().values.size();
    for (const auto& s : series) {
        if (s.values.size() != n) throw ArgumentError("subset_stats: series lengths differ");
    }
    std::vector<double> mean(n, 0.0);
    for (const auto& s : series) {
        for (std::size_t l = 0; l < n; ++l) mean[l] += s.values[l];
    }
    for (auto& m : mean) m /= static_cast<double>(series.size());

    DescriptorSeries out;
    out.values = mean;
    out.subset_mean = mean;
    if (series.size() < 2) {
        out.degenerate = true;
        return out;
    }
    std::vector<double> sd(n, 0.0);
    for (const auto& s : series) {
        for (std::size_t l = 0; l < n; ++l) {
            const double dev = s.values[l] - mean[l];
            sd[l] += dev * dev;
        }
    }
    for (auto& v : sd) v = std::sqrt(v / static_cast<double>(series.size() - 1));
    out.subset_std = std::move(sd);
    return out;
}

double variance_scaling_fit(const std::vector<double>& sizes, const std::vector<double>& variances) {
    if (sizes.size() != variances.size() || sizes.size() < 3) {
        throw ArgumentError("variance_scaling_fit needs >= 3 matching points");
    }
    const double n = static_cast<double>(sizes.size());
    double sx = 0, sy = 0;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0) || !(variances[i] > 0.0)) {
            throw ArgumentError("variance_scaling_fit: sizes and variances must be positive");
        }
        xs.push_back(std::log(sizes[i]));
        ys.push_back(std::log(variances[i]));
        sx += xs.back();
        sy += ys.back();
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw ArgumentError("variance_scaling_fit: sizes must not all be equal");
    return sxy / sxx;
}

}  // namespace zzt
