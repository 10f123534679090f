#include "zzt/synth.hpp"

#include <cmath>
#include <numbers>

#include "zzt/error.hpp"

namespace zzt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr double kBlobOffset = 5.0;
constexpr double kCollapseScale = 0.01;

void validate(const SynthSpec& spec) {
    if (spec.n_layers < 2) throw ArgumentError("synth: n_layers must be >= 2");
    if (spec.n_points < 2) throw ArgumentError("synth: n_points must be >= 2");
    if (spec.dim < 1) throw ArgumentError("synth: dim must be >= 1");
    if (!(spec.noise_scale >= 0.0) || !std::isfinite(spec.noise_scale)) {
        throw ArgumentError("synth: noise_scale must be finite and >= 0");
    }
    const bool circle = spec.kind == SynthKind::persistent_circle || spec.kind == SynthKind::vanishing_circle;
    if (circle && spec.dim < 2) throw ArgumentError("synth: circle kinds need dim >= 2");
    const bool needs_event = spec.kind == SynthKind::vanishing_circle || spec.kind == SynthKind::blob_merge;
    if (needs_event && !spec.event_layer) throw ArgumentError("synth: this kind needs event_layer");
    if (spec.event_layer && *spec.event_layer >= spec.n_layers) {
        throw ArgumentError("synth: event_layer must be < n_layers");
    }
}

}  // namespace

SynthKind parse_synth_kind(const std::string& name) {
    if (name == "persistent_circle") return SynthKind::persistent_circle;
    if (name == "vanishing_circle") return SynthKind::vanishing_circle;
    if (name == "random_walk") return SynthKind::random_walk;
    if (name == "blob_merge") return SynthKind::blob_merge;
    throw ArgumentError("unknown synth kind: " + name);
}

std::string to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::persistent_circle: return "persistent_circle";
        case SynthKind::vanishing_circle: return "vanishing_circle";
        case SynthKind::random_walk: return "random_walk";
        case SynthKind::blob_merge: return "blob_merge";
    }
    return "unknown";
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

std::uint64_t CounterRng::next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

double CounterRng::uniform() {
    // 53 random bits mapped into the open interval (0, 1).
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

LayerStack generate(const SynthSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n_points;
    const std::size_t dim = spec.dim;
    const std::size_t event = spec.event_layer.value_or(spec.n_layers);

    // Stream 0 holds layer-independent draws; stream j+1 belongs to layer j.
    std::vector<double> base(n * dim, 0.0);
    if (spec.kind == SynthKind::random_walk || spec.kind == SynthKind::blob_merge) {
        CounterRng rng(spec.seed, 0);
        for (auto& x : base) x = rng.normal();
    }

    std::vector<PointCloud> layers;
    layers.reserve(spec.n_layers);
    std::vector<double> walk = base;
    for (std::size_t j = 0; j < spec.n_layers; ++j) {
        CounterRng rng(spec.seed, j + 1);
        std::vector<double> pos(n * dim, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double* p = pos.data() + i * dim;
            switch (spec.kind) {
                case SynthKind::persistent_circle:
                case SynthKind::vanishing_circle: {
                    if (spec.kind == SynthKind::vanishing_circle && j >= event) {
                        p[0] = kCollapseScale * (2.0 * static_cast<double>(i) / static_cast<double>(n - 1) - 1.0);
                    } else {
                        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
                        p[0] = std::cos(theta);
                        p[1] = std::sin(theta);
                    }
                    break;
                }
                case SynthKind::random_walk:
                    for (std::size_t c = 0; c < dim; ++c) p[c] = walk[i * dim + c];
                    break;
                case SynthKind::blob_merge: {
                    for (std::size_t c = 0; c < dim; ++c) p[c] = base[i * dim + c];
                    if (j < event) p[0] += i < n / 2 ? kBlobOffset : -kBlobOffset;
                    break;
                }
            }
            if (spec.noise_scale > 0.0 && spec.kind != SynthKind::random_walk) {
                for (std::size_t c = 0; c < dim; ++c) p[c] += spec.noise_scale * rng.normal();
            }
        }
        if (spec.kind == SynthKind::random_walk && j + 1 < spec.n_layers) {
            for (auto& x : walk) x += spec.noise_scale * rng.normal();
        }
        std::vector<float> coords(pos.size());
        for (std::size_t t = 0; t < pos.size(); ++t) coords[t] = static_cast<float>(pos[t]);
        layers.emplace_back(n, dim, std::move(coords));
    }

    nlohmann::json meta{{"generator", "synth"},
                        {"kind", to_string(spec.kind)},
                        {"seed", spec.seed},
                        {"noise_scale", spec.noise_scale}};
    if (spec.event_layer) meta["event_layer"] = *spec.event_layer;
    return LayerStack(std::move(layers), std::move(meta));
}

}  // namespace zzt
