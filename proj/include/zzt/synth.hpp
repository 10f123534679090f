#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "zzt/layerstack.hpp"

namespace zzt {

enum class SynthKind { persistent_circle, vanishing_circle, random_walk, blob_merge };

SynthKind parse_synth_kind(const std::string& name);
std::string to_string(SynthKind kind);

struct SynthSpec {
    SynthKind kind = SynthKind::persistent_circle;
    std::size_t n_points = 12;
    std::size_t n_layers = 3;
    std::size_t dim = 2;
    double noise_scale = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::size_t> event_layer;
};

/// Counter-based generator: draw i of stream s is a pure function of
/// (seed, s, i), so per-layer streams are independent of evaluation order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    double uniform();  // (0, 1)
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Deterministic synthetic stack with known topology.
///
/// persistent_circle: n points evenly on the unit circle in the first two
///   coordinates, identical in every layer, plus per-layer Gaussian jitter.
/// vanishing_circle: the circle until event_layer, then the points collapse
///   onto a segment of length 0.02 through the centroid (the loop closes no more).
/// random_walk: Gaussian start, then an independent Gaussian step per layer.
/// blob_merge: two unit Gaussian blobs ten units apart whose centers
///   coincide from event_layer on.
/// Extra dimensions beyond the first two are zero before jitter.
LayerStack generate(const SynthSpec& spec);

}  // namespace zzt
