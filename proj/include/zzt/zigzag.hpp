#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zzt/flagcomplex.hpp"

namespace zzt {

enum class EventKind : std::uint8_t { insert, remove };

struct FiltrationEvent {
    std::size_t time = 0;  // zigzag index the event leads into
    EventKind kind = EventKind::insert;
    Simplex simplex;

    friend bool operator==(const FiltrationEvent&, const FiltrationEvent&) = default;
};

/// Zigzag K_0 ⊇ K_0∩K_1 ⊆ K_1 ⊇ ... ⊆ K_{L-1} as a simplex-wise event list.
///
/// Index 2j is layer complex K_j, index 2j+1 is K_j ∩ K_{j+1}. Events with
/// time t turn the complex at t-1 (the empty complex for t = 0) into the
/// complex at t: odd times only delete (cofaces first), even times only insert
/// (faces first).
struct ZigzagFiltration {
    std::size_t n_layers = 0;
    std::size_t n_vertices = 0;
    int max_dim = 0;
    std::vector<FiltrationEvent> events;

    std::size_t n_indices() const { return 2 * (n_layers - 1) + 1; }
    std::size_t last_index() const { return 2 * (n_layers - 1); }
};

ZigzagFiltration build_filtration(const std::vector<FlagComplex>& layer_complexes);

/// Complex at every zigzag index (layers at even, intersections at odd).
std::vector<FlagComplex> zigzag_states(const std::vector<FlagComplex>& layer_complexes);

/// Closed interval [birth, death] on the zigzag index line. right_open marks a
/// class still alive at the last index.
struct Interval {
    std::size_t birth = 0;
    std::size_t death = 0;
    bool right_open = false;

    bool contains(std::size_t t) const { return birth <= t && t <= death; }
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Interval multisets per homology dimension 0..max_dim-1, each sorted.
struct PersistenceDiagram {
    std::size_t n_layers = 0;
    std::vector<std::vector<Interval>> dims;

    std::size_t last_index() const { return 2 * (n_layers - 1); }
    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

/// Zigzag persistence over GF(2).
///
/// The event list is closed off by deleting the final complex, then turned
/// into a non-zigzag filtration of equal length: every insertion adds its
/// simplex (repeated insertions are fresh copies), then a cone vertex w is
/// added, then for every deletion in reverse order the cone w*s. Standard
/// column reduction pairs those simplices; each pair maps back to a birth and
/// a death event of the zigzag. Throws ValidationError on an invalid event order.
PersistenceDiagram compute_zigzag(const ZigzagFiltration& filtration);

/// Interval in model-layer units after moving intersection-index endpoints
/// onto the following layer.
struct EffectiveInterval {
    std::size_t birth_layer = 0;
    std::size_t death_layer = 0;
    bool right_open = false;

    friend auto operator<=>(const EffectiveInterval&, const EffectiveInterval&) = default;
};

struct EffectiveDiagram {
    std::size_t n_layers = 0;
    std::vector<std::vector<EffectiveInterval>> dims;
};

/// b -> b+1 and d -> d+1 for odd (intersection) endpoints, then halve.
EffectiveInterval to_effective(const Interval& iv);
EffectiveDiagram to_effective(const PersistenceDiagram& diagram);

/// Square integer grid indexed (birth, death).
struct CountGrid {
    std::size_t size = 0;
    std::vector<std::uint64_t> cells;

    explicit CountGrid(std::size_t n = 0) : size(n), cells(n * n, 0) {}
    std::uint64_t& at(std::size_t b, std::size_t d) { return cells[b * size + d]; }
    std::uint64_t at(std::size_t b, std::size_t d) const { return cells[b * size + d]; }
    std::uint64_t total() const;
    friend bool operator==(const CountGrid&, const CountGrid&) = default;
};

/// Effective persistence image for one homology dimension. `right_open` holds
/// the subset of `counts` whose class survives past the last layer.
struct EffectiveImage {
    std::size_t n_layers = 0;
    CountGrid counts;
    CountGrid right_open;

    std::uint64_t at(std::size_t b, std::size_t d) const { return counts.at(b, d); }
    friend bool operator==(const EffectiveImage&, const EffectiveImage&) = default;
};

EffectiveImage effective_image(const std::vector<EffectiveInterval>& intervals, std::size_t n_layers);

/// Raw persistence image on the (2L-1) x (2L-1) zigzag index grid.
CountGrid persistence_image(const std::vector<Interval>& intervals, std::size_t n_layers);

/// Four-term aggregation of a raw image onto model layers:
/// E(b/2, d/2) = PI(b,d) + PI(b-1,d) + PI(b,d-1) + PI(b-1,d-1) for even b, d,
/// with out-of-range terms taken as zero.
CountGrid aggregate_image(const CountGrid& raw, std::size_t n_layers);

}  // namespace zzt
