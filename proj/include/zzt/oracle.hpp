#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zzt/flagcomplex.hpp"
#include "zzt/zigzag.hpp"

namespace zzt {

// Brute-force GF(2) homology on small complexes. Shares no reduction code with
// compute_zigzag so it can serve as an independent check.

inline constexpr std::size_t kOracleMaxSimplices = 20'000;

/// beta_p = dim ker d_p - rank d_{p+1}. Requires p <= max_dim - 1.
std::size_t betti(const FlagComplex& cx, int p, std::size_t cap = kOracleMaxSimplices);

/// Rank of H_p(sub) -> H_p(super) induced by inclusion:
/// dim(Z_p(sub) + B_p(super)) - dim B_p(super).
std::size_t induced_map_rank(const FlagComplex& sub, const FlagComplex& super, int p,
                             std::size_t cap = kOracleMaxSimplices);

struct OracleViolation {
    enum class Kind { betti, rank } kind = Kind::betti;
    std::size_t index = 0;  // zigzag index (for rank: the arrow index -> index+1)
    int p = 0;
    std::size_t expected = 0;  // from the oracle
    std::size_t found = 0;     // from the diagram
};

struct OracleReport {
    std::vector<std::vector<std::size_t>> betti;     // [t][p]
    std::vector<std::vector<std::size_t>> map_rank;  // [t][p] for arrow t <-> t+1
    std::vector<OracleViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// Checks, at every index and every adjacent arrow, that interval counts equal
/// oracle Betti numbers and induced-map ranks. `states` holds the complex at
/// each zigzag index, intersections included.
OracleReport verify_diagram(const PersistenceDiagram& diagram, const std::vector<FlagComplex>& states,
                            std::size_t cap = kOracleMaxSimplices);

}  // namespace zzt
