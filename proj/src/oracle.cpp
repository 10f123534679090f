#include "zzt/oracle.hpp"

#include <bit>
#include <cstdint>

#include "zzt/error.hpp"

namespace zzt {

namespace {

class BitVec {
public:
    explicit BitVec(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void operator^=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    }

    /// Highest set bit, or -1 for the zero vector.
    std::ptrdiff_t top() const {
        for (std::size_t w = words_.size(); w-- > 0;) {
            if (words_[w]) {
                return static_cast<std::ptrdiff_t>(w * 64 + 63 - std::countl_zero(words_[w]));
            }
        }
        return -1;
    }

private:
    std::vector<std::uint64_t> words_;
};

// Dense Gaussian elimination. Returns rank; with `kernel` set, also the null
// space of the column set as combination vectors over the original columns.
std::size_t eliminate(std::vector<BitVec> cols, std::size_t rows, std::vector<BitVec>* kernel) {
    std::vector<std::ptrdiff_t> owner(rows, -1);
    std::vector<BitVec> combos;
    if (kernel) {
        combos.reserve(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            combos.emplace_back(cols.size());
            combos.back().flip(j);
        }
    }
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (auto t = cols[j].top(); t >= 0; t = cols[j].top()) {
            const auto o = owner[static_cast<std::size_t>(t)];
            if (o < 0) break;
            cols[j] ^= cols[static_cast<std::size_t>(o)];
            if (kernel) combos[j] ^= combos[static_cast<std::size_t>(o)];
        }
        const auto t = cols[j].top();
        if (t >= 0) {
            owner[static_cast<std::size_t>(t)] = static_cast<std::ptrdiff_t>(j);
            ++rank;
        } else if (kernel) {
            kernel->push_back(combos[j]);
        }
    }
    return rank;
}

// Columns of d_p for `cx`, with rows indexed by position in `rows_cx`'s (p-1) bucket.
std::vector<BitVec> boundary_columns(const FlagComplex& cx, const FlagComplex& rows_cx, int p) {
    std::vector<BitVec> cols;
    const auto rows = rows_cx.count(p - 1);
    for (const auto& s : cx.simplices(p)) {
        BitVec c(rows);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto r = rows_cx.index_of(s.facet(i));
            if (r == FlagComplex::npos) throw ValidationError("oracle: complex is not face-closed");
            c.flip(r);
        }
        cols.push_back(std::move(c));
    }
    return cols;
}

std::size_t boundary_rank(const FlagComplex& cx, int p) {
    if (p < 1 || p > cx.max_dim()) return 0;
    return eliminate(boundary_columns(cx, cx, p), cx.count(p - 1), nullptr);
}

void check_cap(const FlagComplex& cx, std::size_t cap) {
    if (cx.size() > cap) {
        throw CapacityError("complex with " + std::to_string(cx.size()) +
                            " simplices exceeds the oracle cap of " + std::to_string(cap));
    }
}

void check_dim(const FlagComplex& cx, int p) {
    if (p < 0 || p > cx.max_dim() - 1) throw ArgumentError("oracle: homology dimension must be in [0, max_dim-1]");
}

}  // namespace

std::size_t betti(const FlagComplex& cx, int p, std::size_t cap) {
    check_cap(cx, cap);
    check_dim(cx, p);
    const std::size_t cycles = cx.count(p) - boundary_rank(cx, p);
    return cycles - boundary_rank(cx, p + 1);
}

std::size_t induced_map_rank(const FlagComplex& sub, const FlagComplex& super, int p, std::size_t cap) {
    check_cap(sub, cap);
    check_cap(super, cap);
    check_dim(sub, p);
    if (!sub.is_subcomplex_of(super)) throw ArgumentError("induced_map_rank: sub is not a subcomplex of super");

    const auto sub_p = sub.simplices(p);
    const std::size_t dim_p = super.count(p);

    // Cycle basis of sub as combinations of sub's p-simplices.
    std::vector<BitVec> kernel;
    if (p == 0) {
        for (std::size_t j = 0; j < sub_p.size(); ++j) {
            kernel.emplace_back(sub_p.size());
            kernel.back().flip(j);
        }
    } else {
        eliminate(boundary_columns(sub, sub, p), sub.count(p - 1), &kernel);
    }

    // Re-express the cycles in super's coordinates.
    std::vector<std::size_t> to_super(sub_p.size());
    for (std::size_t j = 0; j < sub_p.size(); ++j) to_super[j] = super.index_of(sub_p[j]);

    std::vector<BitVec> stacked;
    for (const auto& z : kernel) {
        BitVec v(dim_p);
        for (std::size_t j = 0; j < sub_p.size(); ++j) {
            if (z.test(j)) v.flip(to_super[j]);
        }
        stacked.push_back(std::move(v));
    }
    std::vector<BitVec> bounds;
    if (p + 1 <= super.max_dim()) bounds = boundary_columns(super, super, p + 1);
    const std::size_t rank_b = eliminate(bounds, dim_p, nullptr);
    stacked.insert(stacked.end(), bounds.begin(), bounds.end());
    return eliminate(std::move(stacked), dim_p, nullptr) - rank_b;
}

OracleReport verify_diagram(const PersistenceDiagram& diagram, const std::vector<FlagComplex>& states,
                            std::size_t cap) {
    if (states.size() != 2 * diagram.n_layers - 1) {
        throw ArgumentError("verify_diagram: expected one state per zigzag index");
    }
    OracleReport report;
    const int dims = static_cast<int>(diagram.dims.size());
    auto alive = [&](int p, std::size_t t) {
        std::size_t c = 0;
        for (const auto& iv : diagram.dims[static_cast<std::size_t>(p)]) c += iv.contains(t) ? 1 : 0;
        return c;
    };
    auto alive_both = [&](int p, std::size_t t) {
        std::size_t c = 0;
        for (const auto& iv : diagram.dims[static_cast<std::size_t>(p)]) {
            c += (iv.contains(t) && iv.contains(t + 1)) ? 1 : 0;
        }
        return c;
    };

    for (std::size_t t = 0; t < states.size(); ++t) {
        auto& row = report.betti.emplace_back();
        for (int p = 0; p < dims; ++p) {
            const auto expected = betti(states[t], p, cap);
            row.push_back(expected);
            const auto found = alive(p, t);
            if (found != expected) {
                report.violations.push_back({OracleViolation::Kind::betti, t, p, expected, found});
            }
        }
    }
    for (std::size_t t = 0; t + 1 < states.size(); ++t) {
        const bool forward = states[t].is_subcomplex_of(states[t + 1]);
        const auto& sub = forward ? states[t] : states[t + 1];
        const auto& super = forward ? states[t + 1] : states[t];
        auto& row = report.map_rank.emplace_back();
        for (int p = 0; p < dims; ++p) {
            const auto expected = induced_map_rank(sub, super, p, cap);
            row.push_back(expected);
            const auto found = alive_both(p, t);
            if (found != expected) {
                report.violations.push_back({OracleViolation::Kind::rank, t, p, expected, found});
            }
        }
    }
    return report;
}

}  // namespace zzt
