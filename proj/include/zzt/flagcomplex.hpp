#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "zzt/neighborhood.hpp"

namespace zzt {

inline constexpr std::size_t kMaxSimplexVertices = 16;

/// Simplex as a strictly ascending vertex tuple. Ordering is lexicographic on
/// the tuple, so (0) < (0,1) < (0,1,2) < (0,2) < (1).
class Simplex {
public:
    Simplex() = default;
    Simplex(std::initializer_list<Vertex> vertices);
    explicit Simplex(std::span<const Vertex> vertices);

    std::size_t size() const { return size_; }
    int dim() const { return static_cast<int>(size_) - 1; }
    Vertex operator[](std::size_t i) const { return v_[i]; }
    std::span<const Vertex> vertices() const { return {v_.data(), size_}; }

    /// Face obtained by dropping the vertex at position i.
    Simplex facet(std::size_t i) const;
    Simplex with_vertex(Vertex w) const;  // w must exceed every vertex

    friend bool operator==(const Simplex& a, const Simplex& b) {
        return a.size_ == b.size_ && std::equal(a.v_.begin(), a.v_.begin() + a.size_, b.v_.begin());
    }
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
        return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.begin() + a.size_,
                                                      b.v_.begin(), b.v_.begin() + b.size_);
    }

private:
    std::array<Vertex, kMaxSimplexVertices> v_{};
    std::uint8_t size_ = 0;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

/// Sparse GF(2) matrix stored by columns; each column is a sorted row-index list.
struct SparseMatrixGF2 {
    std::size_t rows = 0;
    std::vector<std::vector<std::uint32_t>> columns;
};

/// Flag complex truncated at dimension max_dim. Simplices are bucketed by
/// dimension and each bucket is sorted lexicographically.
class FlagComplex {
public:
    FlagComplex(std::size_t n_vertices, int max_dim);

    /// Builds from an explicit simplex list; the list must be face-closed.
    static FlagComplex from_simplices(std::size_t n_vertices, int max_dim, std::vector<Simplex> simplices);

    std::size_t n_vertices() const { return n_vertices_; }
    int max_dim() const { return max_dim_; }

    std::span<const Simplex> simplices(int p) const;
    std::size_t count(int p) const { return simplices(p).size(); }
    std::size_t size() const;

    bool contains(const Simplex& s) const;
    /// Index of s within simplices(s.dim()), or npos.
    std::size_t index_of(const Simplex& s) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Every simplex, ascending dimension then lexicographic.
    std::vector<Simplex> all() const;

    bool is_subcomplex_of(const FlagComplex& other) const;

    friend bool operator==(const FlagComplex&, const FlagComplex&) = default;

private:
    friend FlagComplex expand(const NeighborGraph&, int, std::size_t);
    friend FlagComplex intersect(const FlagComplex&, const FlagComplex&);

    std::size_t n_vertices_ = 0;
    int max_dim_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
};

inline constexpr std::size_t kDefaultMaxSimplices = 50'000'000;

/// All cliques of `graph` with at most m+1 vertices. Throws CapacityError when
/// the total exceeds max_simplices.
FlagComplex expand(const NeighborGraph& graph, int m, std::size_t max_simplices = kDefaultMaxSimplices);

FlagComplex intersect(const FlagComplex& a, const FlagComplex& b);

/// Boundary operator from p-simplices (columns) to (p-1)-simplices (rows),
/// both indexed by position in the lexicographic bucket.
SparseMatrixGF2 boundary_matrix(const FlagComplex& cx, int p);

}  // namespace zzt
