#include "zzt/flagcomplex.hpp"

#include <numeric>
#include <string>

#include "zzt/error.hpp"

namespace zzt {

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const Vertex> vertices) {
    if (vertices.empty() || vertices.size() > kMaxSimplexVertices) {
        throw ArgumentError("simplex must have between 1 and " +
                            std::to_string(kMaxSimplexVertices) + " vertices");
    }
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i - 1] >= vertices[i]) throw ArgumentError("simplex vertices must be strictly ascending");
    }
    std::copy(vertices.begin(), vertices.end(), v_.begin());
    size_ = static_cast<std::uint8_t>(vertices.size());
}

Simplex Simplex::facet(std::size_t i) const {
    Simplex f;
    std::size_t w = 0;
    for (std::size_t r = 0; r < size_; ++r) {
        if (r != i) f.v_[w++] = v_[r];
    }
    f.size_ = static_cast<std::uint8_t>(size_ - 1);
    return f;
}

Simplex Simplex::with_vertex(Vertex w) const {
    Simplex s = *this;
    s.v_[s.size_++] = w;
    return s;
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Vertex v : s.vertices()) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

FlagComplex::FlagComplex(std::size_t n_vertices, int max_dim)
    : n_vertices_(n_vertices), max_dim_(max_dim), by_dim_(static_cast<std::size_t>(max_dim) + 1) {
    if (max_dim < 0 || static_cast<std::size_t>(max_dim) + 1 > kMaxSimplexVertices) {
        throw ArgumentError("max simplex dimension out of range");
    }
    by_dim_[0].reserve(n_vertices);
    for (std::size_t v = 0; v < n_vertices; ++v) by_dim_[0].push_back(Simplex{static_cast<Vertex>(v)});
}

FlagComplex FlagComplex::from_simplices(std::size_t n_vertices, int max_dim, std::vector<Simplex> simplices) {
    FlagComplex cx(n_vertices, max_dim);
    for (auto& b : cx.by_dim_) b.clear();
    for (const auto& s : simplices) {
        if (s.dim() > max_dim) throw ArgumentError("simplex exceeds max_dim");
        if (s.vertices().back() >= n_vertices) throw ArgumentError("simplex vertex out of range");
        cx.by_dim_[static_cast<std::size_t>(s.dim())].push_back(s);
    }
    for (auto& b : cx.by_dim_) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    for (int p = 1; p <= max_dim; ++p) {
        for (const auto& s : cx.simplices(p)) {
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (!cx.contains(s.facet(i))) throw ValidationError("simplex list is not closed under faces");
            }
        }
    }
    return cx;
}

std::span<const Simplex> FlagComplex::simplices(int p) const {
    if (p < 0 || p > max_dim_) return {};
    return by_dim_[static_cast<std::size_t>(p)];
}

std::size_t FlagComplex::size() const {
    std::size_t total = 0;
    for (const auto& b : by_dim_) total += b.size();
    return total;
}

std::size_t FlagComplex::index_of(const Simplex& s) const {
    const auto bucket = simplices(s.dim());
    auto it = std::lower_bound(bucket.begin(), bucket.end(), s);
    if (it == bucket.end() || *it != s) return npos;
    return static_cast<std::size_t>(it - bucket.begin());
}

bool FlagComplex::contains(const Simplex& s) const { return index_of(s) != npos; }

std::vector<Simplex> FlagComplex::all() const {
    std::vector<Simplex> out;
    out.reserve(size());
    for (const auto& b : by_dim_) out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool FlagComplex::is_subcomplex_of(const FlagComplex& other) const {
    if (n_vertices_ != other.n_vertices_) return false;
    for (int p = 0; p <= max_dim_; ++p) {
        const auto mine = simplices(p);
        const auto theirs = other.simplices(p);
        if (!std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) return false;
    }
    return true;
}

namespace {

// Ordered clique expansion: a simplex is only extended by common neighbors with
// a larger index than its last vertex, so each clique is produced exactly once.
struct Expander {
    const std::vector<std::vector<Vertex>>& upper;  // neighbors w > v, ascending
    int m;
    std::size_t cap;
    std::vector<std::vector<Simplex>>& out;
    std::size_t total = 0;

    void emit(const Simplex& s) {
        if (++total > cap) {
            throw CapacityError("flag expansion exceeds the simplex cap of " + std::to_string(cap));
        }
        out[static_cast<std::size_t>(s.dim())].push_back(s);
    }

    void grow(const Simplex& s, const std::vector<Vertex>& candidates) {
        if (s.dim() >= m) return;
        std::vector<Vertex> next;
        for (Vertex w : candidates) {
            const Simplex t = s.with_vertex(w);
            emit(t);
            if (t.dim() < m) {
                next.clear();
                const auto& nw = upper[w];
                std::set_intersection(candidates.begin(), candidates.end(), nw.begin(), nw.end(),
                                      std::back_inserter(next));
                if (!next.empty()) grow(t, next);
            }
        }
    }
};

}  // namespace

FlagComplex expand(const NeighborGraph& graph, int m, std::size_t max_simplices) {
    if (m < 1) throw ArgumentError("expand: m must be >= 1");
    FlagComplex cx(graph.n_vertices, m);
    std::vector<std::vector<Vertex>> upper(graph.n_vertices);
    for (const auto& e : graph.edges) {
        if (e.u >= e.v || e.v >= graph.n_vertices) throw ArgumentError("expand: malformed edge");
        upper[e.u].push_back(e.v);
    }
    for (auto& nb : upper) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }

    Expander ex{upper, m, max_simplices, cx.by_dim_};
    ex.total = graph.n_vertices;
    if (ex.total > max_simplices) throw CapacityError("vertex count exceeds the simplex cap");
    for (std::size_t v = 0; v < graph.n_vertices; ++v) {
        ex.grow(Simplex{static_cast<Vertex>(v)}, upper[v]);
    }
    for (auto& b : cx.by_dim_) std::sort(b.begin(), b.end());
    return cx;
}

FlagComplex intersect(const FlagComplex& a, const FlagComplex& b) {
    if (a.max_dim() != b.max_dim()) throw ArgumentError("intersect: complexes have different max_dim");
    if (a.n_vertices() != b.n_vertices()) throw ArgumentError("intersect: complexes have different vertex sets");
    FlagComplex out(a.n_vertices(), a.max_dim());
    for (int p = 0; p <= a.max_dim(); ++p) {
        auto& dst = out.by_dim_[static_cast<std::size_t>(p)];
        dst.clear();
        const auto x = a.simplices(p);
        const auto y = b.simplices(p);
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(dst));
    }
    return out;
}

SparseMatrixGF2 boundary_matrix(const FlagComplex& cx, int p) {
    if (p < 1 || p > cx.max_dim()) throw ArgumentError("boundary_matrix: p out of range");
    SparseMatrixGF2 mat;
    mat.rows = cx.count(p - 1);
    const auto cols = cx.simplices(p);
    mat.columns.reserve(cols.size());
    for (const auto& s : cols) {
        std::vector<std::uint32_t> col;
        col.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto r = cx.index_of(s.facet(i));
            if (r == FlagComplex::npos) throw ValidationError("boundary_matrix: complex is not face-closed");
            col.push_back(static_cast<std::uint32_t>(r));
        }
        std::sort(col.begin(), col.end());
        mat.columns.push_back(std::move(col));
    }
    return mat;
}

}  // namespace zzt
