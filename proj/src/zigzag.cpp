#include "zzt/zigzag.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "zzt/error.hpp"

namespace zzt {

namespace {

void check_compatible(const std::vector<FlagComplex>& cxs) {
    if (cxs.size() < 2) throw ArgumentError("zigzag needs at least 2 layer complexes");
    for (const auto& cx : cxs) {
        if (cx.n_vertices() != cxs.front().n_vertices() || cx.max_dim() != cxs.front().max_dim()) {
            throw ArgumentError("layer complexes differ in vertex set or max_dim");
        }
    }
}

// Simplices of `from` missing in `minus`, in the given dimension order.
void append_difference(const FlagComplex& from, const FlagComplex& minus, bool faces_first,
                       std::size_t time, EventKind kind, std::vector<FiltrationEvent>& out) {
    const int top = from.max_dim();
    for (int step = 0; step <= top; ++step) {
        const int p = faces_first ? step : top - step;
        const auto a = from.simplices(p);
        const auto b = minus.simplices(p);
        std::vector<Simplex> diff;
        std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
        for (auto& s : diff) out.push_back({time, kind, s});
    }
}

// One simplex of the cone filtration.
struct ConeColumn {
    int dim = 0;
    bool cone = false;
    std::size_t event = 0;  // 1-based zigzag event index the column stands for
};

void add_into(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& source,
              std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

}  // namespace

ZigzagFiltration build_filtration(const std::vector<FlagComplex>& layer_complexes) {
    check_compatible(layer_complexes);
    const auto& first = layer_complexes.front();
    ZigzagFiltration f;
    f.n_layers = layer_complexes.size();
    f.n_vertices = first.n_vertices();
    f.max_dim = first.max_dim();

    const FlagComplex empty = FlagComplex::from_simplices(first.n_vertices(), first.max_dim(), {});
    append_difference(first, empty, true, 0, EventKind::insert, f.events);
    for (std::size_t j = 0; j + 1 < layer_complexes.size(); ++j) {
        const auto& cur = layer_complexes[j];
        const auto& next = layer_complexes[j + 1];
        const FlagComplex mid = intersect(cur, next);
        append_difference(cur, mid, false, 2 * j + 1, EventKind::remove, f.events);
        append_difference(next, mid, true, 2 * j + 2, EventKind::insert, f.events);
    }
    return f;
}

std::vector<FlagComplex> zigzag_states(const std::vector<FlagComplex>& layer_complexes) {
    check_compatible(layer_complexes);
    std::vector<FlagComplex> states;
    states.reserve(2 * layer_complexes.size() - 1);
    for (std::size_t j = 0; j < layer_complexes.size(); ++j) {
        if (j > 0) states.push_back(intersect(layer_complexes[j - 1], layer_complexes[j]));
        states.push_back(layer_complexes[j]);
    }
    return states;
}

PersistenceDiagram compute_zigzag(const ZigzagFiltration& filtration) {
    if (filtration.n_layers < 2) throw ValidationError("filtration needs at least 2 layers");
    const std::size_t last = filtration.last_index();
    const int report_dims = filtration.max_dim;  // homology in 0..max_dim-1

    // Cone filtration columns. Index 0 is the cone vertex; insertion copies follow
    // in event order; cones of deleted copies are appended afterwards.
    std::vector<ConeColumn> info{{0, false, 0}};
    std::vector<std::vector<std::uint32_t>> boundary{{}};

    std::unordered_map<Simplex, std::uint32_t, SimplexHash> live;
    std::vector<std::uint32_t> live_cofaces{0};
    std::vector<std::uint32_t> deleted;          // copies in deletion order
    std::vector<std::size_t> deletion_event{0};  // per copy

    // block_end[t] = zigzag events processed once the complex at index t is complete.
    std::vector<std::size_t> block_end(last + 1, 0);
    std::size_t event_no = 0;
    std::size_t current_time = 0;

    auto close_blocks_until = [&](std::size_t t) {
        for (std::size_t s = current_time; s < t; ++s) block_end[s] = event_no;
        current_time = t;
    };

    auto insert = [&](const Simplex& s) {
        if (live.count(s)) throw ValidationError("insert of a simplex that is already present");
        std::vector<std::uint32_t> bd;
        if (s.dim() > 0) {
            bd.reserve(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                auto it = live.find(s.facet(i));
                if (it == live.end()) throw ValidationError("insert before all faces are present");
                bd.push_back(it->second);
            }
            std::sort(bd.begin(), bd.end());
            for (auto f : bd) ++live_cofaces[f];
        }
        const auto id = static_cast<std::uint32_t>(info.size());
        info.push_back({s.dim(), false, ++event_no});
        boundary.push_back(std::move(bd));
        live_cofaces.push_back(0);
        deletion_event.push_back(0);
        live.emplace(s, id);
    };

    auto remove = [&](const Simplex& s) {
        auto it = live.find(s);
        if (it == live.end()) throw ValidationError("delete of a simplex that is not present");
        const auto id = it->second;
        if (live_cofaces[id] != 0) throw ValidationError("delete while a coface is still present");
        for (auto f : boundary[id]) --live_cofaces[f];
        deletion_event[id] = ++event_no;
        deleted.push_back(id);
        live.erase(it);
    };

    for (const auto& ev : filtration.events) {
        if (ev.time < current_time || ev.time > last) throw ValidationError("event times out of order");
        if (ev.simplex.dim() > filtration.max_dim) throw ValidationError("event simplex exceeds max_dim");
        const bool odd = ev.time % 2 == 1;
        if (odd != (ev.kind == EventKind::remove)) {
            throw ValidationError("deletions must lead into odd indices and insertions into even ones");
        }
        close_blocks_until(ev.time);
        if (ev.kind == EventKind::insert) {
            insert(ev.simplex);
        } else {
            remove(ev.simplex);
        }
    }
    close_blocks_until(last);
    block_end[last] = event_no;

    // Close the zigzag with the empty complex: delete what is left, cofaces first.
    std::vector<std::uint32_t> rest;
    rest.reserve(live.size());
    for (const auto& [s, id] : live) rest.push_back(id);
    std::sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) {
        return info[a].dim > info[b].dim || (info[a].dim == info[b].dim && a > b);
    });
    for (auto id : rest) {
        deletion_event[id] = ++event_no;
        deleted.push_back(id);
    }

    // Cones in reverse deletion order, so every cone follows the cones of its faces.
    std::vector<std::uint32_t> cone_of(info.size(), 0);
    for (auto it = deleted.rbegin(); it != deleted.rend(); ++it) {
        const auto id = *it;
        std::vector<std::uint32_t> bd{id};
        if (info[id].dim == 0) {
            bd.push_back(0);
        } else {
            for (auto f : boundary[id]) bd.push_back(cone_of[f]);
        }
        std::sort(bd.begin(), bd.end());
        cone_of[id] = static_cast<std::uint32_t>(info.size());
        info.push_back({info[id].dim + 1, true, deletion_event[id]});
        boundary.push_back(std::move(bd));
    }

    // Column reduction with clearing, highest dimension first.
    const std::size_t n = info.size();
    constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> pivot_of_row(n, kNone);
    std::vector<char> cleared(n, 0);
    std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(filtration.max_dim) + 2);
    for (std::size_t j = 0; j < n; ++j) by_dim[static_cast<std::size_t>(info[j].dim)].push_back(j);

    std::vector<std::uint32_t> scratch;
    for (std::size_t d = by_dim.size(); d-- > 1;) {
        for (std::size_t j : by_dim[d]) {
            if (cleared[j]) {
                boundary[j].clear();
                continue;
            }
            auto& col = boundary[j];
            while (!col.empty() && pivot_of_row[col.back()] != kNone) {
                add_into(col, boundary[pivot_of_row[col.back()]], scratch);
            }
            if (!col.empty()) {
                pivot_of_row[col.back()] = static_cast<std::uint32_t>(j);
                cleared[col.back()] = 1;
            }
        }
    }

    // Column index of each zigzag event's end complex, for coarsening.
    auto coarse_first = [&](std::size_t fine_birth) {
        return static_cast<std::size_t>(std::lower_bound(block_end.begin(), block_end.end(), fine_birth) -
                                        block_end.begin());
    };
    auto coarse_last = [&](std::size_t fine_death) -> std::ptrdiff_t {
        return (std::upper_bound(block_end.begin(), block_end.end(), fine_death) - block_end.begin()) - 1;
    };

    PersistenceDiagram diagram;
    diagram.n_layers = filtration.n_layers;
    diagram.dims.assign(static_cast<std::size_t>(report_dims), {});

    for (std::size_t row = 1; row < n; ++row) {
        const auto j = pivot_of_row[row];
        if (j == kNone) continue;
        const auto& pos = info[row];
        const auto& neg = info[j];
        // The earlier event is the birth: inserting s creates a dim(s) class,
        // deleting s creates a dim(s)-1 class (a cone column has dim(s)+1).
        const auto& born = pos.event < neg.event ? pos : neg;
        const int dim = born.cone ? born.dim - 2 : born.dim;
        if (dim < 0 || dim >= report_dims) continue;
        const std::size_t birth_event = std::min(pos.event, neg.event);
        const std::size_t death_event = std::max(pos.event, neg.event);
        // Alive on fine complexes [birth_event, death_event - 1].
        const std::size_t b = coarse_first(birth_event);
        const std::ptrdiff_t d = coarse_last(death_event - 1);
        if (b > last || d < 0 || static_cast<std::ptrdiff_t>(b) > d) continue;
        const auto du = static_cast<std::size_t>(d);
        diagram.dims[static_cast<std::size_t>(dim)].push_back({b, du, du == last});
    }
    for (auto& ivs : diagram.dims) std::sort(ivs.begin(), ivs.end());
    return diagram;
}

EffectiveInterval to_effective(const Interval& iv) {
    const std::size_t b = iv.birth % 2 == 1 ? iv.birth + 1 : iv.birth;
    const std::size_t d = iv.death % 2 == 1 ? iv.death + 1 : iv.death;
    return {b / 2, d / 2, iv.right_open};
}

EffectiveDiagram to_effective(const PersistenceDiagram& diagram) {
    EffectiveDiagram out;
    out.n_layers = diagram.n_layers;
    out.dims.reserve(diagram.dims.size());
    for (const auto& ivs : diagram.dims) {
        std::vector<EffectiveInterval> eff;
        eff.reserve(ivs.size());
        for (const auto& iv : ivs) eff.push_back(to_effective(iv));
        std::sort(eff.begin(), eff.end());
        out.dims.push_back(std::move(eff));
    }
    return out;
}

std::uint64_t CountGrid::total() const {
    std::uint64_t t = 0;
    for (auto c : cells) t += c;
    return t;
}

EffectiveImage effective_image(const std::vector<EffectiveInterval>& intervals, std::size_t n_layers) {
    EffectiveImage img{n_layers, CountGrid(n_layers), CountGrid(n_layers)};
    for (const auto& iv : intervals) {
        if (iv.birth_layer > iv.death_layer || iv.death_layer >= n_layers) {
            throw ValidationError("effective interval outside the layer range");
        }
        ++img.counts.at(iv.birth_layer, iv.death_layer);
        if (iv.right_open) ++img.right_open.at(iv.birth_layer, iv.death_layer);
    }
    return img;
}

CountGrid persistence_image(const std::vector<Interval>& intervals, std::size_t n_layers) {
    CountGrid grid(2 * n_layers - 1);
    for (const auto& iv : intervals) {
        if (iv.birth > iv.death || iv.death >= grid.size) throw ValidationError("interval outside the index range");
        ++grid.at(iv.birth, iv.death);
    }
    return grid;
}

CountGrid aggregate_image(const CountGrid& raw, std::size_t n_layers) {
    if (raw.size != 2 * n_layers - 1) throw ArgumentError("raw image size does not match n_layers");
    CountGrid out(n_layers);
    auto term = [&](std::ptrdiff_t b, std::ptrdiff_t d) -> std::uint64_t {
        if (b < 0 || d < 0) return 0;
        return raw.at(static_cast<std::size_t>(b), static_cast<std::size_t>(d));
    };
    for (std::size_t lb = 0; lb < n_layers; ++lb) {
        for (std::size_t ld = lb; ld < n_layers; ++ld) {
            const auto b = static_cast<std::ptrdiff_t>(2 * lb);
            const auto d = static_cast<std::ptrdiff_t>(2 * ld);
            out.at(lb, ld) = term(b, d) + term(b - 1, d) + term(b, d - 1) + term(b - 1, d - 1);
        }
    }
    return out;
}

}  // namespace zzt
