#include "zzt/pipeline.hpp"

#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "zzt/error.hpp"
#include "zzt/serialize.hpp"

namespace zzt {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kCacheVersion = "zzt-diagram-v1";

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 1099511628211ull;
        }
    }
    template <class T>
    void value(const T& v) {
        bytes(&v, sizeof(v));
    }
    std::uint64_t digest() const { return h_; }

private:
    std::uint64_t h_ = 1469598103934665603ull;
};

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

std::optional<SubsetResult> cache_load(const fs::path& file, std::size_t n_layers) {
    std::lock_guard lock(cache_mutex());
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        const json j = json::parse(in);
        SubsetResult r;
        r.diagram = diagram_from_json(j.at("diagram"));
        if (r.diagram.n_layers != n_layers) return std::nullopt;
        r.radii = j.at("radii").get<std::vector<double>>();
        return r;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are recomputed and overwritten
    }
}

void cache_store(const fs::path& file, const SubsetResult& r) {
    std::lock_guard lock(cache_mutex());
    fs::create_directories(file.parent_path());
    const json j{{"diagram", diagram_to_json(r.diagram)}, {"radii", r.radii}};
    const fs::path tmp = file.string() + ".tmp";
    write_text_file(tmp, dump_json(j));
    fs::rename(tmp, file);
}

void fill_images(SubsetResult& r) {
    const auto eff = to_effective(r.diagram);
    r.images.clear();
    for (const auto& ivs : eff.dims) r.images.push_back(effective_image(ivs, r.diagram.n_layers));
}

EdgeFilter parse_filter(const std::string& s) {
    if (s == "drop_short") return EdgeFilter::drop_short;
    if (s == "keep_short") return EdgeFilter::keep_short;
    throw ArgumentError("vr.edge_filter must be drop_short or keep_short");
}

BirthNormalization parse_normalization(const std::string& s) {
    if (s == "global") return BirthNormalization::global;
    if (s == "paper_literal") return BirthNormalization::paper_literal;
    throw ArgumentError("normalization must be global or paper_literal");
}

template <class T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ArgumentError("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

void PipelineConfig::validate() const {
    if (k_nn < 1) throw ArgumentError("k_nn must be >= 1");
    if (m < 2) throw ArgumentError("m must be >= 2");
    if (subset_size < 1) throw ArgumentError("subset_size must be >= 1");
    for (int p : homology_dims) {
        if (p < 0 || p > m - 1) throw ArgumentError("homology_dims must lie in [0, m-1]");
    }
    for (double a : alphas) {
        if (!std::isfinite(a)) throw ArgumentError("alphas must be finite");
    }
    if (vr && vr->beta0_target < 1) throw ArgumentError("vr.beta0_target must be >= 1");
}

void apply_config_json(const json& j, PipelineConfig& cfg) {
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "k_nn") cfg.k_nn = get_as<std::size_t>(val, key);
        else if (key == "m") cfg.m = get_as<int>(val, key);
        else if (key == "subset_size") cfg.subset_size = get_as<std::size_t>(val, key);
        else if (key == "alphas") cfg.alphas = get_as<std::vector<double>>(val, key);
        else if (key == "homology_dims") cfg.homology_dims = get_as<std::vector<int>>(val, key);
        else if (key == "inclusive_death") cfg.inclusive_death = get_as<bool>(val, key);
        else if (key == "normalization") cfg.normalization = parse_normalization(get_as<std::string>(val, key));
        else if (key == "max_simplices") cfg.max_simplices = get_as<std::size_t>(val, key);
        else if (key == "threads") cfg.threads = get_as<std::size_t>(val, key);
        else if (key == "cache_dir") cfg.cache_dir = fs::path(get_as<std::string>(val, key));
        else if (key == "vr") {
            if (val.is_null()) {
                cfg.vr.reset();
                continue;
            }
            if (!val.is_object()) throw ArgumentError("config key 'vr' must be an object or null");
            VRCalibration vr = cfg.vr.value_or(VRCalibration{});
            for (const auto& [vk, vv] : val.items()) {
                if (vk == "beta0_target") vr.beta0_target = get_as<std::size_t>(vv, vk);
                else if (vk == "beta0_tolerance") vr.beta0_tolerance = get_as<std::size_t>(vv, vk);
                else if (vk == "edge_filter") vr.mode = parse_filter(get_as<std::string>(vv, vk));
                else throw ArgumentError("unknown config key: vr." + vk);
            }
            cfg.vr = vr;
        } else {
            throw ArgumentError("unknown config key: " + key);
        }
    }
    cfg.validate();
}

json config_to_json(const PipelineConfig& cfg) {
    json j{{"k_nn", cfg.k_nn},
           {"m", cfg.m},
           {"subset_size", cfg.subset_size},
           {"alphas", cfg.alphas},
           {"homology_dims", cfg.homology_dims},
           {"inclusive_death", cfg.inclusive_death},
           {"normalization", cfg.normalization == BirthNormalization::global ? "global" : "paper_literal"},
           {"max_simplices", cfg.max_simplices}};
    if (cfg.vr) {
        j["vr"] = {{"beta0_target", cfg.vr->beta0_target},
                   {"beta0_tolerance", cfg.vr->beta0_tolerance},
                   {"edge_filter", cfg.vr->mode == EdgeFilter::drop_short ? "drop_short" : "keep_short"}};
    } else {
        j["vr"] = nullptr;
    }
    return j;
}

std::string to_string(DescriptorKind kind) {
    switch (kind) {
        case DescriptorKind::births: return "births";
        case DescriptorKind::zbar: return "zbar";
        case DescriptorKind::betti: return "betti";
    }
    return "unknown";
}

std::uint64_t cache_key(const LayerStack& stack, const PipelineConfig& cfg) {
    Fnv1a h;
    h.bytes(kCacheVersion, std::strlen(kCacheVersion));
    h.value(static_cast<std::uint64_t>(cfg.k_nn));
    h.value(static_cast<std::int64_t>(cfg.m));
    h.value(static_cast<std::uint64_t>(cfg.vr.has_value()));
    if (cfg.vr) {
        h.value(static_cast<std::uint64_t>(cfg.vr->beta0_target));
        h.value(static_cast<std::uint64_t>(cfg.vr->beta0_tolerance));
        h.value(static_cast<std::uint64_t>(cfg.vr->mode));
    }
    h.value(static_cast<std::uint64_t>(stack.n_layers()));
    h.value(static_cast<std::uint64_t>(stack.n_points()));
    h.value(static_cast<std::uint64_t>(stack.dim()));
    for (const auto& layer : stack.layers()) h.bytes(layer.data().data(), layer.data().size() * sizeof(float));
    return h.digest();
}

std::vector<FlagComplex> layer_complexes(const LayerStack& stack, const PipelineConfig& cfg,
                                         std::vector<double>* radii) {
    const std::size_t L = stack.n_layers();
    std::vector<std::optional<FlagComplex>> slots(L);
    std::vector<double> r(L, 0.0);
    parallel_for(L, cfg.threads, [&](std::size_t j) {
        NeighborGraph g = knn_graph(stack.layer(j), cfg.k_nn);
        if (cfg.vr) {
            r[j] = calibrate_radius(g, cfg.vr->beta0_target, cfg.vr->beta0_tolerance);
            g = filter_short_edges(g, r[j], cfg.vr->mode);
        }
        slots[j].emplace(expand(g, cfg.m, cfg.max_simplices));
    });
    std::vector<FlagComplex> out;
    out.reserve(L);
    for (auto& s : slots) out.push_back(std::move(*s));
    if (radii) *radii = cfg.vr ? r : std::vector<double>{};
    return out;
}

SubsetResult compute_subset(const LayerStack& stack, const PipelineConfig& cfg) {
    std::optional<fs::path> cache_file;
    if (cfg.cache_dir) {
        cache_file = *cfg.cache_dir / (hex(cache_key(stack, cfg)) + ".json");
        if (auto hit = cache_load(*cache_file, stack.n_layers())) {
            fill_images(*hit);
            return std::move(*hit);
        }
    }
    SubsetResult r;
    const auto complexes = layer_complexes(stack, cfg, &r.radii);
    r.diagram = compute_zigzag(build_filtration(complexes));
    fill_images(r);
    if (cache_file) cache_store(*cache_file, r);
    return r;
}

std::vector<DescriptorEntry> compute_descriptors(const std::vector<SubsetResult>& subsets,
                                                 const std::vector<EffectiveImage>& pooled,
                                                 const PipelineConfig& cfg) {
    std::vector<DescriptorEntry> out;
    auto with_stats = [&](auto&& per_image) {
        std::vector<DescriptorSeries> per_subset;
        per_subset.reserve(subsets.size());
        for (const auto& s : subsets) per_subset.push_back(per_image(s));
        const auto stats = subset_stats(per_subset);
        return stats;
    };
    for (int p : cfg.homology_dims) {
        const auto ip = static_cast<std::size_t>(p);
        for (double alpha : cfg.alphas) {
            DescriptorConfig dc{alpha, p, cfg.inclusive_death, cfg.normalization};

            DescriptorEntry births{DescriptorKind::births, p, alpha, births_relative_frequency(pooled[ip], dc)};
            const auto bstats = with_stats([&](const SubsetResult& s) { return births_relative_frequency(s.images[ip], dc); });
            births.series.subset_mean = bstats.subset_mean;
            births.series.subset_std = bstats.subset_std;
            out.push_back(std::move(births));

            DescriptorEntry zbar{DescriptorKind::zbar, p, alpha, weighted_interlayer_series(pooled[ip], dc)};
            const auto zstats = with_stats([&](const SubsetResult& s) { return weighted_interlayer_series(s.images[ip], dc); });
            zbar.series.subset_mean = zstats.subset_mean;
            zbar.series.subset_std = zstats.subset_std;
            zbar.series.degenerate = zstats.degenerate;
            out.push_back(std::move(zbar));
        }
        // Betti numbers come from the raw diagrams; pooled counts add across subsets.
        DescriptorSeries pooled_betti;
        pooled_betti.values.assign(pooled[ip].n_layers, 0.0);
        for (const auto& s : subsets) {
            const auto curve = betti_curve(s.diagram, p);
            for (std::size_t l = 0; l < curve.values.size(); ++l) pooled_betti.values[l] += curve.values[l];
        }
        DescriptorEntry betti{DescriptorKind::betti, p, std::nullopt, std::move(pooled_betti)};
        const auto cstats = with_stats([&](const SubsetResult& s) { return betti_curve(s.diagram, p); });
        betti.series.subset_mean = cstats.subset_mean;
        betti.series.subset_std = cstats.subset_std;
        betti.series.degenerate = cstats.degenerate;
        out.push_back(std::move(betti));
    }
    return out;
}

RunResult run(const LayerStack& stack, const PipelineConfig& cfg) {
    cfg.validate();
    RunResult result;
    result.n_layers = stack.n_layers();
    result.subset_clamped = cfg.subset_size > stack.n_points();
    result.subset_size = result.subset_clamped ? stack.n_points() : cfg.subset_size;
    const auto parts = partition_subsets(stack, result.subset_size);

    // Parallelize across subsets when there are several, across layers otherwise.
    PipelineConfig inner = cfg;
    if (parts.size() > 1) inner.threads = 1;
    result.subsets.resize(parts.size());
    parallel_for(parts.size(), parts.size() > 1 ? cfg.threads : 1,
                 [&](std::size_t s) { result.subsets[s] = compute_subset(parts[s], inner); });

    const std::size_t dims = static_cast<std::size_t>(cfg.m);
    for (std::size_t p = 0; p < dims; ++p) {
        EffectiveImage pooled{stack.n_layers(), CountGrid(stack.n_layers()), CountGrid(stack.n_layers())};
        for (const auto& s : result.subsets) {
            for (std::size_t c = 0; c < pooled.counts.cells.size(); ++c) {
                pooled.counts.cells[c] += s.images[p].counts.cells[c];
                pooled.right_open.cells[c] += s.images[p].right_open.cells[c];
            }
        }
        result.pooled_images.push_back(std::move(pooled));
    }
    result.descriptors = compute_descriptors(result.subsets, result.pooled_images, cfg);
    return result;
}

std::vector<ScanRow> scan_k(const LayerStack& stack, std::size_t k_min, std::size_t k_max,
                            const PipelineConfig& cfg) {
    std::vector<ScanRow> rows;
    if (k_min > k_max) return rows;
    if (k_min < 1) throw ArgumentError("scan_k: k_min must be >= 1");
    const std::size_t subset = std::min(cfg.subset_size, stack.n_points());
    const auto parts = partition_subsets(stack, subset);
    for (std::size_t k = k_min; k <= k_max; ++k) {
        PipelineConfig c = cfg;
        c.k_nn = k;
        c.validate();
        ScanRow row{k, std::vector<std::size_t>(static_cast<std::size_t>(c.m), 0)};
        for (const auto& part : parts) {
            const auto r = compute_subset(part, c);
            for (std::size_t p = 0; p < r.diagram.dims.size(); ++p) row.interval_counts[p] += r.diagram.dims[p].size();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace zzt
