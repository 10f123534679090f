#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "zzt/error.hpp"
#include "zzt/layerstack.hpp"
#include "zzt/oracle.hpp"
#include "zzt/pipeline.hpp"
#include "zzt/pruning.hpp"
#include "zzt/serialize.hpp"
#include "zzt/synth.hpp"

namespace zzt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Keys accepted in the config file besides the pipeline ones.
struct CliSettings {
    PipelineConfig pipeline;
    double alpha = kDefaultPruneAlpha;
    double threshold = kDefaultPruneThreshold;
    std::uint64_t seed = 0;
};

struct PipelineFlags {
    std::string config;
    std::size_t k = 0;
    int m = 0;
    std::size_t subset_size = 0;
    std::size_t threads = 0;
    std::vector<double> alphas;
    std::vector<int> dims;
    std::size_t vr_target = 0;
    std::size_t vr_tolerance = 0;
    bool vr_keep_short = false;
    bool strict_death = false;
    bool paper_literal = false;
    std::uint64_t seed = 0;
    CLI::App* app = nullptr;
};

void add_pipeline_flags(CLI::App* sub, PipelineFlags& f) {
    f.app = sub;
    sub->add_option("--config", f.config, "JSON config file (flags override its values)");
    sub->add_option("--k", f.k, "neighbors per point in the kNN graph");
    sub->add_option("--m", f.m, "maximum simplex dimension");
    sub->add_option("--subset-size", f.subset_size, "points per subset");
    sub->add_option("--threads", f.threads, "worker thread cap");
    sub->add_option("--alphas", f.alphas, "weight exponents")->delimiter(',');
    sub->add_option("--dims", f.dims, "homology dimensions")->delimiter(',');
    sub->add_option("--vr-target", f.vr_target, "beta_0 target for short-edge filtering");
    sub->add_option("--vr-tolerance", f.vr_tolerance, "beta_0 tolerance");
    sub->add_flag("--vr-keep-short", f.vr_keep_short, "keep edges <= R instead of dropping them");
    sub->add_flag("--strict-death", f.strict_death, "count deaths strictly after the later layer");
    sub->add_flag("--paper-literal", f.paper_literal, "per-layer births normalization");
    sub->add_option("--seed", f.seed, "random seed");
}

bool given(const PipelineFlags& f, const char* name) { return f.app->count(name) > 0; }

CliSettings resolve_settings(const PipelineFlags& f) {
    CliSettings s;
    if (const char* dir = std::getenv("ZZT_CACHE_DIR"); dir && *dir) s.pipeline.cache_dir = fs::path(dir);
    if (!f.config.empty()) {
        json j = read_json_file(f.config);
        if (!j.is_object()) throw ArgumentError("config must be a JSON object");
        for (const char* key : {"alpha", "threshold", "seed"}) {
            if (!j.contains(key)) continue;
            if (!j[key].is_number()) throw ArgumentError(std::string("config key '") + key + "' must be a number");
            if (std::string(key) == "alpha") s.alpha = j[key].get<double>();
            if (std::string(key) == "threshold") s.threshold = j[key].get<double>();
            if (std::string(key) == "seed") s.seed = j[key].get<std::uint64_t>();
            j.erase(key);
        }
        apply_config_json(j, s.pipeline);
    }
    auto& p = s.pipeline;
    if (given(f, "--k")) p.k_nn = f.k;
    if (given(f, "--m")) p.m = f.m;
    if (given(f, "--subset-size")) p.subset_size = f.subset_size;
    if (given(f, "--threads")) p.threads = f.threads;
    if (given(f, "--alphas")) p.alphas = f.alphas;
    if (given(f, "--dims")) p.homology_dims = f.dims;
    if (given(f, "--vr-target") || given(f, "--vr-tolerance") || f.vr_keep_short) {
        VRCalibration vr = p.vr.value_or(VRCalibration{});
        if (given(f, "--vr-target")) vr.beta0_target = f.vr_target;
        if (given(f, "--vr-tolerance")) vr.beta0_tolerance = f.vr_tolerance;
        if (f.vr_keep_short) vr.mode = EdgeFilter::keep_short;
        p.vr = vr;
    }
    if (f.strict_death) p.inclusive_death = false;
    if (f.paper_literal) p.normalization = BirthNormalization::paper_literal;
    if (given(f, "--seed")) s.seed = f.seed;
    p.validate();
    return s;
}

std::string alpha_tag(double a) {
    std::ostringstream os;
    os << a;
    return os.str();
}

std::string index_tag(std::size_t i) {
    std::ostringstream os;
    os << std::setw(3) << std::setfill('0') << i;
    return os.str();
}

void write_run(const RunResult& r, const PipelineConfig& cfg, const fs::path& out_dir, bool with_descriptors) {
    fs::create_directories(out_dir);
    json summary{{"n_layers", r.n_layers},
                 {"n_subsets", r.subsets.size()},
                 {"subset_size", r.subset_size},
                 {"subset_clamped", r.subset_clamped},
                 {"config", config_to_json(cfg)}};
    for (std::size_t s = 0; s < r.subsets.size(); ++s) {
        write_text_file(out_dir / ("diagram_s" + index_tag(s) + ".json"), dump_json(diagram_to_json(r.subsets[s].diagram)));
        if (!r.subsets[s].radii.empty()) summary["radii"].push_back(r.subsets[s].radii);
    }
    for (std::size_t p = 0; p < r.pooled_images.size(); ++p) {
        write_text_file(out_dir / ("image_H" + std::to_string(p) + ".json"),
                        dump_json(image_to_json(r.pooled_images[p], static_cast<int>(p))));
    }
    if (with_descriptors) {
        json index = json::array();
        for (const auto& d : r.descriptors) {
            std::string name = to_string(d.kind) + "_H" + std::to_string(d.p);
            if (d.alpha) name += "_alpha" + alpha_tag(*d.alpha);
            name += ".csv";
            write_text_file(out_dir / name, series_to_csv(d.series));
            json entry{{"file", name}, {"kind", to_string(d.kind)}, {"p", d.p}, {"degenerate", d.series.degenerate}};
            entry["alpha"] = d.alpha ? json(*d.alpha) : json(nullptr);
            index.push_back(std::move(entry));
        }
        summary["descriptors"] = std::move(index);
    }
    write_text_file(out_dir / "run.json", dump_json(summary));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zigzag persistence of layer-indexed point clouds", "zzt"};
    app.require_subcommand(1);

    std::string stack_path;
    std::string compute_out = "zzt_out";
    std::string descriptors_out = "zzt_out";
    std::string prune_out, diff_out, synth_out, oracle_out;

    auto* validate = app.add_subcommand("validate", "check a ZZLS layer stack");
    validate->add_option("stack", stack_path, "ZZLS directory")->required();

    PipelineFlags compute_flags;
    auto* compute = app.add_subcommand("compute", "zigzag diagrams and effective images");
    compute->add_option("stack", stack_path)->required();
    compute->add_option("--out", compute_out, "output directory")->capture_default_str();
    add_pipeline_flags(compute, compute_flags);

    PipelineFlags desc_flags;
    auto* descriptors = app.add_subcommand("descriptors", "births frequency, inter-layer persistence, Betti curves");
    descriptors->add_option("stack", stack_path)->required();
    descriptors->add_option("--out", descriptors_out, "output directory")->capture_default_str();
    add_pipeline_flags(descriptors, desc_flags);

    PipelineFlags prune_flags;
    double threshold = kDefaultPruneThreshold;
    double prune_alpha = kDefaultPruneAlpha;
    auto* prune = app.add_subcommand("prune", "layers whose inter-layer persistence is near its maximum");
    prune->add_option("stack", stack_path)->required();
    prune->add_option("--threshold", threshold, "fraction of the maximum");
    prune->add_option("--alpha", prune_alpha, "weight exponent for the inter-layer persistence");
    prune->add_option("--out", prune_out, "also write the report to this file");
    add_pipeline_flags(prune, prune_flags);

    std::size_t n_layers = 0, window = 5, step = 2;
    auto* windows = app.add_subcommand("windows", "sliding blocks of adjacent layers");
    windows->add_option("--layers", n_layers, "number of layers")->required();
    windows->add_option("--window", window, "block length");
    windows->add_option("--step", step, "offset between blocks");

    std::string img_a, img_b;
    bool diff_csv = false;
    auto* diff = app.add_subcommand("diff", "normalized element-wise difference of two effective images");
    diff->add_option("image_a", img_a)->required();
    diff->add_option("image_b", img_b)->required();
    diff->add_flag("--csv", diff_csv, "emit CSV instead of JSON");
    diff->add_option("--out", diff_out, "write to file instead of stdout");

    PipelineFlags scan_flags;
    std::size_t k_min = 1, k_max = 15;
    auto* scan = app.add_subcommand("scan-k", "total interval counts per k");
    scan->add_option("stack", stack_path)->required();
    scan->add_option("--k-min", k_min);
    scan->add_option("--k-max", k_max);
    add_pipeline_flags(scan, scan_flags);

    std::string spec_path, kind;
    SynthSpec synth_spec;
    std::size_t event_layer = 0;
    auto* synth = app.add_subcommand("synth", "write a synthetic ZZLS stack");
    synth->add_option("spec", spec_path, "JSON spec file");
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--kind", kind);
    synth->add_option("--n-points", synth_spec.n_points);
    synth->add_option("--n-layers", synth_spec.n_layers);
    synth->add_option("--dim", synth_spec.dim);
    synth->add_option("--noise", synth_spec.noise_scale);
    synth->add_option("--seed", synth_spec.seed);
    synth->add_option("--event-layer", event_layer);

    PipelineFlags oracle_flags;
    auto* oracle = app.add_subcommand("oracle-check", "verify diagrams against brute-force homology");
    oracle->add_option("stack", stack_path)->required();
    oracle->add_option("--out", oracle_out, "also write the report to this file");
    add_pipeline_flags(oracle, oracle_flags);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) {
            const auto stack = read_layerstack(stack_path);
            out << dump_json({{"valid", true},
                              {"n_layers", stack.n_layers()},
                              {"n_points", stack.n_points()},
                              {"dim", stack.dim()}});
            return kExitOk;
        }
        if (compute->parsed() || descriptors->parsed()) {
            const auto& flags = compute->parsed() ? compute_flags : desc_flags;
            const auto settings = resolve_settings(flags);
            const auto stack = read_layerstack(stack_path);
            const auto result = zzt::run(stack, settings.pipeline);
            const auto& out_path = compute->parsed() ? compute_out : descriptors_out;
            write_run(result, settings.pipeline, out_path, descriptors->parsed());
            out << dump_json({{"out", out_path}, {"n_subsets", result.subsets.size()}});
            return kExitOk;
        }
        if (prune->parsed()) {
            auto settings = resolve_settings(prune_flags);
            if (prune->count("--threshold")) settings.threshold = threshold;
            if (prune->count("--alpha")) settings.alpha = prune_alpha;
            settings.pipeline.homology_dims = {1};
            settings.pipeline.alphas = {settings.alpha};
            settings.pipeline.validate();
            const auto stack = read_layerstack(stack_path);
            const auto result = zzt::run(stack, settings.pipeline);
            const DescriptorConfig dc{settings.alpha, 1, settings.pipeline.inclusive_death,
                                      settings.pipeline.normalization};
            const auto zbar = weighted_interlayer_series(result.pooled_images[1], dc);
            const auto report = prune_layers(zbar, settings.threshold, settings.alpha);
            const auto text = dump_json(prune_report_to_json(report));
            if (!prune_out.empty()) write_text_file(prune_out, text);
            out << text;
            return kExitOk;
        }
        if (windows->parsed()) {
            out << dump_json(windows_to_json(sliding_windows(n_layers, window, step)));
            return kExitOk;
        }
        if (diff->parsed()) {
            const auto a = image_from_json(read_json_file(img_a));
            const auto b = image_from_json(read_json_file(img_b));
            const auto grid = epi_difference(a, b);
            const auto text = diff_csv ? grid_to_csv(grid) : dump_json(grid_to_json(grid));
            if (!diff_out.empty()) {
                write_text_file(diff_out, text);
            } else {
                out << text;
            }
            return kExitOk;
        }
        if (scan->parsed()) {
            const auto settings = resolve_settings(scan_flags);
            const auto stack = read_layerstack(stack_path);
            json rows = json::array();
            for (const auto& row : scan_k(stack, k_min, k_max, settings.pipeline)) {
                rows.push_back({{"k", row.k}, {"interval_counts", row.interval_counts}});
            }
            out << dump_json({{"rows", std::move(rows)}});
            return kExitOk;
        }
        if (synth->parsed()) {
            SynthSpec spec;
            if (!spec_path.empty()) {
                const json j = read_json_file(spec_path);
                for (const auto& [key, val] : j.items()) {
                    if (key == "kind") spec.kind = parse_synth_kind(val.get<std::string>());
                    else if (key == "n_points") spec.n_points = val.get<std::size_t>();
                    else if (key == "n_layers") spec.n_layers = val.get<std::size_t>();
                    else if (key == "dim") spec.dim = val.get<std::size_t>();
                    else if (key == "noise_scale") spec.noise_scale = val.get<double>();
                    else if (key == "seed") spec.seed = val.get<std::uint64_t>();
                    else if (key == "event_layer") spec.event_layer = val.get<std::size_t>();
                    else throw ArgumentError("unknown synth spec key: " + key);
                }
            }
            if (synth->count("--kind")) spec.kind = parse_synth_kind(kind);
            if (synth->count("--n-points")) spec.n_points = synth_spec.n_points;
            if (synth->count("--n-layers")) spec.n_layers = synth_spec.n_layers;
            if (synth->count("--dim")) spec.dim = synth_spec.dim;
            if (synth->count("--noise")) spec.noise_scale = synth_spec.noise_scale;
            if (synth->count("--seed")) spec.seed = synth_spec.seed;
            if (synth->count("--event-layer")) spec.event_layer = event_layer;
            write_layerstack(generate(spec), synth_out);
            out << dump_json({{"out", synth_out}, {"kind", to_string(spec.kind)}});
            return kExitOk;
        }
        if (oracle->parsed()) {
            const auto settings = resolve_settings(oracle_flags);
            const auto stack = read_layerstack(stack_path);
            const auto subset = std::min(settings.pipeline.subset_size, stack.n_points());
            json reports = json::array();
            bool passed = true;
            for (const auto& part : partition_subsets(stack, subset)) {
                const auto complexes = layer_complexes(part, settings.pipeline);
                const auto diagram = compute_zigzag(build_filtration(complexes));
                const auto report = verify_diagram(diagram, zigzag_states(complexes));
                passed = passed && report.passed();
                reports.push_back(oracle_report_to_json(report));
            }
            const auto text = dump_json({{"passed", passed}, {"subsets", std::move(reports)}});
            if (!oracle_out.empty()) write_text_file(oracle_out, text);
            out << text;
            return passed ? kExitOk : kExitValidation;
        }
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace zzt::cli
