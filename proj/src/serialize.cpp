#include "zzt/serialize.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "zzt/error.hpp"

namespace zzt {

using nlohmann::json;

namespace {

json count_grid_to_json(const CountGrid& g) {
    json rows = json::array();
    for (std::size_t b = 0; b < g.size; ++b) {
        json row = json::array();
        for (std::size_t d = 0; d < g.size; ++d) row.push_back(g.at(b, d));
        rows.push_back(std::move(row));
    }
    return rows;
}

CountGrid count_grid_from_json(const json& rows, std::size_t n) {
    if (!rows.is_array() || rows.size() != n) throw ValidationError("image grid has the wrong number of rows");
    CountGrid g(n);
    for (std::size_t b = 0; b < n; ++b) {
        if (!rows[b].is_array() || rows[b].size() != n) throw ValidationError("image grid row has the wrong length");
        for (std::size_t d = 0; d < n; ++d) {
            g.at(b, d) = rows[b][d].get<std::uint64_t>();
            if (d < b && g.at(b, d) != 0) throw ValidationError("image grid has mass below the diagonal");
        }
    }
    return g;
}

// Shortest round-trip decimal form.
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

json diagram_to_json(const PersistenceDiagram& diagram) {
    json out{{"format", "ZZPD"}, {"version", 1}, {"n_layers", diagram.n_layers}, {"dims", json::array()}};
    const auto eff = to_effective(diagram);
    for (std::size_t p = 0; p < diagram.dims.size(); ++p) {
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> raw;
        for (const auto& iv : diagram.dims[p]) ++raw[{iv.birth, iv.death}];
        std::map<EffectiveInterval, std::size_t> effective;
        for (const auto& iv : eff.dims[p]) ++effective[iv];

        json raw_rows = json::array();
        for (const auto& [bd, mult] : raw) raw_rows.push_back({bd.first, bd.second, mult});
        json eff_rows = json::array();
        for (const auto& [iv, mult] : effective) {
            eff_rows.push_back({iv.birth_layer, iv.death_layer, mult, iv.right_open});
        }
        out["dims"].push_back({{"p", p}, {"raw", std::move(raw_rows)}, {"effective", std::move(eff_rows)}});
    }
    return out;
}

PersistenceDiagram diagram_from_json(const json& j) {
    if (j.value("format", "") != "ZZPD") throw ValidationError("not a ZZPD diagram");
    PersistenceDiagram d;
    d.n_layers = j.at("n_layers").get<std::size_t>();
    if (d.n_layers < 2) throw ValidationError("diagram needs at least 2 layers");
    const std::size_t last = d.last_index();
    for (const auto& entry : j.at("dims")) {
        const auto p = entry.at("p").get<std::size_t>();
        if (p != d.dims.size()) throw ValidationError("diagram dimensions must be listed in order");
        auto& ivs = d.dims.emplace_back();
        for (const auto& row : entry.at("raw")) {
            const auto b = row.at(0).get<std::size_t>();
            const auto e = row.at(1).get<std::size_t>();
            const auto mult = row.at(2).get<std::size_t>();
            if (b > e || e > last) throw ValidationError("diagram interval out of range");
            for (std::size_t i = 0; i < mult; ++i) ivs.push_back({b, e, e == last});
        }
        std::sort(ivs.begin(), ivs.end());
    }
    return d;
}

json image_to_json(const EffectiveImage& img, int p) {
    return json{{"format", "ZZEI"},
                {"version", 1},
                {"n_layers", img.n_layers},
                {"p", p},
                {"counts", count_grid_to_json(img.counts)},
                {"right_open", count_grid_to_json(img.right_open)}};
}

EffectiveImage image_from_json(const json& j) {
    if (j.value("format", "") != "ZZEI") throw ValidationError("not a ZZEI image");
    const auto n = j.at("n_layers").get<std::size_t>();
    EffectiveImage img{n, count_grid_from_json(j.at("counts"), n), CountGrid(n)};
    if (j.contains("right_open")) img.right_open = count_grid_from_json(j.at("right_open"), n);
    return img;
}

json grid_to_json(const RealGrid& grid) {
    json rows = json::array();
    for (std::size_t b = 0; b < grid.size; ++b) {
        json row = json::array();
        for (std::size_t d = 0; d < grid.size; ++d) row.push_back(grid.at(b, d));
        rows.push_back(std::move(row));
    }
    return json{{"n_layers", grid.size}, {"grid", std::move(rows)}};
}

json prune_report_to_json(const PruneReport& report) {
    return json{{"layers", report.layers_to_remove},
                {"threshold", report.threshold},
                {"alpha", report.alpha_used},
                {"zbar", report.zbar.values}};
}

json oracle_report_to_json(const OracleReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back({{"kind", v.kind == OracleViolation::Kind::betti ? "betti" : "rank"},
                              {"index", v.index},
                              {"p", v.p},
                              {"expected", v.expected},
                              {"found", v.found}});
    }
    return json{{"passed", report.passed()},
                {"betti", report.betti},
                {"map_rank", report.map_rank},
                {"violations", std::move(violations)}};
}

json windows_to_json(const std::vector<std::vector<std::size_t>>& blocks) {
    return json{{"count", blocks.size()}, {"blocks", blocks}};
}

std::string series_to_csv(const DescriptorSeries& series) {
    std::ostringstream os;
    os << "layer,value,subset_mean,subset_std\n";
    for (std::size_t l = 0; l < series.values.size(); ++l) {
        os << l << ',' << format_double(series.values[l]) << ',';
        if (series.subset_mean) os << format_double((*series.subset_mean)[l]);
        os << ',';
        if (series.subset_std) os << format_double((*series.subset_std)[l]);
        os << '\n';
    }
    return os.str();
}

DescriptorSeries series_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "layer,value,subset_mean,subset_std") {
        throw ValidationError("series CSV: unexpected header");
    }
    DescriptorSeries s;
    std::vector<double> mean, sd;
    bool has_mean = true, has_std = true;
    auto parse = [](const std::string& field) {
        double v = 0.0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
            throw ValidationError("series CSV: bad number '" + field + "'");
        }
        return v;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() != 4) throw ValidationError("series CSV: expected 4 columns");
        if (parse(fields[0]) != static_cast<double>(s.values.size())) throw ValidationError("series CSV: layers out of order");
        s.values.push_back(parse(fields[1]));
        if (fields[2].empty()) has_mean = false; else mean.push_back(parse(fields[2]));
        if (fields[3].empty()) has_std = false; else sd.push_back(parse(fields[3]));
    }
    if (has_mean && !s.values.empty()) s.subset_mean = std::move(mean);
    if (has_std && !s.values.empty()) s.subset_std = std::move(sd);
    return s;
}

std::string grid_to_csv(const RealGrid& grid) {
    std::ostringstream os;
    for (std::size_t b = 0; b < grid.size; ++b) {
        for (std::size_t d = 0; d < grid.size; ++d) {
            if (d) os << ',';
            os << format_double(grid.at(b, d));
        }
        os << '\n';
    }
    return os.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace zzt
