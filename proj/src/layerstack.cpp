#include "zzt/layerstack.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "zzt/error.hpp"

namespace zzt {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifest = "manifest.json";

static_assert(std::endian::native == std::endian::little,
              "ZZLS layer files are little-endian; big-endian hosts need byte swapping");

std::string layer_file_name(std::size_t j) {
    std::ostringstream os;
    os << "layer_";
    os.width(4);
    os.fill('0');
    os << j << ".f32";
    return os.str();
}

std::size_t manifest_count(const nlohmann::json& m, const char* key) {
    if (!m.contains(key) || !m[key].is_number_unsigned()) {
        throw ValidationError(std::string("manifest: missing or invalid '") + key + "'");
    }
    return m[key].get<std::size_t>();
}

}  // namespace

PointCloud::PointCloud(std::size_t n_points, std::size_t dim)
    : n_points_(n_points), dim_(dim), coords_(n_points * dim, 0.0f) {}

PointCloud::PointCloud(std::size_t n_points, std::size_t dim, std::vector<float> coords)
    : n_points_(n_points), dim_(dim), coords_(std::move(coords)) {
    if (coords_.size() != n_points_ * dim_) {
        throw ValidationError("point cloud: coordinate count does not match n_points x dim");
    }
}

PointCloud PointCloud::slice(std::size_t first, std::size_t count) const {
    if (first + count > n_points_) throw ArgumentError("point cloud slice out of range");
    auto begin = coords_.begin() + static_cast<std::ptrdiff_t>(first * dim_);
    return PointCloud(count, dim_,
                      std::vector<float>(begin, begin + static_cast<std::ptrdiff_t>(count * dim_)));
}

LayerStack::LayerStack(std::vector<PointCloud> layers, nlohmann::json meta)
    : layers_(std::move(layers)), meta_(std::move(meta)) {
    if (layers_.size() < 2) throw ValidationError("layer stack needs at least 2 layers");
    const auto n = layers_.front().n_points();
    const auto d = layers_.front().dim();
    if (n == 0 || d == 0) throw ValidationError("layer stack has empty point clouds");
    for (std::size_t j = 0; j < layers_.size(); ++j) {
        const auto& layer = layers_[j];
        if (layer.n_points() != n || layer.dim() != d) {
            throw ValidationError("layer " + std::to_string(j) + " shape differs from layer 0");
        }
        for (float x : layer.data()) {
            if (!std::isfinite(x)) {
                throw ValidationError("layer " + std::to_string(j) + " contains a non-finite value");
            }
        }
    }
}

LayerStack read_layerstack(const fs::path& dir) {
    const auto manifest_path = dir / kManifest;
    std::ifstream in(manifest_path);
    if (!in) throw ValidationError("cannot open manifest: " + manifest_path.string());

    nlohmann::json m;
    try {
        m = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("corrupt manifest: ") + e.what());
    }
    if (!m.is_object()) throw ValidationError("corrupt manifest: not a JSON object");
    if (m.value("format", "") != "ZZLS") throw ValidationError("manifest: format is not ZZLS");
    if (!m.contains("version") || m["version"] != 1) {
        throw ValidationError("manifest: unsupported version");
    }
    if (m.value("dtype", "") != "f32le") throw ValidationError("manifest: dtype must be f32le");

    const auto n_layers = manifest_count(m, "n_layers");
    const auto n_points = manifest_count(m, "n_points");
    const auto dim = manifest_count(m, "dim");
    if (!m.contains("layers") || !m["layers"].is_array() || m["layers"].size() != n_layers) {
        throw ValidationError("manifest: 'layers' must list exactly n_layers files");
    }

    const std::uintmax_t expected_bytes =
        static_cast<std::uintmax_t>(n_points) * dim * sizeof(float);

    std::vector<PointCloud> layers;
    layers.reserve(n_layers);
    for (std::size_t j = 0; j < n_layers; ++j) {
        if (!m["layers"][j].is_string()) throw ValidationError("manifest: layer names must be strings");
        const auto file = dir / m["layers"][j].get<std::string>();
        std::error_code ec;
        const auto size = fs::file_size(file, ec);
        if (ec) throw ValidationError("missing layer file: " + file.string());
        if (size != expected_bytes) {
            std::ostringstream os;
            os << "size mismatch in " << file.string() << ": expected " << expected_bytes
               << " bytes (n_points x dim x 4), found " << size;
            throw ValidationError(os.str());
        }
        std::vector<float> coords(n_points * dim);
        std::ifstream lf(file, std::ios::binary);
        if (!lf.read(reinterpret_cast<char*>(coords.data()),
                     static_cast<std::streamsize>(expected_bytes))) {
            throw ValidationError("short read: " + file.string());
        }
        layers.emplace_back(n_points, dim, std::move(coords));
    }
    return LayerStack(std::move(layers), m.value("meta", nlohmann::json()));
}

void write_layerstack(const LayerStack& stack, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());

    nlohmann::json m;
    m["format"] = "ZZLS";
    m["version"] = 1;
    m["n_layers"] = stack.n_layers();
    m["n_points"] = stack.n_points();
    m["dim"] = stack.dim();
    m["dtype"] = "f32le";
    m["layers"] = nlohmann::json::array();
    for (std::size_t j = 0; j < stack.n_layers(); ++j) {
        const auto name = layer_file_name(j);
        m["layers"].push_back(name);
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        const auto& data = stack.layer(j).data();
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size() * sizeof(float)));
        if (!out) throw std::runtime_error("write failed: " + (dir / name).string());
    }
    if (!stack.meta().is_null()) m["meta"] = stack.meta();

    std::ofstream out(dir / kManifest, std::ios::trunc);
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + (dir / kManifest).string());
}

std::vector<LayerStack> partition_subsets(const LayerStack& stack, std::size_t subset_size) {
    if (subset_size == 0 || subset_size > stack.n_points()) {
        throw ArgumentError("subset_size must be in [1, n_points]");
    }
    const std::size_t count = stack.n_points() / subset_size;
    std::vector<LayerStack> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<PointCloud> layers;
        layers.reserve(stack.n_layers());
        for (const auto& layer : stack.layers()) layers.push_back(layer.slice(s * subset_size, subset_size));
        out.emplace_back(std::move(layers), stack.meta());
    }
    return out;
}

}  // namespace zzt
