#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zzt/descriptors.hpp"
#include "zzt/oracle.hpp"
#include "zzt/pruning.hpp"
#include "zzt/zigzag.hpp"

namespace zzt {

// Diagram: {"format":"ZZPD","version":1,"n_layers":L,"dims":[{"p":0,
//   "raw":[[b,d,multiplicity],...],
//   "effective":[[birth_layer,death_layer,multiplicity,right_open],...]},...]}
nlohmann::json diagram_to_json(const PersistenceDiagram& diagram);
PersistenceDiagram diagram_from_json(const nlohmann::json& j);

// Image: {"format":"ZZEI","version":1,"n_layers":L,"p":p,"counts":[[..]],"right_open":[[..]]}
nlohmann::json image_to_json(const EffectiveImage& img, int p);
EffectiveImage image_from_json(const nlohmann::json& j);

nlohmann::json grid_to_json(const RealGrid& grid);
nlohmann::json prune_report_to_json(const PruneReport& report);
nlohmann::json oracle_report_to_json(const OracleReport& report);
nlohmann::json windows_to_json(const std::vector<std::vector<std::size_t>>& blocks);

/// layer,value,subset_mean,subset_std; missing statistics are left empty.
std::string series_to_csv(const DescriptorSeries& series);
DescriptorSeries series_from_csv(const std::string& text);

std::string grid_to_csv(const RealGrid& grid);

/// Deterministic text form used for every JSON artifact.
std::string dump_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace zzt
