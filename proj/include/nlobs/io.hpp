#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/grid.hpp"

namespace nlobs {

/// Shortest decimal string that parses back to the same double ("nan", "inf", "-inf" otherwise).
std::string format_number(double v);

/// Header line plus rows, every value in shortest round-trip form.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// One row per node: x[,y] followed by each field's value.
std::string grid_csv(const std::vector<std::string>& names, const std::vector<const GridFunction*>& fields);

/// Writes little-endian float64 values to `path` and a JSON sidecar `path`.json
/// holding the grid, the value count and `meta`.
void write_raw(const std::filesystem::path& path, const GridFunction& f, const nlohmann::json& meta = {});

/// Reads a field written by write_raw. Throws StructuralError on malformed files.
GridFunction read_raw(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

}  // namespace nlobs
