#include "nlobs/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "nlobs/errors.hpp"

namespace nlobs {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << '\n';
    }
    return os.str();
}

std::string grid_csv(const std::vector<std::string>& names, const std::vector<const GridFunction*>& fields) {
    if (fields.empty() || names.size() != fields.size()) throw StructuralError("grid_csv: names and fields differ");
    const GridSpec& g = fields.front()->grid();
    for (const auto* f : fields) require_same_grid(g, f->grid(), "grid_csv field");
    std::vector<std::string> header{"x"};
    if (g.dim == 2) header.push_back("y");
    header.insert(header.end(), names.begin(), names.end());
    std::vector<std::vector<double>> rows;
    rows.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        std::vector<double> row{x[0]};
        if (g.dim == 2) row.push_back(x[1]);
        for (const auto* f : fields) row.push_back((*f)[i]);
        rows.push_back(std::move(row));
    }
    return csv_table(header, rows);
}

nlohmann::json grid_to_json(const GridSpec& g) {
    return {{"dim", g.dim}, {"h", g.h}, {"R", g.R}, {"exterior_rule", to_string(g.exterior_rule)}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
    GridSpec g;
    g.dim = j.at("dim").get<int>();
    g.R = j.at("R").get<double>();
    if (j.contains("h")) {
        g.h = j.at("h").get<double>();
    } else if (j.contains("nodes_per_half")) {
        g.h = g.R / j.at("nodes_per_half").get<int>();
    } else if (j.contains("N")) {
        // N nodes per axis span the box; N = 2R/h (the centre node is extra).
        g.h = 2.0 * g.R / j.at("N").get<int>();
    } else {
        throw ConfigError("grid needs one of h, nodes_per_half or N");
    }
    if (j.contains("exterior_rule")) g.exterior_rule = exterior_rule_from_string(j.at("exterior_rule").get<std::string>());
    g.validate();
    return g;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void write_raw(const std::filesystem::path& path, const GridFunction& f, const nlohmann::json& meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (double v : f.values()) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        unsigned char bytes[8];
        std::memcpy(bytes, &bits, 8);
        out.write(reinterpret_cast<const char*>(bytes), 8);
    }
    nlohmann::json side = {{"format", "float64-le"}, {"count", f.size()}, {"grid", grid_to_json(f.grid())},
                           {"order", "x fastest"}};
    if (!meta.is_null()) side["meta"] = meta;
    write_json(path.string() + ".json", side);
}

GridFunction read_raw(const std::filesystem::path& path) {
    std::ifstream side(path.string() + ".json");
    if (!side) throw StructuralError("missing sidecar for " + path.string());
    nlohmann::json j;
    try {
        side >> j;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("malformed sidecar: ") + e.what());
    }
    const GridSpec g = grid_from_json(j.at("grid"));
    const auto count = j.at("count").get<std::size_t>();
    if (count != g.size()) throw StructuralError("sidecar count does not match its grid");
    std::ifstream in(path, std::ios::binary);
    std::vector<double> values(count);
    for (auto& v : values) {
        unsigned char bytes[8];
        if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw StructuralError("raw file is truncated");
        std::uint64_t bits;
        std::memcpy(&bits, bytes, 8);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
        v = std::bit_cast<double>(bits);
    }
    return GridFunction(g, std::move(values));
}

}  // namespace nlobs
