#include "layersep/field_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace layersep {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field format is little-endian; byte swapping not implemented");

void write_sidecar(const std::filesystem::path& path, const Grid& g, const std::string& kind,
                   std::size_t count) {
    nlohmann::json j;
    j["format"] = "layersep-field-v1";
    j["kind"] = kind;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["W"] = g.geom.W;
    j["H"] = g.geom.H;
    j["doubles"] = count;
    std::ofstream out(path.string() + ".json");
    out << j.dump(2) << "\n";
}

nlohmann::json read_sidecar(const std::filesystem::path& path, const std::string& kind,
                            Grid* grid_out) {
    std::ifstream in(path.string() + ".json");
    if (!in) throw DependencyError("missing field sidecar: " + path.string() + ".json");
    nlohmann::json j;
    in >> j;
    if (j.value("kind", "") != kind)
        throw ShapeError("field sidecar kind mismatch for " + path.string());
    if (grid_out)
        *grid_out = Grid(ChannelGeometry(j.at("W").get<double>(), j.at("H").get<double>()),
                         j.at("nx").get<int>(), j.at("ny").get<int>());
    return j;
}

void write_block(std::ofstream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_block(std::ifstream& in, std::vector<double>& v) {
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw ShapeError("field file truncated");
}

} // namespace

void write_scalar(const std::filesystem::path& path, const Grid& g, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    write_block(out, f.data());
    write_sidecar(path, g, "scalar", f.data().size());
}

ScalarField read_scalar(const std::filesystem::path& path, Grid* grid_out) {
    Grid g;
    read_sidecar(path, "scalar", &g);
    ScalarField f(g);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DependencyError("missing field file: " + path.string());
    read_block(in, f.data());
    if (grid_out) *grid_out = g;
    return f;
}

void write_velocity(const std::filesystem::path& path, const Grid& g, const VelocityField& f) {
    std::ofstream out(path, std::ios::binary);
    write_block(out, f.u_data());
    write_block(out, f.v_data());
    write_sidecar(path, g, "velocity", f.u_data().size() + f.v_data().size());
}

VelocityField read_velocity(const std::filesystem::path& path, Grid* grid_out) {
    Grid g;
    read_sidecar(path, "velocity", &g);
    VelocityField f(g);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DependencyError("missing field file: " + path.string());
    read_block(in, f.u_data());
    read_block(in, f.v_data());
    if (grid_out) *grid_out = g;
    return f;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw ShapeError("write_csv: header and column count mismatch");
    std::ofstream out(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? ',' : '\n');
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw ShapeError("write_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r]) << (c + 1 < columns.size() ? ',' : '\n');
    }
}

} // namespace layersep
