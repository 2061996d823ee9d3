#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "layersep/fields.hpp"

namespace layersep {

/// Flat binary field format: row-major 64-bit little-endian floats, with a
/// JSON sidecar `<name>.json` recording the grid and layout. A velocity
/// field stores its u block (ny rows) followed by its v block (ny+1 rows).
void write_scalar(const std::filesystem::path& path, const Grid& g, const ScalarField& f);
ScalarField read_scalar(const std::filesystem::path& path, Grid* grid_out = nullptr);

void write_velocity(const std::filesystem::path& path, const Grid& g, const VelocityField& f);
VelocityField read_velocity(const std::filesystem::path& path, Grid* grid_out = nullptr);

/// CSV writing with stable %.17g formatting (byte-for-byte reproducible).
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

std::string format_double(double v);

} // namespace layersep
