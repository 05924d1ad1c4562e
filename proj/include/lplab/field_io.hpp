#pragma once

#include <filesystem>

#include "lplab/spectral.hpp"

namespace lplab {

// Binary layout, all little-endian:
//   bytes  0..3   magic "LPGF"
//   bytes  4..7   u32 format version (1)
//   bytes  8..11  u32 dimension N
//   bytes 12..15  u32 points per axis M
//   bytes 16..23  f64 half-width L
//   bytes 24..27  u32 components (1 = real, 2 = complex interleaved)
//   bytes 28..31  u32 reserved, 0
// followed by M^N * components f64 values, row-major with the last axis
// fastest. A JSON sidecar `<path>.json` repeats the header fields.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

void write_field(const std::filesystem::path& path, const GridField& field, bool complex_values = false);
GridField read_field(const std::filesystem::path& path);

}  // namespace lplab
