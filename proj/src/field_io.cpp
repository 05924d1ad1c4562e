#include "lplab/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "lplab/errors.hpp"

namespace lplab {

namespace {

static_assert(std::endian::native == std::endian::little, "field I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("truncated field file");
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const GridField& field, bool complex_values) {
  field.grid.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  const std::uint32_t comps = complex_values ? 2 : 1;
  os.write("LPGF", 4);
  put<std::uint32_t>(os, kFieldFormatVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.dimension));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.points));
  put<double>(os, field.grid.halfwidth);
  put<std::uint32_t>(os, comps);
  put<std::uint32_t>(os, 0);
  for (const auto& v : field.values) {
    put<double>(os, v.real());
    if (complex_values) put<double>(os, v.imag());
  }
  if (!os) throw Error("write failed for " + path.string());

  nlohmann::ordered_json side;
  side["format"] = "LPGF";
  side["version"] = kFieldFormatVersion;
  side["dimension"] = field.grid.dimension;
  side["points_per_axis"] = field.grid.points;
  side["halfwidth"] = field.grid.halfwidth;
  side["components"] = comps;
  side["layout"] = "row-major, last axis fastest, f64 little-endian, 32-byte header";
  std::ofstream js(path.string() + ".json", std::ios::binary);
  js << side.dump(2) << '\n';
}

GridField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "LPGF", 4) != 0) throw Error(path.string() + " is not an LPGF field file");
  const auto version = get<std::uint32_t>(is);
  if (version != kFieldFormatVersion) throw Error("unsupported field format version " + std::to_string(version));
  SpectralGrid g;
  g.dimension = static_cast<int>(get<std::uint32_t>(is));
  g.points = static_cast<int>(get<std::uint32_t>(is));
  g.halfwidth = get<double>(is);
  const auto comps = get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  if (comps != 1 && comps != 2) throw Error("bad component count in " + path.string());
  GridField f = GridField::zeros(g);
  for (auto& v : f.values) {
    const double re = get<double>(is);
    const double im = comps == 2 ? get<double>(is) : 0.0;
    v = {re, im};
  }
  return f;
}

}  // namespace lplab
