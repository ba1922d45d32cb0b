#pragma once

// Plain-text outputs: column tables as CSV or JSON, meridian sample files
// and mesh exports. Reals are always written with 17 significant digits so
// that outputs are reproducible byte for byte.

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "grs/meridian.hpp"

namespace grs::io {

enum class Format { Csv, Json };

Format parse_format(const std::string& text);  // "csv" | "json"

/// "%.17g"; non-finite values become "nan", "inf" or "-inf".
std::string format_real(double x);

/// JSON string literal with the required escapes.
std::string quote_json(const std::string& s);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws InvalidArgument on width mismatch
};

/// Header row plus one line per row. Strings are written verbatim.
void write_csv(std::ostream& os, const Table& table);

/// {"column": [values...], ...} in column order; NaN and infinities as null.
void write_json(std::ostream& os, const Table& table);

void write_table(std::ostream& os, const Table& table, Format format);

// --- meridian sample files --------------------------------------------------

/// Ordered key/value pairs written as "# key=value" comment lines.
using Header = std::vector<std::pair<std::string, std::string>>;

struct MeridianFile {
  Header header;
  MeridianSamples samples;
};

/// Comment header, then the columns u,f,fprime (plus g,gprime when present).
void write_meridian_file(std::ostream& os, const MeridianFile& file);

/// Parses what write_meridian_file produces. Throws InvalidArgument on
/// malformed input.
MeridianFile read_meridian_file(std::istream& is);

/// Value of `key` in the header, or `fallback`.
std::string header_value(const Header& header, const std::string& key, const std::string& fallback = "");

// --- meshes -----------------------------------------------------------------

struct Mesh {
  std::vector<std::array<double, 4>> vertices4;
  int drop_axis = 4;  // 1-based coordinate removed by the projection
  std::vector<std::array<std::size_t, 4>> faces;
  std::vector<double> k, kappa, K;
  std::vector<std::string> point_class;
};

/// Vertices of an nu x nv grid in row-major (u outer) order joined by
/// (nu-1)(nv-1) quads. Throws InvalidArgument for counts below 2.
std::vector<std::array<std::size_t, 4>> grid_faces(std::size_t nu, std::size_t nv);

/// Drops coordinate `axis` (1..4); throws InvalidArgument otherwise.
std::array<double, 3> drop_axis(const std::array<double, 4>& x, int axis);

void write_mesh_json(std::ostream& os, const Mesh& mesh);

}  // namespace grs::io
