#include "grs/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "grs/errors.hpp"

namespace grs::io {

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw InvalidArgument("format must be 'csv' or 'json', got '" + text + "'");
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote_json(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("row has " + std::to_string(row.size()) + " cells, table has " +
                          std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string json_number(double x) { return std::isfinite(x) ? format_real(x) : "null"; }

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return json_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return quote_json(std::get<std::string>(c));
}

template <typename Seq, typename Fn>
void write_json_array(std::ostream& os, const Seq& seq, Fn&& element) {
  os << '[';
  bool first = true;
  for (const auto& x : seq) {
    if (!first) os << ',';
    first = false;
    element(x);
  }
  os << ']';
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) os << (j ? "," : "") << table.columns[j];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_cell(row[j]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  os << "{\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    os << "  " << quote_json(table.columns[j]) << ": ";
    write_json_array(os, table.rows, [&](const auto& row) { os << json_cell(row[j]); });
    os << (j + 1 < table.columns.size() ? ",\n" : "\n");
  }
  os << "}\n";
}

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::Csv) {
    write_csv(os, table);
  } else {
    write_json(os, table);
  }
}

void write_meridian_file(std::ostream& os, const MeridianFile& file) {
  const MeridianSamples& s = file.samples;
  const bool full = s.g.has_value();
  if (s.f.size() != s.u.size() || s.fp.size() != s.u.size() ||
      (full && (s.g->size() != s.u.size() || !s.gp || s.gp->size() != s.u.size()))) {
    throw InvalidArgument("meridian sample columns differ in length");
  }
  for (const auto& [key, value] : file.header) os << "# " << key << '=' << value << '\n';
  os << (full ? "u,f,fprime,g,gprime\n" : "u,f,fprime\n");
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    os << format_real(s.u[i]) << ',' << format_real(s.f[i]) << ',' << format_real(s.fp[i]);
    if (full) os << ',' << format_real((*s.g)[i]) << ',' << format_real((*s.gp)[i]);
    os << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(line);
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, std::size_t line_no) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw InvalidArgument("line " + std::to_string(line_no) + ": '" + t + "' is not a number");
  }
  return x;
}

}  // namespace

MeridianFile read_meridian_file(std::istream& is) {
  MeridianFile file;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> columns;
  MeridianSamples& s = file.samples;
  std::vector<double> g, gp;

  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (!columns.empty()) continue;
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos) file.header.emplace_back(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
      continue;
    }
    if (columns.empty()) {
      for (const auto& c : split(t, ',')) columns.push_back(trim(c));
      const bool graph = columns == std::vector<std::string>{"u", "f", "fprime"};
      const bool full = columns == std::vector<std::string>{"u", "f", "fprime", "g", "gprime"};
      if (!graph && !full) {
        throw InvalidArgument("line " + std::to_string(line_no) +
                              ": expected columns u,f,fprime or u,f,fprime,g,gprime");
      }
      continue;
    }
    const auto cells = split(t, ',');
    if (cells.size() != columns.size()) {
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(columns.size()) +
                            " values");
    }
    s.u.push_back(parse_real(cells[0], line_no));
    s.f.push_back(parse_real(cells[1], line_no));
    s.fp.push_back(parse_real(cells[2], line_no));
    if (columns.size() == 5) {
      g.push_back(parse_real(cells[3], line_no));
      gp.push_back(parse_real(cells[4], line_no));
    }
  }
  if (columns.empty()) throw InvalidArgument("meridian file has no column header");
  if (columns.size() == 5) {
    s.g = std::move(g);
    s.gp = std::move(gp);
  }
  return file;
}

std::string header_value(const Header& header, const std::string& key, const std::string& fallback) {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  return fallback;
}

std::vector<std::array<std::size_t, 4>> grid_faces(std::size_t nu, std::size_t nv) {
  if (nu < 2 || nv < 2) throw InvalidArgument("mesh grids need at least 2 points per direction");
  std::vector<std::array<std::size_t, 4>> faces;
  faces.reserve((nu - 1) * (nv - 1));
  for (std::size_t i = 0; i + 1 < nu; ++i) {
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a = i * nv + j;
      faces.push_back({a, a + nv, a + nv + 1, a + 1});
    }
  }
  return faces;
}

std::array<double, 3> drop_axis(const std::array<double, 4>& x, int axis) {
  if (axis < 1 || axis > 4) {
    throw InvalidArgument("projection axis must be 1, 2, 3 or 4, got " + std::to_string(axis));
  }
  std::array<double, 3> out{};
  std::size_t n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i + 1 != axis) out[n++] = x[static_cast<std::size_t>(i)];
  }
  return out;
}

void write_mesh_json(std::ostream& os, const Mesh& mesh) {
  const std::size_t n = mesh.vertices4.size();
  if (mesh.k.size() != n || mesh.kappa.size() != n || mesh.K.size() != n || mesh.point_class.size() != n) {
    throw InvalidArgument("mesh channels must have one value per vertex");
  }
  for (const auto& f : mesh.faces) {
    for (const auto i : f) {
      if (i >= n) throw InvalidArgument("mesh face references a missing vertex");
    }
  }
  const auto point = [&](const auto& p) {
    write_json_array(os, p, [&](double x) { os << json_number(x); });
  };
  const auto reals = [&](const std::vector<double>& v) {
    write_json_array(os, v, [&](double x) { os << json_number(x); });
  };

  os << "{\n  \"vertices4\": ";
  write_json_array(os, mesh.vertices4, point);
  os << ",\n  \"projection\": {\"mode\": \"drop-axis\", \"axis\": " << mesh.drop_axis << "},\n  \"vertices3\": ";
  write_json_array(os, mesh.vertices4, [&](const auto& p) { point(drop_axis(p, mesh.drop_axis)); });
  os << ",\n  \"faces\": ";
  write_json_array(os, mesh.faces, [&](const auto& f) {
    write_json_array(os, f, [&](std::size_t i) { os << i; });
  });
  os << ",\n  \"channels\": {\n    \"k\": ";
  reals(mesh.k);
  os << ",\n    \"kappa\": ";
  reals(mesh.kappa);
  os << ",\n    \"K\": ";
  reals(mesh.K);
  os << ",\n    \"class\": ";
  write_json_array(os, mesh.point_class, [&](const std::string& c) { os << quote_json(c); });
  os << "\n  }\n}\n";
}

}  // namespace grs::io
