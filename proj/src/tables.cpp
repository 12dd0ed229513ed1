#include "nslab/tables.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nslab {

namespace {

std::string format_number(double x, const char* fmt) {
  if (!std::isfinite(x)) return "NAN";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string exact(double x) { return format_number(x, "%.17g"); }

double parse_number(const std::string& field) {
  if (field == "NAN") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("table CSV: bad number '" + field + "'");
  }
  return value;
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return "NAN";
  return x;
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "markdown") return TableFormat::Markdown;
  if (name == "json") return TableFormat::Json;
  throw std::invalid_argument("unknown table format '" + std::string(name) + "'");
}

std::string render_csv(const ConvergenceTable& t) {
  std::string out = "N,error,rate\n";
  for (const auto& row : t.rows) {
    out += std::to_string(row.N) + "," + exact(row.error) + ",";
    if (row.rate) out += exact(*row.rate);
    out += "\n";
  }
  return out;
}

std::string render_markdown(std::span<const ConvergenceTable> tables) {
  std::ostringstream os;
  os << "| Scheme |";
  if (!tables.empty()) {
    for (const auto& row : tables.front().rows) os << " N=" << row.N << " |";
  }
  os << " Rate |\n|---|";
  if (!tables.empty()) {
    for (std::size_t i = 0; i < tables.front().rows.size(); ++i) os << "---|";
  }
  os << "---|\n";
  for (const auto& t : tables) {
    std::string label = t.scheme;
    try {
      label = std::string(scheme_label(parse_scheme(t.scheme)));
    } catch (const std::invalid_argument&) {
    }
    os << "| " << label << " |";
    for (const auto& row : t.rows) os << " " << format_number(row.error, "%.4e") << " |";
    const auto rate = t.headline_rate();
    os << " " << (rate ? "≈ " + format_number(*rate, "%.3f") : std::string("-")) << " |\n";
  }
  return os.str();
}

std::string render_json(std::span<const ConvergenceTable> tables) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
      rows.push_back({{"N", row.N},
                      {"error", json_number(row.error)},
                      {"rate", row.rate ? json_number(*row.rate) : nlohmann::json(nullptr)}});
    }
    const auto rate = t.headline_rate();
    out.push_back({{"scheme", t.scheme},
                   {"mu", t.mu},
                   {"n", t.n},
                   {"T", t.T},
                   {"rate", rate ? json_number(*rate) : nlohmann::json(nullptr)},
                   {"rows", rows}});
  }
  return out.dump(2) + "\n";
}

std::string render(std::span<const ConvergenceTable> tables, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: {
      std::string out;
      if (tables.empty()) return "N,error,rate\n";
      for (const auto& t : tables) out += render_csv(t);
      return out;
    }
    case TableFormat::Markdown: return render_markdown(tables);
    case TableFormat::Json: return render_json(tables);
  }
  return {};
}

void emit_tables(std::span<const ConvergenceTable> tables, TableFormat format,
                 const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << render(tables, format);
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

void emit_table(const ConvergenceTable& t, TableFormat format, const std::filesystem::path& path) {
  emit_tables(std::span(&t, 1), format, path);
}

ConvergenceTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "N,error,rate") {
    throw std::runtime_error("table CSV: missing 'N,error,rate' header");
  }
  ConvergenceTable t;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw std::runtime_error("table CSV: malformed row '" + line + "'");
    }
    ConvergenceRow row;
    row.N = std::stoi(line.substr(0, c1));
    row.error = parse_number(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string rate = line.substr(c2 + 1);
    if (!rate.empty()) row.rate = parse_number(rate);
    t.rows.push_back(row);
  }
  return t;
}

ConvergenceTable read_table_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_table_csv(is);
}

std::string render_spatial_csv(const SpatialTable& t) {
  std::string out = "n,difference,ratio\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out += std::to_string(t.rows[i].n) + "," + exact(t.rows[i].difference) + ",";
    if (i > 0) out += exact(t.rows[i - 1].difference / t.rows[i].difference);
    out += "\n";
  }
  return out;
}

std::string render_spatial(const SpatialTable& t, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: return render_spatial_csv(t);
    case TableFormat::Markdown: {
      std::string out = "| n | difference | ratio |\n|---|---|---|\n";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        out += "| " + std::to_string(t.rows[i].n) + " | " +
               format_number(t.rows[i].difference, "%.4e") + " | ";
        out += i > 0 ? format_number(t.rows[i - 1].difference / t.rows[i].difference, "%.2f")
                     : std::string("-");
        out += " |\n";
      }
      return out;
    }
    case TableFormat::Json: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& row : t.rows) {
        rows.push_back({{"n", row.n}, {"difference", json_number(row.difference)}});
      }
      const nlohmann::json out = {
          {"scheme", t.scheme}, {"mu", t.mu}, {"N", t.N}, {"T", t.T}, {"rows", rows}};
      return out.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace nslab
