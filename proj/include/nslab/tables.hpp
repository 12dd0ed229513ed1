#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "nslab/experiments.hpp"

namespace nslab {

enum class TableFormat { Csv, Markdown, Json };

/// Throws std::invalid_argument for anything but csv, markdown or json.
TableFormat parse_table_format(std::string_view name);

/// CSV with header `N,error,rate`. Numbers use 17 significant digits so the
/// file reads back bit-exactly; non-finite values are written as NAN and an
/// absent rate as an empty field.
std::string render_csv(const ConvergenceTable& t);

/// One row per table (scheme label, one column per N, headline rate), the
/// scheme-by-step-count layout. Errors are printed as %.4e.
std::string render_markdown(std::span<const ConvergenceTable> tables);

/// {"scheme", "mu", "n", "T", "rate", "rows": [{"N", "error", "rate"}]};
/// non-finite numbers are the string "NAN".
std::string render_json(std::span<const ConvergenceTable> tables);

std::string render(std::span<const ConvergenceTable> tables, TableFormat format);

/// Writes render(...) to `path`. Throws std::runtime_error on I/O failure.
void emit_table(const ConvergenceTable& t, TableFormat format, const std::filesystem::path& path);
void emit_tables(std::span<const ConvergenceTable> tables, TableFormat format,
                 const std::filesystem::path& path);

/// Reads the rows written by render_csv. Metadata is not stored in CSV.
ConvergenceTable read_table_csv(std::istream& is);
ConvergenceTable read_table_csv(const std::filesystem::path& path);

/// CSV with header `n,difference,ratio`, ratio = previous / current.
std::string render_spatial_csv(const SpatialTable& t);
std::string render_spatial(const SpatialTable& t, TableFormat format);

}  // namespace nslab
