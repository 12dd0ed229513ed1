#pragma once

#include <filesystem>
#include <iosfwd>

#include "nslab/field.hpp"

namespace nslab {

/// NSF1 field dumps: one ASCII header line
///   NSF1 n=<n> layout=row-major dtype=f64le\n
/// followed by 2 n^2 little-endian doubles, u1 then u2, row-major with x
/// fastest. Reads and writes are bit-exact.
void write_nsf(std::ostream& os, const PhysicalField& f);
void write_nsf(const std::filesystem::path& path, const PhysicalField& f);

/// Throws std::runtime_error on a malformed header or truncated payload.
PhysicalField read_nsf(std::istream& is);
PhysicalField read_nsf(const std::filesystem::path& path);

}  // namespace nslab
