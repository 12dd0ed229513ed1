#include "nslab/nsf_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nslab {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

void write_doubles(std::ostream& os, const std::vector<double>& xs) {
  for (double x : xs) {
    const auto bits = to_little_endian(std::bit_cast<std::uint64_t>(x));
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
  }
}

void read_doubles(std::istream& is, std::vector<double>& xs) {
  for (double& x : xs) {
    char buf[8];
    if (!is.read(buf, 8)) throw std::runtime_error("NSF1: truncated payload");
    std::uint64_t bits = 0;
    std::memcpy(&bits, buf, 8);
    x = std::bit_cast<double>(to_little_endian(bits));
  }
}

}  // namespace

void write_nsf(std::ostream& os, const PhysicalField& f) {
  os << "NSF1 n=" << f.grid.n() << " layout=row-major dtype=f64le\n";
  write_doubles(os, f.u1);
  write_doubles(os, f.u2);
  if (!os) throw std::runtime_error("NSF1: write failed");
}

void write_nsf(const std::filesystem::path& path, const PhysicalField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("NSF1: cannot open " + path.string() + " for writing");
  write_nsf(os, f);
}

PhysicalField read_nsf(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("NSF1: missing header");
  std::istringstream hs(header);
  std::string magic, nfield, layout, dtype, extra;
  hs >> magic >> nfield >> layout >> dtype;
  if (magic != "NSF1" || nfield.rfind("n=", 0) != 0 || layout != "layout=row-major" ||
      dtype != "dtype=f64le" || (hs >> extra)) {
    throw std::runtime_error("NSF1: malformed header '" + header + "'");
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(nfield.substr(2), &used);
    if (used != nfield.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::runtime_error("NSF1: bad grid size in header '" + header + "'");
  }
  PhysicalField f{GridSpec(n)};
  read_doubles(is, f.u1);
  read_doubles(is, f.u2);
  return f;
}

PhysicalField read_nsf(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("NSF1: cannot open " + path.string());
  return read_nsf(is);
}

}  // namespace nslab
