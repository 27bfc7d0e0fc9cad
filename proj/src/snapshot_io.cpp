#include "bwm/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace bwm {
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
bool get(std::istream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  return static_cast<std::size_t>(is.gcount()) == sizeof(T);
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& f, double time) {
  os.write("BWM1", 4);
  put<std::int32_t>(os, f.grid().dim());
  put<std::int32_t>(os, f.grid().n());
  put<double>(os, f.grid().box());
  put<std::int32_t>(os, f.components());
  put<double>(os, time);
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

bool read_snapshot(std::istream& is, std::vector<Snapshot>& out) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() == 0) return false;
  if (is.gcount() != 4 || std::memcmp(magic, "BWM1", 4) != 0) throw InvalidArgument("bad snapshot magic");
  std::int32_t d = 0, n = 0, L = 0;
  double box = 0.0, time = 0.0;
  if (!get(is, d) || !get(is, n) || !get(is, box) || !get(is, L) || !get(is, time)) {
    throw InvalidArgument("truncated snapshot header");
  }
  Field f(Grid(d, n, box), L);
  auto values = f.values();
  is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (static_cast<std::size_t>(is.gcount()) != values.size() * sizeof(double)) {
    throw InvalidArgument("truncated snapshot payload");
  }
  out.push_back({std::move(f), time});
  return true;
}

void write_snapshot_file(const std::string& path, const std::vector<Snapshot>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
  for (const auto& r : records) write_snapshot(os, r.field, r.time);
}

std::vector<Snapshot> read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open '" + path + "'");
  std::vector<Snapshot> out;
  while (read_snapshot(is, out)) {
  }
  return out;
}

}  // namespace bwm
