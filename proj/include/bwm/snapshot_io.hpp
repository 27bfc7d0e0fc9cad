// Binary field snapshots.
//
// One record is, all little-endian:
//   char[4]  magic "BWM1"
//   int32    d
//   int32    n
//   float64  box
//   int32    L
//   float64  time
//   float64  values[L * n^d]   component-major, row-major within a component
//
// A file is a sequence of records. A state file holds two records with the
// same time (u, then ∂_t u); a block file holds one record per sample time.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bwm/field.hpp"

namespace bwm {

struct Snapshot {
  Field field;
  double time;
};

void write_snapshot(std::ostream& os, const Field& f, double time);
/// Throws InvalidArgument on a malformed record; returns false at clean EOF.
bool read_snapshot(std::istream& is, std::vector<Snapshot>& out);

void write_snapshot_file(const std::string& path, const std::vector<Snapshot>& records);
std::vector<Snapshot> read_snapshot_file(const std::string& path);

}  // namespace bwm
