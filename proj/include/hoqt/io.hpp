#pragma once

// JSON documents exchanged by the command line tool: map files and verdict
// reports.
//
// Map file:
//   {"format_version": 1, "type": "A->B", "dims": {"A": 2, "B": 2},
//    "matrix": [[[re, im], ...], ...], "convention": "rowmajor-v1"}

#include <string>
#include <string_view>

#include "hoqt/cones.hpp"
#include "hoqt/linmap.hpp"

namespace hoqt {

inline constexpr int kMapFormatVersion = 1;

/// Doubles are written in shortest round-trip form, so reading back is exact.
std::string serialize_map(const TypedMap& m);
/// Throws FormatError on anything malformed, including a type that does not
/// parse or does not match the matrix shape.
TypedMap deserialize_map(std::string_view text);

void save_map(const TypedMap& m, const std::string& path);
TypedMap load_map(const std::string& path);

/// {decision, method, tolerance, min_eigenvalue?, witness?: {probe_type,
/// probe_seed, spectrum, note}, probes_used}
std::string verdict_to_json(const ConeVerdict& v, int indent = 2);

}  // namespace hoqt
