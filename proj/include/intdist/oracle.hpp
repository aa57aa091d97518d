#pragma once

// Brute-force ground truth for the set of lattice points at integral distance
// from every given point.

#include "intdist/exact_arith.hpp"

#include <optional>
#include <span>
#include <vector>

namespace intdist {

struct OracleResult {
  Integer radius;
  /// Lexicographically sorted, duplicate free.
  std::vector<LatticePoint> points;
};

/// Scans [-radius, radius]^2 and keeps every Q whose squared distances are all squares.
OracleResult brute_force(std::span<const LatticePoint> points, const Integer& radius);

bool verify_membership(const LatticePoint& q, std::span<const LatticePoint> points);

/// The exact distance |p - q| when it is an integer.
std::optional<Integer> integral_distance(const LatticePoint& p, const LatticePoint& q);

}  // namespace intdist
