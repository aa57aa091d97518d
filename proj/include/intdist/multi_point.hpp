#pragma once

// Lattice points at integral distance from three or more given points.

#include "intdist/conic.hpp"
#include "intdist/exact_arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intdist {

enum class MultiKind { FiniteSet, LineUnionFinite };

std::string to_string(MultiKind kind);

/// Every lattice point of the line is in the set: with Q = base + t * direction,
/// |Q - P_i|^2 = norm2(direction) (t - t_i)^2 and norm2(direction) is a square.
struct LineMembership {
  IntegerLine line;
  LatticePoint base;
  LatticePoint direction;
  Integer direction_norm;
  /// Parameters t_i with P_i = base + t_i * direction.
  std::vector<Integer> parameters;
  std::string condition;
};

struct MultiReport {
  std::vector<LatticePoint> points;
  MultiKind kind = MultiKind::FiniteSet;
  /// Sorted; for LineUnionFinite only the points off the line.
  std::vector<LatticePoint> finite_part;
  std::optional<LineMembership> line;
  std::size_t tuples_examined = 0;
};

/// Needs at least three distinct points; throws DomainError otherwise.
MultiReport solve_multi(const std::vector<LatticePoint>& points);

bool are_collinear(const std::vector<LatticePoint>& points);
bool are_collinear_integral(const std::vector<LatticePoint>& points);

/// The members of a report inside [-radius, radius]^2, including line points.
std::vector<LatticePoint> multi_points_in_window(const MultiReport& report, const Integer& radius);

}  // namespace intdist
