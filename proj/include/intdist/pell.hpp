#pragma once

// Pell-type equations t^2 - d u^2 = n and the composition action of units.

#include "intdist/exact_arith.hpp"

#include <optional>
#include <vector>

namespace intdist {

/// A pair (t, u) with t^2 - d u^2 = n.
struct PellSolution {
  Integer t;
  Integer u;
  Integer d;
  Integer n;

  bool satisfies() const { return t * t - d * u * u == n; }
  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

/// One representative per class of solutions of x^2 - d y^2 = n, where two
/// solutions share a class when they differ by composition with +-unit^k.
struct SolutionClassSet {
  Integer d;
  Integer n;
  std::vector<PellSolution> representatives;
  PellSolution unit;
};

/// Minimal positive solution of t^2 - d u^2 = 1.
PellSolution fundamental_pell(const Integer& d);

/// Minimal positive solution of t^2 - d u^2 = -1, if the period of sqrt(d) is odd.
std::optional<PellSolution> negative_pell(const Integer& d);

/// (s.t*unit.t + d*s.u*unit.u, s.t*unit.u + s.u*unit.t); unit must have n == 1.
PellSolution compose(const PellSolution& s, const PellSolution& unit);

/// The inverse unit (t, -u).
PellSolution conjugate(const PellSolution& unit);

/// unit^k for k >= 0 by repeated squaring.
PellSolution unit_power(const PellSolution& unit, unsigned long long k);

/// Smallest power of the fundamental unit with T = 1 and U = 0 (mod m).
PellSolution pell_unit_congruent(const Integer& d, const Integer& m);

/// Exponent e with pell_unit_congruent(d, m) == fundamental_pell(d)^e.
unsigned long long congruent_unit_exponent(const Integer& d, const Integer& m);

/// All solution classes of x^2 - d y^2 = n (n != 0, d non-square).
SolutionClassSet solve_general(const Integer& d, const Integer& n);

/// Canonical member of the class of s: smallest |u|, then u >= 0, then t >= 0.
PellSolution canonical_representative(const PellSolution& s, const PellSolution& unit);

/// True when a and b lie in the same class under +-unit^k.
bool same_class(const PellSolution& a, const PellSolution& b);

/// Square roots of d modulo m (m >= 1), as residues in [0, m).
std::vector<Integer> sqrt_mod(const Integer& d, const Integer& m);

}  // namespace intdist
