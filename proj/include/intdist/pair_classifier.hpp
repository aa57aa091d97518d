#pragma once

// Structure of the set of lattice points at integral distance from two points.

#include "intdist/conic.hpp"
#include "intdist/exact_arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace intdist {

/// One of the eight lattice symmetries, as the matrix [[m11, m12], [m21, m22]].
struct OrthogonalMap {
  int m11 = 1, m12 = 0, m21 = 0, m22 = 1;

  LatticePoint apply(const LatticePoint& p) const;
  /// The inverse, which is the transpose.
  LatticePoint apply_inverse(const LatticePoint& p) const;
};

/// Canonical P = (a, b) with b >= a >= 0; original = origin + map(canonical).
struct NormalizedPair {
  Integer a;
  Integer b;
  LatticePoint origin;
  OrthogonalMap map;

  LatticePoint to_original(const LatticePoint& canonical) const;
  LatticePoint to_canonical(const LatticePoint& original) const;
  IntegerLine line_to_original(const IntegerLine& canonical) const;
};

NormalizedPair normalize(const LatticePoint& p1, const LatticePoint& p2);

struct AdmissibleK {
  Integer k;
  Integer delta;
  /// k^2 = a^2 + b^2: the conic degenerates to the doubled line OP.
  bool line_branch = false;
};

/// Every k >= 0 with k^2 <= a^2 + b^2 and k = a + b (mod 2).
std::vector<AdmissibleK> admissible_ks(const Integer& a, const Integer& b);

/// A hyperbola branch with infinitely many points off the lines. The seed
/// Q = (x, b) solves x^2 + y^2 = z^2 and (x - a)^2 + (y - b)^2 = (z - k)^2 with
/// z = x + k - a, so k and z may be negative.
struct Witness {
  Integer k;
  LatticePoint seed;
  Integer z;
  Integer delta;
};

bool is_exceptional(const Integer& a, const Integer& b);

/// The case tag i..vi of an exceptional canonical pair.
std::optional<std::string> exceptional_case(const Integer& a, const Integer& b);

/// The witness recipe; throws DomainError for exceptional pairs.
Witness witness_hyperbola(const Integer& a, const Integer& b);

/// Affine map from conic coordinates (t, z) to the plane: (x, y) = base + t * direction.
struct LineEmbedding {
  LatticePoint base;
  LatticePoint direction;

  LatticePoint apply(const LatticePoint& tz) const {
    return {base.x + tz.x * direction.x, base.y + tz.x * direction.y};
  }
};

struct Branch {
  /// k >= 0; the branch is {Q : | |Q - p1| - |Q - p2| | = k}.
  Integer k;
  Integer delta;
  PointSetDescription description;
  /// The conic behind the description; in the (t, z) plane when embedding is set.
  std::optional<Conic> conic;
  std::optional<LineEmbedding> embedding;
  /// Members in the original frame, sorted: every member of a finite set,
  /// the members inside the window of an infinite one.
  std::vector<LatticePoint> points;
  /// Lines of a line family, in the original frame.
  std::vector<IntegerLine> lines;
  /// Why the branch is empty without computation, if it is.
  std::string note;
};

struct StructureReport {
  LatticePoint p1;
  LatticePoint p2;
  NormalizedPair pair;
  Integer radius;
  /// Branches for admissible k > 0 with delta > 0, ordered by k.
  std::vector<Branch> branches;
  Branch equidistant;
  std::optional<Branch> line_op;
  bool infinite = false;
  bool infinite_off_lines = false;
  std::optional<std::string> exceptional;
  /// Seed in the original frame.
  std::optional<Witness> witness;

  /// Union of every branch's window members, sorted.
  std::vector<LatticePoint> all_points() const;
};

/// Branches of a canonical pair in the canonical frame, window [-radius, radius]^2.
Branch equidistant_branch(const Integer& a, const Integer& b, const Integer& radius);
std::optional<Branch> line_op_branch(const Integer& a, const Integer& b, const Integer& radius);

/// Structure of an exceptional canonical pair, checked against the known case list.
StructureReport exceptional_structure(const Integer& a, const Integer& b, const Integer& radius);

/// Branch points are listed inside the original-frame window [-radius, radius]^2.
StructureReport classify_pair(const LatticePoint& p1, const LatticePoint& p2, const Integer& radius);

struct GeneratedPoint {
  LatticePoint point;
  Integer d1;
  Integer d2;
};

/// The first count members of the designated infinite family: the witness
/// hyperbola, else the equidistant family, else the line OP. Points come in
/// order of composition exponent 0, 1, -1, 2, ... with seeds interleaved.
/// Throws DomainError when the set is finite.
std::vector<GeneratedPoint> generate_points(const StructureReport& report, std::size_t count);

}  // namespace intdist
