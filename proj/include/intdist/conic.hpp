#pragma once

// Affine integer conics A x^2 + B xy + C y^2 + D x + E y + F = 0: construction
// from a distance-difference hyperbola, classification, reduction to a Pell
// normal form, and enumeration of integer points.

#include "intdist/exact_arith.hpp"
#include "intdist/pell.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace intdist {

/// The (a, b, k) triple a conic was built from; k is stored as |k|.
struct Provenance {
  Integer a;
  Integer b;
  Integer k;

  Integer delta() const { return a * a + b * b - k * k; }
};

struct Conic {
  Integer A, B, C, D, E, F;
  std::optional<Provenance> provenance;
  /// Raw coefficients equal scale times the normalized ones.
  Integer scale = 1;

  Integer evaluate(const Integer& x, const Integer& y) const {
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F;
  }
  Integer evaluate(const LatticePoint& p) const { return evaluate(p.x, p.y); }
  Integer evaluate_raw(const LatticePoint& p) const { return scale * evaluate(p); }

  friend bool operator==(const Conic& l, const Conic& r) {
    return l.A == r.A && l.B == r.B && l.C == r.C && l.D == r.D && l.E == r.E && l.F == r.F;
  }
};

/// Divides out the content and makes the first nonzero coefficient positive.
Conic make_conic(Integer A, Integer B, Integer C, Integer D, Integer E, Integer F);

/// The conic (2ax + 2by - delta)^2 - 4k^2 (x^2 + y^2) = 0, delta = a^2 + b^2 - k^2.
Conic build_conic(const Integer& a, const Integer& b, const Integer& k);

/// B^2 - 4AC of the normalized coefficients.
Integer conic_discriminant(const Conic& c);
/// B^2 - 4AC of the raw (un-normalized) coefficients.
Integer raw_discriminant(const Conic& c);

/// a x + b y + c = 0 with gcd(a, b, c) = 1 and (a, b) sign-normalized.
struct IntegerLine {
  Integer a;
  Integer b;
  Integer c;

  Integer evaluate(const LatticePoint& p) const { return a * p.x + b * p.y + c; }
  bool has_lattice_points() const;
  friend bool operator==(const IntegerLine&, const IntegerLine&) = default;
};

IntegerLine make_line(Integer a, Integer b, Integer c);
std::string to_string(const IntegerLine& line);

/// Lattice points of a line inside [-radius, radius]^2, sorted.
std::vector<LatticePoint> line_points_in_window(const IntegerLine& line, const Integer& radius);

enum class ConicClass {
  IrreducibleHyperbolaNonSquareDisc,
  IrreducibleHyperbolaSquareDisc,
  DegenerateLines,
  ParabolicOrDegenerate,
  EmptyOrPoint,
};

std::string to_string(ConicClass c);

struct Classification {
  ConicClass kind;
  /// Real rational lines making up a degenerate conic.
  std::vector<IntegerLine> lines;
  /// True when the conic is a single line counted twice.
  bool doubled = false;
  /// The unique real point of a degenerate conic with no rational lines, if rational.
  std::optional<std::pair<Rational, Rational>> point;
};

Classification classify_conic(const Conic& c);

/// X = xX x + xY y + x0, Y = yX x + yY y + y0 with X^2 - disc Y^2 = constant on
/// the conic; the inverse is x = (iX X + iY Y + i0) / den and likewise for y.
struct ReducedPellForm {
  Integer xX, xY, x0;
  Integer yX, yY, y0;
  Integer disc;
  Integer constant;
  Integer ixX, ixY, ix0;
  Integer iyX, iyY, iy0;
  Integer den;
  /// (X, Y) and (X', Y') congruent modulo this map to points of equal integrality.
  Integer modulus;

  std::pair<Integer, Integer> forward(const LatticePoint& p) const;
  std::optional<LatticePoint> backward(const Integer& X, const Integer& Y) const;
  /// True when (X, Y) lies in an admissible residue class, i.e. maps to a lattice point.
  bool admits(const Integer& X, const Integer& Y) const;
};

/// Completing the square for a nondegenerate conic with positive discriminant.
ReducedPellForm complete_square(const Conic& c);

/// complete_square restricted to irreducible hyperbolas with non-square discriminant.
ReducedPellForm reduce_to_pell(const Conic& c);

/// Infinite family of integer points generated by Gauss composition.
///
/// Two units act on the family: the congruent unit (T = 1, U = 0 modulo the
/// form's modulus) and the generator, the smallest power of the fundamental
/// unit mapping the lattice image of Z^2 onto itself. The generator divides
/// the congruent unit and is usually the fundamental unit itself.
struct PellFamily {
  ReducedPellForm form;
  PellSolution fundamental_unit;
  unsigned long long generator_exponent = 1;
  unsigned long long congruent_exponent = 1;
  /// Class representatives of X^2 - disc Y^2 = constant.
  std::vector<PellSolution> classes;
  /// One conic point per orbit of the generator.
  std::vector<LatticePoint> seeds;

  PellSolution generator() const { return unit_power(fundamental_unit, generator_exponent); }
  PellSolution congruent_unit() const { return unit_power(fundamental_unit, congruent_exponent); }
  /// The composition action: the image of p under unit (a power of the generator).
  LatticePoint step(const LatticePoint& p, const PellSolution& unit) const;
};

/// Smallest e > 0 such that composition with unit^e maps lattice images to lattice images.
unsigned long long stabilizer_exponent(const ReducedPellForm& form, const PellSolution& unit);

enum class PointSetKind { EmptySet, FinitePoints, LineFamily, PellFamily };

std::string to_string(PointSetKind kind);

struct PointSetDescription {
  PointSetKind kind = PointSetKind::EmptySet;
  /// For finite sets: every point. Otherwise the members inside the window.
  std::vector<LatticePoint> points;
  /// False only when a finite listing is limited by the window (parabolas).
  bool complete = true;
  std::vector<IntegerLine> lines;
  std::optional<PellFamily> family;
};

/// Integer points of c. The radius only limits how many members of an
/// infinite family are listed; empty/finite/infinite verdicts are exact.
PointSetDescription integer_points(const Conic& c, const Integer& radius);

/// Members of a Pell family inside the window [-radius, radius]^2.
std::vector<LatticePoint> family_points_in_window(const PellFamily& family, const Integer& radius);

}  // namespace intdist
