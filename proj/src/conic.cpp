#include "intdist/conic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace intdist {

namespace {

using boost::multiprecision::abs;

Integer content(std::initializer_list<Integer> values) {
  Integer g = 0;
  for (const Integer& v : values) g = gcd(g, v);
  return g;
}

// Integer coefficients of the conic after substituting (x, y) = T (u, v).
struct Transformed {
  Integer A, B, C, D, E, F;
};

Transformed substitute(const Conic& c, const Integer (&t)[2][2]) {
  const Integer& t11 = t[0][0];
  const Integer& t12 = t[0][1];
  const Integer& t21 = t[1][0];
  const Integer& t22 = t[1][1];
  return {c.A * t11 * t11 + c.B * t11 * t21 + c.C * t21 * t21,
          2 * c.A * t11 * t12 + c.B * (t11 * t22 + t12 * t21) + 2 * c.C * t21 * t22,
          c.A * t12 * t12 + c.B * t12 * t22 + c.C * t22 * t22,
          c.D * t11 + c.E * t21,
          c.D * t12 + c.E * t22,
          c.F};
}

Integer determinant(const Conic& c) {
  // det of [[2A, B, D], [B, 2C, E], [D, E, 2F]].
  return 2 * c.A * (4 * c.C * c.F - c.E * c.E) - c.B * (2 * c.B * c.F - c.D * c.E) +
         c.D * (c.B * c.E - 2 * c.C * c.D);
}

// Lines of a degenerate conic with square discriminant s^2 > 0 and A != 0.
std::vector<IntegerLine> split_square_disc(const Integer& A, const Integer& B, const Integer& D,
                                           const Integer& E, const Integer& s) {
  // 4A * conic = (2Ax + (B - s)y + g1)(2Ax + (B + s)y + g2) with s*g1, s*g2 integral.
  const Integer h = 2 * A * E - B * D;
  return {make_line(2 * A * s, (B - s) * s, D * s + h), make_line(2 * A * s, (B + s) * s, D * s - h)};
}

// Lines of a degenerate conic with zero discriminant and A != 0.
Classification split_zero_disc(const Integer& A, const Integer& B, const Integer& D, const Integer& F) {
  // With u = 2Ax + By the conic becomes u^2 + 2Du + 4AF = 0.
  Classification out{ConicClass::DegenerateLines, {}, false, std::nullopt};
  const Integer rad = D * D - 4 * A * F;
  if (rad < 0 || !is_perfect_square(rad)) return out;
  const Integer r = isqrt(rad);
  out.lines.push_back(make_line(2 * A, B, D - r));
  if (r == 0) {
    out.doubled = true;
  } else {
    out.lines.push_back(make_line(2 * A, B, D + r));
  }
  return out;
}

IntegerLine swap_xy(const IntegerLine& l) { return make_line(l.b, l.a, l.c); }

bool in_window(const LatticePoint& p, const Integer& radius) {
  return abs(p.x) <= radius && abs(p.y) <= radius;
}

void sort_unique(std::vector<LatticePoint>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

std::vector<LatticePoint> ellipse_points(const Conic& c) {
  // For each y the x-discriminant is disc*y^2 + by*y + cy and must be a square.
  std::vector<LatticePoint> pts;
  const Integer ay = conic_discriminant(c);
  const Integer by = 2 * c.B * c.D - 4 * c.A * c.E;
  const Integer cy = c.D * c.D - 4 * c.A * c.F;
  const Integer dy = by * by - 4 * ay * cy;
  if (dy < 0) return pts;
  const Integer root = isqrt(dy);
  const Integer q = 2 * abs(ay);
  const Integer lo = floor_div(by - root - 1, q);
  const Integer hi = floor_div(by + root + 1, q) + 1;
  for (Integer y = lo; y <= hi; ++y) {
    const Integer rad = ay * y * y + by * y + cy;
    if (!is_perfect_square(rad)) continue;
    const Integer r = isqrt(rad);
    for (const Integer& num : {-(c.B * y + c.D) + r, -(c.B * y + c.D) - r}) {
      if (num % (2 * c.A) == 0) pts.push_back({num / (2 * c.A), y});
    }
  }
  sort_unique(pts);
  return pts;
}

std::vector<LatticePoint> parabola_points_in_window(const Conic& c, const Integer& radius) {
  std::vector<LatticePoint> pts;
  const bool along_y = c.A != 0;
  for (Integer w = -radius; w <= radius; ++w) {
    // Solve the quadratic in the other coordinate exactly.
    Integer qa, qb, qc;
    if (along_y) {
      qa = c.A, qb = c.B * w + c.D, qc = c.C * w * w + c.E * w + c.F;
    } else {
      qa = c.C, qb = c.B * w + c.E, qc = c.A * w * w + c.D * w + c.F;
    }
    const Integer rad = qb * qb - 4 * qa * qc;
    if (!is_perfect_square(rad)) continue;
    const Integer r = isqrt(rad);
    for (const Integer& num : {-qb + r, -qb - r}) {
      if (num % (2 * qa) != 0) continue;
      LatticePoint p = along_y ? LatticePoint{num / (2 * qa), w} : LatticePoint{w, num / (2 * qa)};
      if (in_window(p, radius)) pts.push_back(std::move(p));
    }
  }
  sort_unique(pts);
  return pts;
}

std::vector<LatticePoint> square_disc_points(const Conic& c) {
  const ReducedPellForm form = complete_square(c);
  const Integer s = isqrt(form.disc);
  std::vector<LatticePoint> pts;
  // (X - sY)(X + sY) = constant.
  for (const Integer& d : positive_divisors(form.constant)) {
    for (const Integer& d1 : {d, Integer(-d)}) {
      const Integer d2 = form.constant / d1;
      if ((d1 + d2) % 2 != 0 || (d2 - d1) % (2 * s) != 0) continue;
      if (auto p = form.backward((d1 + d2) / 2, (d2 - d1) / (2 * s))) pts.push_back(*p);
    }
  }
  sort_unique(pts);
  return pts;
}

bool in_lattice(const ReducedPellForm& f, const Integer& X, const Integer& Y) {
  return (f.ixX * X + f.ixY * Y) % f.den == 0 && (f.iyX * X + f.iyY * Y) % f.den == 0;
}

// Does multiplication by (t + u sqrt(d)) map the affine lattice image of Z^2 to itself?
bool stabilizes(const ReducedPellForm& f, const Integer& t, const Integer& u) {
  auto apply = [&](const Integer& X, const Integer& Y) {
    return std::make_pair(t * X + f.disc * u * Y, u * X + t * Y);
  };
  const auto [c1X, c1Y] = apply(f.xX, f.yX);
  const auto [c2X, c2Y] = apply(f.xY, f.yY);
  const auto [pX, pY] = apply(f.x0, f.y0);
  return in_lattice(f, c1X, c1Y) && in_lattice(f, c2X, c2Y) && in_lattice(f, pX - f.x0, pY - f.y0);
}

struct Residue2 {
  Integer t, u;
};

Residue2 mul_mod(const Residue2& a, const Residue2& b, const Integer& d, const Integer& m) {
  return {mod_floor(a.t * b.t + d * a.u * b.u, m), mod_floor(a.t * b.u + a.u * b.t, m)};
}

Residue2 pow_mod(Residue2 base, unsigned long long e, const Integer& d, const Integer& m) {
  Residue2 acc{mod_floor(Integer(1), m), 0};
  while (e > 0) {
    if (e & 1) acc = mul_mod(acc, base, d, m);
    base = mul_mod(base, base, d, m);
    e >>= 1;
  }
  return acc;
}

PellFamily build_family(const ReducedPellForm& form) {
  PellFamily fam;
  fam.form = form;
  const SolutionClassSet classes = solve_general(form.disc, form.constant);
  fam.classes = classes.representatives;
  fam.fundamental_unit = classes.unit;
  if (fam.classes.empty()) return fam;
  fam.congruent_exponent = congruent_unit_exponent(form.disc, form.modulus);
  fam.generator_exponent = stabilizer_exponent(form, fam.fundamental_unit);

  // Orbits of the generator are indexed by (sign, class, j) with 0 <= j < generator_exponent.
  const PellSolution& eps = fam.fundamental_unit;
  for (const PellSolution& rep : fam.classes) {
    for (int sgn : {1, -1}) {
      PellSolution cur{sgn * rep.t, sgn * rep.u, rep.d, rep.n};
      for (unsigned long long j = 0; j < fam.generator_exponent; ++j) {
        if (auto p = form.backward(cur.t, cur.u)) fam.seeds.push_back(*p);
        cur = compose(cur, eps);
      }
    }
  }
  sort_unique(fam.seeds);
  return fam;
}

}  // namespace

Conic make_conic(Integer A, Integer B, Integer C, Integer D, Integer E, Integer F) {
  if (A == 0 && B == 0 && C == 0) throw DomainError("conic needs a nonzero quadratic part");
  Integer g = content({A, B, C, D, E, F});
  for (const Integer* v : {&A, &B, &C, &D, &E, &F}) {
    if (*v != 0) {
      if (*v < 0) g = -g;
      break;
    }
  }
  Conic c{A / g, B / g, C / g, D / g, E / g, F / g, std::nullopt, g};
  return c;
}

Conic build_conic(const Integer& a, const Integer& b, const Integer& k) {
  if (a == 0 && b == 0) throw DomainError("build_conic: (a, b) must be nonzero");
  const Integer kk = abs(k);
  const Integer delta = a * a + b * b - kk * kk;
  Conic c = make_conic(4 * (a * a - kk * kk), 8 * a * b, 4 * (b * b - kk * kk), -4 * a * delta,
                       -4 * b * delta, delta * delta);
  c.provenance = Provenance{a, b, kk};
  if (raw_discriminant(c) != 64 * kk * kk * delta) {
    throw std::logic_error("build_conic: discriminant identity violated");
  }
  return c;
}

Integer conic_discriminant(const Conic& c) { return c.B * c.B - 4 * c.A * c.C; }

Integer raw_discriminant(const Conic& c) { return c.scale * c.scale * conic_discriminant(c); }

IntegerLine make_line(Integer a, Integer b, Integer c) {
  if (a == 0 && b == 0) throw DomainError("line needs a nonzero direction");
  Integer g = content({a, b, c});
  if (a < 0 || (a == 0 && b < 0)) g = -g;
  return {a / g, b / g, c / g};
}

bool IntegerLine::has_lattice_points() const { return c % gcd(a, b) == 0; }

std::string to_string(const IntegerLine& line) {
  // Written as ax+by=c' with unit coefficients and zero terms dropped, e.g. x+2y=5.
  std::ostringstream os;
  auto term = [&](const Integer& coef, const char* var, bool first) {
    if (coef == 0) return first;
    if (coef < 0) os << "-";
    else if (!first) os << "+";
    if (abs(coef) != 1) os << abs(coef);
    os << var;
    return false;
  };
  term(line.b, "y", term(line.a, "x", true));
  os << "=" << -line.c;
  return os.str();
}

std::vector<LatticePoint> line_points_in_window(const IntegerLine& line, const Integer& radius) {
  std::vector<LatticePoint> pts;
  if (!line.has_lattice_points()) return pts;
  Integer s, t;
  const Integer g = extended_gcd(line.a, line.b, s, t);
  // Base point (x0, y0) and primitive direction (dx, dy).
  const Integer x0 = -line.c / g * s;
  const Integer y0 = -line.c / g * t;
  const Integer dx = line.b / g;
  const Integer dy = -line.a / g;
  Integer lo = -radius * 4 - abs(x0) - abs(y0);
  Integer hi = -lo;
  // Clip the parameter range against each coordinate that moves.
  // Keep base + k*dir inside [-radius, radius] for each moving coordinate.
  auto clip = [&](const Integer& base, const Integer& dir) {
    if (dir == 0) {
      if (abs(base) > radius) hi = lo - 1;
      return;
    }
    const Integer from = dir > 0 ? -radius - base : radius - base;
    const Integer to = dir > 0 ? radius - base : -radius - base;
    lo = std::max(lo, -floor_div(-from, dir));
    hi = std::min(hi, floor_div(to, dir));
  };
  clip(x0, dx);
  clip(y0, dy);
  for (Integer k = lo; k <= hi; ++k) {
    LatticePoint p{x0 + k * dx, y0 + k * dy};
    if (in_window(p, radius)) pts.push_back(std::move(p));
  }
  sort_unique(pts);
  return pts;
}

std::string to_string(ConicClass c) {
  switch (c) {
    case ConicClass::IrreducibleHyperbolaNonSquareDisc: return "IrreducibleHyperbolaNonSquareDisc";
    case ConicClass::IrreducibleHyperbolaSquareDisc: return "IrreducibleHyperbolaSquareDisc";
    case ConicClass::DegenerateLines: return "DegenerateLines";
    case ConicClass::ParabolicOrDegenerate: return "ParabolicOrDegenerate";
    case ConicClass::EmptyOrPoint: return "EmptyOrPoint";
  }
  return "?";
}

std::string to_string(PointSetKind kind) {
  switch (kind) {
    case PointSetKind::EmptySet: return "EmptySet";
    case PointSetKind::FinitePoints: return "FinitePoints";
    case PointSetKind::LineFamily: return "LineFamily";
    case PointSetKind::PellFamily: return "PellFamily";
  }
  return "?";
}

Classification classify_conic(const Conic& c) {
  const Integer disc = conic_discriminant(c);
  const Integer det = determinant(c);
  if (det != 0) {
    if (disc > 0) {
      return {is_perfect_square(disc) ? ConicClass::IrreducibleHyperbolaSquareDisc
                                      : ConicClass::IrreducibleHyperbolaNonSquareDisc,
              {}, false, std::nullopt};
    }
    if (disc == 0) return {ConicClass::ParabolicOrDegenerate, {}, false, std::nullopt};
    return {ConicClass::EmptyOrPoint, {}, false, std::nullopt};
  }
  if (disc == 0) {
    if (c.A != 0) return split_zero_disc(c.A, c.B, c.D, c.F);
    // A = 0 forces B = 0, so the conic is C y^2 + E y + F with D = 0.
    Classification out = split_zero_disc(c.C, c.B, c.E, c.F);
    for (IntegerLine& l : out.lines) l = swap_xy(l);
    return out;
  }
  if (disc > 0 && is_perfect_square(disc)) {
    const Integer s = isqrt(disc);
    Classification out{ConicClass::DegenerateLines, {}, false, std::nullopt};
    if (c.A != 0) {
      out.lines = split_square_disc(c.A, c.B, c.D, c.E, s);
    } else if (c.C != 0) {
      for (const IntegerLine& l : split_square_disc(c.C, c.B, c.E, c.D, s)) out.lines.push_back(swap_xy(l));
    } else {
      out.lines = {make_line(c.B, 0, c.E), make_line(0, c.B, c.D)};
    }
    return out;
  }
  // Conjugate irrational or complex lines meet in a single rational point.
  const Integer q = 4 * c.A * c.C - c.B * c.B;
  Classification out{ConicClass::EmptyOrPoint, {}, false, std::nullopt};
  out.point = std::make_pair(Rational(c.B * c.E - 2 * c.C * c.D, q), Rational(c.B * c.D - 2 * c.A * c.E, q));
  return out;
}

std::pair<Integer, Integer> ReducedPellForm::forward(const LatticePoint& p) const {
  return {xX * p.x + xY * p.y + x0, yX * p.x + yY * p.y + y0};
}

std::optional<LatticePoint> ReducedPellForm::backward(const Integer& X, const Integer& Y) const {
  const Integer xn = ixX * X + ixY * Y + ix0;
  const Integer yn = iyX * X + iyY * Y + iy0;
  if (xn % den != 0 || yn % den != 0) return std::nullopt;
  return LatticePoint{xn / den, yn / den};
}

bool ReducedPellForm::admits(const Integer& X, const Integer& Y) const {
  return backward(X, Y).has_value();
}

ReducedPellForm complete_square(const Conic& c) {
  const Integer disc = conic_discriminant(c);
  if (disc <= 0 || determinant(c) == 0) {
    throw DomainError("complete_square needs a nondegenerate conic with positive discriminant");
  }
  // (x, y) = T (u, v) with T unimodular and the new u^2 coefficient nonzero.
  Integer t[2][2] = {{1, 0}, {0, 1}};
  if (c.A == 0 && c.C != 0) {
    t[0][0] = 0, t[0][1] = 1, t[1][0] = 1, t[1][1] = 0;
  } else if (c.A == 0) {
    t[0][0] = 1, t[0][1] = 0, t[1][0] = 1, t[1][1] = 1;
  }
  const Integer tdet = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  // (u, v) = T^-1 (x, y)
  const Integer i11 = t[1][1] * tdet, i12 = -t[0][1] * tdet;
  const Integer i21 = -t[1][0] * tdet, i22 = t[0][0] * tdet;
  const Transformed q = substitute(c, t);

  const Integer c0 = q.B * q.D - 2 * q.A * q.E;
  ReducedPellForm f;
  f.disc = disc;
  f.constant = c0 * c0 - disc * (q.D * q.D - 4 * q.A * q.F);
  if (f.constant == 0) throw std::logic_error("complete_square: nondegenerate conic gave zero constant");
  // X = disc * v + c0, Y = 2A'u + B'v + D'.
  f.xX = disc * i21, f.xY = disc * i22, f.x0 = c0;
  f.yX = 2 * q.A * i11 + q.B * i21, f.yY = 2 * q.A * i12 + q.B * i22, f.y0 = q.D;
  // Over den = 2A' disc: u = -B'X + disc Y + (B'c0 - disc D'), v = 2A'X - 2A'c0.
  const Integer uX = -q.B, uY = disc, u0 = q.B * c0 - disc * q.D;
  const Integer vX = 2 * q.A, vY = 0, v0 = -2 * q.A * c0;
  f.ixX = t[0][0] * uX + t[0][1] * vX, f.ixY = t[0][0] * uY + t[0][1] * vY, f.ix0 = t[0][0] * u0 + t[0][1] * v0;
  f.iyX = t[1][0] * uX + t[1][1] * vX, f.iyY = t[1][0] * uY + t[1][1] * vY, f.iy0 = t[1][0] * u0 + t[1][1] * v0;
  f.den = 2 * q.A * disc;
  if (f.den < 0) {
    for (Integer* v : {&f.ixX, &f.ixY, &f.ix0, &f.iyX, &f.iyY, &f.iy0, &f.den}) *v = -*v;
  }
  f.modulus = f.den / content({f.den, f.ixX, f.ixY, f.iyX, f.iyY});
  return f;
}

ReducedPellForm reduce_to_pell(const Conic& c) {
  if (classify_conic(c).kind != ConicClass::IrreducibleHyperbolaNonSquareDisc) {
    throw DomainError("reduce_to_pell needs an irreducible hyperbola with non-square discriminant");
  }
  return complete_square(c);
}

unsigned long long stabilizer_exponent(const ReducedPellForm& form, const PellSolution& unit) {
  // The stabilizing exponents form a subgroup eZ, and e divides the congruent exponent.
  const unsigned long long bound = congruent_unit_exponent(form.disc, form.modulus);
  const Integer& m = form.modulus;
  const Residue2 base{mod_floor(unit.t, m), mod_floor(unit.u, m)};
  auto ok = [&](unsigned long long e) {
    const Residue2 r = pow_mod(base, e, form.disc, m);
    return stabilizes(form, r.t, r.u);
  };
  if (!ok(bound)) throw std::logic_error("congruent unit fails to stabilize the lattice image");
  unsigned long long e = bound;
  for (const auto& [q, mult] : factorize(Integer(bound))) {
    (void)mult;
    const auto qq = static_cast<unsigned long long>(q);
    while (e % qq == 0 && ok(e / qq)) e /= qq;
  }
  return e;
}

LatticePoint PellFamily::step(const LatticePoint& p, const PellSolution& unit) const {
  auto [X, Y] = form.forward(p);
  const PellSolution next = compose({X, Y, form.disc, form.constant}, unit);
  auto q = form.backward(next.t, next.u);
  if (!q) throw std::logic_error("composition left the admissible residue classes");
  return *q;
}

std::vector<LatticePoint> family_points_in_window(const PellFamily& family, const Integer& radius) {
  const ReducedPellForm& f = family.form;
  const Integer xmax = (abs(f.xX) + abs(f.xY)) * radius + abs(f.x0);
  const Integer ymax = (abs(f.yX) + abs(f.yY)) * radius + abs(f.y0);
  const Integer bound = xmax + ymax * (isqrt(f.disc) + 1);
  // |X + Y sqrt(d)| <= bound and |X - Y sqrt(d)| <= bound hold for every window point.
  auto exceeds = [&](const Integer& X, const Integer& Y) {
    const int sw = sign_of_quadratic(X, Y, f.disc);
    return sign_of_quadratic(sw * X - bound, sw * Y, f.disc) > 0;
  };
  std::vector<LatticePoint> pts;
  auto visit = [&](const PellSolution& s) {
    if (auto p = f.backward(s.t, s.u); p && in_window(*p, radius)) pts.push_back(*p);
  };
  const PellSolution& eps = family.fundamental_unit;
  const PellSolution inv = conjugate(eps);
  for (const PellSolution& rep : family.classes) {
    for (int sgn : {1, -1}) {
      const PellSolution start{sgn * rep.t, sgn * rep.u, rep.d, rep.n};
      for (PellSolution cur = start; !exceeds(cur.t, cur.u); cur = compose(cur, eps)) visit(cur);
      for (PellSolution cur = compose(start, inv); !exceeds(cur.t, -cur.u); cur = compose(cur, inv)) visit(cur);
    }
  }
  sort_unique(pts);
  return pts;
}

PointSetDescription integer_points(const Conic& c, const Integer& radius) {
  PointSetDescription out;
  const Classification cls = classify_conic(c);
  switch (cls.kind) {
    case ConicClass::IrreducibleHyperbolaNonSquareDisc: {
      PellFamily fam = build_family(reduce_to_pell(c));
      if (fam.classes.empty() || fam.seeds.empty()) {
        out.kind = PointSetKind::EmptySet;
        return out;
      }
      out.kind = PointSetKind::PellFamily;
      out.points = family_points_in_window(fam, radius);
      out.complete = false;
      out.family = std::move(fam);
      break;
    }
    case ConicClass::IrreducibleHyperbolaSquareDisc:
      out.points = square_disc_points(c);
      out.kind = out.points.empty() ? PointSetKind::EmptySet : PointSetKind::FinitePoints;
      break;
    case ConicClass::DegenerateLines: {
      for (const IntegerLine& l : cls.lines) {
        if (!l.has_lattice_points()) continue;
        out.lines.push_back(l);
        auto pts = line_points_in_window(l, radius);
        out.points.insert(out.points.end(), pts.begin(), pts.end());
      }
      sort_unique(out.points);
      out.kind = out.lines.empty() ? PointSetKind::EmptySet : PointSetKind::LineFamily;
      out.complete = out.lines.empty();
      break;
    }
    case ConicClass::ParabolicOrDegenerate:
      out.points = parabola_points_in_window(c, radius);
      out.kind = out.points.empty() ? PointSetKind::EmptySet : PointSetKind::FinitePoints;
      out.complete = false;
      break;
    case ConicClass::EmptyOrPoint:
      if (cls.point) {
        const auto& [px, py] = *cls.point;
        if (denominator(px) == 1 && denominator(py) == 1) {
          out.points.push_back({numerator(px), numerator(py)});
        }
      } else {
        out.points = ellipse_points(c);
      }
      out.kind = out.points.empty() ? PointSetKind::EmptySet : PointSetKind::FinitePoints;
      break;
  }
  for (const LatticePoint& p : out.points) {
    if (c.evaluate(p) != 0) throw std::logic_error("integer_points emitted a point off the conic");
  }
  return out;
}

}  // namespace intdist
