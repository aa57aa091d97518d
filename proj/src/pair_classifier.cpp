#include "intdist/pair_classifier.hpp"

#include "intdist/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace intdist {

namespace {

void sort_unique(std::vector<LatticePoint>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

bool in_window(const LatticePoint& p, const Integer& radius) {
  return abs(p.x) <= radius && abs(p.y) <= radius;
}

// | |q| - |q - P| | for a point at integral distance from O and P.
std::optional<Integer> recovered_k(const LatticePoint& q, const LatticePoint& p) {
  auto d1 = integral_distance(q, {0, 0});
  auto d2 = integral_distance(q, p);
  if (!d1 || !d2) return std::nullopt;
  return abs(*d1 - *d2);
}

// Canonical window wide enough to cover the original window after the transform.
Integer canonical_radius(const NormalizedPair& pair, const Integer& radius) {
  return radius + std::max(abs(pair.origin.x), abs(pair.origin.y));
}

// Maps canonical members to the original frame; infinite sets keep the window only.
std::vector<LatticePoint> to_original(const NormalizedPair& pair, const std::vector<LatticePoint>& canonical,
                                      bool windowed, const Integer& radius) {
  std::vector<LatticePoint> out;
  for (const LatticePoint& q : canonical) {
    LatticePoint o = pair.to_original(q);
    if (!windowed || in_window(o, radius)) out.push_back(o);
  }
  sort_unique(out);
  return out;
}

bool infinite_kind(PointSetKind k) { return k == PointSetKind::PellFamily || k == PointSetKind::LineFamily; }

Branch hyperbola_branch(const NormalizedPair& pair, const AdmissibleK& ak, const Integer& radius) {
  const LatticePoint p{pair.a, pair.b};
  Branch br;
  br.k = ak.k;
  br.delta = ak.delta;
  br.conic = build_conic(pair.a, pair.b, ak.k);
  br.description = integer_points(*br.conic, canonical_radius(pair, radius));
  std::vector<LatticePoint> genuine;
  for (const LatticePoint& q : br.description.points) {
    if (recovered_k(q, p) == ak.k) genuine.push_back(q);
  }
  br.description.points = genuine;
  if (br.description.kind == PointSetKind::FinitePoints && genuine.empty()) {
    br.description.kind = PointSetKind::EmptySet;
    br.note = "conic points lie on other branches";
  }
  br.points = to_original(pair, genuine, infinite_kind(br.description.kind), radius);
  return br;
}

Branch equidistant_in(const NormalizedPair& pair, const Integer& radius) {
  const Integer& a = pair.a;
  const Integer& b = pair.b;
  Branch br;
  br.k = 0;
  br.delta = a * a + b * b;
  if ((a + b) % 2 != 0) {
    br.note = "parity: k = 0 requires a + b even";
    return br;
  }
  // Lattice points of 2ax + 2by = a^2 + b^2 are base + t * direction.
  Integer s, t;
  const Integer g = extended_gcd(2 * a, 2 * b, s, t);
  const Integer rhs = a * a + b * b;
  if (rhs % g != 0) {
    br.note = "no lattice points on the equidistant line";
    return br;
  }
  const Integer h = g / 2;
  LatticePoint dir{b / h, -a / h};
  LatticePoint base{s * (rhs / g), t * (rhs / g)};
  const Integer dd = norm2(dir);
  const Integer shift = floor_div(2 * (base.x * dir.x + base.y * dir.y) + dd, 2 * dd);
  base = {base.x - shift * dir.x, base.y - shift * dir.y};
  br.embedding = LineEmbedding{base, dir};
  // |base + t dir|^2 = z^2 in the (t, z) plane.
  br.conic = make_conic(dd, 0, -1, 2 * (base.x * dir.x + base.y * dir.y), 0, norm2(base));
  const Integer r = canonical_radius(pair, radius);
  const Integer tz_radius = 2 * r + abs(base.x) + abs(base.y);
  br.description = integer_points(*br.conic, tz_radius);
  std::vector<LatticePoint> plane;
  for (const LatticePoint& tz : br.description.points) plane.push_back(br.embedding->apply(tz));
  sort_unique(plane);
  std::vector<LatticePoint> canonical;
  for (const LatticePoint& q : plane) {
    if (infinite_kind(br.description.kind) && !in_window(q, r)) continue;
    if (recovered_k(q, {a, b}) != Integer(0)) throw std::logic_error("equidistant member with nonzero k");
    canonical.push_back(q);
  }
  br.points = to_original(pair, canonical, infinite_kind(br.description.kind), radius);
  br.lines.push_back(pair.line_to_original(make_line(2 * a, 2 * b, -rhs)));
  return br;
}

std::optional<Branch> line_op_in(const NormalizedPair& pair, const Integer& radius) {
  const Integer n = pair.a * pair.a + pair.b * pair.b;
  if (!is_perfect_square(n)) return std::nullopt;
  Branch br;
  br.k = isqrt(n);
  br.delta = 0;
  br.conic = build_conic(pair.a, pair.b, br.k);
  const IntegerLine line = make_line(pair.b, -pair.a, 0);
  br.description.kind = PointSetKind::LineFamily;
  br.description.complete = false;
  br.description.lines.push_back(line);
  // Points strictly between O and P have a smaller |k| and belong to that branch.
  for (const LatticePoint& q : line_points_in_window(line, canonical_radius(pair, radius))) {
    if (recovered_k(q, {pair.a, pair.b}) == br.k) br.description.points.push_back(q);
  }
  br.points = to_original(pair, br.description.points, true, radius);
  br.lines.push_back(pair.line_to_original(line));
  return br;
}

StructureReport assemble(const LatticePoint& p1, const LatticePoint& p2, const Integer& radius) {
  if (radius < 1) throw DomainError("radius must be positive");
  StructureReport rep;
  rep.p1 = p1;
  rep.p2 = p2;
  rep.pair = normalize(p1, p2);
  rep.radius = radius;
  const Integer& a = rep.pair.a;
  const Integer& b = rep.pair.b;
  for (const AdmissibleK& ak : admissible_ks(a, b)) {
    if (ak.k == 0 || ak.line_branch) continue;
    rep.branches.push_back(hyperbola_branch(rep.pair, ak, radius));
  }
  rep.equidistant = equidistant_in(rep.pair, radius);
  rep.line_op = line_op_in(rep.pair, radius);
  for (const Branch& br : rep.branches) {
    if (br.description.kind == PointSetKind::PellFamily) rep.infinite_off_lines = true;
  }
  rep.infinite = rep.infinite_off_lines || infinite_kind(rep.equidistant.description.kind) ||
                 (rep.line_op && infinite_kind(rep.line_op->description.kind));
  rep.exceptional = exceptional_case(a, b);

  // Q determines |k|, so branches never share a point.
  std::vector<LatticePoint> all;
  std::size_t total = 0;
  auto add = [&](const Branch& br) {
    all.insert(all.end(), br.points.begin(), br.points.end());
    total += br.points.size();
  };
  for (const Branch& br : rep.branches) add(br);
  add(rep.equidistant);
  if (rep.line_op) add(*rep.line_op);
  sort_unique(all);
  if (all.size() != total) throw std::logic_error("a point was reported in two branches");
  for (const LatticePoint& q : all) {
    if (!integral_distance(q, p1) || !integral_distance(q, p2)) {
      throw std::logic_error("reported point without integral distances");
    }
  }
  return rep;
}

const Branch* branch_with_k(const StructureReport& rep, const Integer& k) {
  for (const Branch& br : rep.branches) {
    if (br.k == k) return &br;
  }
  return nullptr;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("exceptional structure mismatch: " + what);
}

bool all_on(const StructureReport& rep, const std::vector<LatticePoint>& pts, const IntegerLine& canonical_line) {
  const IntegerLine line = rep.pair.line_to_original(canonical_line);
  return std::all_of(pts.begin(), pts.end(), [&](const LatticePoint& q) { return line.evaluate(q) == 0; });
}

std::vector<LatticePoint> canonical_points(const StructureReport& rep, const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> out;
  for (const LatticePoint& q : pts) out.push_back(rep.pair.to_canonical(q));
  sort_unique(out);
  return out;
}

// The exceptional case list, checked on the assembled report.
void check_exceptional(const StructureReport& rep) {
  const std::string tag = *rep.exceptional;
  const auto equid = rep.equidistant.description.kind;
  if (tag == "i" || tag == "iii") {
    require(rep.line_op && rep.line_op->description.kind == PointSetKind::LineFamily, "y-axis family");
    require(all_on(rep, rep.all_points(), make_line(1, 0, 0)), "points off the y-axis");
    require(rep.infinite && !rep.infinite_off_lines, "verdict");
    if (tag == "iii") {
      require(canonical_points(rep, rep.equidistant.points) == std::vector<LatticePoint>{{0, 1}}, "(0,1)");
    }
  } else if (tag == "ii" || tag == "v") {
    const Integer c = tag == "ii" ? 1 : 2;
    require(equid == PointSetKind::PellFamily, "equidistant family");
    require(all_on(rep, rep.all_points(), make_line(1, 1, -c)), "points off x+y=" + c.str());
    require(rep.infinite && !rep.infinite_off_lines, "verdict");
  } else if (tag == "iv") {
    require(canonical_points(rep, rep.all_points()) == std::vector<LatticePoint>{{0, 2}, {1, 0}}, "finite set");
    require(!rep.infinite, "verdict");
  } else if (tag == "vi") {
    require(equid == PointSetKind::PellFamily, "equidistant family");
    require(all_on(rep, rep.equidistant.points, make_line(1, 2, -5)), "points off x+2y=5");
    std::vector<LatticePoint> sporadic;
    for (const Branch& br : rep.branches) sporadic.insert(sporadic.end(), br.points.begin(), br.points.end());
    require(canonical_points(rep, sporadic) == std::vector<LatticePoint>{{-1, 0}, {0, 4}, {2, 0}, {3, 4}},
            "sporadic set");
    require(rep.infinite && !rep.infinite_off_lines, "verdict");
  }
}

}  // namespace

LatticePoint OrthogonalMap::apply(const LatticePoint& p) const {
  return {m11 * p.x + m12 * p.y, m21 * p.x + m22 * p.y};
}

LatticePoint OrthogonalMap::apply_inverse(const LatticePoint& p) const {
  return {m11 * p.x + m21 * p.y, m12 * p.x + m22 * p.y};
}

LatticePoint NormalizedPair::to_original(const LatticePoint& canonical) const {
  return origin + map.apply(canonical);
}

LatticePoint NormalizedPair::to_canonical(const LatticePoint& original) const {
  return map.apply_inverse(original - origin);
}

IntegerLine NormalizedPair::line_to_original(const IntegerLine& canonical) const {
  const LatticePoint n = map.apply({canonical.a, canonical.b});
  return make_line(n.x, n.y, canonical.c - n.x * origin.x - n.y * origin.y);
}

NormalizedPair normalize(const LatticePoint& p1, const LatticePoint& p2) {
  if (p1 == p2) throw DomainError("the two points must be distinct");
  const LatticePoint d = p2 - p1;
  const int sx = d.x < 0 ? -1 : 1;
  const int sy = d.y < 0 ? -1 : 1;
  NormalizedPair out;
  out.origin = p1;
  if (abs(d.x) <= abs(d.y)) {
    out.a = abs(d.x);
    out.b = abs(d.y);
    out.map = {sx, 0, 0, sy};
  } else {
    out.a = abs(d.y);
    out.b = abs(d.x);
    out.map = {0, sx, sy, 0};
  }
  if (out.to_original({out.a, out.b}) != p2) throw std::logic_error("normalize transform is not exact");
  return out;
}

std::vector<AdmissibleK> admissible_ks(const Integer& a, const Integer& b) {
  if (a < 0 || b < a || b == 0) throw DomainError("admissible_ks expects b >= a >= 0, (a,b) != (0,0)");
  const Integer n = a * a + b * b;
  std::vector<AdmissibleK> out;
  for (Integer k = (a + b) % 2; k * k <= n; k += 2) out.push_back({k, n - k * k, k * k == n});
  return out;
}

std::optional<std::string> exceptional_case(const Integer& a, const Integer& b) {
  static const std::pair<std::pair<int, int>, const char*> kList[] = {
      {{0, 1}, "i"}, {{1, 1}, "ii"}, {{0, 2}, "iii"}, {{1, 2}, "iv"}, {{2, 2}, "v"}, {{2, 4}, "vi"}};
  for (const auto& [ab, tag] : kList) {
    if (a == ab.first && b == ab.second) return std::string(tag);
  }
  return std::nullopt;
}

bool is_exceptional(const Integer& a, const Integer& b) { return exceptional_case(a, b).has_value(); }

Witness witness_hyperbola(const Integer& a, const Integer& b) {
  if (a < 0 || b < a || b == 0) throw DomainError("witness_hyperbola expects b >= a >= 0, (a,b) != (0,0)");
  if (is_exceptional(a, b)) {
    throw DomainError("(" + a.str() + "," + b.str() + ") is exceptional; use exceptional_structure");
  }
  Integer k;
  if (b % 2 != 0) {
    k = a != 1 ? a - 1 : Integer(2);
  } else {
    k = (a != 1 && a != 2) ? a - 2 : a + 2;
  }
  const Integer m = k - a;
  const Integer num = b * b - m * m;
  if (num % (2 * m) != 0) throw std::logic_error("witness abscissa is not integral");
  Witness w{k, {num / (2 * m), b}, num / (2 * m) + m, a * a + b * b - k * k};
  if (k == 0 || w.delta <= 0 || is_perfect_square(w.delta)) throw std::logic_error("witness recipe failed");
  const Integer x = w.seed.x;
  if (x * x + b * b != w.z * w.z || (x - a) * (x - a) != (w.z - k) * (w.z - k)) {
    throw std::logic_error("witness seed does not solve the system");
  }
  return w;
}

Branch equidistant_branch(const Integer& a, const Integer& b, const Integer& radius) {
  return equidistant_in(normalize({0, 0}, {a, b}), radius);
}

std::optional<Branch> line_op_branch(const Integer& a, const Integer& b, const Integer& radius) {
  return line_op_in(normalize({0, 0}, {a, b}), radius);
}

StructureReport exceptional_structure(const Integer& a, const Integer& b, const Integer& radius) {
  if (a < 0 || b < a || !is_exceptional(a, b)) {
    throw DomainError("(" + a.str() + "," + b.str() + ") is not in the exceptional list");
  }
  StructureReport rep = assemble({0, 0}, {a, b}, radius);
  check_exceptional(rep);
  return rep;
}

StructureReport classify_pair(const LatticePoint& p1, const LatticePoint& p2, const Integer& radius) {
  StructureReport rep = assemble(p1, p2, radius);
  if (rep.exceptional) {
    check_exceptional(rep);
    return rep;
  }
  Witness w = witness_hyperbola(rep.pair.a, rep.pair.b);
  const Branch* br = branch_with_k(rep, abs(w.k));
  if (br == nullptr || br->description.kind != PointSetKind::PellFamily || br->conic->evaluate(w.seed) != 0) {
    throw std::logic_error("witness hyperbola is not an infinite branch");
  }
  w.seed = rep.pair.to_original(w.seed);
  rep.witness = w;
  return rep;
}

std::vector<LatticePoint> StructureReport::all_points() const {
  std::vector<LatticePoint> out;
  for (const Branch& br : branches) out.insert(out.end(), br.points.begin(), br.points.end());
  out.insert(out.end(), equidistant.points.begin(), equidistant.points.end());
  if (line_op) out.insert(out.end(), line_op->points.begin(), line_op->points.end());
  sort_unique(out);
  return out;
}

std::vector<GeneratedPoint> generate_points(const StructureReport& report, std::size_t count) {
  const Branch* source = nullptr;
  if (report.witness) {
    source = branch_with_k(report, abs(report.witness->k));
  } else if (report.equidistant.description.kind == PointSetKind::PellFamily) {
    source = &report.equidistant;
  }
  std::vector<GeneratedPoint> out;
  std::set<LatticePoint> seen;
  auto emit = [&](const LatticePoint& canonical) {
    const LatticePoint q = report.pair.to_original(canonical);
    if (out.size() >= count || !seen.insert(q).second) return;
    auto d1 = integral_distance(q, report.p1);
    auto d2 = integral_distance(q, report.p2);
    if (!d1 || !d2) throw std::logic_error("generated point without integral distances");
    out.push_back({q, *d1, *d2});
  };
  if (source != nullptr) {
    const PellFamily& fam = *source->description.family;
    const PellSolution g = fam.generator();
    const PellSolution ginv = conjugate(g);
    auto plane = [&](const LatticePoint& p) { return source->embedding ? source->embedding->apply(p) : p; };
    std::vector<LatticePoint> fwd = fam.seeds;
    std::vector<LatticePoint> bwd = fam.seeds;
    for (const LatticePoint& s : fam.seeds) emit(plane(s));
    while (out.size() < count) {
      for (LatticePoint& p : fwd) emit(plane(p = fam.step(p, g)));
      for (LatticePoint& p : bwd) emit(plane(p = fam.step(p, ginv)));
    }
    return out;
  }
  if (report.line_op) {
    const LatticePoint p{report.pair.a, report.pair.b};
    const Integer g = gcd(p.x, p.y);
    const LatticePoint u{p.x / g, p.y / g};
    for (Integer t = 0; out.size() < count; t = t > 0 ? -t : 1 - t) emit({t * u.x, t * u.y});
    return out;
  }
  throw DomainError("set is finite");
}

}  // namespace intdist
