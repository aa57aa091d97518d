#include "intdist/multi_point.hpp"

#include "intdist/oracle.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <stdexcept>

namespace intdist {

namespace {

using Row = std::array<Rational, 4>;

struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  std::array<Rational, 3> particular{};
  std::array<Rational, 3> null{};
};

// Gauss-Jordan elimination of rows (x, y, z | rhs).
LinearSolution solve_linear(std::vector<Row> m) {
  LinearSolution out;
  std::array<int, 3> pivot_row{-1, -1, -1};
  int r = 0;
  for (int c = 0; c < 3 && r < static_cast<int>(m.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(m.size()) && m[p][c] == 0) ++p;
    if (p == static_cast<int>(m.size())) continue;
    std::swap(m[p], m[r]);
    const Rational lead = m[r][c];
    for (auto& v : m[r]) v /= lead;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (int j = 0; j < 4; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_row[c] = r++;
  }
  out.rank = r;
  for (int i = r; i < static_cast<int>(m.size()); ++i) {
    if (m[i][3] != 0) return out;
  }
  out.consistent = true;
  int free_col = -1;
  for (int c = 0; c < 3; ++c) {
    if (pivot_row[c] < 0 && free_col < 0) free_col = c;
  }
  for (int c = 0; c < 3; ++c) {
    if (pivot_row[c] >= 0) out.particular[c] = m[pivot_row[c]][3];
  }
  if (r == 2) {
    out.null[free_col] = 1;
    for (int c = 0; c < 3; ++c) {
      if (pivot_row[c] >= 0) out.null[c] = -m[pivot_row[c]][free_col];
    }
  }
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const Integer n = numerator(q);
  const Integer d = denominator(q);
  if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
  return Rational(isqrt(n), isqrt(d));
}

// Real solutions (x, y) of the tuple's system together with x^2 + y^2 = z^2.
void tuple_solutions(const LinearSolution& s, std::vector<std::pair<Rational, Rational>>& out, bool& whole_line) {
  if (s.rank == 3) {
    const auto& p = s.particular;
    if (p[0] * p[0] + p[1] * p[1] == p[2] * p[2]) out.emplace_back(p[0], p[1]);
    return;
  }
  if (s.rank == 2) {
    const auto& p = s.particular;
    const auto& n = s.null;
    const Rational q2 = n[0] * n[0] + n[1] * n[1] - n[2] * n[2];
    const Rational q1 = 2 * (p[0] * n[0] + p[1] * n[1] - p[2] * n[2]);
    const Rational q0 = p[0] * p[0] + p[1] * p[1] - p[2] * p[2];
    std::vector<Rational> roots;
    if (q2 == 0 && q1 == 0) {
      if (q0 == 0) whole_line = true;
    } else if (q2 == 0) {
      roots.push_back(-q0 / q1);
    } else if (auto root = rational_sqrt(q1 * q1 - 4 * q2 * q0)) {
      roots.push_back((-q1 + *root) / (2 * q2));
      roots.push_back((-q1 - *root) / (2 * q2));
    }
    for (const Rational& t : roots) out.emplace_back(p[0] + t * n[0], p[1] + t * n[1]);
    return;
  }
  // Rank 1: all rows proportional, which forces every delta_i = 0 and the line OP_i.
  whole_line = true;
}

}  // namespace

std::string to_string(MultiKind kind) {
  return kind == MultiKind::FiniteSet ? "FiniteSet" : "LineUnionFinite";
}

bool are_collinear(const std::vector<LatticePoint>& points) {
  if (points.size() < 2) throw DomainError("collinearity needs at least two points");
  for (std::size_t i = 2; i < points.size(); ++i) {
    const LatticePoint u = points[1] - points[0];
    const LatticePoint v = points[i] - points[0];
    if (u.x * v.y - u.y * v.x != 0) return false;
  }
  return true;
}

bool are_collinear_integral(const std::vector<LatticePoint>& points) {
  if (!are_collinear(points)) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!integral_distance(points[i], points[j])) return false;
    }
  }
  return true;
}

MultiReport solve_multi(const std::vector<LatticePoint>& points) {
  if (points.size() < 3) throw DomainError("multi needs at least three points; use classify for two");
  {
    std::set<LatticePoint> distinct(points.begin(), points.end());
    if (distinct.size() != points.size()) throw DomainError("points must be pairwise distinct");
  }
  MultiReport rep;
  rep.points = points;
  const LatticePoint origin = points[0];
  std::vector<LatticePoint> rel;
  std::vector<Integer> bound;
  for (std::size_t i = 1; i < points.size(); ++i) {
    rel.push_back(points[i] - origin);
    bound.push_back(isqrt(norm2(rel.back())));
  }
  // k_i runs over |k_i| <= |P_i| with k_i = a_i + b_i (mod 2).
  std::vector<Integer> k(rel.size());
  auto first_k = [&](std::size_t i) {
    Integer s = -bound[i];
    if ((s - rel[i].x - rel[i].y) % 2 != 0) ++s;
    return s;
  };
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = first_k(i);
  std::set<LatticePoint> candidates;
  bool line_seen = false;
  while (true) {
    ++rep.tuples_examined;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const Integer& a = rel[i].x;
      const Integer& b = rel[i].y;
      rows.push_back({Rational(2 * a), Rational(2 * b), Rational(-2 * k[i]), Rational(a * a + b * b - k[i] * k[i])});
    }
    const LinearSolution s = solve_linear(rows);
    if (s.consistent) {
      std::vector<std::pair<Rational, Rational>> sols;
      bool whole_line = false;
      tuple_solutions(s, sols, whole_line);
      line_seen = line_seen || whole_line;
      for (const auto& [x, y] : sols) {
        if (denominator(x) == 1 && denominator(y) == 1) candidates.insert(origin + LatticePoint{numerator(x), numerator(y)});
      }
    }
    std::size_t i = 0;
    while (i < k.size()) {
      k[i] += 2;
      if (k[i] <= bound[i]) break;
      k[i] = first_k(i);
      ++i;
    }
    if (i == k.size()) break;
  }

  const bool line_case = are_collinear_integral(points);
  if (line_seen && !line_case) throw std::logic_error("a tuple admitted a whole line for a non-integral configuration");
  if (line_case) {
    rep.kind = MultiKind::LineUnionFinite;
    const LatticePoint d = points[1] - points[0];
    const Integer g = gcd(d.x, d.y);
    LineMembership lm;
    lm.direction = {d.x / g, d.y / g};
    lm.base = origin;
    lm.line = make_line(lm.direction.y, -lm.direction.x, lm.direction.x * origin.y - lm.direction.y * origin.x);
    lm.direction_norm = isqrt(norm2(lm.direction));
    std::ostringstream cond;
    cond << "Q=" << origin << "+t*" << lm.direction << ", t integer; w_i^2-" << norm2(lm.direction)
         << "*(t-t_i)^2=0 with t_i in {";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const LatticePoint v = points[i] - origin;
      lm.parameters.push_back(lm.direction.x != 0 ? v.x / lm.direction.x : v.y / lm.direction.y);
      cond << (i ? "," : "") << lm.parameters.back();
    }
    cond << "}; " << norm2(lm.direction) << " is a square, so every t is a solution";
    lm.condition = cond.str();
    rep.line = lm;
  }
  for (const LatticePoint& q : candidates) {
    if (!verify_membership(q, points)) continue;
    if (rep.line && rep.line->line.evaluate(q) == 0) continue;
    rep.finite_part.push_back(q);
  }
  return rep;
}

std::vector<LatticePoint> multi_points_in_window(const MultiReport& report, const Integer& radius) {
  std::vector<LatticePoint> out;
  for (const LatticePoint& q : report.finite_part) {
    if (abs(q.x) <= radius && abs(q.y) <= radius) out.push_back(q);
  }
  if (report.line) {
    auto pts = line_points_in_window(report.line->line, radius);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace intdist
