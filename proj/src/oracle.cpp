#include "intdist/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace intdist {

namespace {

constexpr std::int64_t kFastLimit = std::int64_t{1} << 29;

bool fits_fast(std::span<const LatticePoint> points, const Integer& radius) {
  if (radius > kFastLimit) return false;
  return std::all_of(points.begin(), points.end(), [](const LatticePoint& p) {
    return abs(p.x) <= kFastLimit && abs(p.y) <= kFastLimit;
  });
}

// Coordinates below 2^29 keep every squared distance below 2^63.
std::vector<LatticePoint> scan_fast(std::span<const LatticePoint> points, std::int64_t radius) {
  std::vector<std::pair<std::int64_t, std::int64_t>> ps;
  ps.reserve(points.size());
  for (const auto& p : points) ps.emplace_back(p.x.convert_to<std::int64_t>(), p.y.convert_to<std::int64_t>());
  std::vector<LatticePoint> out;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    for (std::int64_t y = -radius; y <= radius; ++y) {
      bool ok = true;
      for (const auto& [px, py] : ps) {
        std::int64_t dx = x - px;
        std::int64_t dy = y - py;
        if (!is_perfect_square(dx * dx + dy * dy)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back({x, y});
    }
  }
  return out;
}

std::vector<LatticePoint> scan_exact(std::span<const LatticePoint> points, const Integer& radius) {
  std::vector<LatticePoint> out;
  for (Integer x = -radius; x <= radius; ++x) {
    for (Integer y = -radius; y <= radius; ++y) {
      LatticePoint q{x, y};
      if (verify_membership(q, points)) out.push_back(q);
    }
  }
  return out;
}

}  // namespace

OracleResult brute_force(std::span<const LatticePoint> points, const Integer& radius) {
  if (radius < 1) throw DomainError("oracle radius must be positive");
  if (points.empty()) throw DomainError("oracle needs at least one point");
  OracleResult result{radius, {}};
  result.points = fits_fast(points, radius) ? scan_fast(points, radius.convert_to<std::int64_t>())
                                            : scan_exact(points, radius);
  return result;
}

bool verify_membership(const LatticePoint& q, std::span<const LatticePoint> points) {
  return std::all_of(points.begin(), points.end(),
                     [&](const LatticePoint& p) { return is_perfect_square(norm2(q - p)); });
}

std::optional<Integer> integral_distance(const LatticePoint& p, const LatticePoint& q) {
  Integer n = norm2(p - q);
  Integer r = isqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace intdist
