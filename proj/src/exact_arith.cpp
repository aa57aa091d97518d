#include "intdist/exact_arith.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace intdist {

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

std::string to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  if (n < 2) return n;
  // Start above the root so that the Newton sequence decreases monotonically.
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  Integer x = Integer(1) << ((bits + 1) / 2);
  while (true) {
    Integer next = (x + n / x) >> 1;
    if (next >= x) break;
    x = std::move(next);
  }
  if (!(x * x <= n && (x + 1) * (x + 1) > n)) {
    throw std::logic_error("isqrt postcondition failed");
  }
  return x;
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

// Squares mod 64 filter most candidates before the root is taken.
constexpr std::uint64_t kSquaresMod64 = [] {
  std::uint64_t mask = 0;
  for (unsigned i = 0; i < 64; ++i) mask |= 1ULL << ((i * i) & 63);
  return mask;
}();

}  // namespace

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const unsigned low = static_cast<unsigned>(static_cast<std::uint64_t>(n & 63));
  if (((kSquaresMod64 >> low) & 1) == 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  const auto u = static_cast<std::uint64_t>(n);
  if (((kSquaresMod64 >> (u & 63)) & 1) == 0) return false;
  const std::uint64_t r = isqrt(u);
  return r * r == u;
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero");
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += boost::multiprecision::abs(m);
  return r;
}

int sign(const Integer& n) { return n.sign(); }

int sign_of_quadratic(const Integer& p, const Integer& q, const Integer& d) {
  const int sp = sign(p);
  const int sq = sign(q);
  if (sp >= 0 && sq >= 0) return (sp | sq) ? 1 : 0;
  if (sp <= 0 && sq <= 0) return -1;
  // Opposite signs: compare p^2 against d*q^2.
  const int cmp = (p * p).compare(d * q * q);
  return sp > 0 ? cmp : -cmp;
}

namespace {

void factor_u64(std::uint64_t n, std::map<Integer, unsigned>& out) {
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  // Wheel over residues coprime to 30.
  static constexpr std::uint64_t kSteps[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t p = 7;
  unsigned step = 0;
  while (p <= n / p) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
    p += kSteps[step];
    step = (step + 1) & 7;
  }
  if (n > 1) ++out[Integer(n)];
}

}  // namespace

std::map<Integer, unsigned> factorize(const Integer& n) {
  if (n == 0) throw DomainError("factorize(0)");
  Integer m = boost::multiprecision::abs(n);
  std::map<Integer, unsigned> out;
  if (m <= std::numeric_limits<std::uint64_t>::max()) {
    factor_u64(static_cast<std::uint64_t>(m), out);
    return out;
  }
  Integer p = 2;
  while (p * p <= m) {
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
    if (m <= std::numeric_limits<std::uint64_t>::max()) {
      std::map<Integer, unsigned> rest;
      factor_u64(static_cast<std::uint64_t>(m), rest);
      for (auto& [q, e] : rest) out[q] += e;
      return out;
    }
    p += (p == 2) ? 1 : 2;
  }
  if (m > 1) ++out[m];
  return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

ContinuedFraction cf_sqrt(const Integer& d) {
  if (d < 2 || is_perfect_square(d)) {
    throw DomainError("cf_sqrt requires a non-square integer >= 2");
  }
  ContinuedFraction cf;
  cf.a0 = isqrt(d);
  // Standard (m, q, a) recurrence; the period ends at the first a == 2*a0.
  Integer m = 0;
  Integer q = 1;
  Integer a = cf.a0;
  do {
    m = q * a - m;
    q = (d - m * m) / q;
    a = (cf.a0 + m) / q;
    cf.period.push_back(a);
  } while (a != 2 * cf.a0);
  return cf;
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer old_r = a, r = b;
  Integer old_s = 1, cur_s = 0;
  Integer old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(cur_s, old_s - q * cur_s);
    old_t = std::exchange(cur_t, old_t - q * cur_t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

}  // namespace intdist
