#pragma once

// Exact integer primitives shared by the rest of the library.

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace intdist {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Thrown when an input violates an operation's mathematical precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LatticePoint {
  Integer x;
  Integer y;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend std::strong_ordering operator<=>(const LatticePoint& lhs, const LatticePoint& rhs) {
    if (lhs.x != rhs.x) return lhs.x < rhs.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (lhs.y != rhs.y) return lhs.y < rhs.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline LatticePoint operator+(const LatticePoint& p, const LatticePoint& q) { return {p.x + q.x, p.y + q.y}; }
inline LatticePoint operator-(const LatticePoint& p, const LatticePoint& q) { return {p.x - q.x, p.y - q.y}; }

std::ostream& operator<<(std::ostream& os, const LatticePoint& p);
std::string to_string(const LatticePoint& p);

inline Integer norm2(const LatticePoint& p) { return p.x * p.x + p.y * p.y; }

/// floor(sqrt(n)) by Newton iteration; throws DomainError for n < 0.
Integer isqrt(const Integer& n);
std::uint64_t isqrt(std::uint64_t n);

bool is_perfect_square(const Integer& n);
bool is_perfect_square(std::int64_t n);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Floor division and the matching nonnegative remainder (for positive divisors).
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& m);

int sign(const Integer& n);

/// Sign of p + q*sqrt(d) for d > 0 non-square, computed without irrationals.
int sign_of_quadratic(const Integer& p, const Integer& q, const Integer& d);

/// Prime factorization of |n| by trial division (n != 0). Keys are primes.
std::map<Integer, unsigned> factorize(const Integer& n);

/// All positive divisors of |n| (n != 0), ascending.
std::vector<Integer> positive_divisors(const Integer& n);

struct ContinuedFraction {
  Integer a0;
  std::vector<Integer> period;
};

/// Periodic continued fraction of sqrt(d) with minimal period.
ContinuedFraction cf_sqrt(const Integer& d);

/// Extended Euclid: returns g = gcd(a,b) >= 0 with a*s + b*t = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

}  // namespace intdist
