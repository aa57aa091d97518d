#include "intdist/pell.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>
#include <utility>

namespace intdist {

namespace {

void require_nonsquare(const Integer& d) {
  if (d < 2 || is_perfect_square(d)) {
    throw DomainError("Pell discriminant must be a non-square integer >= 2");
  }
}

// Last convergent of one full period of sqrt(d): p^2 - d q^2 = (-1)^period.
std::pair<Integer, Integer> period_convergent(const ContinuedFraction& cf) {
  Integer p_prev = 1, p = cf.a0;
  Integer q_prev = 0, q = 1;
  for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
    const Integer& a = cf.period[i];
    p_prev = std::exchange(p, a * p + p_prev);
    q_prev = std::exchange(q, a * q + q_prev);
  }
  return {p, q};
}

struct Residue2 {
  Integer t;
  Integer u;
};

Residue2 mul_mod(const Residue2& a, const Residue2& b, const Integer& d, const Integer& m) {
  return {mod_floor(a.t * b.t + d * a.u * b.u, m), mod_floor(a.t * b.u + a.u * b.t, m)};
}

Residue2 pow_mod(Residue2 base, Integer e, const Integer& d, const Integer& m) {
  Residue2 acc{mod_floor(Integer(1), m), 0};
  while (e > 0) {
    if ((e & 1) != 0) acc = mul_mod(acc, base, d, m);
    base = mul_mod(base, base, d, m);
    e >>= 1;
  }
  return acc;
}

Integer pow_int(const Integer& b, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer s, t;
  const Integer g = extended_gcd(mod_floor(a, m), m, s, t);
  if (g != 1) throw std::logic_error("mod_inverse of a non-unit");
  return mod_floor(s, m);
}

Integer pow_mod_int(Integer b, Integer e, const Integer& m) {
  Integer r = 1;
  b = mod_floor(b, m);
  while (e > 0) {
    if ((e & 1) != 0) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r % m;
}

// Square roots of d mod an odd prime p not dividing d (Tonelli-Shanks).
std::vector<Integer> sqrt_mod_prime(const Integer& d, const Integer& p) {
  const Integer a = mod_floor(d, p);
  if (pow_mod_int(a, (p - 1) / 2, p) != 1) return {};
  Integer q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Integer z = 2;
  while (pow_mod_int(z, (p - 1) / 2, p) != p - 1) ++z;
  Integer c = pow_mod_int(z, q, p);
  Integer r = pow_mod_int(a, (q + 1) / 2, p);
  Integer t = pow_mod_int(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
    r = (r * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  std::vector<Integer> roots{r};
  if (p - r != r) roots.push_back(p - r);
  return roots;
}

std::vector<Integer> sqrt_mod_prime_power(const Integer& d, const Integer& p, unsigned e) {
  const bool simple = p != 2 && mod_floor(d, p) != 0;
  std::vector<Integer> roots;
  if (simple && p > 1000) {
    roots = sqrt_mod_prime(d, p);
  } else {
    for (Integer r = 0; r < p; ++r) {
      if (mod_floor(r * r - d, p) == 0) roots.push_back(r);
    }
  }
  Integer pk = p;
  for (unsigned k = 1; k < e; ++k) {
    const Integer next = pk * p;
    std::vector<Integer> lifted;
    if (simple) {
      for (const Integer& r : roots) {
        const Integer step = mod_floor((r * r - d) * mod_inverse(2 * r, next), next);
        lifted.push_back(mod_floor(r - step, next));
      }
    } else {
      for (const Integer& r : roots) {
        for (Integer t = 0; t < p; ++t) {
          const Integer c = r + t * pk;
          if (mod_floor(c * c - d, next) == 0) lifted.push_back(c);
        }
      }
    }
    roots = std::move(lifted);
    pk = next;
    if (roots.empty()) break;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// floor((p + sqrt(d)) / q) for q != 0 and d non-square; s = isqrt(d).
Integer quadratic_floor(const Integer& p, const Integer& s, const Integer& q) {
  if (q > 0) return floor_div(p + s, q);
  return -(floor_div(p + s, -q) + 1);
}

}  // namespace

PellSolution fundamental_pell(const Integer& d) {
  require_nonsquare(d);
  const ContinuedFraction cf = cf_sqrt(d);
  auto [p, q] = period_convergent(cf);
  PellSolution s{p, q, d, 1};
  if (cf.period.size() % 2 == 1) {
    // The period convergent solves the -1 equation; its square solves +1.
    s = {p * p + d * q * q, 2 * p * q, d, 1};
  }
  if (!s.satisfies()) throw std::logic_error("fundamental_pell postcondition failed");
  return s;
}

std::optional<PellSolution> negative_pell(const Integer& d) {
  require_nonsquare(d);
  const ContinuedFraction cf = cf_sqrt(d);
  if (cf.period.size() % 2 == 0) return std::nullopt;
  auto [p, q] = period_convergent(cf);
  PellSolution s{p, q, d, -1};
  if (!s.satisfies()) throw std::logic_error("negative_pell postcondition failed");
  return s;
}

PellSolution compose(const PellSolution& s, const PellSolution& unit) {
  if (s.d != unit.d) throw DomainError("compose: mismatched discriminants");
  if (unit.n != 1) throw DomainError("compose: the unit must represent 1");
  return {s.t * unit.t + s.d * s.u * unit.u, s.t * unit.u + s.u * unit.t, s.d, s.n};
}

PellSolution conjugate(const PellSolution& unit) { return {unit.t, -unit.u, unit.d, unit.n}; }

PellSolution unit_power(const PellSolution& unit, unsigned long long k) {
  PellSolution acc{1, 0, unit.d, 1};
  PellSolution base = unit;
  while (k > 0) {
    if (k & 1) acc = compose(acc, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

unsigned long long congruent_unit_exponent(const Integer& d, const Integer& m) {
  require_nonsquare(d);
  if (m < 1) throw DomainError("pell_unit_congruent: modulus must be positive");
  if (m == 1) return 1;
  const PellSolution eps = fundamental_pell(d);
  const Residue2 base{mod_floor(eps.t, m), mod_floor(eps.u, m)};
  // The order of eps in ((Z/m)[X]/(X^2 - d))^* divides this group-order multiple.
  Integer bound = 1;
  for (const auto& [p, e] : factorize(m)) {
    bound = lcm(bound, pow_int(p, 2 * e) * (p * p - 1) * (p - 1));
  }
  Integer order = bound;
  for (const auto& [q, mult] : factorize(bound)) {
    (void)mult;
    while (order % q == 0) {
      const Residue2 r = pow_mod(base, order / q, d, m);
      if (r.t != mod_floor(Integer(1), m) || r.u != 0) break;
      order /= q;
    }
  }
  if (order > std::numeric_limits<unsigned long long>::max()) {
    throw DomainError("pell_unit_congruent: exponent exceeds 64 bits");
  }
  return static_cast<unsigned long long>(order);
}

PellSolution pell_unit_congruent(const Integer& d, const Integer& m) {
  const unsigned long long e = congruent_unit_exponent(d, m);
  PellSolution unit = unit_power(fundamental_pell(d), e);
  if (!unit.satisfies() || mod_floor(unit.t - 1, m) != 0 || mod_floor(unit.u, m) != 0) {
    throw std::logic_error("pell_unit_congruent postcondition failed");
  }
  return unit;
}

bool same_class(const PellSolution& a, const PellSolution& b) {
  if (a.d != b.d || a.n != b.n) return false;
  const Integer& n = a.n;
  return (a.t * b.t - a.d * a.u * b.u) % n == 0 && (a.t * b.u - b.t * a.u) % n == 0;
}

PellSolution canonical_representative(const PellSolution& s, const PellSolution& unit) {
  const PellSolution inv = conjugate(unit);
  auto size = [](const PellSolution& p) { return boost::multiprecision::abs(p.u); };
  // |u| is unimodal along the orbit, so a local descent finds the minimum.
  PellSolution cur = s;
  for (const PellSolution* dir : {&unit, &inv}) {
    while (true) {
      PellSolution next = compose(cur, *dir);
      if (size(next) < size(cur)) {
        cur = std::move(next);
      } else {
        break;
      }
    }
  }
  std::vector<PellSolution> candidates;
  for (const PellSolution& c : {compose(cur, inv), cur, compose(cur, unit)}) {
    candidates.push_back(c);
    candidates.push_back({-c.t, -c.u, c.d, c.n});
  }
  auto key = [](const PellSolution& p) {
    return std::make_tuple(boost::multiprecision::abs(p.u), p.u < 0, p.t < 0,
                           boost::multiprecision::abs(p.t));
  };
  return *std::min_element(candidates.begin(), candidates.end(),
                           [&](const PellSolution& l, const PellSolution& r) { return key(l) < key(r); });
}

std::vector<Integer> sqrt_mod(const Integer& d, const Integer& m) {
  if (m < 1) throw DomainError("sqrt_mod: modulus must be positive");
  std::vector<Integer> roots{0};
  Integer modulus = 1;
  if (m == 1) return roots;
  for (const auto& [p, e] : factorize(m)) {
    const Integer pk = pow_int(p, e);
    const std::vector<Integer> local = sqrt_mod_prime_power(d, p, e);
    if (local.empty()) return {};
    // Chinese remaindering against what has been accumulated so far.
    const Integer inv = mod_inverse(modulus, pk);
    std::vector<Integer> merged;
    merged.reserve(roots.size() * local.size());
    for (const Integer& r : roots) {
      for (const Integer& l : local) {
        const Integer k = mod_floor((l - r) * inv, pk);
        merged.push_back(r + modulus * k);
      }
    }
    roots = std::move(merged);
    modulus *= pk;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

SolutionClassSet solve_general(const Integer& d, const Integer& n) {
  require_nonsquare(d);
  if (n == 0) throw DomainError("solve_general: n must be nonzero");
  SolutionClassSet result{d, n, {}, fundamental_pell(d)};
  const std::optional<PellSolution> minus_one = negative_pell(d);
  const Integer s = isqrt(d);

  // f ranges over positive integers with f^2 | n.
  std::vector<Integer> fs{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = fs.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e / 2; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) fs.push_back(fs[j] * pk);
    }
  }
  std::sort(fs.begin(), fs.end());

  std::vector<PellSolution> found;
  for (const Integer& f : fs) {
    const Integer m = n / (f * f);
    const Integer am = boost::multiprecision::abs(m);
    for (Integer z : sqrt_mod(d, am)) {
      if (2 * z > am) z -= am;
      // PQa expansion of (z + sqrt(d)) / |m|; look for the first Q_i = +-1.
      Integer P = z, Q = am;
      Integer A2 = 0, A1 = 1, B2 = 1, B1 = 0, G2 = -z, G1 = am;
      std::set<std::pair<Integer, Integer>> seen;
      for (std::size_t i = 0;; ++i) {
        if (i >= 1 && (Q == 1 || Q == -1)) {
          const Integer& r = G1;
          const Integer& t = B1;
          const Integer value = r * r - d * t * t;
          if (value == m) {
            found.push_back({f * r, f * t, d, n});
          } else if (value == -m && minus_one) {
            found.push_back({f * (r * minus_one->t + d * t * minus_one->u),
                             f * (r * minus_one->u + t * minus_one->t), d, n});
          }
          break;
        }
        if (!seen.emplace(P, Q).second) break;
        const Integer a = quadratic_floor(P, s, Q);
        Integer A = a * A1 + A2, B = a * B1 + B2, G = a * G1 + G2;
        A2 = std::exchange(A1, std::move(A));
        B2 = std::exchange(B1, std::move(B));
        G2 = std::exchange(G1, std::move(G));
        P = a * Q - P;
        Q = (d - P * P) / Q;
      }
    }
  }

  for (const PellSolution& sol : found) {
    if (!sol.satisfies()) throw std::logic_error("solve_general produced a non-solution");
    PellSolution canon = canonical_representative(sol, result.unit);
    const bool known = std::any_of(result.representatives.begin(), result.representatives.end(),
                                   [&](const PellSolution& r) { return same_class(r, canon); });
    if (!known) result.representatives.push_back(std::move(canon));
  }
  std::sort(result.representatives.begin(), result.representatives.end(),
            [](const PellSolution& l, const PellSolution& r) {
              return std::tie(l.u, l.t) < std::tie(r.u, r.t);
            });
  return result;
}

}  // namespace intdist
