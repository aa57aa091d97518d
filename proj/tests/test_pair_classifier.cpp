#include "intdist/oracle.hpp"
#include "intdist/pair_classifier.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace intdist;

namespace {

bool contains(const std::vector<LatticePoint>& pts, const LatticePoint& q) {
  return std::find(pts.begin(), pts.end(), q) != pts.end();
}

std::vector<LatticePoint> in_window(const std::vector<LatticePoint>& pts, const Integer& r) {
  std::vector<LatticePoint> out;
  for (const auto& p : pts) {
    if (abs(p.x) <= r && abs(p.y) <= r) out.push_back(p);
  }
  return out;
}

std::vector<std::pair<int, int>> canonical_pairs(int max_norm) {
  std::vector<std::pair<int, int>> out;
  for (int b = 1; b * b <= max_norm; ++b) {
    for (int a = 0; a <= b && a * a + b * b <= max_norm; ++a) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

TEST(PairClassifier, NormalizeExamples) {
  auto n1 = normalize({0, 0}, {-2, 1});
  EXPECT_EQ(n1.a, 1);
  EXPECT_EQ(n1.b, 2);
  auto n2 = normalize({0, 0}, {0, 1});
  EXPECT_EQ(n2.a, 0);
  EXPECT_EQ(n2.b, 1);
  auto n3 = normalize({5, 5}, {1, 3});
  EXPECT_EQ(n3.a, 2);
  EXPECT_EQ(n3.b, 4);
  EXPECT_EQ(n3.origin, (LatticePoint{5, 5}));
  EXPECT_THROW(normalize({1, 1}, {1, 1}), DomainError);
}

TEST(PairClassifier, NormalizeTransformIsExact) {
  std::mt19937_64 rng(41);
  auto c = [&] { return Integer(static_cast<long long>(rng() % 41) - 20); };
  for (int i = 0; i < 2000; ++i) {
    LatticePoint p1{c(), c()}, p2{c(), c()};
    if (p1 == p2) continue;
    const NormalizedPair n = normalize(p1, p2);
    EXPECT_GE(n.a, 0);
    EXPECT_GE(n.b, n.a);
    EXPECT_EQ(n.to_original({0, 0}), p1);
    EXPECT_EQ(n.to_original({n.a, n.b}), p2);
    const LatticePoint q{c(), c()};
    EXPECT_EQ(n.to_canonical(n.to_original(q)), q);
    const IntegerLine l = make_line(n.b, -n.a, 0);
    EXPECT_EQ(n.line_to_original(l).evaluate(n.to_original(q)) == 0, l.evaluate(q) == 0);
  }
}

TEST(PairClassifier, AdmissibleKsExamples) {
  auto k12 = admissible_ks(1, 2);
  ASSERT_EQ(k12.size(), 1u);
  EXPECT_EQ(k12[0].k, 1);
  EXPECT_EQ(k12[0].delta, 4);
  auto k24 = admissible_ks(2, 4);
  ASSERT_EQ(k24.size(), 3u);
  EXPECT_EQ(k24[0].delta, 20);
  EXPECT_EQ(k24[1].delta, 16);
  EXPECT_EQ(k24[2].delta, 4);
  auto k34 = admissible_ks(3, 4);
  ASSERT_EQ(k34.size(), 3u);
  EXPECT_EQ(k34[2].k, 5);
  EXPECT_TRUE(k34[2].line_branch);
  EXPECT_FALSE(k34[1].line_branch);
}

TEST(PairClassifier, WitnessExamples) {
  auto w03 = witness_hyperbola(0, 3);
  EXPECT_EQ(w03.k, -1);
  EXPECT_EQ(w03.seed, (LatticePoint{-4, 3}));
  EXPECT_EQ(integral_distance(w03.seed, {0, 0}), Integer(5));
  EXPECT_EQ(integral_distance(w03.seed, {0, 3}), Integer(4));
  auto w34 = witness_hyperbola(3, 4);
  EXPECT_EQ(w34.k, 1);
  EXPECT_EQ(w34.seed, (LatticePoint{-3, 4}));
  EXPECT_EQ(w34.delta, 24);
  auto w14 = witness_hyperbola(1, 4);
  EXPECT_EQ(w14.k, 3);
  EXPECT_EQ(w14.seed, (LatticePoint{3, 4}));
  EXPECT_EQ(w14.delta, 8);
  EXPECT_THROW(witness_hyperbola(1, 2), DomainError);
}

TEST(PairClassifier, WitnessValidityUpToThirty) {
  for (int b = 1; b <= 30; ++b) {
    for (int a = 0; a <= b; ++a) {
      if (is_exceptional(a, b)) continue;
      const Witness w = witness_hyperbola(a, b);
      const Integer x = w.seed.x;
      EXPECT_NE(w.k, 0);
      EXPECT_GT(w.delta, 0);
      EXPECT_FALSE(is_perfect_square(w.delta));
      EXPECT_EQ(w.seed.y, b);
      EXPECT_EQ(x * x + b * b, w.z * w.z);
      EXPECT_EQ((x - a) * (x - a), (w.z - w.k) * (w.z - w.k));
      EXPECT_EQ(build_conic(a, b, w.k).evaluate(w.seed), 0);
    }
  }
}

TEST(PairClassifier, ExceptionalStructureExamples) {
  auto r12 = exceptional_structure(1, 2, 60);
  EXPECT_FALSE(r12.infinite);
  EXPECT_EQ(r12.all_points(), (std::vector<LatticePoint>{{0, 2}, {1, 0}}));
  EXPECT_EQ(r12.exceptional, "iv");

  auto r24 = exceptional_structure(2, 4, 60);
  EXPECT_TRUE(r24.infinite);
  EXPECT_FALSE(r24.infinite_off_lines);
  EXPECT_EQ(r24.equidistant.description.kind, PointSetKind::PellFamily);
  EXPECT_EQ(to_string(r24.equidistant.lines.at(0)), "x+2y=5");

  auto r11 = exceptional_structure(1, 1, 60);
  EXPECT_EQ(to_string(r11.equidistant.lines.at(0)), "x+y=1");
  const auto gen = generate_points(r11, 4);
  std::vector<LatticePoint> pts;
  for (const auto& g : gen) pts.push_back(g.point);
  for (const LatticePoint& q : {LatticePoint{0, 1}, LatticePoint{1, 0}, LatticePoint{4, -3}, LatticePoint{-3, 4}}) {
    EXPECT_TRUE(contains(pts, q)) << q;
  }
  EXPECT_THROW(exceptional_structure(3, 4, 10), DomainError);
}

TEST(PairClassifier, EquidistantBranchExamples) {
  auto e11 = equidistant_branch(1, 1, 30);
  EXPECT_EQ(e11.description.kind, PointSetKind::PellFamily);
  EXPECT_EQ(e11.description.family->form.constant * e11.description.family->form.constant > 0, true);
  auto e24 = equidistant_branch(2, 4, 30);
  EXPECT_TRUE(contains(e24.points, {5, 0}));
  EXPECT_TRUE(contains(e24.points, {-3, 4}));
  for (const auto& q : e24.points) EXPECT_EQ(q.x + 2 * q.y, 5);
  auto e02 = equidistant_branch(0, 2, 30);
  EXPECT_EQ(e02.description.kind, PointSetKind::FinitePoints);
  EXPECT_EQ(e02.points, (std::vector<LatticePoint>{{0, 1}}));
  auto e12 = equidistant_branch(1, 2, 30);
  EXPECT_EQ(e12.description.kind, PointSetKind::EmptySet);
  EXPECT_NE(e12.note.find("parity"), std::string::npos);
}

TEST(PairClassifier, LineOPBranchExamples) {
  auto l34 = line_op_branch(3, 4, 20);
  ASSERT_TRUE(l34.has_value());
  EXPECT_EQ(l34->description.kind, PointSetKind::LineFamily);
  EXPECT_EQ(l34->k, 5);
  for (const LatticePoint& q : {LatticePoint{0, 0}, LatticePoint{3, 4}, LatticePoint{6, 8}, LatticePoint{-3, -4}}) {
    EXPECT_TRUE(contains(l34->points, q)) << q;
  }
  EXPECT_FALSE(line_op_branch(1, 2, 20).has_value());
  auto l02 = line_op_branch(0, 2, 5);
  ASSERT_TRUE(l02.has_value());
  EXPECT_EQ(to_string(l02->lines.at(0)), "x=0");
  // (0,1) lies between O and P and belongs to the k = 0 branch instead.
  EXPECT_FALSE(contains(l02->points, {0, 1}));
  EXPECT_TRUE(contains(l02->points, {0, 5}));
}

TEST(PairClassifier, ClassifyExamples) {
  auto r12 = classify_pair({0, 0}, {1, 2}, 50);
  EXPECT_FALSE(r12.infinite);
  EXPECT_EQ(r12.all_points(), (std::vector<LatticePoint>{{0, 2}, {1, 0}}));

  auto r34 = classify_pair({0, 0}, {3, 4}, 50);
  EXPECT_TRUE(r34.infinite_off_lines);
  ASSERT_TRUE(r34.witness.has_value());
  EXPECT_EQ(r34.witness->seed, (LatticePoint{-3, 4}));
  EXPECT_EQ(r34.branches.at(0).k, 1);
  EXPECT_EQ(r34.branches.at(0).description.kind, PointSetKind::PellFamily);

  auto r77 = classify_pair({7, 7}, {8, 8}, 50);
  EXPECT_EQ(r77.exceptional, "ii");
  EXPECT_EQ(to_string(r77.equidistant.lines.at(0)), "x+y=15");
  for (const auto& q : r77.all_points()) EXPECT_EQ(q.x + q.y, 15);
  EXPECT_THROW(classify_pair({2, 3}, {2, 3}, 10), DomainError);
}

TEST(PairClassifier, MatchesOracleOnRandomPairs) {
  std::mt19937_64 rng(43);
  auto c = [&] { return Integer(static_cast<long long>(rng() % 25) - 12); };
  const Integer r = 40;
  for (int i = 0; i < 60; ++i) {
    LatticePoint p1{c(), c()}, p2{c(), c()};
    if (p1 == p2) continue;
    const StructureReport rep = classify_pair(p1, p2, r);
    std::vector<LatticePoint> pts{p1, p2};
    EXPECT_EQ(in_window(rep.all_points(), r), brute_force(pts, r).points) << p1 << " " << p2;
  }
}

TEST(PairClassifier, KRecoveryAndFrame) {
  std::mt19937_64 rng(47);
  auto c = [&] { return Integer(static_cast<long long>(rng() % 31) - 15); };
  for (int i = 0; i < 40; ++i) {
    LatticePoint p1{c(), c()}, p2{c(), c()};
    if (p1 == p2) continue;
    const StructureReport rep = classify_pair(p1, p2, 60);
    auto check = [&](const Branch& br) {
      for (const LatticePoint& q : br.points) {
        auto d1 = integral_distance(q, p1);
        auto d2 = integral_distance(q, p2);
        ASSERT_TRUE(d1 && d2) << q;
        EXPECT_EQ(abs(*d1 - *d2), br.k) << q;
      }
    };
    for (const Branch& br : rep.branches) check(br);
    check(rep.equidistant);
    if (rep.line_op) check(*rep.line_op);
  }
}

TEST(PairClassifier, SymmetryOfArguments) {
  std::mt19937_64 rng(53);
  auto c = [&] { return Integer(static_cast<long long>(rng() % 21) - 10); };
  for (int i = 0; i < 40; ++i) {
    LatticePoint p1{c(), c()}, p2{c(), c()};
    if (p1 == p2) continue;
    const Integer r = 50;
    EXPECT_EQ(in_window(classify_pair(p1, p2, r).all_points(), r), in_window(classify_pair(p2, p1, r).all_points(), r));
  }
}

TEST(PairClassifier, InfinitudeVerdicts) {
  for (auto [a, b] : canonical_pairs(100)) {
    const StructureReport rep = classify_pair({0, 0}, {a, b}, 5);
    EXPECT_EQ(rep.infinite, !(a == 1 && b == 2)) << a << "," << b;
    if (a * a + b * b > 20) {
      EXPECT_TRUE(rep.infinite_off_lines) << a << "," << b;
    }
    EXPECT_EQ(rep.infinite_off_lines, !is_exceptional(a, b)) << a << "," << b;
  }
}

TEST(PairClassifier, GenerateWitnessFamily) {
  const StructureReport rep = classify_pair({0, 0}, {3, 4}, 10);
  const auto gen = generate_points(rep, 50);
  ASSERT_EQ(gen.size(), 50u);
  std::set<LatticePoint> distinct;
  for (const auto& g : gen) {
    distinct.insert(g.point);
    EXPECT_EQ(rep.branches.at(0).conic->evaluate(g.point), 0);
    EXPECT_EQ(integral_distance(g.point, {0, 0}), g.d1);
    EXPECT_EQ(integral_distance(g.point, {3, 4}), g.d2);
  }
  EXPECT_EQ(distinct.size(), 50u);
  EXPECT_EQ(gen.front().point, (LatticePoint{-3, 4}));
  EXPECT_THROW(generate_points(classify_pair({0, 0}, {1, 2}, 10), 1), DomainError);
  const auto axis = generate_points(classify_pair({0, 0}, {0, 1}, 10), 3);
  EXPECT_EQ(axis.at(0).point, (LatticePoint{0, 0}));
  EXPECT_EQ(axis.at(1).point, (LatticePoint{0, 1}));
  EXPECT_EQ(axis.at(2).point, (LatticePoint{0, -1}));
}
