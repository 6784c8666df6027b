#include <gtest/gtest.h>

#include <random>

#include "partseq/errors.hpp"
#include "partseq/instance.hpp"
#include "partseq/oracle.hpp"
#include "partseq/partition.hpp"
#include "support/brute.hpp"

using namespace partseq;

namespace {

GroundSet abc() { return GroundSet({"a", "b", "c"}); }

Oracle triangle() { return make_graph_cut(abc(), {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

GroundSet sat() { return GroundSet({"s", "a", "t"}, 0, 2); }

Oracle clusters() { return load_instance(std::string(PARTSEQ_DATA_DIR) + "/clusters7.json").f; }

Partition P(const std::string& text, const GroundSet& g) { return parse_partition(text, g); }

}  // namespace

TEST(Rational, ArithmeticAndPromotion) {
  Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(Rational::parse("25/48") - Rational::parse("1/48"), Rational(1, 2));
  EXPECT_EQ(Rational(-7, 2).floor(), Rational(-4));
  EXPECT_EQ(Rational(-7, 2).ceil(), Rational(-3));
  Rational big(1LL << 62);
  Rational prod = big * big * big;
  EXPECT_FALSE(prod.is_small());
  EXPECT_EQ(prod / big / big, big);
  EXPECT_TRUE((prod / big / big).is_small());
  EXPECT_THROW(Rational::parse("1/0"), InvalidInput);
  EXPECT_THROW(Rational::parse("x"), InvalidInput);
}

TEST(Value, LexicographicTotalOrderCompatibleWithAddition) {
  std::mt19937_64 rng(7);
  auto rnd = [&] { return Value(brute::random_lambda(rng), brute::random_lambda(rng)); };
  for (int i = 0; i < 500; ++i) {
    Value a = rnd(), b = rnd(), c = rnd();
    EXPECT_TRUE((a < b) + (a == b) + (b < a) == 1);
    if (a < b) EXPECT_LT(a + c, b + c);
    if (a < b && b < c) EXPECT_LT(a, c);
  }
  EXPECT_LT(Value(1, 5), Value(2, -5));
  EXPECT_LT(Value(1, -1), Value(1, 0));
}

TEST(GroundSet, Invariants) {
  EXPECT_THROW(GroundSet(std::vector<std::string>{"a", "a"}), InvalidInput);
  EXPECT_THROW(GroundSet({"s", "t"}, 1, 1), InvalidInput);
  EXPECT_THROW(GroundSet(0).validate(), InvalidInput);
  EXPECT_EQ(GroundSet(3).labels[2], "2");
}

TEST(Partition, CanonicalFormAndRoundTrip) {
  GroundSet g({"s", "a", "b", "c", "d", "e", "t"});
  auto p = P("t,c,d,e|b,a,s", g);
  EXPECT_EQ(format_partition(p, g), "s,a,b|c,d,e,t");
  EXPECT_THROW(P("s,a|a,b,c,d,e,t", g), InvalidInput);
  EXPECT_THROW(P("s,a|b", g), InvalidInput);
  EXPECT_THROW(Partition(3, {bit(0), 0, bit(1) | bit(2)}), InvalidInput);
  // every partition of 5 elements survives format/parse
  GroundSet g5(5);
  brute::each_partition(5, [&](const brute::Blocks& b) {
    Partition q(5, b);
    EXPECT_EQ(parse_partition(format_partition(q, g5), g5), q);
  });
}

TEST(Partition, EvaluateExamples) {
  auto f = triangle();
  EXPECT_EQ(evaluate_partition(*f, Partition::singletons(3)), Value(6));
  EXPECT_EQ(evaluate_partition(*f, Partition::whole(3)), f->eval(0b111));
  auto g = clusters();
  // the unit edge b-c is the only crossing edge and counts once per side
  EXPECT_EQ(evaluate_partition(*g, P("s,a,b|c,d,e,t", g->ground())), Value(2));
  EXPECT_THROW(evaluate_partition(*f, Partition::singletons(4)), InvalidInput);
}

TEST(Partition, StSeparating) {
  auto g = sat();
  EXPECT_TRUE(is_st_separating(P("s,a|t", g), 0, 2));
  EXPECT_FALSE(is_st_separating(P("s,t|a", g), 0, 2));
  EXPECT_TRUE(is_st_separating(Partition::singletons(3), 0, 2));
}

TEST(Refinement, OneSetExamples) {
  auto q = Partition::singletons(4);
  auto p = Partition::whole(4);
  EXPECT_TRUE(is_refinement(q, p));
  ASSERT_TRUE(is_refinement_up_to_one_set(q, p).has_value());
  EXPECT_EQ(*is_refinement_up_to_one_set(q, p), full_set(4));
  EXPECT_THROW(is_refinement(p, p), InvalidInput);
  EXPECT_THROW(is_refinement_up_to_one_set(q, q), InvalidInput);

  // one block X split into three, every other block kept
  const int n = 13;
  std::vector<ElementSet> qb, pb;
  for (int i = 0; i < n; ++i) qb.push_back(bit(i));
  pb.push_back(bit(0) | bit(1) | bit(2));
  for (int i = 3; i < n; ++i) pb.push_back(bit(i));
  auto X = is_refinement_up_to_one_set(Partition(n, qb), Partition(n, pb));
  ASSERT_TRUE(X.has_value());
  EXPECT_EQ(*X, bit(0) | bit(1) | bit(2));

  GroundSet g({"s", "a", "b", "t"});
  EXPECT_FALSE(is_refinement(P("s,b|a,t", g), P("s,a|b,t", g)));
  // two blocks refined: refinement, but not up to one set
  EXPECT_TRUE(is_refinement(Partition::singletons(4), P("s,a|b,t", g)));
  EXPECT_FALSE(is_refinement_up_to_one_set(Partition::singletons(4), P("s,a|b,t", g)).has_value());
}

TEST(Refinement, StRefinementExamples) {
  GroundSet g({"s", "a", "b", "c", "d", "e", "t"}, 0, 6);
  auto q = P("s,a,b,c|d|e|t", g);
  auto p = P("s|a|b,c,d,e,t", g);
  ElementSet X = 0b1111100;   // b,c,d,e,t
  ElementSet Y = 0b0001111;   // s,a,b,c
  EXPECT_TRUE(is_st_refinement_along(q, p, X, Y, 0, 6));
  auto w = is_st_refinement_up_to_two_sets(q, p, 0, 6);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->first, X);
  EXPECT_EQ(w->second, Y);
  EXPECT_TRUE(is_st_refinement(q, p, 0, 6).has_value());

  // plain refinement: no intersecting pair
  EXPECT_FALSE(is_st_refinement(Partition::singletons(7), p, 0, 6).has_value());
  // intersecting but uncrossable pair
  GroundSet h({"s", "a", "b", "c", "t"}, 0, 4);
  EXPECT_FALSE(is_st_refinement_along(P("s|a,b|c|t", h), P("s|a|b,c|t", h), 0b01100, 0b00110, 0, 4));
  // non-separating input
  EXPECT_THROW(is_st_refinement(P("s,t|a", sat()), Partition::singletons(3), 0, 2), InvalidInput);
}

TEST(Refinement, ImplicationsOverAllPairs) {
  const int n = 5;
  std::vector<Partition> all;
  brute::each_partition(n, [&](const brute::Blocks& b) { all.emplace_back(n, b); });
  int st_pairs = 0;
  for (const auto& p : all)
    for (const auto& q : all) {
      if (p == q) continue;
      if (is_refinement_up_to_one_set(q, p)) EXPECT_TRUE(is_refinement(q, p));
      if (is_refinement(q, p)) EXPECT_GT(q.size(), p.size());
      if (!p.is_st_separating(0, 4) || !q.is_st_separating(0, 4)) continue;
      if (is_st_refinement_up_to_two_sets(q, p, 0, 4)) {
        EXPECT_TRUE(is_st_refinement(q, p, 0, 4).has_value());
        ++st_pairs;
      }
      if (is_st_refinement(q, p, 0, 4)) EXPECT_GE(q.size(), p.size());
    }
  EXPECT_GT(st_pairs, 0);
}

TEST(Sets, IntersectingAndUncrossable) {
  // s=0 a=1 b=2 t=3
  EXPECT_TRUE(is_intersecting(0b0011, 0b1010));
  EXPECT_FALSE(is_st_uncrossable(0b0011, 0b1010, 0, 3));
  EXPECT_TRUE(is_intersecting(0b0011, 0b0110));
  EXPECT_TRUE(is_st_uncrossable(0b0011, 0b0110, 0, 3));
  EXPECT_FALSE(is_intersecting(0b0011, 0b0111));
  EXPECT_FALSE(is_st_uncrossable(0b0011, 0b0111, 0, 3));
  auto pairs = intersecting_pairs({0b0011, 0b1010, 0b0111});
  ASSERT_EQ(pairs.size(), 2u);
}

TEST(Oracles, BuiltinFamilies) {
  auto f = triangle();
  EXPECT_EQ(f->eval(bit(0)), Value(2));
  EXPECT_TRUE(f->flags().symmetric && f->flags().posimodular);
  EXPECT_TRUE(check_submodular(*f).holds);
  EXPECT_TRUE(check_symmetric(*f).holds);

  auto cov = make_coverage(GroundSet({"a", "b"}), {{1}, {1, 2}}, {Rational(0), Rational(1), Rational(1)});
  EXPECT_EQ(cov->eval(0b11), Value(2));
  EXPECT_TRUE(cov->flags().monotone && cov->flags().posimodular);
  EXPECT_TRUE(check_monotone(*cov).holds);

  // path s→a→t oriented, d_in({a,t}) = 1
  auto din = make_indegree(sat(), {{0b011, 1, 1}, {0b110, 2, 1}});
  EXPECT_EQ(din->eval(0b110), Value(1));
  EXPECT_FALSE(din->flags().symmetric);

  EXPECT_THROW(make_hypergraph_cut(abc(), {{0, 1}}), InvalidInput);
  EXPECT_THROW(make_graph_cut(abc(), {{0, 1, -1}}), InvalidInput);
}

TEST(Oracles, PropertyCheckers) {
  auto sq = make_function(GroundSet(4), [](ElementSet u) { return Value(set_size(u) * set_size(u)); });
  auto r = check_submodular(*sq);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  auto [A, B] = *r.witness;
  EXPECT_LT(sq->eval(A).base + sq->eval(B).base, sq->eval(A & B).base + sq->eval(A | B).base);
  EXPECT_THROW(check_submodular(*make_function(GroundSet(13), [](ElementSet) { return Value(0); })), InvalidInput);
}

TEST(Perturbation, CardinalityTier) {
  auto f = triangle();
  auto up = perturb_cardinality(f, +1);
  auto down = perturb_cardinality(f, -1);
  EXPECT_EQ(evaluate_partition(*up, Partition::singletons(3)), Value(6, 3));
  EXPECT_EQ(evaluate_partition(*down, Partition::singletons(3)), Value(6, -3));
  EXPECT_EQ(up->eval(0), Value(0));
  EXPECT_THROW(perturb_cardinality(up, +1), InvalidInput);
}

TEST(Perturbation, StrictExamples) {
  auto zero = make_function(abc(), [](ElementSet) { return Value(0); });
  auto sym = perturb_strict(zero, StrictMode::symmetric, Rational(1));
  EXPECT_EQ(sym->eval(0b001), Value(2));
  EXPECT_EQ(sym->eval(0b011), Value(2));
  auto mono = perturb_strict(zero, StrictMode::monotone, Rational(1));
  EXPECT_EQ(mono->eval(0b011), Value(3));
  EXPECT_THROW(perturb_strict(zero, StrictMode::symmetric, Rational(0)), InvalidInput);
}

TEST(Perturbation, StrictnessAndPreservedFlags) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    const int n = 4 + static_cast<int>(rng() % 3);
    auto f = brute::random_family(rng, n, it);
    auto gamma = effective_granularity(*f);
    ASSERT_TRUE(gamma.has_value());
    auto eps = strict_perturbation_eps(n, *gamma);
    auto h = perturb_strict(f, StrictMode::automatic, eps);
    EXPECT_TRUE(check_submodular(*h, true).holds);
    EXPECT_TRUE(check_posimodular(*h).holds);
    if (f->flags().symmetric) EXPECT_TRUE(check_symmetric(*h).holds);
    if (f->flags().monotone) EXPECT_TRUE(check_monotone(*h).holds);
  }
  // up to n = 8 for strictness
  for (int it = 0; it < 3; ++it) {
    auto f = brute::random_family(rng, 8, it);
    auto h = perturb_strict(f, StrictMode::automatic, strict_perturbation_eps(8, *effective_granularity(*f)));
    EXPECT_TRUE(check_submodular(*h, true).holds);
  }
}

TEST(Perturbation, SameSizeOptimaArePreserved) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    const int n = 5;
    auto f = brute::random_family(rng, n, it);
    auto h = perturb_strict(f, StrictMode::automatic, strict_perturbation_eps(n, *effective_granularity(*f)));
    // every h-minimal partition of a given size is f-minimal for that size
    for (int k = 1; k <= n; ++k) {
      std::optional<Rational> fbest, hbest;
      std::vector<brute::Blocks> hargs;
      brute::each_partition(n, [&](const brute::Blocks& p) {
        if (static_cast<int>(p.size()) != k) return;
        Rational fv = brute::value(*f, p), hv = brute::value(*h, p);
        if (!fbest || fv < *fbest) fbest = fv;
        if (!hbest || hv < *hbest) {
          hbest = hv;
          hargs = {p};
        } else if (hv == *hbest) {
          hargs.push_back(p);
        }
      });
      for (const auto& p : hargs) EXPECT_EQ(brute::value(*f, p), *fbest);
    }
  }
}

TEST(Instance, ParsesAllKindsAndRejectsGarbage) {
  auto in = load_instance(std::string(PARTSEQ_DATA_DIR) + "/clusters7.json");
  EXPECT_EQ(in.ground.n, 7);
  EXPECT_EQ(*in.ground.s_index, 0);
  EXPECT_EQ(*in.ground.t_index, 6);
  EXPECT_NO_THROW(load_instance(std::string(PARTSEQ_DATA_DIR) + "/coverage.json"));
  EXPECT_NO_THROW(load_instance(std::string(PARTSEQ_DATA_DIR) + "/hyper.json"));
  nlohmann::json t = {{"n", 2}, {"function", {{"kind", "table"}, {"values", {0, 1, 1, 0}}}}};
  EXPECT_EQ(instance_from_json(t).f->eval(0b01), Value(1));
  t["function"]["values"] = {0, 1, 1};
  EXPECT_THROW(instance_from_json(t), InvalidInput);
  EXPECT_THROW(instance_from_json({{"n", 2}, {"function", {{"kind", "nope"}}}}), InvalidInput);
  EXPECT_THROW(instance_from_json({{"n", 2}}), InvalidInput);
}
