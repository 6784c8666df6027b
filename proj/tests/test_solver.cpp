#include <gtest/gtest.h>

#include <map>
#include <random>

#include "partseq/errors.hpp"
#include "partseq/instance.hpp"
#include "partseq/solver.hpp"
#include "support/brute.hpp"

using namespace partseq;

namespace {

Oracle triangle() { return make_graph_cut(GroundSet({"a", "b", "c"}), {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Oracle path() { return make_graph_cut(GroundSet({"s", "a", "t"}, 0, 2), {{0, 1, 1}, {1, 2, 1}}); }

Oracle clusters() { return load_instance(std::string(PARTSEQ_DATA_DIR) + "/clusters7.json").f; }

std::string fmt(const Partition& p, const SetFunction& f) { return format_partition(p, f.ground()); }

}  // namespace

TEST(Sfm, ConstrainedExamples) {
  auto f = triangle();
  auto r = sfm_constrained(*f, bit(0), bit(1));
  EXPECT_EQ(r.value, Value(2));
  EXPECT_TRUE(r.minimizer == bit(0) || r.minimizer == (bit(0) | bit(2)));
  EXPECT_THROW(sfm_constrained(*f, bit(0), bit(0)), InvalidInput);
  auto zero = make_function(GroundSet(4), [](ElementSet) { return Value(0); });
  EXPECT_EQ(sfm(*zero).value, Value(0));
}

TEST(Sfm, RandomTableMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 5; ++it) {
    auto f = materialize(brute::random_family(rng, 10, it));
    // shifted so that the empty set is not trivially optimal
    std::vector<Value> values;
    for (ElementSet u = 0; u < (ElementSet{1} << 10); ++u) values.push_back(f->eval(u).base - (u ? Rational(3) : Rational(0)));
    Rational best = values[0].base;
    for (const auto& v : values) best = std::min(best, v.base);
    auto g = make_table(f->ground(), values);
    EXPECT_EQ(sfm(*g).value.base, best);
  }
}

TEST(Sfm, BackendsAgree) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    const int n = 3 + static_cast<int>(rng() % 6);
    auto f = brute::random_family(rng, n, it);
    // modular shift keeps g submodular
    std::vector<Rational> w;
    for (int v = 0; v < n; ++v) w.push_back(brute::small_rational(rng));
    auto g = make_function(f->ground(), [&](ElementSet u) {
      Rational r = f->eval(u).base;
      for (int v : elements_of(u)) r -= w[v];
      return Value(r);
    });
    ElementSet inc = rng() % 2 ? bit(0) : 0;
    ElementSet exc = rng() % 2 ? bit(n - 1) : 0;
    auto a = sfm_constrained(*g, inc, exc, SfmBackend::exhaustive);
    auto b = sfm_constrained(*g, inc, exc, SfmBackend::min_norm_point);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(g->eval(b.minimizer), b.value);
  }
}

TEST(Dilworth, Examples) {
  auto f = triangle();
  auto a = dilworth_truncation(*f, Rational(1), full_set(3));
  EXPECT_EQ(a.blocks, std::vector<ElementSet>{full_set(3)});
  EXPECT_EQ(a.value, Value(-1));
  auto b = dilworth_truncation(*f, Rational(4), full_set(3));
  EXPECT_EQ(b.blocks.size(), 3u);
  EXPECT_EQ(b.value, Value(-6));
  auto c = dilworth_truncation(*f, Rational(5), bit(1));
  EXPECT_EQ(c.value, Value(2 - 5));
  EXPECT_THROW(dilworth_truncation(*f, Rational(0), 0), InvalidInput);
}

TEST(Dilworth, MonotoneInLambdaAndSelfConsistent) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 20; ++it) {
    const int n = 3 + static_cast<int>(rng() % 4);
    auto f = brute::random_family(rng, n, it);
    ElementSet S = full_set(n) & ~(rng() % 2 ? bit(0) : 0);
    std::optional<Value> prev;
    for (int step = -8; step <= 24; ++step) {
      Rational lambda(step, 2);
      auto r = dilworth_truncation(*f, lambda, S);
      Value re;
      ElementSet cover = 0;
      for (ElementSet b : r.blocks) {
        re += f->eval(b) - Value(lambda);
        cover |= b;
      }
      EXPECT_EQ(cover, S);
      EXPECT_EQ(re, r.value);
      if (prev) EXPECT_LE(r.value, *prev);
      prev = r.value;
    }
  }
}

TEST(MinPartition, Examples) {
  auto f = triangle();
  auto a = min_partition(*f, Rational(1));
  EXPECT_EQ(a.partition, Partition::whole(3));
  EXPECT_EQ(a.value, Value(-1));
  auto p = path();
  auto b = min_partition(*p, Rational(3));
  EXPECT_EQ(b.partition, Partition::singletons(3));
  EXPECT_EQ(b.value, Value(-5));
  auto one = make_graph_cut(GroundSet(1), {});
  EXPECT_EQ(min_partition(*one, Rational(2)).partition, Partition::singletons(1));
}

TEST(MinStPartition, Examples) {
  auto p = path();
  auto a = min_st_partition(*p, Rational(0), 0, 2);
  EXPECT_EQ(a.value, Value(2));
  EXPECT_EQ(a.partition.size(), 2);
  auto b = min_st_partition(*p, Rational(3), 0, 2);
  EXPECT_EQ(b.partition, Partition::singletons(3));
  EXPECT_EQ(b.value, Value(-5));
  EXPECT_THROW(min_st_partition(*p, Rational(0), 1, 1), InvalidInput);

  auto g = clusters();
  auto c = min_st_partition(*g, Rational(1), 0, 6);
  EXPECT_EQ(fmt(c.partition, *g), "s,a,b|c,d,e,t");
}

TEST(MinStPartition, Extremal) {
  auto p = path();
  auto lo = min_st_partition_extremal(p, Rational(1), 0, 2, Extremal::min_card);
  auto hi = min_st_partition_extremal(p, Rational(1), 0, 2, Extremal::max_card);
  EXPECT_EQ(lo.partition.size(), 2);
  EXPECT_EQ(hi.partition.size(), 2);
  EXPECT_EQ(lo.value, Value(0));

  auto t = triangle();
  for (int step = 0; step <= 8; ++step) {
    Rational lambda(step, 2);
    auto a = min_st_partition_extremal(t, lambda, 0, 1, Extremal::min_card);
    auto b = min_st_partition_extremal(t, lambda, 0, 1, Extremal::max_card);
    EXPECT_LE(a.partition.size(), b.partition.size());
    EXPECT_EQ(a.value, b.value);
  }

  auto g = clusters();
  Rational first(9, 8);
  auto a = min_st_partition_extremal(g, first, 0, 6, Extremal::min_card);
  auto b = min_st_partition_extremal(g, first, 0, 6, Extremal::max_card);
  EXPECT_EQ(fmt(a.partition, *g), "s,a,b|c,d,e,t");
  EXPECT_EQ(fmt(b.partition, *g), "s|a|b,c,d,e,t");
  EXPECT_THROW(min_st_partition_extremal(perturb_cardinality(g, 1), first, 0, 6, Extremal::min_card), InvalidInput);
}

TEST(MinPartition, MatchesEnumeration) {
  std::mt19937_64 rng(1234);
  for (int it = 0; it < 24; ++it) {
    const int n = 2 + static_cast<int>(rng() % 5);
    auto f = brute::random_family(rng, n, it);
    const int s = 0, t = n - 1;
    for (int j = 0; j < 8; ++j) {
      Rational lambda = brute::random_lambda(rng);
      auto a = min_partition(*f, lambda);
      EXPECT_EQ(a.value.base, brute::envelope(*f, lambda));
      EXPECT_EQ(partition_objective(*f, a.partition, lambda), a.value);
      auto b = min_st_partition(*f, lambda, s, t);
      EXPECT_EQ(b.value.base, brute::envelope(*f, lambda, s, t));
      EXPECT_TRUE(b.partition.is_st_separating(s, t));
      EXPECT_EQ(partition_objective(*f, b.partition, lambda), b.value);
    }
  }
}

// min over s ∈ U ⊆ V−t of f(U) − λ + m(U) equals the st-separating partition minimum
TEST(MinStPartition, SetFormulationIdentity) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 12; ++it) {
    const int n = 3 + static_cast<int>(rng() % 3);
    auto f = brute::random_family(rng, n, it);
    Rational lambda = brute::random_lambda(rng);
    std::optional<Rational> best;
    for (ElementSet U = 0; U <= full_set(n); ++U) {
      if (!contains(U, 0) || contains(U, n - 1)) continue;
      ElementSet rest = full_set(n) & ~U;
      std::vector<int> idx = elements_of(rest);
      // m(rest) by enumerating partitions of the remaining elements
      std::optional<Rational> m;
      brute::each_partition(static_cast<int>(idx.size()), [&](const brute::Blocks& bl) {
        Rational v;
        for (ElementSet b : bl) {
          ElementSet real = 0;
          for (int e : elements_of(b)) real |= bit(idx[e]);
          v += f->eval(real).base - lambda;
        }
        if (!m || v < *m) m = v;
      });
      Rational b = f->eval(U).base - lambda + *m;
      if (!best || b < *best) best = b;
    }
    EXPECT_EQ(*best, brute::envelope(*f, lambda, 0, n - 1));
    EXPECT_EQ(min_st_partition(*f, lambda, 0, n - 1).value.base, *best);
  }
}

// Two attainers of the st-envelope of a strictly submodular function never form an uncrossable pair.
TEST(MinStPartition, AttainersHaveNoUncrossablePair) {
  std::mt19937_64 rng(77);
  int checked_pairs = 0;
  for (int it = 0; it < 15; ++it) {
    const int n = 4 + static_cast<int>(rng() % 3);
    const int s = 0, t = n - 1;
    auto f = brute::random_family(rng, n, it);
    auto h = perturb_strict(f, StrictMode::automatic, strict_perturbation_eps(n, *effective_granularity(*f)));
    std::map<int, Rational> best;
    brute::each_partition(n, [&](const brute::Blocks& p) {
      if (!brute::separates(p, s, t)) return;
      Rational v = brute::value(*h, p);
      auto it2 = best.find(static_cast<int>(p.size()));
      if (it2 == best.end() || v < it2->second) best[static_cast<int>(p.size())] = v;
    });
    std::vector<Rational> lambdas;
    for (auto i = best.begin(); i != best.end(); ++i)
      for (auto j = std::next(i); j != best.end(); ++j)
        lambdas.push_back((j->second - i->second) / Rational(j->first - i->first));
    for (const auto& lambda : lambdas) {
      Rational env = brute::envelope(*h, lambda, s, t);
      std::vector<brute::Blocks> att;
      brute::each_partition(n, [&](const brute::Blocks& p) {
        if (brute::separates(p, s, t) &&
            brute::value(*h, p) - lambda * Rational(static_cast<long long>(p.size())) == env)
          att.push_back(p);
      });
      for (const auto& P : att)
        for (const auto& Q : att)
          for (ElementSet X : P)
            for (ElementSet Y : Q) {
              EXPECT_FALSE(is_st_uncrossable(X, Y, s, t));
              ++checked_pairs;
            }
    }
  }
  EXPECT_GT(checked_pairs, 0);
}
