#include <gtest/gtest.h>

#include <random>

#include "partseq/errors.hpp"
#include "partseq/instance.hpp"
#include "partseq/kpartition.hpp"
#include "support/brute.hpp"

using namespace partseq;

namespace {

Oracle path() { return make_graph_cut(GroundSet({"s", "a", "t"}, 0, 2), {{0, 1, 1}, {1, 2, 1}}); }

Oracle clusters() { return load_instance(std::string(PARTSEQ_DATA_DIR) + "/clusters7.json").f; }

bool feasible(const KPartitionResult& r, int k, int s, int t) {
  return r.partition.size() == k && r.partition.is_st_separating(s, t);
}

}  // namespace

TEST(KPartition, PathExamples) {
  auto f = path();
  auto three = approx_st_k_partition(f, 0, 2, 3);
  EXPECT_EQ(three.partition, Partition::singletons(3));
  EXPECT_EQ(three.value, Value(4));
  EXPECT_EQ(three.mode, "exact_from_sequence");
  auto two = approx_st_k_partition(f, 0, 2, 2);
  EXPECT_EQ(two.value, Value(2));
  EXPECT_EQ(exact_st_k_partition(*f, 0, 2, 2).value, Value(2));
  EXPECT_THROW(approx_st_k_partition(f, 0, 2, 1), InvalidInput);
  EXPECT_THROW(approx_st_k_partition(f, 0, 2, 4), InvalidInput);
}

TEST(KPartition, ClusterInstance) {
  auto f = clusters();
  auto four = approx_st_k_partition(f, 0, 6, 4);
  EXPECT_EQ(four.mode, "exact_from_sequence");
  EXPECT_EQ(format_partition(four.partition, f->ground()), "s,a,b,c|d|e|t");
  auto five = approx_st_k_partition(f, 0, 6, 5);
  EXPECT_TRUE(five.mode.rfind("interpolated(", 0) == 0) << five.mode;
  EXPECT_TRUE(feasible(five, 5, 0, 6));
  EXPECT_EQ(five.lower_index, 2);
  auto opt = brute::best_k(*f, 0, 6, 5);
  EXPECT_GE(five.value.base, *opt);
  for (const auto& b : five.bounds) {
    if (b.lower)
      EXPECT_LE(b.bound, *opt) << b.name;
    else
      EXPECT_TRUE(b.holds) << b.name;
  }
}

TEST(KPartition, ExactExamples) {
  std::mt19937_64 rng(5);
  auto f = brute::random_graph_cut(rng, 5);
  auto r = exact_st_k_partition(*f, 0, 4, 5);
  EXPECT_EQ(r.partition, Partition::singletons(5));
  EXPECT_EQ(r.mode, "exhaustive");
  auto zero = make_function(brute::labelled(5), [](ElementSet) { return Value(0); });
  for (int k = 2; k <= 5; ++k) {
    EXPECT_EQ(exact_st_k_partition(*zero, 0, 4, k).value, Value(0));
    EXPECT_EQ(approx_st_k_partition(zero, 0, 4, k, {false}).value, Value(0));
  }
  auto big = brute::random_graph_cut(rng, 10);
  EXPECT_ANY_THROW(exact_st_k_partition(*big, 0, 9, 3));
}

TEST(KPartition, ExactMatchesEnumeration) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    const int n = 3 + static_cast<int>(rng() % 4);
    auto f = brute::random_family(rng, n, it);
    for (int k = 2; k <= n; ++k) EXPECT_EQ(exact_st_k_partition(*f, 0, n - 1, k).value.base, *brute::best_k(*f, 0, n - 1, k));
  }
}

TEST(KPartition, FeasibleBoundedAndWithinRatio) {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 60; ++it) {
    const int n = 3 + static_cast<int>(rng() % 5);
    auto f = brute::random_family(rng, n, it);
    const int s = 0, t = n - 1;
    for (int k = 2; k <= n; ++k) {
      auto r = approx_st_k_partition(f, s, t, k);
      ASSERT_TRUE(feasible(r, k, s, t));
      EXPECT_EQ(evaluate_partition(*f, r.partition), r.value);
      Rational opt = *brute::best_k(*f, s, t, k);
      EXPECT_GE(r.value.base, opt);
      if (r.mode == "exact_from_sequence") EXPECT_EQ(r.value.base, opt);
      for (const auto& b : r.bounds) {
        if (b.lower)
          EXPECT_LE(b.bound, opt) << b.name;
        else
          EXPECT_TRUE(b.holds) << b.name;
      }
      const Rational nn(n);
      if (f->flags().posimodular && !f->flags().monotone)
        EXPECT_LE(r.value.base, Rational(2) * (Rational(1) - Rational(1) / nn) * opt);
      if (f->flags().monotone)
        EXPECT_LE(r.value.base, Rational(4, 3) * (Rational(1) - Rational(1) / (Rational(3) * nn - Rational(2))) * opt);
    }
  }
}

TEST(KPartition, RejectsNonIncreasingSequence) {
  auto f = clusters();
  auto seq = compute_st_pps(f, 0, 6);
  std::swap(seq.partitions[1], seq.partitions[2]);
  EXPECT_THROW(approx_st_k_partition_from_sequence(*f, seq, 5), InvalidInput);
  auto plain = compute_pps(f);
  EXPECT_THROW(approx_st_k_partition_from_sequence(*f, plain, 3), InvalidInput);
}
