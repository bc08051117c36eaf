#include "kfs/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

#include "kfs/error.hpp"
#include "kfs/fitness.hpp"
#include "test_util.hpp"

namespace kfs {
namespace {

TEST(Oracle, CountsEveryNonEmptyMask) {
  std::mt19937_64 rng(1);
  const Dataset ds = testing::random_dataset(rng, 12, 3, 2);
  const auto r = exhaustive_best(ds, {});
  EXPECT_EQ(r.evaluated, 7u);
  ASSERT_TRUE(r.runner_up_fitness.has_value());
  EXPECT_GE(r.best_fitness, *r.runner_up_fitness);
}

TEST(Oracle, SingleFeature) {
  const Dataset ds = testing::make_1d({0, 1}, {1, -1});
  const auto r = exhaustive_best(ds, {});
  EXPECT_EQ(r.best_mask, FeatureMask::from_bits("1"));
  EXPECT_EQ(r.best_fitness, gc(ds, testing::all_features(1), {}).gc);
  EXPECT_EQ(r.evaluated, 1u);
  EXPECT_FALSE(r.runner_up_fitness.has_value());
}

TEST(Oracle, TooManyFeaturesThrows) {
  std::mt19937_64 rng(2);
  const Dataset ds = testing::random_dataset(rng, 6, 5, 2);
  try {
    exhaustive_best(ds, {}, 4);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("exceeds max_n"), std::string::npos);
  }
}

TEST(Oracle, TiesPreferSmallerPopcountThenInteger) {
  // Columns 1 and 2 duplicate column 0: every non-empty mask has the same
  // width-normalized distance, hence the same gc.
  const Dataset ds = testing::make_rows(
      {{0, 0, 0}, {1, 1, 1}, {3, 3, 3}, {4, 4, 4}}, {1, 1, -1, -1});
  const auto r = exhaustive_best(ds, {});
  EXPECT_EQ(r.best_mask, FeatureMask::from_integer(1, 3));
  EXPECT_NEAR(*r.runner_up_fitness, r.best_fitness, 1e-12);
}

TEST(Oracle, StandardBenchmarkRecoversInformativeColumns) {
  const Dataset ds = testing::standard_benchmark();
  const auto r = exhaustive_best(ds, {});
  EXPECT_EQ(r.evaluated, 1023u);
  EXPECT_EQ(r.best_mask.selected(), informative_features(ds));
}

TEST(Oracle, ParallelMatchesReferenceAndBruteScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const Dataset ds = testing::random_dataset(rng, 6 + rng() % 20, 1 + rng() % 6, 2 + rng() % 2);
    const auto a = reference::exhaustive_best(ds, {});
    for (int threads : {1, 2, 5}) {
      const auto b = exhaustive_best(ds, {}, kDefaultOracleMaxFeatures, threads);
      ASSERT_EQ(a.best_mask, b.best_mask);
      ASSERT_EQ(a.best_fitness, b.best_fitness);
      ASSERT_EQ(a.runner_up_fitness, b.runner_up_fitness);
      ASSERT_EQ(a.evaluated, b.evaluated);
    }
    // Upper bound over every mask.
    const std::size_t p = ds.n_features();
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << p); ++v) {
      ASSERT_LE(fitness(FeatureMask::from_integer(v, p), ds, {}), a.best_fitness);
    }
  }
}

}  // namespace
}  // namespace kfs
