#include "kfs/baselines.hpp"

#include <gtest/gtest.h>

#include "kfs/error.hpp"
#include "kfs/oracle.hpp"
#include "test_util.hpp"

namespace kfs {
namespace {

const OptimizerKind kBaselines[] = {OptimizerKind::kGA, OptimizerKind::kBPSO,
                                    OptimizerKind::kBDE};

BaselineConfig quick(OptimizerKind kind, std::uint64_t seed) {
  BaselineConfig c;
  c.kind = kind;
  c.np = 20;
  c.g_max = 20;
  c.seed = seed;
  return c;
}

Dataset separable() {
  SynthSpec spec{3, 3, 40, 10.0, 1.0};
  return testing::standardized(synth_clusters(spec, 2));
}

TEST(OptimizerKind, ParseAndPrint) {
  EXPECT_EQ(parse_optimizer_kind("ma"), OptimizerKind::kMA);
  EXPECT_EQ(parse_optimizer_kind("GA"), OptimizerKind::kGA);
  EXPECT_EQ(parse_optimizer_kind("DPSO"), OptimizerKind::kBPSO);
  EXPECT_EQ(parse_optimizer_kind("bpso"), OptimizerKind::kBPSO);
  EXPECT_EQ(parse_optimizer_kind("BDE"), OptimizerKind::kBDE);
  EXPECT_THROW(parse_optimizer_kind("SA"), ConfigError);
  EXPECT_EQ(to_string(OptimizerKind::kBPSO), "BPSO");
}

TEST(BaselineConfig, Validation) {
  BaselineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.ga_mutation = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = BaselineConfig{};
  c.np = 1;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Baselines, SingleFeatureSelectsIt) {
  const Dataset ds = testing::make_1d({0, 1, 5, 6}, {1, 1, -1, -1});
  for (auto kind : kBaselines) {
    const auto r = run_baseline(ds, {}, quick(kind, 1));
    EXPECT_EQ(r.best_mask, FeatureMask::from_bits("1")) << to_string(kind);
  }
}

TEST(Baselines, SeparableSetReachesHighFitness) {
  const Dataset ds = separable();
  ASSERT_GT(exhaustive_best(ds, {}).best_fitness, 0.99);
  for (auto kind : kBaselines) {
    const auto r = run_baseline(ds, {}, quick(kind, 3));
    EXPECT_GT(r.best_fitness, 0.99) << to_string(kind);
  }
}

TEST(Baselines, DeterministicAndMonotone) {
  const Dataset ds = testing::standard_benchmark();
  for (auto kind : kBaselines) {
    auto cfg = quick(kind, 4);
    cfg.fitness_stop = 2.0;
    const auto a = run_baseline(ds, {}, cfg);
    const auto b = run_baseline(ds, {}, cfg, 3);
    EXPECT_EQ(a.best_mask, b.best_mask);
    EXPECT_EQ(a.best_fitness, b.best_fitness);
    EXPECT_EQ(a.total_evaluations, b.total_evaluations);
    ASSERT_EQ(a.log.generations.size(), cfg.g_max) << to_string(kind);
    ASSERT_EQ(b.log.generations.size(), cfg.g_max);
    double prev = -1.0;
    for (std::size_t g = 0; g < cfg.g_max; ++g) {
      const auto& x = a.log.generations[g];
      EXPECT_EQ(x.best_fitness, b.log.generations[g].best_fitness);
      EXPECT_EQ(x.mean_fitness, b.log.generations[g].mean_fitness);
      EXPECT_GE(x.best_fitness, prev);
      EXPECT_TRUE(x.best_mask.any());
      prev = x.best_fitness;
    }
  }
}

TEST(Baselines, FitnessStopEndsEarly) {
  const Dataset ds = testing::standard_benchmark();
  for (auto kind : kBaselines) {
    auto cfg = quick(kind, 5);
    cfg.fitness_stop = -0.6;
    const auto r = run_baseline(ds, {}, cfg);
    EXPECT_EQ(r.log.generations.size(), 1u);
    EXPECT_EQ(r.terminated_by, Termination::kFitnessStop);
  }
}

TEST(Compare, SingleRunIsFullSuccess) {
  const Dataset ds = testing::standard_benchmark();
  CompareOptions opt;
  opt.kinds = {OptimizerKind::kGA};
  opt.baseline = quick(OptimizerKind::kGA, 1);
  const auto t = compare(ds, {}, opt);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].success_rate_pct, 100.0);
  EXPECT_FALSE(t.oracle_certified);
  EXPECT_EQ(t.reference_fitness, t.rows[0].best_fitness);
}

TEST(Compare, RatesAgainstCertifiedOptimum) {
  const Dataset ds = testing::standard_benchmark();
  const auto oracle = exhaustive_best(ds, {});
  CompareOptions opt;
  opt.kinds = {OptimizerKind::kMA, OptimizerKind::kGA};
  opt.runs = 2;
  opt.ma.np = 20;
  opt.ma.g_max = 10;
  opt.ma.ts_iters = 20;
  opt.baseline.np = 4;
  opt.baseline.g_max = 1;
  opt.baseline.ga_mutation = 0.0;
  opt.reference_optimum = oracle.best_fitness;
  const auto t = compare(ds, {}, opt);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_TRUE(t.oracle_certified);
  EXPECT_EQ(t.rows[0].optimizer, "MA");
  EXPECT_EQ(t.rows[0].final_fitness.size(), 2u);
  for (const auto& row : t.rows) {
    std::size_t hits = 0;
    for (double f : row.final_fitness) {
      EXPECT_LE(f, oracle.best_fitness + 1e-12);
      hits += f >= oracle.best_fitness - kSuccessTolerance ? 1 : 0;
    }
    EXPECT_EQ(row.success_rate_pct, 50.0 * static_cast<double>(hits));
  }
  EXPECT_EQ(t.rows[0].success_rate_pct, 100.0);
  const auto csv = comparison_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "optimizer,mean_time_s,best_fitness,mean_fitness,success_rate_pct");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

}  // namespace
}  // namespace kfs
