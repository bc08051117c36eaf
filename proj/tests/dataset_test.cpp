#include "kfs/dataset.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "kfs/error.hpp"
#include "test_util.hpp"

namespace kfs {
namespace {

using testing::make_1d;

std::string error_of(std::string_view csv) {
  try {
    parse_csv(csv, "t.csv");
  } catch (const DatasetError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadCsv, ParsesFeaturesInHeaderOrder) {
  const Dataset ds = parse_csv(
      "a,label,b\n"
      "1.5,-1,2\n"
      "2,+1,3e1\n"
      "3,1,-4\n"
      "4,-1,0\n");
  EXPECT_EQ(ds.n_samples(), 4u);
  EXPECT_EQ(ds.n_features(), 2u);
  EXPECT_EQ(ds.feature_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.class_ids(), (std::vector<int>{-1, 1}));
  EXPECT_DOUBLE_EQ(ds.at(1, 1), 30.0);
  EXPECT_EQ(ds.label(1), 1);
  EXPECT_EQ(ds.class_size(0), 2u);
}

TEST(LoadCsv, ToleratesCrlfAndBlankLines) {
  const Dataset ds = parse_csv("x,label\r\n0,1\r\n\r\n1,2\r\n");
  EXPECT_EQ(ds.n_samples(), 2u);
  EXPECT_EQ(ds.class_ids(), (std::vector<int>{1, 2}));
}

TEST(LoadCsv, SingleClassIsRejected) {
  EXPECT_NE(error_of("x,label\n0,1\n1,1\n").find("fewer than 2 classes"),
            std::string::npos);
}

TEST(LoadCsv, NonNumericCellIsNamed) {
  const auto msg = error_of("x,y,label\n0,1,1\n2,abc,-1\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
}

TEST(LoadCsv, MissingLabelAndRaggedRows) {
  EXPECT_NE(error_of("x,y\n0,1\n").find("missing label column"), std::string::npos);
  const auto msg = error_of("x,label\n0,1\n1\n");
  EXPECT_NE(msg.find("ragged row"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(LoadCsv, MissingFileNamesPath) {
  try {
    load_csv("/nonexistent/data.csv");
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/data.csv"), std::string::npos);
  }
}

TEST(LoadCsv, WriteThenLoadIsExact) {
  std::mt19937_64 rng(1);
  const Dataset ds = testing::random_dataset(rng, 20, 4, 3);
  const auto path = std::filesystem::temp_directory_path() / "kfs_dataset_test.csv";
  write_csv(ds, path);
  const Dataset back = load_csv(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.labels(), ds.labels());
  EXPECT_EQ(back.feature_names(), ds.feature_names());
  EXPECT_TRUE(std::equal(back.values().begin(), back.values().end(),
                         ds.values().begin()));
}

TEST(Dataset, RejectsDuplicateNamesAndNonFinite) {
  EXPECT_THROW(Dataset({1, 2, 3, 4}, {0, 1}, {"a", "a"}), DatasetError);
  EXPECT_THROW(Dataset({1, NAN}, {0, 1}, {"a"}), DatasetError);
  EXPECT_THROW(Dataset({1, 2, 3}, {0, 1}, {"a"}), DatasetError);
}

TEST(ZScore, ColumnOneTwoThree) {
  const Dataset ds = make_1d({1, 2, 3}, {0, 1, 0});
  const auto p = zscore_fit(ds);
  EXPECT_DOUBLE_EQ(p.means[0], 2.0);
  EXPECT_NEAR(p.stds[0], 0.816497, 1e-6);
  const Dataset z = zscore_apply(ds, p);
  EXPECT_NEAR(z.at(0, 0), -1.224745, 1e-6);
  EXPECT_NEAR(z.at(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(z.at(2, 0), 1.224745, 1e-6);
}

TEST(ZScore, ConstantColumnMapsToZero) {
  const Dataset z = testing::standardized(make_1d({5, 5, 5}, {0, 1, 0}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z.at(i, 0), 0.0);
}

TEST(ZScore, ApplyUsesFittedParameters) {
  const Dataset train = make_1d({0, 2}, {0, 1});  // mean 1, std 1
  const Dataset test = make_1d({10, 20}, {0, 1});
  const Dataset z = zscore_apply(test, zscore_fit(train));
  EXPECT_DOUBLE_EQ(z.at(0, 0), 9.0);
  EXPECT_DOUBLE_EQ(z.at(1, 0), 19.0);
}

TEST(ZScore, DimensionMismatchThrows) {
  const Dataset ds = make_1d({1, 2}, {0, 1});
  StandardizationParams p{{0, 0}, {1, 1}};
  EXPECT_THROW(zscore_apply(ds, p), DatasetError);
}

TEST(ZScore, StandardizedColumnsHaveZeroMeanUnitStdProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = testing::random_dataset(rng, 5 + rng() % 40, 1 + rng() % 6, 2);
    const auto raw = zscore_fit(ds);
    const auto p = zscore_fit(zscore_apply(ds, raw));
    for (std::size_t j = 0; j < ds.n_features(); ++j) {
      EXPECT_LT(std::abs(p.means[j]), 1e-9);
      if (raw.stds[j] >= kZeroVarianceThreshold) {
        EXPECT_NEAR(p.stds[j], 1.0, 1e-9);
      }
    }
  }
}

Dataset balanced(std::size_t n) {
  std::vector<double> v(n);
  std::vector<int> l(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<double>(i);
    l[i] = i % 2 == 0 ? -1 : 1;
  }
  return make_1d(std::move(v), std::move(l));
}

TEST(Split, SizesMatchRoundedFraction) {
  {
    const auto [train, test] = split(balanced(1100), 0.66, 5);
    EXPECT_EQ(train.n_samples(), 726u);
    EXPECT_EQ(test.n_samples(), 374u);
  }
  {
    const auto [train, test] = split(balanced(2000), 0.66, 5);
    EXPECT_EQ(train.n_samples(), 1320u);
  }
}

TEST(Split, DeterministicForSeed) {
  const Dataset ds = balanced(100);
  const auto a = split_indices(ds, 0.5, 9);
  const auto b = split_indices(ds, 0.5, 9);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_NE(a.train, split_indices(ds, 0.5, 10).train);
}

TEST(Split, PreservesLabelMultisetProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset ds = testing::random_dataset(rng, 20 + rng() % 50, 2, 3);
    const auto idx = split_indices(ds, 0.66, rng());
    std::vector<std::size_t> all = idx.train;
    all.insert(all.end(), idx.test.begin(), idx.test.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i], i);
    std::vector<bool> tr(3), te(3);
    for (auto i : idx.train) tr[ds.class_index(i)] = true;
    for (auto i : idx.test) te[ds.class_index(i)] = true;
    EXPECT_EQ(tr, std::vector<bool>(3, true));
    EXPECT_EQ(te, std::vector<bool>(3, true));
  }
}

TEST(Split, ImpossiblePerClassPresenceThrows) {
  // One sample of class 1 cannot sit on both sides.
  const Dataset ds = make_1d({0, 1, 2, 3}, {0, 0, 0, 1});
  EXPECT_THROW(split(ds, 0.5, 1), DatasetError);
}

TEST(Synth, SeparableSingleInformativeColumn) {
  SynthSpec spec{1, 0, 10, 10.0, 0.1};
  const Dataset ds = synth_clusters(spec, 3);
  ASSERT_EQ(ds.n_features(), 1u);
  double max_neg = -1e9, min_pos = 1e9;
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    if (ds.label(i) < 0) {
      max_neg = std::max(max_neg, ds.at(i, 0));
    } else {
      min_pos = std::min(min_pos, ds.at(i, 0));
    }
  }
  EXPECT_LT(max_neg, min_pos);
}

TEST(Synth, ShapeAndInformativeFlags) {
  const Dataset ds = synth_clusters(SynthSpec{3, 7, 100, 6.0, 1.0}, 3);
  EXPECT_EQ(ds.n_samples(), 200u);
  EXPECT_EQ(ds.n_features(), 10u);
  EXPECT_EQ(informative_features(ds).size(), 3u);
  EXPECT_EQ(ds.class_ids(), (std::vector<int>{-1, 1}));
}

TEST(Synth, SameSeedIsBitIdentical) {
  const SynthSpec spec{3, 7, 50, 6.0, 1.0};
  const Dataset a = synth_clusters(spec, 12);
  const Dataset b = synth_clusters(spec, 12);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_EQ(a.feature_names(), b.feature_names());
}

TEST(Synth, ZeroSeparationGivesNoClassSignal) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SynthSpec spec{3, 3, 400, 0.0, 1.0};
    const Dataset ds = synth_clusters(spec, seed);
    const double bound = 5.0 * spec.noise_std / std::sqrt(400.0);
    for (std::size_t j = 0; j < ds.n_features(); ++j) {
      double sum[2] = {0, 0};
      for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        sum[ds.class_index(i)] += ds.at(i, j);
      }
      EXPECT_LE(std::abs(sum[0] / 400.0 - sum[1] / 400.0), bound)
          << "seed " << seed << " column " << j;
    }
  }
}

TEST(Synth, InvalidSpecThrows) {
  EXPECT_THROW(synth_clusters(SynthSpec{0, 3, 10, 1.0, 1.0}, 1), DatasetError);
  EXPECT_THROW(synth_clusters(SynthSpec{1, 3, 0, 1.0, 1.0}, 1), DatasetError);
  EXPECT_THROW(synth_clusters(SynthSpec{1, 3, 10, -1.0, 1.0}, 1), DatasetError);
}

TEST(Catalog, ThirtyThreeOrderedEntries) {
  const auto& entries = catalog().entries;
  ASSERT_EQ(entries.size(), 33u);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    EXPECT_EQ(entries[k].code, "Tz" + std::to_string(k + 1));
  }
  EXPECT_EQ(entries.front().description,
            "Mean value of all the mechanical power before the fault incipient time");
  EXPECT_EQ(entries.back().description,
            "Rotor angular velocity of the machine with the biggest difference "
            "relative to the centre of inertia at t_{cl+9c}");
}

}  // namespace
}  // namespace kfs
