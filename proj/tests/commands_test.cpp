// End-to-end checks through the kfs executable, plus serialization helpers.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "kfs/commands.hpp"
#include "kfs/error.hpp"
#include "kfs/serialize.hpp"
#include "test_util.hpp"

namespace kfs {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int exit_code;
  std::string output;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kfs_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun kfs(const std::string& args) const {
    const fs::path log = dir_ / "stdout.txt";
    const std::string cmd =
        std::string(KFS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), slurp(log)};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string synth(const std::string& extra = "") const {
    const auto r = kfs("synth --out " + dir_.string() + " --seed 7 " + extra);
    EXPECT_EQ(r.exit_code, 0) << r.output;
    return (dir_ / "synthetic.csv").string();
  }

  fs::path dir_;
};

const char* kQuick = "--ma.np=16 --ma.g_max=8 --ma.ts_iters=10";

TEST_F(Cli, SynthWritesStandardBenchmark) {
  const auto csv = synth();
  const Dataset ds = load_csv(csv);
  EXPECT_EQ(ds.n_samples(), 200u);
  EXPECT_EQ(ds.n_features(), 10u);
  EXPECT_EQ(informative_features(ds).size(), 3u);
}

TEST_F(Cli, SelectWritesThreeArtifacts) {
  const auto csv = synth();
  const auto out = dir_ / "run";
  const auto r = kfs("select --data " + csv + " --out " + out.string() + " " + kQuick);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json sel = json::parse(slurp(out / "selection.json"));
  EXPECT_TRUE(sel.contains("best_mask"));
  EXPECT_TRUE(sel["best_mask"].contains("features"));
  EXPECT_TRUE(sel["best_mask"].contains("hex"));
  EXPECT_TRUE(sel.contains("best_fitness"));
  EXPECT_TRUE(sel.contains("terminated_by"));
  const json metrics = json::parse(slurp(out / "metrics.json"));
  for (const char* k : {"a", "kappa", "auc", "eta", "confusion", "dimension"}) {
    EXPECT_TRUE(metrics.contains(k)) << k;
  }
  std::istringstream log(slurp(out / "runlog.jsonl"));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(log, line)) {
    const json rec = json::parse(line);
    for (const char* k : {"g", "best_fitness", "mean_fitness", "sigma_sq", "f_g",
                          "cr_g", "best_mask", "evaluations_so_far"}) {
      ASSERT_TRUE(rec.contains(k)) << k;
    }
    EXPECT_FALSE(rec.contains("elapsed_ms"));
    ++lines;
  }
  EXPECT_GE(lines, 1u);
  EXPECT_LE(lines, 8u);
  for (const auto& entry : fs::directory_iterator(out)) {
    EXPECT_NE(entry.path().extension(), ".tmp");
  }
}

TEST_F(Cli, SelectIsReproducibleAcrossWorkers) {
  const auto csv = synth();
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  ASSERT_EQ(kfs("select --data " + csv + " --out " + a.string() + " --seed 3 --workers 1 " + kQuick).exit_code, 0);
  ASSERT_EQ(kfs("select --data " + csv + " --out " + b.string() + " --seed 3 --workers 3 " + kQuick).exit_code, 0);
  EXPECT_EQ(slurp(a / "selection.json"), slurp(b / "selection.json"));
  EXPECT_EQ(slurp(a / "runlog.jsonl"), slurp(b / "runlog.jsonl"));
}

TEST_F(Cli, TimingIsOptIn) {
  const auto csv = synth();
  const auto out = dir_ / "t";
  ASSERT_EQ(kfs("select --data " + csv + " --out " + out.string() + " --log.timing=true " + kQuick).exit_code, 0);
  std::istringstream log(slurp(out / "runlog.jsonl"));
  std::string line;
  std::getline(log, line);
  EXPECT_TRUE(json::parse(line).contains("elapsed_ms"));
}

TEST_F(Cli, ConfigFileAndFlagPrecedence) {
  const auto csv = synth();
  const auto cfg = dir_ / "cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"ma": {"np": 16, "g_max": 50, "ts_iters": 5, "fitness_stop": 2.0}})";
  }
  const auto out = dir_ / "p";
  const auto r = kfs("select --data " + csv + " --config " + cfg.string() + " --out " +
                     out.string() + " --ma.g_max 3");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json sel = json::parse(slurp(out / "selection.json"));
  EXPECT_EQ(sel["generations"], 3);
  EXPECT_EQ(sel["terminated_by"], "generation_limit");
}

TEST_F(Cli, MissingDataFileNamesPath) {
  const auto r = kfs("select --data /no/such/file.csv --out " + dir_.string());
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("/no/such/file.csv"), std::string::npos) << r.output;
}

TEST_F(Cli, UnknownKeyFails) {
  const auto csv = synth();
  const auto r = kfs("select --data " + csv + " --out " + dir_.string() + " --ma.bogus=1");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("ma.bogus"), std::string::npos) << r.output;
}

TEST_F(Cli, OracleGuardOnWideData) {
  const auto csv = synth("--synth.n_noise=22 --synth.samples_per_class=20");
  ASSERT_EQ(load_csv(csv).n_features(), 25u);
  const auto r = kfs("oracle --data " + csv + " --out " + dir_.string());
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("exceeds max_n"), std::string::npos) << r.output;
}

TEST_F(Cli, OracleWritesResult) {
  const auto csv = synth("--synth.n_noise=3 --synth.samples_per_class=30");
  const auto out = dir_ / "o";
  ASSERT_EQ(kfs("oracle --data " + csv + " --out " + out.string()).exit_code, 0);
  const json o = json::parse(slurp(out / "oracle.json"));
  EXPECT_EQ(o["evaluated"], 63);
  EXPECT_GE(o["best_fitness"].get<double>(), o["runner_up_fitness"].get<double>());
}

TEST_F(Cli, CompareWritesTable) {
  const auto csv = synth("--synth.n_noise=3 --synth.samples_per_class=30");
  const auto out = dir_ / "c";
  const auto r = kfs("compare --data " + csv + " --out " + out.string() +
                     " --compare.runs=2 --baseline.kinds=MA,BDE,GA,BPSO " + kQuick);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::istringstream csv_in(slurp(out / "compare.csv"));
  std::string line;
  std::getline(csv_in, line);
  EXPECT_EQ(line, "optimizer,mean_time_s,best_fitness,mean_fitness,success_rate_pct");
  std::size_t rows = 0;
  while (std::getline(csv_in, line)) ++rows;
  EXPECT_EQ(rows, 4u);
}

TEST_F(Cli, EvaluateByCatalogNames) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise;
  std::ofstream f(dir_ / "tz.csv");
  f << "Tz1,Tz2,Tz3,Tz4,Tz5,label\n";
  for (int i = 0; i < 60; ++i) {
    const int label = i % 2 == 0 ? -1 : 1;
    for (int j = 0; j < 5; ++j) f << noise(rng) + (j == 0 ? 3.0 * label : 0.0) << ",";
    f << label << "\n";
  }
  f.close();
  const auto out = dir_ / "e";
  const auto r = kfs("evaluate --data " + (dir_ / "tz.csv").string() + " --out " +
                     out.string() + " --mask Tz1,Tz4");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const json m = json::parse(slurp(out / "metrics.json"));
  EXPECT_EQ(m["dimension"], 2);
  EXPECT_NEAR(m["eta"].get<double>(),
              (m["a"].get<double>() + m["kappa"].get<double>() + m["auc"].get<double>()) / 3.0,
              1e-12);

  const auto multi = kfs("evaluate --data " + (dir_ / "tz.csv").string() + " --out " +
                         out.string() + " --mask \"Tz1;0x1e\"");
  ASSERT_EQ(multi.exit_code, 0) << multi.output;
  const auto rows = slurp(out / "evaluations.csv");
  EXPECT_EQ(rows.substr(0, rows.find('\n')), "mask_hex,dimension,a,kappa,auc,eta");
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 3);

  EXPECT_NE(kfs("evaluate --data " + (dir_ / "tz.csv").string() + " --out " +
                out.string() + " --mask Tz9").exit_code, 0);
}

TEST(Serialize, MaskParsing) {
  const std::vector<std::string> names{"f0", "f1!inf", "f2", "f3", "f4"};
  EXPECT_EQ(parse_mask("0x05", names), FeatureMask::from_indices(5, {0, 2}));
  EXPECT_EQ(parse_mask("f1,f3", names), FeatureMask::from_indices(5, {1, 3}));
  EXPECT_EQ(parse_mask("f1!inf", names), FeatureMask::from_indices(5, {1}));
  EXPECT_EQ(parse_mask("12", names), FeatureMask::from_indices(5, {1, 4}));
  EXPECT_THROW(parse_mask("f9", names), Error);
  EXPECT_EQ(selected_names(FeatureMask::from_indices(5, {1, 4}), names),
            (std::vector<std::string>{"f1!inf", "f4"}));
}

TEST(Serialize, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 0.8948102425482907, -0.5, 1e-300}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Serialize, OracleJsonNullRunnerUp) {
  OracleResult r;
  r.best_mask = FeatureMask::from_bits("1");
  r.best_fitness = 0.5;
  r.evaluated = 1;
  const json j = to_json(r, {"x"});
  EXPECT_TRUE(j["runner_up_fitness"].is_null());
  EXPECT_EQ(j["evaluated"], 1);
}

TEST(Serialize, AtomicWriteReplaces) {
  const auto p = fs::temp_directory_path() / "kfs_atomic_test.txt";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  std::ifstream in(p);
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
  fs::remove(p);
}

TEST(Commands, PrepareDataStandardizesOnTrain) {
  const auto path = fs::temp_directory_path() / "kfs_prepare_test.csv";
  write_csv(synth_clusters(SynthSpec{2, 2, 50, 4.0, 1.0}, 1), path);
  RunConfig cfg = build_run_config({{"data", path.string()}});
  const auto [train, test] = prepare_data(cfg);
  EXPECT_EQ(train.n_samples() + test.n_samples(), 100u);
  const auto p = zscore_fit(train);
  for (std::size_t j = 0; j < train.n_features(); ++j) {
    EXPECT_NEAR(p.means[j], 0.0, 1e-9);
    EXPECT_NEAR(p.stds[j], 1.0, 1e-9);
  }
  fs::remove(path);
}

}  // namespace
}  // namespace kfs
