#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "pursuit/sensing.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args, pursuit::cli::Environment env = {}) {
  std::ostringstream out;
  std::ostringstream err;
  Invocation r;
  r.code = pursuit::cli::run(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path temp_file(const std::string& name) {
  return fs::path(testing::TempDir()) / ("pursuit_cli_" + name);
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path path = temp_file(name);
  std::ofstream(path) << j.dump();
  return path;
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

TEST(Recover, ReportsErrorAndSupport) {
  const auto r = invoke({"recover", "--alg", "cosamp", "--ensemble", "gaussian", "--m", "128",
                         "--N", "256", "--s", "8", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("format_version"), 1);
  EXPECT_TRUE(j.at("support_exact").is_boolean());
  EXPECT_GE(j.at("l2_error").get<double>(), 0.0);
  EXPECT_LE(j.at("support").size(), 8u);
  EXPECT_EQ(j.at("config").at("seed"), 7);
}

TEST(Recover, ZeroSparsityIsValidationError) {
  const auto r = invoke({"recover", "--s", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("s"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Recover, CosampNeedsThreeSMeasurements) {
  const auto r = invoke({"recover", "--alg", "cosamp", "--m", "16", "--s", "8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("3s <= m"), std::string::npos) << r.err;
}

TEST(Recover, UnknownChoiceIsValidationError) {
  EXPECT_EQ(invoke({"recover", "--alg", "iht"}).code, 2);
  EXPECT_EQ(invoke({"recover", "--ensemble", "fourier"}).code, 2);
  EXPECT_EQ(invoke({"recover", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"recover", "--bogus", "1"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"transmogrify"}).code, 2);
}

TEST(Bench, EmptyTrialCountIsValidationError) {
  const fs::path out = temp_file("empty_trials.csv");
  fs::remove(out);
  const auto r = invoke({"bench", "--trials", "0", "--format", "csv", "--out", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Bench, CsvHasOneRowPerTrial) {
  const auto r = invoke({"bench", "--m", "32", "--N", "64", "--s", "3", "--trials", "4",
                         "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("# pursuit format_version=1 config={"));
  EXPECT_EQ(data_rows(r.out).size(), 4u);
}

TEST(Bench, ThreadCountDoesNotChangeBytes) {
  const std::vector<std::string> base{"bench", "--m", "40", "--N", "80", "--s", "4",
                                      "--trials", "12", "--format", "csv"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = invoke(one);
  const auto b = invoke(four);
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("threads"), std::string::npos);
}

TEST(Bench, SummaryFileAccompaniesCsv) {
  const fs::path out = temp_file("bench.csv");
  const fs::path summary = temp_file("bench_summary.json");
  const auto r = invoke({"bench", "--m", "32", "--N", "64", "--s", "3", "--trials", "3",
                         "--format", "csv", "--out", out.string(), "--summary",
                         summary.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(summary);
  const json j = json::parse(in);
  EXPECT_EQ(j.at("format_version"), 1);
  EXPECT_EQ(j.at("config").at("trials"), 3);
}

TEST(Bench, ScalingModeEmitsOneRowPerSparsity) {
  const auto r = invoke({"bench", "--mode", "scaling", "--N", "128", "--m", "64", "--s-list",
                         "2,4", "--trials", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out).size(), 2u);
}

TEST(Sweep, OneValidCellGivesOneDataRow) {
  const auto r = invoke({"sweep", "--N", "64", "--m-list", "24", "--s-list", "4", "--trials",
                         "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].starts_with("24,4,1,3,"));
}

TEST(Sweep, CellViolatingPreconditionIsNa) {
  const auto r = invoke({"sweep", "--N", "64", "--m-list", "8", "--s-list", "4", "--trials",
                         "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out), std::vector<std::string>{"8,4,0,NA,NA,NA"});
}

TEST(Sweep, MalformedListIsValidationError) {
  EXPECT_EQ(invoke({"sweep", "--m-list", "8,x", "--s-list", "2"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--m-list", "8"}).code, 2);
}

TEST(Ric, SupportLargerThanMIsValidationError) {
  EXPECT_EQ(invoke({"ric", "--m", "8", "--N", "16", "--n", "9"}).code, 2);
}

TEST(Ric, IdentityHasNoDeviation) {
  const auto r = invoke({"ric", "--ensemble", "identity", "--m", "64", "--N", "64", "--n", "5",
                         "--trials", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_LE(j.at("delta_lower").get<double>(), 1e-10);
  EXPECT_EQ(j.at("n"), 5);
  EXPECT_EQ(j.at("trials"), 100);
  EXPECT_TRUE(j.contains("seed"));
}

TEST(Ric, SingletonSupportsMatchColumnNormScan) {
  const auto r = invoke({"ric", "--ensemble", "gaussian", "--m", "12", "--N", "30", "--n", "1",
                         "--trials", "30", "--seed", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const pursuit::Matrix phi =
      pursuit::OperatorDescriptor{pursuit::Ensemble::Gaussian, 12, 30, 11}.build().dense();
  double expected = 0.0;
  for (pursuit::Index j = 0; j < phi.cols(); ++j)
    expected = std::max(expected, std::abs(phi.col(j).norm() - 1.0));
  EXPECT_DOUBLE_EQ(json::parse(r.out).at("delta_lower").get<double>(), expected);
}

TEST(Config, FlagsOverrideFileKeys) {
  const fs::path cfg = write_config("override.json", {{"m", 64}, {"N", 128}, {"s", 4}});
  const auto r = invoke({"recover", "--config", cfg.string(), "--s", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json echo = json::parse(r.out).at("config");
  EXPECT_EQ(echo.at("s"), 5);
  EXPECT_EQ(echo.at("m"), 64);
  EXPECT_EQ(echo.at("N"), 128);
}

TEST(Config, UnderscoreKeysAndBooleanFlags) {
  const fs::path cfg = write_config(
      "bools.json", {{"m", 64}, {"N", 128}, {"s", 4}, {"noise", "fixed"}, {"noise_level", 0.1},
                     {"noise_relative", true}, {"max_iter", 20}});
  const auto r = invoke({"recover", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json echo = json::parse(r.out).at("config");
  EXPECT_EQ(echo.at("noise_relative"), true);
  EXPECT_EQ(echo.at("max_iter"), 20);
}

TEST(Config, ListValuesMayBeArrays) {
  const fs::path cfg =
      write_config("lists.json", {{"N", 64}, {"m_list", {16, 32}}, {"s_list", {2}}, {"trials", 2}});
  const auto r = invoke({"sweep", "--config", cfg.string(), "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(data_rows(r.out).size(), 2u);
}

TEST(Config, UnknownKeyIsRejected) {
  const fs::path cfg = write_config("unknown.json", {{"m", 64}, {"sparsity", 4}});
  const auto r = invoke({"recover", "--config", cfg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("sparsity"), std::string::npos);
}

TEST(Config, MissingOrMalformedFileIsValidationError) {
  EXPECT_EQ(invoke({"recover", "--config", temp_file("does_not_exist.json").string()}).code, 2);
  const fs::path bad = temp_file("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(invoke({"recover", "--config", bad.string()}).code, 2);
}

TEST(Seed, EnvironmentIsLastResort) {
  const std::vector<std::string> args{"recover", "--m", "32", "--N", "64", "--s", "3"};
  auto seed_of = [](const Invocation& r) {
    return json::parse(r.out).at("config").at("seed").get<std::uint64_t>();
  };
  EXPECT_EQ(seed_of(invoke(args)), 0u);
  EXPECT_EQ(seed_of(invoke(args, {"99"})), 99u);

  auto flagged = args;
  flagged.insert(flagged.end(), {"--seed", "5"});
  EXPECT_EQ(seed_of(invoke(flagged, {"99"})), 5u);

  const fs::path cfg = write_config("seed.json", {{"seed", 6}});
  auto configured = args;
  configured.insert(configured.end(), {"--config", cfg.string()});
  EXPECT_EQ(seed_of(invoke(configured, {"99"})), 6u);
}

TEST(Seed, MalformedEnvironmentSeedIsValidationError) {
  EXPECT_EQ(invoke({"recover"}, {"twelve"}).code, 2);
}

TEST(Output, RepeatedInvocationIsByteIdentical) {
  const std::vector<std::string> args{"recover", "--alg", "romp", "--m", "64", "--N", "128",
                                      "--s", "4", "--seed", "3", "--noise", "gaussian",
                                      "--noise-level", "0.01"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Output, GoldenFixtureConfigParses) {
  const auto r = invoke({"bench", "--config", PURSUIT_FIXTURE_DIR "/bench_small.json",
                         "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream golden(PURSUIT_FIXTURE_DIR "/bench_small.csv", std::ios::binary);
  std::stringstream buffer;
  buffer << golden.rdbuf();
  EXPECT_EQ(r.out, buffer.str());
}

}  // namespace
