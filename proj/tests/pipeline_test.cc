// Copyright 2026 The bifact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests that drive the bifact binary over the fixture corpus.

#include <gtest/gtest.h>
#include <stdlib.h>

#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "bifact/http.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.h"

namespace bifact {
namespace {

using nlohmann::json;
using testing::CliResult;
using testing::FixtureDir;
using testing::ReadText;
using testing::RunCli;
using testing::TempDir;
using testing::WriteText;

std::vector<json> ReadJsonl(const std::filesystem::path& path) {
  std::vector<json> out;
  std::istringstream in(ReadText(path));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::string Fixture(const std::string& name) {
  return (FixtureDir() / name).string();
}

// Answers every chat request with the same unusable text.
class GarbageJudge {
 public:
  GarbageJudge() {
    server_.Post("/v1/chat", [this](const httplib::Request&,
                                    httplib::Response& res) {
      ++hits;
      const json reply = {
          {"choices",
           {{{"message", {{"role", "assistant"}, {"content", "no idea"}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~GarbageJudge() {
    server_.stop();
    thread_.join();
  }

  // Config for a chat judge at this server; written into `dir`.
  std::string WriteConfig(const TempDir& dir, int parallelism = 1) const {
    const json config = {
        {"judge",
         {{"kind", "http_chat"},
          {"endpoint",
           "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat"},
          {"model_name", "judge"},
          {"max_retries", 0},
          {"backoff_ms", 1}}},
        {"templates_dir", testing::TemplatesDir().string()},
        {"parallelism", parallelism}};
    const auto path = dir / "http_config.json";
    WriteText(path, config.dump());
    return path.string();
  }

  std::atomic<int> hits{0};

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

class ApiKeyScope {
 public:
  ApiKeyScope() { setenv(kApiKeyEnv, "test-token", 1); }
  ~ApiKeyScope() { unsetenv(kApiKeyEnv); }
};

std::vector<std::string> With(std::vector<std::string> args,
                              const std::vector<std::string>& more) {
  args.insert(args.end(), more.begin(), more.end());
  return args;
}

// Runs factorize over the fixture intents into `dir`.
void Factorize(const TempDir& dir) {
  const CliResult r =
      RunCli({"factorize", "--config", Fixture("config.json"), "--intents",
              Fixture("intents.jsonl"), "--out", (dir / "gold.jsonl").string(),
              "--quiet"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
}

CliResult Evaluate(const TempDir& dir, const std::string& out,
                   const std::vector<std::string>& extra = {}) {
  return RunCli(With({"evaluate", "--config", Fixture("config.json"),
                      "--intents", Fixture("intents.jsonl"), "--gold-facts",
                      (dir / "gold.jsonl").string(), "--predictions",
                      Fixture("predictions.jsonl"), "--out",
                      (dir / out).string(), "--quiet"},
                     extra));
}

const json* Find(const std::vector<json>& lines, const std::string& id,
                 const std::string& model, const std::string& metric) {
  for (const auto& j : lines) {
    if (j["id"] == id && j["model"] == model && j["metric"] == metric) {
      return &j;
    }
  }
  return nullptr;
}

TEST(CliFactorizeTest, WritesOneLinePerIntentAndRefusesOverwrite) {
  TempDir dir;
  WriteText(dir / "intents.jsonl",
            "{\"id\":\"a\",\"gold_intent\":\"book a flight; to Rome\"}\n"
            "{\"id\":\"b\",\"gold_intent\":\"play jazz\"}\n"
            "{\"id\":\"c\",\"gold_intent\":\"set an alarm; at 7 am; weekdays\"}\n");
  const std::vector<std::string> args = {
      "factorize",     "--config", Fixture("config.json"),
      "--intents",     (dir / "intents.jsonl").string(),
      "--out",         (dir / "gold.jsonl").string()};
  const CliResult first = RunCli(args);
  ASSERT_EQ(first.exit_code, 0) << first.err;
  const auto lines = ReadJsonl(dir / "gold.jsonl");
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["id"], "a");
  EXPECT_EQ(lines[0]["facts"], json({"book a flight", "to Rome"}));
  EXPECT_EQ(lines[2]["facts"].size(), 3u);

  const std::string before = ReadText(dir / "gold.jsonl");
  const CliResult again = RunCli(args);
  EXPECT_EQ(again.exit_code, 2);
  EXPECT_NE(again.err.find("--force"), std::string::npos) << again.err;
  EXPECT_EQ(ReadText(dir / "gold.jsonl"), before);
  EXPECT_EQ(RunCli(With(args, {"--force"})).exit_code, 0);
  EXPECT_EQ(ReadText(dir / "gold.jsonl"), before);
}

TEST(CliFactorizeTest, ParseFailureAbortsAndNamesTheIntent) {
  TempDir dir;
  GarbageJudge judge;
  ApiKeyScope key;
  const CliResult r = RunCli({"factorize", "--config", judge.WriteConfig(dir),
                              "--intents", Fixture("intents.jsonl"), "--out",
                              (dir / "gold.jsonl").string(), "--quiet"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("ParseFailure"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("'g01'"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("no idea"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir / "gold.jsonl"));
  // One call plus one re-prompt.
  EXPECT_EQ(judge.hits.load(), 2);
}

TEST(CliFactorizeTest, SkipFailuresWritesSidecar) {
  TempDir dir;
  GarbageJudge judge;
  ApiKeyScope key;
  const CliResult r = RunCli(
      {"factorize", "--config", judge.WriteConfig(dir, 3), "--intents",
       Fixture("intents.jsonl"), "--out", (dir / "gold.jsonl").string(),
       "--skip-failures", "--quiet"});
  EXPECT_EQ(r.exit_code, 1);
  const auto failures = ReadJsonl(dir / "gold.jsonl.failures.jsonl");
  ASSERT_EQ(failures.size(), 10u);
  EXPECT_EQ(failures[0]["id"], "g01");
  EXPECT_EQ(failures[0]["code"], "ParseFailure");
  EXPECT_EQ(failures[9]["id"], "g10");
  EXPECT_EQ(ReadText(dir / "gold.jsonl"), "");
}

TEST(CliFactorizeTest, MissingCredentialIsUsageError) {
  TempDir dir;
  GarbageJudge judge;
  unsetenv(kApiKeyEnv);
  const CliResult r = RunCli({"factorize", "--config", judge.WriteConfig(dir),
                              "--intents", Fixture("intents.jsonl"), "--out",
                              (dir / "gold.jsonl").string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find(kApiKeyEnv), std::string::npos) << r.err;
  EXPECT_EQ(judge.hits.load(), 0);
}

TEST(CliEvaluateTest, OneLinePerPairAndMetric) {
  TempDir dir;
  Factorize(dir);
  WriteText(dir / "preds.jsonl",
            "{\"id\":\"g01\",\"model\":\"m\",\"predicted_intent\":\"book a "
            "flight; destination is Paris\"}\n"
            "{\"id\":\"g02\",\"model\":\"m\",\"predicted_intent\":\"order a "
            "pizza\"}\n");
  const CliResult r = RunCli(
      {"evaluate", "--config", Fixture("config.json"), "--intents",
       Fixture("intents.jsonl"), "--gold-facts", (dir / "gold.jsonl").string(),
       "--predictions", (dir / "preds.jsonl").string(), "--out",
       (dir / "results.jsonl").string(), "--metrics", "bifact,rouge1"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto lines = ReadJsonl(dir / "results.jsonl");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0]["metric"], "bifact");
  EXPECT_EQ(lines[1]["metric"], "rouge1");
  EXPECT_EQ(lines[2]["id"], "g02");
}

TEST(CliEvaluateTest, WorkedExampleAndIdentity) {
  TempDir dir;
  Factorize(dir);
  const CliResult r = Evaluate(dir, "results.jsonl");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto lines = ReadJsonl(dir / "results.jsonl");
  ASSERT_EQ(lines.size(), 20u * 9u);

  const json* worked = Find(lines, "g01", "beta", "bifact");
  ASSERT_NE(worked, nullptr);
  EXPECT_NEAR((*worked)["score"].get<double>(), 0.8, 1e-15);
  const json& d = (*worked)["details"];
  EXPECT_EQ(d["recall_exact"], json({2, 3}));
  EXPECT_EQ(d["precision_exact"], json({1, 1}));
  EXPECT_EQ(d["f1_exact"], json({4, 5}));
  EXPECT_EQ(d["gold_fact_labels"][2]["fact"], "class is business");
  EXPECT_EQ(d["gold_fact_labels"][2]["implied"], false);

  for (const char* metric : {"bifact", "bleu", "rouge1", "rouge2", "rougeL",
                             "nli", "embed_sim", "autorater"}) {
    const json* j = Find(lines, "g01", "alpha", metric);
    ASSERT_NE(j, nullptr) << metric;
    EXPECT_NEAR((*j)["score"].get<double>(), 1.0, 1e-12) << metric;
  }
  // METEOR keeps its fragmentation penalty even on identical text.
  const double meteor = (*Find(lines, "g01", "alpha", "meteor"))["score"];
  EXPECT_LT(meteor, 1.0);
  EXPECT_GT(meteor, 0.99);
  EXPECT_EQ((*Find(lines, "g01", "alpha", "autorater"))["binary"], true);
}

TEST(CliEvaluateTest, DryRunMakesNoBackendCalls) {
  TempDir dir;
  Factorize(dir);
  GarbageJudge judge;
  ApiKeyScope key;
  const std::string config = judge.WriteConfig(dir);
  const CliResult fr = RunCli({"factorize", "--config", config, "--intents",
                               Fixture("intents.jsonl"), "--out",
                               (dir / "gold2.jsonl").string(), "--dry-run"});
  ASSERT_EQ(fr.exit_code, 0) << fr.err;
  EXPECT_NE(fr.out.find("factorize=10 total=10"), std::string::npos) << fr.out;
  EXPECT_FALSE(std::filesystem::exists(dir / "gold2.jsonl"));

  const CliResult er = RunCli(
      {"evaluate", "--config", config, "--intents", Fixture("intents.jsonl"),
       "--gold-facts", (dir / "gold.jsonl").string(), "--predictions",
       Fixture("predictions.jsonl"), "--out", (dir / "r.jsonl").string(),
       "--dry-run"});
  ASSERT_EQ(er.exit_code, 0) << er.err;
  EXPECT_NE(er.out.find("20 pairs x 9 metrics"), std::string::npos) << er.out;
  EXPECT_NE(er.out.find("assess=20 nli=40 autorater=20 total=80"),
            std::string::npos)
      << er.out;
  EXPECT_NE(er.out.find("embedding requests=40"), std::string::npos) << er.out;
  EXPECT_FALSE(std::filesystem::exists(dir / "r.jsonl"));
  EXPECT_EQ(judge.hits.load(), 0);
}

TEST(CliEvaluateTest, MissingGoldFactsIsContractViolation) {
  TempDir dir;
  WriteText(dir / "gold.jsonl", "{\"id\":\"g01\",\"facts\":[\"book a flight\"]}\n");
  const CliResult r = Evaluate(dir, "r.jsonl", {"--metrics", "bifact"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("MissingGoldFacts"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("g02"), std::string::npos) << r.err;
  // Without bifact the gold facts are not consulted.
  EXPECT_EQ(Evaluate(dir, "r.jsonl", {"--metrics", "bleu"}).exit_code, 0);
}

TEST(CliEvaluateTest, CacheServesRepeatRuns) {
  TempDir dir;
  Factorize(dir);
  const std::string cache = (dir / "cache").string();
  const CliResult first =
      Evaluate(dir, "a.jsonl", {"--cache-dir", cache, "--metrics", "bifact,nli"});
  ASSERT_EQ(first.exit_code, 0) << first.err;
  // Identical prompts inside one run (NLI on identical text) already hit.
  long calls = -1, hits = -1;
  const auto at = first.err.find("failures, ");
  ASSERT_NE(at, std::string::npos) << first.err;
  ASSERT_EQ(std::sscanf(first.err.c_str() + at,
                        "failures, %ld backend calls, %ld cache hits", &calls,
                        &hits),
            2);
  EXPECT_EQ(calls + hits, 60);
  EXPECT_GT(calls, 0);
  const CliResult second =
      Evaluate(dir, "b.jsonl", {"--cache-dir", cache, "--metrics", "bifact,nli"});
  ASSERT_EQ(second.exit_code, 0) << second.err;
  EXPECT_NE(second.err.find(" 0 backend calls, 60 cache hits"),
            std::string::npos)
      << second.err;
  EXPECT_EQ(ReadText(dir / "a.jsonl"), ReadText(dir / "b.jsonl"));
}

TEST(CliUsageTest, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(RunCli({}).exit_code, 2);
  EXPECT_EQ(RunCli({"--help"}).exit_code, 0);
  EXPECT_EQ(RunCli({"factorize", "--intents", "x"}).exit_code, 2);
  Factorize(dir);
  const CliResult bad_metric = Evaluate(dir, "r.jsonl", {"--metrics", "cider"});
  EXPECT_EQ(bad_metric.exit_code, 2);
  EXPECT_EQ(RunCli({"evaluate", "--intents", "/nonexistent/i.jsonl",
                    "--gold-facts", "/nonexistent/g.jsonl", "--predictions",
                    "/nonexistent/p.jsonl", "--out", (dir / "o").string()})
                .exit_code,
            1);
  WriteText(dir / "bad.json", "{\"judge\": {\"kind\": \"mock_rule\", \"api_key\": \"x\"}}");
  const CliResult bad_config =
      RunCli({"factorize", "--config", (dir / "bad.json").string(), "--intents",
              Fixture("intents.jsonl"), "--out", (dir / "x.jsonl").string()});
  EXPECT_EQ(bad_config.exit_code, 2);
  EXPECT_NE(bad_config.err.find("ConfigError"), std::string::npos);
}

// Full pipeline with every metric into `dir`; returns the report stdout.
std::string RunPipeline(const TempDir& dir, int parallelism) {
  const std::string p = std::to_string(parallelism);
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.end(), {"--config", Fixture("config.json"),
                             "--parallelism", p, "--quiet"});
    const CliResult r = RunCli(args);
    EXPECT_EQ(r.exit_code, 0) << r.err;
    return r;
  };
  run({"factorize", "--intents", Fixture("intents.jsonl"), "--out",
       (dir / "gold.jsonl").string()});
  run({"evaluate", "--intents", Fixture("intents.jsonl"), "--gold-facts",
       (dir / "gold.jsonl").string(), "--predictions",
       Fixture("predictions.jsonl"), "--out", (dir / "results.jsonl").string()});
  run({"calibrate", "--results", (dir / "results.jsonl").string(), "--labels",
       Fixture("intent_match_labels.jsonl"), "--out",
       (dir / "sweep.json").string()});
  return run({"report", "--results", (dir / "results.jsonl").string(),
              "--labels", Fixture("intent_match_labels.jsonl"), "--sweep",
              (dir / "sweep.json").string(), "--out",
              (dir / "report.json").string(), "--fact-level",
              Fixture("fact_level.jsonl"), "--fact-model", "beta"})
      .out;
}

TEST(CliPipelineTest, ByteIdenticalAcrossRunsAndParallelism) {
  TempDir a, b;
  const std::string table_a = RunPipeline(a, 1);
  const std::string table_b = RunPipeline(b, 4);
  for (const char* file : {"gold.jsonl", "results.jsonl", "sweep.json",
                           "report.json"}) {
    EXPECT_EQ(ReadText(a / file), ReadText(b / file)) << file;
  }
  EXPECT_EQ(table_a, table_b);

  // Table columns and rows.
  EXPECT_EQ(table_a.rfind("Metric", 0), 0u) << table_a;
  for (const char* col : {"Precision", "Recall", "F1", "Kappa"}) {
    EXPECT_NE(table_a.find(col), std::string::npos) << col;
  }
  for (const char* row : {"Bi-Fact", "BLEU", "ROUGE-1", "ROUGE-2", "ROUGE-L",
                          "METEOR", "NLI", "Embed sim", "AutoRater"}) {
    EXPECT_NE(table_a.find(row), std::string::npos) << row;
  }
  // The mock judge reproduces the fact-level annotations exactly.
  EXPECT_NE(table_a.find("Bi-Fact    r=1.000"), std::string::npos) << table_a;

  const json report = json::parse(ReadText(a / "report.json"));
  EXPECT_EQ(report["agreement"].size(), 9u);
  EXPECT_EQ(report["agreement"][0]["metric"], "bifact");
  EXPECT_EQ(report["correlation"][0]["metric"], "bifact");
  EXPECT_NEAR(report["correlation"][0]["r"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(report["split"]["seed"], 7);
  EXPECT_TRUE(report["metric_variants"].contains("bleu"));

  // Report only scores pairs outside the calibration split.
  const json sweep = json::parse(ReadText(a / "sweep.json"));
  EXPECT_EQ(sweep["dev_pairs"].get<int>() + report["split"]["test_pairs"].get<int>(),
            20);
}

TEST(CliCalibrateTest, AbsentMetricOmittedAndAutoraterPassthrough) {
  TempDir dir;
  Factorize(dir);
  ASSERT_EQ(Evaluate(dir, "results.jsonl", {"--metrics", "bifact,rouge1,autorater"})
                .exit_code,
            0);
  const CliResult r = RunCli(
      {"calibrate", "--config", Fixture("config.json"), "--results",
       (dir / "results.jsonl").string(), "--labels",
       Fixture("intent_match_labels.jsonl"), "--out",
       (dir / "sweep.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.err.find("'meteor'"), std::string::npos) << r.err;
  const json sweep = json::parse(ReadText(dir / "sweep.json"));
  ASSERT_EQ(sweep["sweeps"].size(), 3u);
  EXPECT_EQ(sweep["sweeps"][0]["metric"], "bifact");
  EXPECT_EQ(sweep["sweeps"][0]["thresholds"].size(), 30u);
  const json& auto_entry = sweep["sweeps"][2];
  EXPECT_EQ(auto_entry["metric"], "autorater");
  EXPECT_EQ(auto_entry["binary_passthrough"], true);
  EXPECT_TRUE(auto_entry["thresholds"].empty());

  // The report refuses a continuous metric without a tuned threshold.
  json trimmed = sweep;
  trimmed["sweeps"].erase(1);
  WriteText(dir / "trimmed.json", trimmed.dump());
  const CliResult missing = RunCli(
      {"report", "--config", Fixture("config.json"), "--results",
       (dir / "results.jsonl").string(), "--labels",
       Fixture("intent_match_labels.jsonl"), "--sweep",
       (dir / "trimmed.json").string(), "--out", (dir / "rep.json").string()});
  EXPECT_EQ(missing.exit_code, 2);
  EXPECT_NE(missing.err.find("MissingThreshold"), std::string::npos)
      << missing.err;
}

TEST(CliSplitTest, MatchesCalibrationSplit) {
  TempDir dir;
  const CliResult r =
      RunCli({"split", "--config", Fixture("config.json"), "--labels",
              Fixture("intent_match_labels.jsonl"), "--out",
              (dir / "split.json").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const json split = json::parse(ReadText(dir / "split.json"));
  // 10 groups at 0.3 gives 3 dev groups of 2 models.
  EXPECT_EQ(split["dev"].size(), 6u);
  EXPECT_EQ(split["test"].size(), 14u);
}

// 36 fact-level annotations whose human F1 correlates with the automatic
// score at exactly r = 0.781.
TEST(CliReportTest, EngineeredCorrelationIsSignificant) {
  TempDir dir;
  const int n = 36;
  std::mt19937_64 rng(79);
  std::string fact_level, labels;
  std::vector<double> human(n);
  for (int i = 0; i < n; ++i) {
    const int gold_true = i % 4, pred_true = 1 + (i / 4) % 3;
    json rec;
    char id[8];
    std::snprintf(id, sizeof id, "s%02d", i);
    rec["id"] = id;
    for (int k = 0; k < 4; ++k) {
      rec["gold_facts"].push_back("gold fact " + std::to_string(k));
      rec["human_gold_labels"].push_back(k < gold_true);
    }
    for (int k = 0; k < 3; ++k) {
      rec["predicted_facts"].push_back("pred fact " + std::to_string(k));
      rec["human_predicted_labels"].push_back(k < pred_true);
    }
    fact_level += rec.dump() + "\n";
    const double r = gold_true / 4.0, p = pred_true / 3.0;
    human[i] = r + p > 0 ? 2 * r * p / (r + p) : 0.0;
    labels += json({{"id", id}, {"model", "m"}, {"human_match", i % 2 == 0}})
                  .dump() +
              "\n";
  }
  // x = a + b (r z_h + sqrt(1 - r^2) z_perp), mapped into [0.05, 0.95].
  auto standardize = [](std::vector<double> v) {
    double mean = 0, ss = 0;
    for (double e : v) mean += e;
    mean /= static_cast<double>(v.size());
    for (double& e : v) ss += (e -= mean) * e;
    for (double& e : v) e /= std::sqrt(ss);
    return v;
  };
  const auto zh = standardize(human);
  std::normal_distribution<double> g;
  std::vector<double> noise(n);
  for (double& e : noise) e = g(rng);
  noise = standardize(noise);
  double proj = 0;
  for (int i = 0; i < n; ++i) proj += noise[i] * zh[i];
  for (int i = 0; i < n; ++i) noise[i] -= proj * zh[i];
  const auto zp = standardize(noise);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.781 * zh[i] + std::sqrt(1 - 0.781 * 0.781) * zp[i];
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double min = *lo, span = *hi - *lo;
  std::string results;
  for (int i = 0; i < n; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "s%02d", i);
    results += json({{"id", id},
                     {"model", "m"},
                     {"metric", "bifact"},
                     {"score", 0.05 + 0.9 * (x[i] - min) / span}})
                   .dump() +
               "\n";
  }
  WriteText(dir / "fact_level.jsonl", fact_level);
  WriteText(dir / "labels.jsonl", labels);
  WriteText(dir / "results.jsonl", results);

  const std::vector<std::string> common = {"--metrics", "bifact", "--seed", "3",
                                           "--quiet"};
  const CliResult cal = RunCli(With(
      {"calibrate", "--results", (dir / "results.jsonl").string(), "--labels",
       (dir / "labels.jsonl").string(), "--out", (dir / "sweep.json").string()},
      common));
  ASSERT_EQ(cal.exit_code, 0) << cal.err;
  const CliResult rep = RunCli(With(
      {"report", "--results", (dir / "results.jsonl").string(), "--labels",
       (dir / "labels.jsonl").string(), "--sweep", (dir / "sweep.json").string(),
       "--out", (dir / "report.json").string(), "--fact-level",
       (dir / "fact_level.jsonl").string(), "--table",
       (dir / "table.txt").string()},
      common));
  ASSERT_EQ(rep.exit_code, 0) << rep.err;
  EXPECT_TRUE(rep.out.empty());
  const json report = json::parse(ReadText(dir / "report.json"));
  const json& c = report["correlation"][0];
  EXPECT_NEAR(c["r"].get<double>(), 0.781, 1e-9);
  EXPECT_EQ(c["n"], 36);
  EXPECT_LT(c["p_value"].get<double>(), 0.001);
  EXPECT_NE(ReadText(dir / "table.txt").find("r=0.781"), std::string::npos);
}

}  // namespace
}  // namespace bifact
