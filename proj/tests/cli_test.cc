// Copyright 2026 The Authors.
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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "datasumm/cli.h"
#include "datasumm/ingest.h"
#include "json.hpp"
#include "synthetic.h"

namespace datasumm {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "datasumm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("datasumm_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    planted_ = synth::PlantedClusters(3);
    WriteFileAtomic(Path("f.csv"), FormatFeaturesCsv(*planted_.features));
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  synth::Planted planted_;
};

TEST_F(CliTest, SummarizeHappyPath) {
  Result r = Cli({"summarize", "--features", Path("f.csv"), "--model",
                  "facility_location", "--algo", "lazy", "--k", "5", "--out",
                  Path("m.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json m = nlohmann::json::parse(ReadFile(Path("m.json")));
  EXPECT_EQ(m["selected"].size(), 5u);
  EXPECT_EQ(m["kind"], "extractive");
  EXPECT_EQ(m["provenance"][0]["role"], "features");
  EXPECT_EQ(m["provenance"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST_F(CliTest, ManifestGoesToStdoutWithoutOut) {
  Result r = Cli({"summarize", "--features", Path("f.csv"), "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["selected"].size(), 2u);
}

TEST_F(CliTest, StreamOnCoverageModelIsUsageError) {
  WriteFileAtomic(Path("c.jsonl"), "{\"item\": 0, \"concepts\": [\"a\"]}\n");
  Result r = Cli({"summarize", "--concepts", Path("c.jsonl"), "--model",
                  "set_cover", "--algo", "stream", "--out", Path("m.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("ERROR Unsupported: ", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("compatibility"), std::string::npos) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  EXPECT_FALSE(fs::exists(Path("m.json")));
}

TEST_F(CliTest, UsageErrorsLeaveNoOutput) {
  const std::vector<std::vector<std::string>> cases = {
      {"summarize", "--features", Path("f.csv"), "--k", "0"},
      {"summarize", "--features", Path("f.csv"), "--model", "nope", "--k", "2"},
      {"summarize", "--model", "facility_location", "--k", "2"},
      {"summarize", "--features", Path("f.csv"), "--k", "2", "--bogus"},
      {"summarize", "--features", Path("f.csv"), "--algo", "budgeted"},
      {"summarize", "--features", Path("f.csv"), "--k", "2", "--threads", "0"},
  };
  for (auto args : cases) {
    args.push_back("--out");
    args.push_back(Path("m.json"));
    Result r = Cli(args);
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_EQ(r.err.rfind("ERROR ", 0), 0u) << r.err;
    EXPECT_FALSE(fs::exists(Path("m.json")));
  }
  Result none = Cli({});
  EXPECT_EQ(none.code, 2);
}

TEST_F(CliTest, RuntimeErrorExitsOne) {
  Result r = Cli({"summarize", "--features", Path("missing.csv"), "--k", "2",
                  "--out", Path("m.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("ERROR IoError: ", 0), 0u) << r.err;
  EXPECT_FALSE(fs::exists(Path("m.json")));
}

TEST_F(CliTest, NoTimingsIsByteStable) {
  std::vector<std::string> args = {"summarize", "--features", Path("f.csv"),
                                   "--model", "graph_cut", "--k", "7",
                                   "--seed", "4", "--no-timings"};
  Result a = Cli(args), b = Cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(nlohmann::json::parse(a.out).contains("timings"));
}

TEST_F(CliTest, EvalPrintsRepresentationAndOutliers) {
  ASSERT_EQ(Cli({"summarize", "--features", Path("f.csv"), "--model",
                 "disparity_min", "--k", "5", "--out", Path("m.json")})
                .code,
            0);
  std::string ann;
  for (int c = 0; c < 5; ++c) {
    std::string items;
    for (int i = 0; i < 101; ++i) {
      if (planted_.cluster[i] == c) items += (items.empty() ? "" : ",") + std::to_string(i);
    }
    ann += "{\"segment\": \"scene" + std::to_string(c) +
           "\", \"kind\": \"scene\", \"items\": [" + items + "]}\n";
  }
  ann += "{\"segment\": \"odd\", \"kind\": \"outlier_event\", \"items\": [" +
         std::to_string(planted_.outlier) + "]}\n";
  WriteFileAtomic(Path("ann.jsonl"), ann);
  Result r = Cli({"eval", "--manifest", Path("m.json"), "--annotations",
                  Path("ann.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("R "), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("D 1\n"), std::string::npos) << r.out;

  Result j = Cli({"eval", "--manifest", Path("m.json"), "--annotations",
                  Path("ann.jsonl"), "--json"});
  ASSERT_EQ(j.code, 0) << j.err;
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["D"], 1);
  EXPECT_GE(parsed["R"].get<double>(), 0.0);
}

TEST_F(CliTest, SubsetAndDal) {
  std::string labels;
  for (int c : planted_.cluster) labels += "c" + std::to_string(c) + "\n";
  WriteFileAtomic(Path("labels.txt"), labels);
  Result s = Cli({"subset", "--features", Path("f.csv"), "--fraction", "0.1",
                  "--labels", Path("labels.txt"), "--no-timings"});
  ASSERT_EQ(s.code, 0) << s.err;
  nlohmann::json m = nlohmann::json::parse(s.out);
  EXPECT_EQ(m["selected"].size(), 11u);  // ceil(0.1 * 101)
  EXPECT_TRUE(m.contains("class_counts"));

  Result d = Cli({"dal", "--features", Path("f.csv"), "--labels", Path("labels.txt"),
                  "--rounds", "3", "--batch", "5", "--strategy", "random",
                  "--seed", "1", "--out", Path("log.csv")});
  ASSERT_EQ(d.code, 0) << d.err;
  const std::string csv = ReadFile(Path("log.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "round,batch,labeled,holdout_acc");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_TRUE(fs::exists(Path("log.json")));
}

TEST_F(CliTest, KernelRoundTrip) {
  Result r = Cli({"kernel", "--features", Path("f.csv"), "--out", Path("k.vdsf")});
  ASSERT_EQ(r.code, 0) << r.err;
  Kernel k = LoadKernelBinary(Path("k.vdsf"));
  EXPECT_EQ(k.size(), 101);
  Result s = Cli({"summarize", "--kernel", Path("k.vdsf"), "--k", "3", "--no-timings"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(nlohmann::json::parse(s.out)["model"]["params"]["metric"], "precomputed");
  EXPECT_EQ(Cli({"kernel", "--features", Path("f.csv")}).code, 2);
}

TEST_F(CliTest, BenchSmall) {
  Result r = Cli({"bench", "--models", "facility_location", "--n", "100",
                  "--fractions", "0.05", "--repeats", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_EQ(Cli({"bench", "--models", "nope"}).code, 2);
}

TEST_F(CliTest, HelpAndVersion) {
  EXPECT_EQ(Cli({"--help"}).code, 0);
  Result v = Cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "0.1.0\n");
}

}  // namespace
}  // namespace datasumm
