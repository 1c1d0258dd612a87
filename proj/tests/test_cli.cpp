#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = liouville::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, UpsilonZero) {
  const Outcome r = call({"specialfn", "--fn", "upsilon", "--z", "0", "--gamma", "1.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["schema"], "1");
  EXPECT_EQ(j["result"]["value"][0].get<double>(), 0.0);
  EXPECT_EQ(j["result"]["value"][1].get<double>(), 0.0);
  EXPECT_TRUE(j["result"]["log_value"].is_null());
}

TEST(Cli, AnnulusBlockAtGammaGivesPartitions) {
  const Outcome r = call({"block", "--kind", "annulus-1pt", "--beta", "gamma", "--P", "1.0", "--N", "8", "--q", "0.3",
                      "--gamma", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = json_of(r)["result"]["coefficients"];
  const std::vector<double> expected{1, 1, 2, 3, 5, 7, 11, 15, 22};
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t n = 0; n < expected.size(); ++n) {
    EXPECT_NEAR(c[n][0].get<double>(), expected[n], 1e-9) << n;
    EXPECT_NEAR(c[n][1].get<double>(), 0.0, 1e-9) << n;
  }
}

TEST(Cli, BootstrapGammaShape) {
  const Outcome r = call({"bootstrap-gamma", "--gamma", "1.0", "--mu", "1", "--mu-b", "1", "--q", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json_of(r);
  EXPECT_EQ(j["command"], "bootstrap-gamma");
  EXPECT_EQ(j["result"]["value"].size(), 2u);
  EXPECT_GT(j["result"]["P_max"].get<double>(), 0.0);
  EXPECT_TRUE(j["result"].contains("error_estimate"));
  EXPECT_FALSE(j["conjectural"].get<bool>());
  // resolved parameters are echoed
  for (const char* k : {"gamma", "mu", "Q", "c_L", "c_m", "mu_boundary", "theta"}) EXPECT_TRUE(j["params"].contains(k)) << k;
}

TEST(Cli, ConjecturalFlag) {
  const Outcome r = call({"bulk-boundary", "--gamma", "1.0", "--mu-b", "0.6", "--alpha", "2.5,0.7", "--beta", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json_of(r)["conjectural"].get<bool>());
  const Outcome r0 = call({"bulk-boundary", "--gamma", "1.0", "--mu", "0", "--mu-b", "0.6", "--alpha", "2.5,0.7", "--beta", "0.5"});
  ASSERT_EQ(r0.code, 0) << r0.err;
  EXPECT_FALSE(json_of(r0)["conjectural"].get<bool>());
}

TEST(Cli, ComplexArguments) {
  EXPECT_EQ(liouville::cli::parse_complex("1.5", "z"), liouville::Complex(1.5, 0.0));
  EXPECT_EQ(liouville::cli::parse_complex("1.5,-2", "z"), liouville::Complex(1.5, -2.0));
  EXPECT_EQ(liouville::cli::parse_complex("0.25i", "z"), liouville::Complex(0.0, 0.25));
  EXPECT_THROW(liouville::cli::parse_complex("abc", "z"), liouville::DomainError);
}

TEST(Cli, ExitCodes) {
  // domain validation
  Outcome r = call({"specialfn", "--fn", "upsilon", "--z", "0", "--gamma", "3"});
  EXPECT_EQ(r.code, 2);
  auto e = nlohmann::json::parse(r.err);
  EXPECT_EQ(e["schema"], "1");
  EXPECT_EQ(e["error"]["exit_code"], 2);
  EXPECT_EQ(call({"bootstrap-gamma", "--gamma", "1.0", "--mu-b", "1", "--q", "1.5"}).code, 2);
  EXPECT_EQ(call({"specialfn", "--fn", "double-gamma", "--z", "0", "--gamma", "1.0"}).code, 2);  // pole
  EXPECT_EQ(call({"fzz", "--gamma", "1.4142135623730951", "--mu-b", "1", "--alpha", "2.1"}).code, 2);  // branch
  // usage
  EXPECT_EQ(call({"no-such-command"}).code, 2);
  EXPECT_EQ(call({"dozz"}).code, 2);
  // numerical failure: an unreachable inner tolerance exhausts the subdivision budget
  r = call({"lqg", "--gamma", "1.0", "--mu-b", "0.5", "--inner-tol", "1e-30"});
  EXPECT_EQ(r.code, 3) << r.err;
  e = nlohmann::json::parse(r.err);
  EXPECT_EQ(e["error"]["kind"], "NonConvergence");
  EXPECT_TRUE(e["error"]["diagnostics"].contains("subdivisions"));
}

TEST(Cli, CsvSamples) {
  const Outcome r = call({"bootstrap-gamma", "--gamma", "1.2", "--mu-b", "0.8", "--q", "0.4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream is(r.out);
  std::string line;
  int header = 0, rows = 0;
  bool saw_columns = false;
  while (std::getline(is, line)) {
    if (line.rfind("# ", 0) == 0) ++header;
    else if (line == "P,re,im") saw_columns = true;
    else ++rows;
  }
  EXPECT_GT(header, 3);
  EXPECT_TRUE(saw_columns);
  EXPECT_GT(rows, 10);
  EXPECT_EQ(call({"dozz", "--gamma", "1", "--alpha1", "1", "--alpha2", "1", "--alpha3", "1", "--format", "csv"}).code, 2);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "liouville_cli_test.json";
  const Outcome r = call({"reflection", "--gamma", "1.2", "--alpha", "2.2667,0.5", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  EXPECT_NEAR(j["result"]["modulus"].get<double>(), 1.0, 1e-3);
  std::filesystem::remove(path);
}

TEST(Cli, DeterministicAcrossThreadCounts) {
  const std::vector<std::string> args{"bootstrap-gamma", "--gamma", "1.1", "--mu-b", "0.7", "--q", "0.35", "--samples"};
  setenv("LIOUVILLE_THREADS", "1", 1);
  const Outcome a = call(args);
  setenv("LIOUVILLE_THREADS", "4", 1);
  const Outcome b = call(args);
  unsetenv("LIOUVILLE_THREADS");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
