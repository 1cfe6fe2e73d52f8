#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "permucoh/cli.hpp"
#include "permucoh/generator.hpp"

using namespace permucoh;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, GenText) {
  Result r = call({"gen", "-n", "2", "--format", "text"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, pretty_print(simplex_type(2)));
}

TEST(Cli, GenFormats) {
  EXPECT_EQ(call({"gen", "-n", "1", "--format", "sexp"}).out, to_sexp(simplex_type(1)) + "\n");
  auto j = nlohmann::json::parse(call({"gen", "-n", "2", "--format", "json", "--lengths"}).out);
  EXPECT_EQ(j["kind"], "pathp");
  EXPECT_EQ(j["length"], 1);
  EXPECT_NE(call({"gen", "-n", "2", "--format", "latex"}).out.find("lstlisting"), std::string::npos);
  EXPECT_NE(call({"gen", "-n", "2", "--lengths"}).out.find("PathP₁"), std::string::npos);
  EXPECT_EQ(call({"gen", "-n", "2", "--format", "sexp", "--lengths"}).code, kExitUsage);
  EXPECT_EQ(call({"gen", "-n", "2", "--format", "yaml"}).code, kExitUsage);
}

TEST(Cli, GenLimit) {
  Result r = call({"gen", "-n", "9"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("limit 8"), std::string::npos);
  {
    ScopedEnv env("PERMUCOH_MAX_N", "2");
    EXPECT_EQ(call({"gen", "-n", "3"}).code, kExitUsage);
    EXPECT_EQ(call({"gen", "-n", "2"}).code, kExitOk);
  }
  {
    ScopedEnv env("PERMUCOH_MAX_N", "lots");
    EXPECT_EQ(call({"gen", "-n", "1"}).code, kExitUsage);
  }
  EXPECT_EQ(call({"gen", "-n", "3", "--max-steps", "2"}).code, kExitUsage);
}

TEST(Cli, GenToFile) {
  auto path = std::filesystem::temp_directory_path() / "permucoh_gen_test.txt";
  Result r = call({"gen", "-n", "3", "--out", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), pretty_print(simplex_type(3)));
  std::filesystem::remove(path);
  EXPECT_EQ(call({"gen", "-n", "1", "--out", "/nonexistent/dir/x.txt"}).code, kExitViolation);
}

TEST(Cli, ParseRoundTrip) {
  for (int n = 1; n <= 5; ++n) {
    std::string s = call({"gen", "-n", std::to_string(n), "--format", "sexp"}).out;
    Result r = call({"parse"}, s);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, s);
  }
  EXPECT_EQ(call({"parse", "--format", "text"}, to_sexp(simplex_type(1))).out,
            "Path X (μ A B) (μ B A)\n");
  EXPECT_EQ(call({"parse"}, "(lam").code, kExitViolation);
}

TEST(Cli, Check) {
  Result r = call({"check", "-n", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("violations=0"), std::string::npos);
  EXPECT_NE(r.out.find("corner 00 A·B·C"), std::string::npos);
  auto j = nlohmann::json::parse(call({"check", "-n", "3", "--json"}).out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["violations"].size(), 0u);
  EXPECT_EQ(j["corners"].size(), 8u);
  EXPECT_EQ(call({"check", "-n", "0"}).code, kExitUsage);
}

TEST(Cli, Combinatorics) {
  EXPECT_EQ(call({"encode", "EBDAC"}).out, "0 1 2 1 3\n");
  EXPECT_EQ(call({"decode", "0", "1", "2", "1", "3"}).out, "EBDAC\n");
  EXPECT_EQ(call({"locate", "1", "1.7", "2", "0.5"}).out, "[AE][BCD]\n");
  EXPECT_EQ(call({"locate", "1/2", "1"}).out, "[ABC]\n");
  EXPECT_EQ(call({"encode", "ABA"}).code, kExitViolation);
  EXPECT_EQ(call({"decode", "0", "x"}).code, kExitViolation);
  EXPECT_EQ(call({"locate", "5"}).code, kExitViolation);
  Result f = call({"facets", "-n", "3", "--regions"});
  EXPECT_EQ(f.code, kExitOk);
  EXPECT_EQ(std::count(f.out.begin(), f.out.end(), '\n'), 13);
  EXPECT_NE(f.out.find("[AB][C]\t{0}×(0,1)\n"), std::string::npos);
  EXPECT_EQ(call({"facets", "-n", "11"}).code, kExitUsage);
}

TEST(Cli, VerifyPartition) {
  Result r = call({"verify-partition", "-n", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("facets=75"), std::string::npos);
  EXPECT_NE(r.out.find("violations=0"), std::string::npos);
  auto j = nlohmann::json::parse(call({"verify-partition", "-n", "3", "--denominator", "4", "--json"}).out);
  EXPECT_EQ(j["facets"], 13);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(call({"verify-partition", "-n", "9"}).code, kExitUsage);
}

TEST(Cli, Layout) {
  auto path = std::filesystem::temp_directory_path() / "permucoh_layout_test.svg";
  EXPECT_EQ(call({"layout", "-n", "3", "--out", path.string()}).code, kExitOk);
  std::string svg = slurp(path);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_EQ(call({"layout", "-n", "5"}).code, kExitUsage);
}

TEST(Cli, Usage) {
  EXPECT_EQ(call({}).code, kExitUsage);
  Result r = call({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("usage:"), std::string::npos);
  EXPECT_EQ(call({"gen"}).code, kExitUsage);
  EXPECT_EQ(call({"gen", "-n", "two"}).code, kExitUsage);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
}

TEST(Cli, Deterministic) {
  EXPECT_EQ(call({"gen", "-n", "5"}).out, call({"gen", "-n", "5"}).out);
  EXPECT_EQ(call({"layout", "-n", "4"}).out, call({"layout", "-n", "4"}).out);
}
