#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "binci/report.hpp"
#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using binci::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "binci-cli-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

double field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("interval: clopper-pearson text output") {
  const auto r = call({"interval", "--method", "cp", "--n", "10", "--y", "3", "--alpha", "0.05"});
  CHECK(r.code == 0);
  CHECK(r.out.find("method=cp n=10 y=3 alpha=0.05") != std::string::npos);
  CHECK(std::abs(field(r.out, "\nlower") - 0.06673951117773447) < 1e-11);
  CHECK(std::abs(field(r.out, "\nupper") - 0.6524528500599973) < 1e-11);
}

TEST_CASE("interval: stevens upper is 1 at y = n") {
  const auto r = call({"interval", "--method", "stevens", "--n", "10", "--y", "10", "--v", "0.9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("upper=1\n") != std::string::npos);
}

TEST_CASE("interval: korn from bits, json") {
  const auto r = call({"interval", "--method", "korn", "--bits", "11000", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = binci::Json::parse(r.out);
  CHECK(j["method"] == "korn");
  CHECK(j["inputs"]["bits"] == "11000");
  CHECK(j["inputs"]["w"] == "1/10");
  CHECK(j["inputs"]["w_tilde"] == "0/10");
  CHECK(j["inputs"]["n"] == 5);
  CHECK(j["inputs"]["y"] == 2);
}

TEST_CASE("interval: split and discrete") {
  const auto a = call({"interval", "--method", "split", "--n", "47", "--y1", "0", "--y2", "24"});
  const auto b = call({"interval", "--method", "split", "--n1", "23", "--n2", "24", "--y1", "23", "--y2", "0"});
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(field(a.out, "\nlower") == field(b.out, "\nlower"));
  CHECK(field(a.out, "\nupper") == field(b.out, "\nupper"));
  const auto d = call({"interval", "--method", "discrete", "--n", "10", "--y", "3", "--w", "2/4"});
  CHECK(d.code == 0);
  CHECK(d.out.find("w=2/4 w_tilde=1/4") != std::string::npos);
}

TEST_CASE("interval: conflicts and bad input are usage errors") {
  CHECK(call({"interval", "--method", "cp", "--n", "5", "--y", "3", "--bits", "11000"}).code == 2);
  CHECK(call({"interval", "--method", "cp", "--n", "6", "--bits", "11000"}).code == 2);
  CHECK(call({"interval", "--method", "cp", "--n", "10", "--y", "3", "--v", "0.5"}).code == 2);
  CHECK(call({"interval", "--method", "stevens", "--n", "10", "--y", "3"}).code == 2);
  CHECK(call({"interval", "--method", "stevens", "--n", "10", "--y", "3", "--v", "1.5"}).code == 2);
  CHECK(call({"interval", "--method", "cp", "--n", "10", "--y", "3", "--alpha", "1.5"}).code == 2);
  CHECK(call({"interval", "--method", "wald", "--n", "10", "--y", "3"}).code == 2);
  CHECK(call({"interval", "--method", "korn", "--n", "5", "--y", "2"}).code == 2);
  CHECK(call({"interval", "--method", "split", "--n", "10", "--y1", "1", "--y2", "2", "--y", "4"}).code == 2);
  CHECK(call({"interval", "--method", "split", "--n1", "2", "--n2", "4", "--y1", "1", "--y2", "2"}).code == 2);
  CHECK(call({"interval", "--method", "discrete", "--n", "10", "--y", "3", "--w", "1/1"}).code == 2);
  CHECK(call({"interval", "--nonsense"}).code == 2);
  CHECK(call({}).code == 2);
  const auto e = call({"interval", "--method", "cp", "--n", "10", "--y", "11"});
  CHECK(e.code == 2);
  CHECK(e.err.find("inputs:") != std::string::npos);
}

TEST_CASE("coverage: stevens columns are alpha/2") {
  const auto r = call({"coverage", "--method", "stevens", "--n", "10", "--grid", "uniform:19"});
  REQUIRE(r.code == 0);
  const auto t = binci::parse_csv(r.out);
  CHECK(t.comments.front().rfind("binci-coverage-csv v1", 0) == 0);
  CHECK(t.columns == std::vector<std::string>{"theta", "upper_noncoverage", "lower_noncoverage", "expected_length"});
  CHECK(t.rows.size() == 19);
  for (const auto& row : t.rows) {
    CHECK(std::abs(row[1] - 0.025) < 1e-10);
    CHECK(std::abs(row[2] - 0.025) < 1e-10);
  }
}

TEST_CASE("coverage: cp jumps at endpoint values and korn stays below alpha/2") {
  const auto r = call({"coverage", "--method", "cp", "--n", "10"});
  REQUIRE(r.code == 0);
  const auto t = binci::parse_csv(r.out);
  // Default grid brackets u_CP(9) within 1e-9 on both sides.
  const double u9 = binci::cp_interval(10, 9, 0.05).upper;
  double before = -1, after = -1;
  for (const auto& row : t.rows) {
    if (std::abs(row[0] - (u9 - 1e-9)) < 1e-12) before = row[1];
    if (std::abs(row[0] - (u9 + 1e-9)) < 1e-12) after = row[1];
  }
  REQUIRE(before >= 0);
  REQUIRE(after >= 0);
  CHECK(after - before > 0.01);

  const auto k = call({"coverage", "--method", "korn", "--n", "12", "--grid", "uniform:99"});
  REQUIRE(k.code == 0);
  for (const auto& row : binci::parse_csv(k.out).rows) {
    CHECK(row[1] <= 0.025 + 1e-14);
    CHECK(row[2] <= 0.025 + 1e-14);
  }
  CHECK(call({"coverage", "--method", "discrete", "--n", "10"}).code == 2);
  CHECK(call({"coverage", "--method", "cp", "--n", "10", "--levels", "4"}).code == 2);
  CHECK(call({"coverage", "--method", "cp", "--n", "10", "--grid", "uniform:0"}).code == 2);
  CHECK(call({"coverage", "--method", "cp", "--n", "10", "--format", "csv,json"}).code == 2);
}

TEST_CASE("coverage: files, svg and output directory variable") {
  const auto dir = scratch("coverage");
  const auto r = call({"coverage", "--method", "discrete", "--levels", "10", "--n", "8", "--grid", "uniform:49",
                       "--out", (dir / "d").string(), "--format", "csv,json,svg"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "d.csv"));
  CHECK(fs::exists(dir / "d.json"));
  const auto svg = slurp(dir / "d.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("alpha/2") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);

  setenv(binci::cli::kOutputDirEnv, dir.string().c_str(), 1);
  const auto e = call({"coverage", "--method", "cp", "--n", "5", "--grid", "uniform:9"});
  const auto f = call({"coverage", "--method", "cp", "--n", "5", "--grid", "uniform:9", "--out", "rel"});
  unsetenv(binci::cli::kOutputDirEnv);
  CHECK(e.code == 0);
  CHECK(fs::exists(dir / "coverage-cp-n5.csv"));
  CHECK(f.code == 0);
  CHECK(fs::exists(dir / "rel.csv"));
}

TEST_CASE("simulate: reproducible and within tolerance") {
  const std::vector<std::string> args{"simulate", "--source", "vdc", "--seed", "11", "--n", "10",
                                      "--theta", "0.3", "--m", "20000", "--format", "json"};
  const auto a = call(args);
  const auto b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = binci::Json::parse(a.out);
  CHECK(j["source"] == "vdc(base=2)");
  CHECK(std::abs(std::stod(j["upper_prop"].get<std::string>()) - 0.025) < 0.006);

  const auto p = call({"simulate", "--source", "perm", "--perm", "1 2 3 4 5 6 7 8", "--seed", "4",
                       "--m", "1000"});
  REQUIRE(p.code == 0);
  const auto t = binci::parse_csv(p.out);
  CHECK(t.columns.front() == "k");
  CHECK(t.rows.size() == 100);

  CHECK(call({"simulate", "--source", "vdc", "--n", "10"}).code == 2);
  CHECK(call({"simulate", "--source", "vdc", "--seed", "1", "--lambda", "2"}).code == 2);
  CHECK(call({"simulate", "--source", "perm", "--seed", "1", "--perm", "1 1 2"}).code == 2);
  CHECK(call({"simulate", "--source", "perm", "--seed", "1"}).code == 2);
  CHECK(call({"simulate", "--source", "vdc", "--seed", "1", "--m", "0"}).code == 2);
  const auto u = call({"simulate", "--source", "uniform", "--seed", "5", "--m", "10"});
  const auto v = call({"simulate", "--source", "uniform", "--seed", "5", "--aux-seed", "6", "--m", "10"});
  CHECK(u.out == v.out);
}

TEST_CASE("compare: summary blocks") {
  const auto r = call({"compare", "--methods", "cp,stevens,korn,split", "--n", "12", "--grid", "uniform:49"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# domination stevens within cp: yes") != std::string::npos);
  CHECK(r.out.find("# domination korn within cp: yes") != std::string::npos);
  CHECK(r.out.find("cardinality: korn statistic 2^12 = 4096 vs split(5,7)") != std::string::npos);
  const auto t = binci::parse_csv(r.out);
  CHECK(t.columns.size() == 13);
  CHECK(t.columns[1] == "cp_upper");

  const auto s = call({"compare", "--methods", "cp,split", "--n1", "23", "--n2", "24", "--n", "47",
                       "--grid", "uniform:9"});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("refinement thetahat(23,24): no witnesses=1") != std::string::npos);
  CHECK(s.out.find("(23,0)[y=23]=1/2 == (0,24)[y=24]=1/2 tie") != std::string::npos);

  CHECK(call({"compare", "--methods", "cp", "--n", "10"}).code == 2);
  CHECK(call({"compare", "--methods", "cp,cp", "--n", "10"}).code == 2);
}

TEST_CASE("repeated runs write identical files") {
  const auto dir = scratch("repeat");
  for (const std::string run_name : {"a", "b"}) {
    REQUIRE(call({"coverage", "--method", "korn", "--n", "8", "--grid", "uniform:29", "--out",
                  (dir / (run_name + "-cov")).string(), "--format", "csv,json,svg"}).code == 0);
    REQUIRE(call({"simulate", "--source", "uniform", "--seed", "3", "--m", "2000", "--out",
                  (dir / (run_name + "-sim")).string(), "--format", "csv,json,svg"}).code == 0);
    REQUIRE(call({"compare", "--methods", "cp,stevens,split", "--n", "10", "--grid", "uniform:19",
                  "--out", (dir / (run_name + "-cmp")).string(), "--format", "csv,json,svg"}).code == 0);
  }
  for (const std::string stem : {"cov", "sim", "cmp"}) {
    for (const std::string ext : {"csv", "json", "svg"}) {
      CHECK(slurp(dir / ("a-" + stem + "." + ext)) == slurp(dir / ("b-" + stem + "." + ext)));
      CHECK(!slurp(dir / ("a-" + stem + "." + ext)).empty());
    }
  }
}
