#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "../tools/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ducci::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// The seconds column is wall-clock time; everything else must be stable.
std::string mask_seconds(const std::string& csv) {
  return std::regex_replace(csv, std::regex(",[0-9]+\\.[0-9]+\n"), ",S\n");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("single-tuple commands") {
  CHECK(run({"step", "--m", "4", "--tuple", "3,0,3"}).out == "3,3,2\n");
  CHECK(run({"lenper", "--m", "4", "--tuple", "3,0,3"}).out == "len=1 per=6\n");
  CHECK(run({"lenper", "--m", "4", "--tuple", "3,0,3", "--method", "order"}).out ==
        "len=1 per=6\n");
  CHECK(run({"basic", "--m", "4", "--n", "3"}).out == "L=2 P=6\n");
  CHECK(run({"orbit", "--m", "4", "--tuple", "3,0,3"}).out ==
        "3,0,3\n3,3,2\n2,1,1\n3,2,3\n1,1,2\n2,3,3\n1,2,1\n3,3,2\n");
  CHECK(run({"orbit", "--m", "4", "--tuple", "3,0,3", "--k", "2"}).out == "3,0,3\n3,3,2\n");
  CHECK(run({"preds", "--m", "4", "--tuple", "3,0,3"}).out ==
        "{\"target\":[3,0,3],\"count\":2,\"solutions\":[[1,2,2],[3,0,0]]}\n");
  CHECK(run({"kernel", "--m", "4", "--n", "3"}).out == "kernel_size=16\n");
  CHECK(run({"kernel", "--m", "4", "--tuple", "3,3,2"}).out == "predicate=true oracle=true\n");
  CHECK(run({"kernel", "--m", "4", "--tuple", "3,0,3"}).out == "predicate=false oracle=false\n");
}

TEST_CASE("json output is one object per line") {
  const Result r = run({"lenper", "--m", "4", "--tuple", "3,0,3", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["len"] == 1);
  CHECK(j["per"] == 6);
  const Result b = run({"basic", "--m", "4", "--n", "3", "--format", "json"});
  CHECK(b.out == "{\"m\":4,\"n\":3,\"L\":2,\"P\":6}\n");
}

TEST_CASE("coefficients") {
  CHECK(run({"coeffs", "--m", "4", "--n", "3", "--row", "3"}).out ==
        "r,s,value,mode\n3,1,2,reduced\n3,2,3,reduced\n3,3,3,reduced\n");
  CHECK(run({"coeffs", "--m", "4", "--n", "3", "--row", "10", "--exact"}).out ==
        "r,s,value,mode\n10,1,341,exact\n10,2,341,exact\n10,3,342,exact\n");
  const Result range = run({"coeffs", "--m", "7", "--n", "4", "--row", "2:5"});
  CHECK(range.code == 0);
  CHECK(std::count(range.out.begin(), range.out.end(), '\n') == 1 + 4 * 4);
}

TEST_CASE("verify sweeps") {
  const Result r = run({"verify", "length", "--m", "2:24", "--n", "1:9", "--odd-n"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "m,l,m1,n,predicted_L,measured_L,kernel_formula,kernel_measured,mismatches,"
        "budget_exceeded,seconds");
  int rows = 0;
  for (std::string line; std::getline(in, line); ++rows) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
    REQUIRE(f.size() == 11);
    CHECK(f[4] == f[5]);
    CHECK(f[4] == f[1]);
    CHECK(f[8] == "0");
  }
  CHECK(rows == 23 * 5);

  const Result k = run({"verify", "kernel", "--m", "4", "--n", "3"});
  CHECK(k.code == 0);
  CHECK(mask_seconds(k.out) ==
        "m,l,m1,n,predicted_L,measured_L,kernel_formula,kernel_measured,mismatches,"
        "budget_exceeded,seconds\n4,2,1,3,2,,16,16,0,false,S\n");

  // Odd m has nothing to check for the odd-sum lemma.
  const Result o = run({"verify", "oddsum", "--m", "3:4", "--n", "3"});
  CHECK(o.code == 0);
  CHECK(std::count(o.out.begin(), o.out.end(), '\n') == 2);

  CHECK(run({"verify", "preds", "--m", "2:6", "--n", "1:4"}).code == 0);
  CHECK(run({"verify", "coeffs", "--m", "4,6", "--n", "3"}).code == 0);
}

TEST_CASE("determinism") {
  const std::vector<std::string> args = {"verify", "kernel", "--m",     "12", "--n",
                                         "5",      "--budget", "1000", "--seed", "9"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.code == 0);
  CHECK(mask_seconds(a.out) == mask_seconds(b.out));
  CHECK(a.out.find(",true,") != std::string::npos);  // sampled
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"step", "--m", "4", "--tuple", "3,4,3"}).code == 2);
  CHECK(run({"step", "--m", "4", "--tuple", "3,x"}).code == 2);
  CHECK(run({"step", "--m", "1", "--tuple", "0"}).code == 2);
  CHECK(run({"step", "--m", "4"}).code == 2);
  CHECK(run({"kernel", "--m", "4", "--tuple", "1,1,0,0"}).code == 2);
  CHECK(run({"verify", "length", "--m", "4", "--n", "2:3"}).code == 2);
  CHECK(run({"verify", "bogus", "--m", "4", "--n", "3"}).code == 2);
  CHECK(run({"verify", "length", "--m", "4", "--n", "2", "--odd-n"}).code == 2);
  CHECK(run({"basic", "--m", "4", "--n", "3", "--format", "dot"}).code == 2);
  CHECK(run({"coeffs", "--m", "4", "--n", "3"}).code == 2);
  CHECK(run({"lenper", "--m", "4", "--tuple", "1,2,3", "--method", "guess"}).code == 2);
  CHECK(run({"graph", "--m", "4", "--n", "11", "--budget", "10"}).code == 2);

  const Result bad = run({"step", "--m", "4", "--tuple", "3,4,3"});
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
  CHECK(bad.out.empty());

  CHECK(run({"--help"}).code == 0);
  CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("graph output file") {
  const auto path = std::filesystem::temp_directory_path() / "ducci_cli_graph_test.dot";
  const Result r =
      run({"graph", "--m", "4", "--component", "0,0,1", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream got;
  got << in.rdbuf();
  std::ifstream gold(DUCCI_GOLDEN_DIR "/z4_n3_component_001.dot", std::ios::binary);
  std::ostringstream want;
  want << gold.rdbuf();
  CHECK(got.str() == want.str());
  std::filesystem::remove(path);

  CHECK(run({"graph", "--m", "4", "--component", "0,0,1", "--out", "/nonexistent/dir/x.dot"})
            .code == 2);
  const Result full = run({"graph", "--m", "2", "--n", "2"});
  CHECK(full.out ==
        "digraph ducci {\n  \"(0,0)\" [shape=doublecircle];\n  \"(0,1)\";\n  \"(1,0)\";\n"
        "  \"(1,1)\";\n  \"(0,0)\" -> \"(0,0)\";\n  \"(0,1)\" -> \"(1,1)\";\n"
        "  \"(1,0)\" -> \"(1,1)\";\n  \"(1,1)\" -> \"(0,0)\";\n}\n");
}

TEST_CASE("range parsing") {
  using ducci::cli::parse_range;
  CHECK(parse_range("3") == std::vector<unsigned long long>{3});
  CHECK(parse_range("2:5") == std::vector<unsigned long long>{2, 3, 4, 5});
  CHECK(parse_range("2,4:5,9") == std::vector<unsigned long long>{2, 4, 5, 9});
  CHECK_THROWS(parse_range(""));
  CHECK_THROWS(parse_range("5:2"));
  CHECK_THROWS(parse_range("a"));
  CHECK_THROWS(parse_range("1,"));
}

}  // TEST_SUITE
