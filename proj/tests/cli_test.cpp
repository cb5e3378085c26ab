#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the built binary through the shell with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(VSEP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string quoted(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

const char* kHeader = "graph,seed,rule,n,m,cost_S,weight_A,weight_B,levels,time_ms,feasible";

std::filesystem::path p4_metis() {
  return vsep::test::write_temp("p4.graph", "4 3\n2\n1 3\n2 4\n3\n");
}

}  // namespace

TEST_CASE("solve prints the summary tokens") {
  const auto graph = p4_metis();
  const RunResult r = run_cli("solve --graph " + quoted(graph) + " --seed 1");
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(r.out.find("cost_S=1 |A|=1 |B|=2 levels=1") != std::string::npos);
  CHECK(r.out.find("improvement=") != std::string::npos);
}

TEST_CASE("solve emits a parseable JSON document with 1-indexed sets") {
  const auto graph = p4_metis();
  const RunResult r = run_cli("solve --graph " + quoted(graph) + " --json");
  CAPTURE(r.out);
  REQUIRE(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("n") == 4);
  CHECK(doc.at("m") == 3);
  CHECK(doc.at("cost_s") == 1.0);
  CHECK(doc.at("levels") == 1);
  CHECK(doc.at("a") == nlohmann::json::array({1}));
  CHECK(doc.at("b") == nlohmann::json::array({3, 4}));
  CHECK(doc.at("s") == nlohmann::json::array({2}));
  CHECK(doc.at("level_stats").size() == 1);
}

TEST_CASE("edge list files load through extension detection") {
  const auto graph = vsep::test::write_temp("p4.edgelist", "1 2\n2 3\n3 4\n");
  const RunResult r = run_cli("solve --graph " + quoted(graph));
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(r.out.find("cost_S=1") != std::string::npos);
}

TEST_CASE("unparseable input exits 1 with a line-numbered message") {
  const auto graph = vsep::test::write_temp("bad.graph", "x y\n");
  const RunResult r = run_cli("solve --graph " + quoted(graph));
  CAPTURE(r.out);
  CHECK(r.code == 1);
  CHECK(r.out.find("bad.graph:1") != std::string::npos);
}

TEST_CASE("a missing file exits 1") {
  const RunResult r = run_cli("solve --graph /nonexistent/zzz.graph");
  CHECK(r.code == 1);
}

TEST_CASE("an instance without a separator exits 3") {
  const auto graph =
      vsep::test::write_temp("k4.graph", "4 6\n2 3 4\n1 3 4\n1 2 4\n1 2 3\n");
  const RunResult r = run_cli("solve --graph " + quoted(graph));
  CAPTURE(r.out);
  CHECK(r.code == 3);
  CHECK(r.out.find("infeasible") != std::string::npos);
}

TEST_CASE("usage problems exit 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("solve").code == 2);
  CHECK(run_cli("frobnicate --graph x").code == 2);
  const auto graph = p4_metis();
  CHECK(run_cli("solve --graph " + quoted(graph) + " --rule bogus").code == 2);
  CHECK(run_cli("solve --graph " + quoted(graph) + " --balance 0").code == 2);
}

TEST_CASE("the oracle reports the exact separator") {
  const auto graph = p4_metis();
  const RunResult r = run_cli("oracle --graph " + quoted(graph));
  CAPTURE(r.out);
  CHECK(r.code == 0);
  CHECK(r.out.find("cost_S=1") != std::string::npos);
  CHECK(r.out.find("s=[2]") != std::string::npos);
  CHECK(r.out.find("a=[1]") != std::string::npos);
  CHECK(r.out.find("b=[3,4]") != std::string::npos);
}

TEST_CASE("check accepts a valid partition and rejects a crossing one") {
  const auto graph = p4_metis();
  const auto good =
      vsep::test::write_temp("p4_good.json", R"({"a":[1],"b":[3,4],"s":[2]})");
  const RunResult ok =
      run_cli("check --graph " + quoted(graph) + " --partition " + quoted(good));
  CAPTURE(ok.out);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid=true") != std::string::npos);
  CHECK(ok.out.find("cost_S=1") != std::string::npos);

  const auto bad =
      vsep::test::write_temp("p4_bad.json", R"({"a":[1,2],"b":[3,4],"s":[]})");
  const RunResult rej =
      run_cli("check --graph " + quoted(graph) + " --partition " + quoted(bad));
  CAPTURE(rej.out);
  CHECK(rej.code == 3);
  CHECK(rej.out.find("valid=false") != std::string::npos);
  CHECK(rej.out.find("violation:") != std::string::npos);
}

TEST_CASE("check rejects out-of-range vertices as bad input") {
  const auto graph = p4_metis();
  const auto part =
      vsep::test::write_temp("p4_oob.json", R"({"a":[9],"b":[3,4],"s":[2]})");
  const RunResult r =
      run_cli("check --graph " + quoted(graph) + " --partition " + quoted(part));
  CHECK(r.code == 1);
}

TEST_CASE("bench emits the exact CSV schema in deterministic order") {
  const auto p4 = p4_metis();
  const auto c6 = vsep::test::write_temp("c6.graph", "6 6\n2 6\n1 3\n2 4\n3 5\n4 6\n1 5\n");
  const auto list = vsep::test::write_temp(
      "list.txt", p4.filename().string() + "\n\n# comment\n" + c6.filename().string() + "\n");
  const RunResult r = run_cli("bench --graphs " + quoted(list) + " --seeds 1..3");
  CAPTURE(r.out);
  REQUIRE(r.code == 0);
  const auto all = lines_of(r.out);
  std::vector<std::string> rows;
  std::vector<std::string> summary;
  bool saw_header = false;
  for (const std::string& line : all) {
    if (line == kHeader) {
      saw_header = true;
    } else if (!line.empty() && line[0] == '#') {
      summary.push_back(line);
    } else if (!line.empty() && line.rfind("vsep [", 0) != 0) {
      rows.push_back(line);
    }
  }
  CHECK(saw_header);
  REQUIRE(rows.size() == 6);
  const char* expect_graph[6] = {"p4.graph", "p4.graph", "p4.graph",
                                 "c6.graph", "c6.graph", "c6.graph"};
  const char* expect_seed[6] = {"1", "2", "3", "1", "2", "3"};
  for (int i = 0; i < 6; ++i) {
    const auto f = split_csv(rows[i]);
    REQUIRE(f.size() == 11);
    CHECK(f[0] == expect_graph[i]);
    CHECK(f[1] == expect_seed[i]);
    CHECK(f[2] == "he");
    CHECK(f[10] == "true");
  }
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].find("graph=p4.graph") != std::string::npos);
  CHECK(summary[0].find("trials=3") != std::string::npos);
  CHECK(summary[0].find("avg=1 min=1 max=1") != std::string::npos);
}

TEST_CASE("bench rows are identical across worker counts") {
  const auto p4 = p4_metis();
  const auto list = vsep::test::write_temp("list_jobs.txt", p4.filename().string() + "\n");
  const auto csv1 = std::filesystem::temp_directory_path() / "vsep_tests" / "rows1.csv";
  const auto csv4 = std::filesystem::temp_directory_path() / "vsep_tests" / "rows4.csv";
  const RunResult a = run_cli("bench --graphs " + quoted(list) +
                              " --seeds 1..6 --jobs 1 --csv " + quoted(csv1));
  const RunResult b = run_cli("bench --graphs " + quoted(list) +
                              " --seeds 1..6 --jobs 4 --csv " + quoted(csv4));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out.find("# graph=") != std::string::npos);

  std::ifstream f1(csv1);
  std::ifstream f4(csv4);
  std::string l1;
  std::string l4;
  std::size_t count = 0;
  while (std::getline(f1, l1)) {
    REQUIRE(std::getline(f4, l4));
    auto a_fields = split_csv(l1);
    auto b_fields = split_csv(l4);
    REQUIRE(a_fields.size() == b_fields.size());
    for (std::size_t i = 0; i < a_fields.size(); ++i) {
      if (i == 9) continue;
      CHECK(a_fields[i] == b_fields[i]);
    }
    ++count;
  }
  CHECK(count == 7);
  CHECK(!std::getline(f4, l4));
}

TEST_CASE("reversed seed ranges are a usage error") {
  const auto p4 = p4_metis();
  const auto list = vsep::test::write_temp("list_rev.txt", p4.filename().string() + "\n");
  const RunResult r = run_cli("bench --graphs " + quoted(list) + " --seeds 9..3");
  CHECK(r.code == 2);
}

TEST_CASE("the log environment variable turns on diagnostics") {
  const auto graph = p4_metis();
  const std::string base = "solve --graph " + quoted(graph);
  const std::string cmd = std::string("VSEP_LOG=debug ") + VSEP_CLI_PATH + " " +
                          base + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) out += buf;
  pclose(pipe);
  CHECK(out.find("vsep [debug]") != std::string::npos);

  const RunResult quiet = run_cli(base);
  CHECK(quiet.out.find("vsep [debug]") == std::string::npos);
}
