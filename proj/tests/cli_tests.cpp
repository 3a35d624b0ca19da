// Runs the hgd binary and checks it against direct calls into the C API.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "hgdecomp.h"
#include "json.hpp"

#ifndef HGD_CLI_PATH
#error "HGD_CLI_PATH must name the hgd binary"
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hgd_cli_tests_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string fixture(const std::string& name) { return std::string(HGD_FIXTURE_DIR) + "/" + name; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// stderr goes to a scratch file so tests can inspect error messages.
Run run(const std::string& args) {
  const std::string cmd = std::string(HGD_CLI_PATH) + " " + args + " 2>" + (scratch() / "stderr.txt").string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_stderr() { return read_file(scratch() / "stderr.txt"); }

std::string take(char* s) {
  std::string out = s ? s : "";
  hgd_string_free(s);
  return out;
}

struct Handle {
  hgd_hypergraph* h = nullptr;
  explicit Handle(const std::string& text) { REQUIRE(hgd_hypergraph_parse(text.c_str(), &h) == HGD_OK); }
  ~Handle() { hgd_hypergraph_free(h); }
};

int exit_for(hgd_answer a) { return a == HGD_YES ? 0 : a == HGD_NO ? 1 : 2; }

std::string random_hypergraph_text(std::mt19937& rng, int n, int m) {
  std::string text;
  std::vector<bool> used(n, false);
  for (int e = 1; e <= m; ++e) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) members.push_back(v);
    if (members.empty()) members.push_back(static_cast<int>(rng() % n));
    if (e == m)
      for (int v = 0; v < n; ++v)
        if (!used[v] && std::find(members.begin(), members.end(), v) == members.end()) members.push_back(v);
    text += "e" + std::to_string(e) + "(";
    for (std::size_t j = 0; j < members.size(); ++j) {
      used[members[j]] = true;
      text += (j ? "," : "") + std::string("v") + std::to_string(members[j] + 1);
    }
    text += e == m ? ")." : "),\n";
  }
  return text;
}

}  // namespace

TEST_CASE("stats on the triangle") {
  Run r = run("stats " + fixture("tri.hg"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("rank      2") != std::string::npos);
  CHECK(r.out.find("degree    2") != std::string::npos);
  CHECK(r.out.find("iwidth    1") != std::string::npos);
  json j = json::parse(run("--json stats " + fixture("tri.hg")).out);
  CHECK(j["iwidth"] == 1);
  CHECK(j["rank"] == 2);
  CHECK(j["degree"] == 2);
}

TEST_CASE("oracle and check-ghd exit codes") {
  Run fhw = run("oracle --kind fhw " + fixture("tri.hg"));
  CHECK(fhw.exit_code == 0);
  CHECK(fhw.out == "3/2\n");
  CHECK(run("oracle --kind ghw " + fixture("tri.hg")).out == "2/1\n");
  Run no = run("check-ghd -k 1 " + fixture("tri.hg"));
  CHECK(no.exit_code == 1);
  CHECK(no.out.rfind("no\n", 0) == 0);
  CHECK(run("check-ghd -k 2 " + fixture("tri.hg")).exit_code == 0);
  CHECK(run("check-fhd -k 3/2 --mode rank " + fixture("tri.hg")).exit_code == 0);
  CHECK(run("check-fhd -k 4/3 --mode rank " + fixture("tri.hg")).exit_code == 1);
  Run opt = run("fhw-opt -K 2 --eps 1/4 " + fixture("tri.hg"));
  CHECK(opt.exit_code == 0);
  CHECK(opt.out.find("rounds") != std::string::npos);
  CHECK(run("--seed 7 stats " + fixture("tri.hg")).exit_code == 0);
}

TEST_CASE("errors exit with status 2") {
  Run missing = run("stats " + (scratch() / "nope.hg").string());
  CHECK(missing.exit_code == 2);
  CHECK(last_stderr().rfind("error: ", 0) == 0);
  fs::path bad = write_file("bad.hg", "e1().");
  CHECK(run("stats " + bad.string()).exit_code == 2);
  CHECK(last_stderr().find("empty edge") != std::string::npos);
  CHECK(run("check-ghd -k 1.5 " + fixture("tri.hg")).exit_code == 2);
  CHECK(run("bags --mode nope -k 1 " + fixture("tri.hg")).exit_code == 2);
  CHECK(run("frobnicate").exit_code != 0);
}

TEST_CASE("json round trips") {
  fs::path as_json = scratch() / "tri.json";
  CHECK(run("convert --to json " + fixture("tri.hg") + " -o " + as_json.string()).exit_code == 0);
  Run back = run("convert --to hg " + as_json.string());
  CHECK(back.exit_code == 0);
  CHECK(back.out == "e1(a,b),\ne2(b,c),\ne3(a,c).\n");
  CHECK(json::parse(run("--json stats " + as_json.string()).out) ==
        json::parse(run("--json stats " + fixture("tri.hg")).out));

  Run ghd = run("--json check-ghd -k 2 " + fixture("tri.hg"));
  json j = json::parse(ghd.out);
  CHECK(json::parse(j.dump()) == j);
  fs::path decomp = write_file("ghd.json", j["decomposition"].dump());
  CHECK(run("validate " + fixture("tri.hg") + " " + decomp.string() + " -k 2").exit_code == 0);
  CHECK(run("validate " + fixture("tri.hg") + " " + decomp.string() + " -k 1").exit_code == 1);
  CHECK(run("convert --compnf " + decomp.string() + " " + fixture("tri.hg")).exit_code == 0);
  CHECK(run("convert --normalize " + decomp.string() + " " + fixture("tri.hg")).exit_code == 0);

  fs::path fhd = scratch() / "fhd.json";
  CHECK(run("oracle --kind fhw " + fixture("tri.hg") + " -o " + fhd.string()).exit_code == 0);
  json conv = json::parse(run("--json convert --fhd-to-ghd " + fhd.string() + " " + fixture("tri.hg")).out);
  CHECK(conv["ghd_width"] == 2);
  CHECK(conv["fhd_width"] == "3/2");
}

TEST_CASE("bags and ctd") {
  fs::path bag_file = scratch() / "bags.json";
  CHECK(run("bags --mode fine-bip -k 2 " + fixture("tri.hg") + " -o " + bag_file.string()).exit_code == 0);
  CHECK(run("ctd --bags " + bag_file.string() + " " + fixture("tri.hg")).exit_code == 0);
  fs::path one = write_file("one_bag.json", R"([["a","b"]])");
  CHECK(run("ctd --bags " + one.string() + " " + fixture("tri.hg")).exit_code == 1);
}

TEST_CASE("reduce and lift") {
  fs::path hg_out = scratch() / "red.hg", ghd_out = scratch() / "red_ghd.json";
  Run r = run("--json reduce " + fixture("worked.cnf") + " --witness " + fixture("worked.json") + " -o " +
              hg_out.string() + " -o " + ghd_out.string());
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.out);
  CHECK(report["layout"]["edges"] == 158);
  CHECK(report["layout"]["vertices"] == 123);
  CHECK(report["layout"]["s_size"] == 63);
  CHECK(report["witness"]["valid"] == true);
  CHECK(report["witness"]["z"] == json{"y1", "yp2", "yp3"});
  CHECK(run("validate " + hg_out.string() + " " + ghd_out.string() + " -k 2").exit_code == 0);

  fs::path lifted = scratch() / "lifted.hg";
  CHECK(run("lift --shift 1 " + fixture("tri.hg") + " -o " + lifted.string()).exit_code == 0);
  CHECK(run("oracle --kind fhw " + lifted.string()).out == "5/2\n");
}

TEST_CASE("twenty spot checks against the C API") {
  std::mt19937 rng(2026);
  for (int check = 0; check < 20; ++check) {
    const std::string text = random_hypergraph_text(rng, 3 + check % 4, 2 + check % 5);
    const fs::path file = write_file("spot" + std::to_string(check) + ".hg", text);
    Handle h(text);
    char* out = nullptr;
    hgd_answer a = HGD_FAIL;
    std::string args;
    int expected_exit = 0;
    switch (check % 10) {
      case 0:
        args = "stats --cmax 3 --vc";
        REQUIRE(hgd_stats(h.h, 3, 1, &out) == HGD_OK);
        break;
      case 1:
        args = "cover --int";
        REQUIRE(hgd_cover(h.h, nullptr, 0, &out) == HGD_OK);
        break;
      case 2:
        args = "oracle --kind ghw";
        REQUIRE(hgd_oracle(h.h, "ghw", 10, &out) == HGD_OK);
        break;
      case 3:
        args = "oracle --kind fhw";
        REQUIRE(hgd_oracle(h.h, "fhw", 10, &out) == HGD_OK);
        break;
      case 4:
        args = "check-ghd -k 1";
        REQUIRE(hgd_check_ghd(h.h, 1, R"({"variant":"fine-bip","c":2,"i":-1})", &a, &out) == HGD_OK);
        expected_exit = exit_for(a);
        break;
      case 5:
        args = "check-fhd -k 3/2 --mode rank";
        REQUIRE(hgd_check_fhd(h.h, "3/2", R"({"mode":"rank"})", &a, &out) == HGD_OK);
        expected_exit = exit_for(a);
        break;
      case 6:
        args = "approx-fhd -k 2 --eps 1/3";
        REQUIRE(hgd_approx_fhd(h.h, "2", "1/3", R"({"c":2,"i":-1})", &a, &out) == HGD_OK);
        expected_exit = exit_for(a);
        break;
      case 7:
        args = "fhw-opt -K 3 --eps 1/4";
        REQUIRE(hgd_fhw_opt(h.h, "3", "1/4", R"({"c":2,"i":-1})", &a, &out) == HGD_OK);
        expected_exit = exit_for(a);
        break;
      case 8: {
        args = "lift --shift 1";
        hgd_hypergraph* lifted = nullptr;
        REQUIRE(hgd_lift(h.h, "1", &lifted) == HGD_OK);
        REQUIRE(hgd_hypergraph_to_json(lifted, &out) == HGD_OK);
        hgd_hypergraph_free(lifted);
        break;
      }
      default:
        args = "cover --frac";
        REQUIRE(hgd_cover(h.h, nullptr, 1, &out) == HGD_OK);
        break;
    }
    const json expected = json::parse(take(out));
    Run r = run("--json " + args + " " + file.string());
    INFO("spot check " << check << ": " << args);
    CHECK(r.exit_code == expected_exit);
    CHECK(json::parse(r.out) == expected);
  }
}

TEST_CASE("C API status codes") {
  hgd_hypergraph* h = nullptr;
  CHECK(hgd_hypergraph_parse("e1().", &h) == HGD_ERR_PARSE);
  CHECK(h == nullptr);
  CHECK(std::string(hgd_last_error()).find("empty edge") != std::string::npos);
  CHECK(hgd_hypergraph_parse(nullptr, &h) == HGD_ERR_INVALID_ARGUMENT);
  Handle tri("e1(a,b),e2(b,c),e3(c,a).");
  int nv = 0, ne = 0;
  CHECK(hgd_hypergraph_size(tri.h, &nv, &ne) == HGD_OK);
  CHECK(nv == 3);
  CHECK(ne == 3);
  char* out = nullptr;
  CHECK(hgd_oracle(tri.h, "tw", 10, &out) == HGD_ERR_INVALID_ARGUMENT);
  CHECK(hgd_oracle(tri.h, "ghw", 2, &out) == HGD_ERR_CAP);
  hgd_answer a;
  CHECK(hgd_check_fhd(tri.h, "x", nullptr, &a, &out) == HGD_ERR_INVALID_ARGUMENT);
  CHECK(hgd_check_ghd(tri.h, 2, nullptr, &a, &out) == HGD_OK);
  CHECK(a == HGD_YES);
  json j = json::parse(take(out));
  CHECK(j["answer"] == "yes");
  CHECK(j["certificate"] == "absolute");
  hgd_hypergraph* g = nullptr;
  CHECK(hgd_gadget(R"(["m"])", R"(["m"])", &g) == HGD_ERR_INVALID_ARGUMENT);
  CHECK(hgd_gadget("[]", "[]", &g) == HGD_OK);
  CHECK(hgd_hypergraph_size(g, &nv, &ne) == HGD_OK);
  CHECK(ne == 16);
  hgd_hypergraph_free(g);
}
