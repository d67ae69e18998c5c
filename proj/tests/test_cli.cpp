#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(STRATA_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  for (size_t k; (k = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), k);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("strata_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("cli group queries") {
  CHECK(cli("group mult acb").out == "[2,1,2]\n");
  CHECK(cli("group rbullet 3").out == "4\n");
  CHECK(cli("group inv aba").out == "3\n");
  const Run q = cli("group qword abab");
  CHECK(q.code == 0);
  CHECK(nlohmann::json::parse(q.out)["terms"].size() == 1);
  CHECK(nlohmann::json::parse(cli("group words aba").out).size() == 2);
  CHECK(cli("group frobnicate a").code == 1);
}

TEST_CASE("cli section") {
  const Run r = cli("section aba");
  CHECK(r.code == 0);
  CHECK(r.out.find("m_1 = 1/2*t^2 + x2\n") != std::string::npos);
  CHECK(r.out.find("d_2 = x1^2 + 2*x2\n") != std::string::npos);
  CHECK(cli("section e").code == 1);
  CHECK(cli("section aca").code == 1);
  const Run g = cli("section acb --family betaprime --u 2/5 --grid 9x9");
  CHECK(g.code == 0);
  CHECK(g.out.find("acbac") != std::string::npos);
  CHECK(g.out.find("cabca") == std::string::npos);
  CHECK(cli("section acb --family betaprime --grid 3x3").code == 1);
}

TEST_CASE("cli itineraries") {
  const fs::path d = scratch_dir();
  const Run h = cli("iti " + write_file(d / "h.json", R"({"n": 2, "h": 3.141592653589793})"));
  REQUIRE(h.code == 0);
  const auto j = nlohmann::json::parse(h.out);
  CHECK(j["itinerary"] == "()");
  CHECK(j["endpoint_quat"]["terms"][0]["num"] == -1);
  const Run s = cli("iti " + write_file(d / "s.json", R"({"section": "aba", "x": ["1/3", "-1/18"]})") + " --csv " +
                    (d / "m.csv").string());
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["itinerary"] == "[ba]a");
  CHECK(nlohmann::json::parse(s.out)["exact"]["itinerary"] == "[ba]a");
  CHECK(fs::file_size(d / "m.csv") > 0);
  CHECK(cli("iti " + write_file(d / "bad.json", R"({"n": 2,)")).code == 1);
  CHECK(cli("iti " + write_file(d / "bad2.json", R"({"n": 2})")).code == 1);
  CHECK(cli("iti " + (d / "missing.json").string()).code == 1);
  fs::remove_all(d);
}

TEST_CASE("cli poset") {
  const Run yes = cli("poset aa '[aba]'");
  REQUIRE(yes.code == 0);
  CHECK(nlohmann::json::parse(yes.out)["verdict"] == "yes");
  CHECK(nlohmann::json::parse(yes.out)["w1"] == "[aba]");
  const Run no = cli("poset '()' '[aba]'");
  CHECK(nlohmann::json::parse(no.out)["verdict"] == "no");
  CHECK(nlohmann::json::parse(no.out)["evidence"][0]["kind"] == "isolated-empty-word");
  const fs::path d = scratch_dir();
  const Run h = cli("poset --below '[aba]' --hasse " + (d / "h.dot").string());
  REQUIRE(h.code == 0);
  CHECK(nlohmann::json::parse(h.out)["words"].size() == 9);
  std::ifstream in(d / "h.dot");
  const std::string dot((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(dot.rfind("digraph hasse {", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 12);
  CHECK(cli("poset aa").code == 1);
  CHECK(cli("poset a '[aa]'").code == 1);
  fs::remove_all(d);
}

TEST_CASE("cli configuration") {
  const Run dump = cli("--dump-config");
  CHECK(dump.code == 0);
  CHECK(dump.out.find("seed=1\n") != std::string::npos);
  CHECK(dump.out.find("ode_tol=1e-10\n") != std::string::npos);
  const fs::path d = scratch_dir();
  const std::string cfg = write_file(d / "run.cfg", "# comment\nseed = 9\ncluster_tol=1e-6\n");
  const Run c = cli("--config " + cfg + " --dump-config");
  CHECK(c.out.find("seed=9\n") != std::string::npos);
  CHECK(c.out.find("cluster_tol=1e-06\n") != std::string::npos);
  CHECK(cli("--config " + write_file(d / "bad.cfg", "nonsense=1\n") + " --dump-config").code == 1);
  CHECK(cli("--set seed=x --dump-config").code == 1);
  CHECK(cli("--no-such-flag").code == 1);
  fs::remove_all(d);
}

TEST_CASE("cli runs are deterministic under a fixed seed") {
  const Run a = cli("--seed 5 synth 'a[ba]'"), b = cli("--seed 5 synth 'a[ba]'");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["itinerary"] == "a[ba]");
}
