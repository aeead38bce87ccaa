// Runs the fblow binary as a subprocess.
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fblow/dossier.hpp"

namespace fs = std::filesystem;
using fblow::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + FBLOW_BIN + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("fblow_cli_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path path(const std::string& name) const { return path_ / name; }
  const fs::path& root() const { return path_; }

 private:
  fs::path path_;
};

const char* kD41 = R"({"name": "D4_1", "char": 2, "vars": ["x", "y", "z"], "relations": ["z^2+x^2*y+x*y^2+x*y*z"]})";
const char* kE60 = R"({"name": "E6_0", "char": 2, "vars": ["x", "y", "z"], "relations": ["z^2+x^3+y^2*z"]})";
const char* kPlane = R"({"name": "plane", "char": 2, "vars": ["x", "y"], "relations": []})";

}  // namespace

TEST_CASE("push on E6^0 gives two rank-two blocks") {
  TempDir d;
  auto r = run("push --ring " + d.file("e60.json", kE60) + " --e 1");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["rank"] == 4);
  REQUIRE(j["blocks"].size() == 2);
  for (const auto& b : j["blocks"]) CHECK(b["rank"] == 2);
  CHECK(j["blocks"][0]["signature"] == j["blocks"][1]["signature"]);
}

TEST_CASE("fblowup on D4^1 reports four rank-one blocks") {
  TempDir d;
  auto r = run("fblowup --ring " + d.file("d41.json", kD41) + " --e 1 --no-timings");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["pushforward"]["blocks"].size() == 4);
  for (const auto& b : j["pushforward"]["blocks"]) CHECK(b["rank"] == 1);
  CHECK(j["status"] == "complete");
  CHECK(!j.contains("timings"));
}

TEST_CASE("rees on the plane") {
  TempDir d;
  auto r = run("rees --ring " + d.file("plane.json", kPlane) + " --ideal x,y");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["J"].size() == 1);
  CHECK(j["J"][0] == "y*t0+x*t1");
}

TEST_CASE("villamayor and decompose") {
  TempDir d;
  auto ring = d.file("d41.json", kD41);
  auto v = run("villamayor --ring " + ring + " --e 1");
  REQUIRE(v.code == 0);
  CHECK(Json::parse(v.out)["rank"] == 4);

  auto m = d.file("m.json", R"j({"name": "B1+B2", "rows": [["z", "x+y+z", "0", "0"], ["x*y", "z", "0", "0"],
                                 ["0", "0", "z", "y"], ["0", "0", "x*(x+y+z)", "z"]]})j");
  auto r = run("decompose --ring " + ring + " --matrix " + m);
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["blocks"].size() == 2);
  CHECK(j["same_signature"] == Json::parse("[[true, false], [false, true]]"));
  auto mv = run("villamayor --ring " + ring + " --module " + m);
  CHECK(mv.code == 0);
}

TEST_CASE("catalog listing") {
  auto r = run("catalog");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["entries"].size() == 12);
  int duplicates = 0;
  for (const auto& e : j["entries"]) {
    if (e["duplicate_of"].is_null()) continue;
    ++duplicates;
    CHECK(e["name"] == "E6_1");
    CHECK(e["duplicate_of"] == "D4_1");
    CHECK(e["companions"].size() == 1);
  }
  CHECK(duplicates == 1);
}

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(run("").code == 1);
  CHECK(run("nonsense").code == 1);
  CHECK(run("push --e 1").code == 1);
  CHECK(run("push --ring " + d.file("x.json", kPlane) + " --e 0").code == 1);

  CHECK(run("push --ring " + d.file("bad.json", R"({"char": 2, "vars": ["x"], "relations": ["x^^2"]})")).code == 2);
  CHECK(run("push --ring " + d.file("unit.json", R"({"char": 2, "vars": ["x"], "relations": ["1"]})")).code == 2);
  CHECK(run("push --ring " + d.file("p4.json", R"({"char": 4, "vars": ["x"], "relations": []})")).code == 2);
  CHECK(run("push --ring " + d.file("trunc.json", "{\"char\": 2,")).code == 2);
  // an unreadable path is a usage error, not a parse error
  CHECK(run("push --ring " + d.path("missing.json").string()).code == 1);

  auto ring = d.file("d41.json", kD41);
  auto slow = run("fblowup --ring " + ring + " --e 2 --no-timings --out " + d.path("partial.json").string(),
                  "FBLOW_BUDGET_SECONDS=0.01");
  CHECK(slow.code == 3);
  REQUIRE(fs::exists(d.path("partial.json")));
  Json partial = fblow::read_json_file(d.path("partial.json").string());
  CHECK(partial["status"] == "budget_exceeded");
}

TEST_CASE("dossier round trip is byte-identical") {
  TempDir d;
  auto out = d.path("d.json").string();
  REQUIRE(run("fblowup --ring " + d.file("e60.json", kE60) + " --e 1 --out " + out).code == 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(fblow::dump(fblow::read_json_file(out)) == text);
}

TEST_CASE("output is deterministic without timings") {
  TempDir d;
  auto ring = d.file("d41.json", kD41);
  auto a = run("fblowup --ring " + ring + " --e 1 --no-timings --seed 7");
  auto b = run("fblowup --ring " + ring + " --e 1 --no-timings --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["seed"] == 7);
}

TEST_CASE("--out writes atomically") {
  TempDir d;
  auto target = d.path("out.json");
  std::ofstream(target) << "old";
  REQUIRE(run("push --ring " + d.file("plane.json", kPlane) + " --e 1 --out " + target.string()).code == 0);
  Json j = fblow::read_json_file(target.string());
  CHECK(j["rank"] == 4);
  // only the two inputs remain: no temporary siblings
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(d.root())) files += e.is_regular_file();
  CHECK(files == 2);
}
