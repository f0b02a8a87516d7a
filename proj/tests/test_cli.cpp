#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run cli(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(RECTCOLOR_CLI) + " " + args + " 2>" + err.string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("construct hkc writes 12 vertices") {
  const Run r = cli("construct hkc --k 2 --c 2");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["n"] == 12);
  CHECK(j["edges"].size() == 14);
}

TEST_CASE("vdc prints exact fractions") {
  CHECK(cli("vdc --n 3").out == "3/4\n");
  CHECK(cli("vdc --n 0").out == "0/1\n");
  CHECK(cli("vdc --n 12345678901234567890").code == 0);
  CHECK(cli("vdc --n -1").code == 1);
}

TEST_CASE("construct, realize, verify") {
  REQUIRE(cli("construct hkc --k 2 --c 2 --out " + path("h22.json")).code == 0);
  const Run realize = cli("realize --input " + path("h22.json") + " --nested --out " + path("real.json") + " --svg " +
                          path("real.svg"));
  REQUIRE(realize.code == 0);
  CHECK(slurp(path("real.svg")).find("<svg") != std::string::npos);
  const Run ok = cli("verify --realization " + path("real.json") + " --hypergraph " + path("h22.json"));
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["ok"] == true);

  // Swapping two edges of the hypergraph breaks the correspondence.
  Json h = Json::parse(slurp(path("h22.json")));
  Json plain{{"n", h["n"]}, {"edges", h["edges"]}};
  std::swap(plain["edges"][0], plain["edges"][13]);
  write(path("wrong.json"), plain.dump());
  const Run bad = cli("verify --realization " + path("real.json") + " --hypergraph " + path("wrong.json"));
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.err)["error"] == "verification");
}

TEST_CASE("domain errors exit 1 with an error object") {
  write(path("junk.json"), "{not json");
  const Run r = cli("girth --input " + path("junk.json"));
  CHECK(r.code == 1);
  const Json e = Json::parse(r.err);
  CHECK(e["error"] == "domain");
  CHECK(e["message"].is_string());
  CHECK(cli("girth --input " + path("missing.json")).code == 1);
}

TEST_CASE("resource limits exit 2") {
  const Run r = cli("construct hkc --k 2 --c 3");
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["error"] == "resource_limit");
  CHECK(cli("--max-vertices 5 construct hkc --k 2 --c 2").code == 2);
}

TEST_CASE("unknown flags are rejected") {
  CHECK(cli("construct hkc --k 2 --c 2 --bogus").code != 0);
  CHECK(cli("nosuchcommand").code != 0);
}

TEST_CASE("analysis subcommands") {
  REQUIRE(cli("construct hkc --k 2 --c 2 --out " + path("a.json")).code == 0);
  const Run chi = cli("chromatic --input " + path("a.json"));
  REQUIRE(chi.code == 0);
  CHECK(Json::parse(chi.out)["chromatic_number"] == 3);

  REQUIRE(cli("construct gcg --c 2 --g 5 --out " + path("g5.json")).code == 0);
  const Run g = cli("girth --input " + path("g5.json"));
  REQUIRE(g.code == 0);
  CHECK(Json::parse(g.out)["girth"].get<int>() >= 5);

  write(path("col.json"), Json{{"c", 2}, {"colors", std::vector<int>(12, 1)}}.dump());
  const Run mono = cli("find-mono --input " + path("a.json") + " --coloring " + path("col.json"));
  REQUIRE(mono.code == 0);
  CHECK(Json::parse(mono.out)["vertices"].size() == 2);

  REQUIRE(cli("realize --input " + path("a.json") + " --out " + path("ar.json")).code == 0);
  const Run hasse = cli("hasse --input " + path("ar.json"));
  REQUIRE(hasse.code == 0);
  CHECK(Json::parse(hasse.out)["n"] == 12);
  const Run path2 = cli("mono-path --input " + path("ar.json") + " --coloring " + path("col.json") + " --k 2");
  REQUIRE(path2.code == 0);
  CHECK(Json::parse(path2.out)["path"].size() == 2);

  const Run tree = cli("construct tree --k 2 --depth 3");
  REQUIRE(tree.code == 0);
  CHECK(Json::parse(tree.out)["n"] == 7);
}

TEST_CASE("arithmetic subcommands") {
  const Run cap = cli("ap-capture --start 3 --difference 2 --length 3 --set 1,3,7,8,10,15");
  REQUIRE(cap.code == 0);
  CHECK(Json::parse(cap.out)["captured"] == Json({"3", "7"}));
  CHECK(cli("ap-capture --start 3 --difference 3 --set 1,3").code == 1);

  const Run emb = cli("embed --set -2,5,1");
  REQUIRE(emb.code == 0);
  CHECK(Json::parse(emb.out)["offset"] == "2");

  REQUIRE(cli("construct hkc --k 2 --c 2 --out " + path("b.json")).code == 0);
  REQUIRE(cli("realize --input " + path("b.json") + " --nested --out " + path("bn.json")).code == 0);
  for (const char* args : {"--mode pow2", "--mode general --difference-set primes", "--mode general --difference-set pow3"}) {
    const Run r = cli("to-aps --input " + path("bn.json") + " " + args);
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["aps"].size() == 14);
  }
  write(path("d.txt"), "2 5 41 3299 9000000001\n");
  CHECK(cli("to-aps --input " + path("bn.json") + " --mode general --difference-set file --difference-file " +
            path("d.txt")).code == 1);
  REQUIRE(cli("realize --input " + path("b.json") + " --out " + path("bp.json")).code == 0);
  CHECK(cli("to-aps --input " + path("bp.json") + " --mode pow2").code == 1);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const std::string args : {"construct gcg --c 2 --g 4 --provider random --seed 9",
                                 "construct hkc --k 2 --c 2"}) {
    const Run a = cli(args);
    const Run b = cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
  REQUIRE(cli("construct hkc --k 2 --c 2 --out " + path("c.json")).code == 0);
  for (const char* flags : {"", " --nested"}) {
    const Run a = cli("realize --input " + path("c.json") + flags + " --svg " + path("s1.svg"));
    const Run b = cli("realize --input " + path("c.json") + flags + " --svg " + path("s2.svg"));
    CHECK(a.out == b.out);
    CHECK(slurp(path("s1.svg")) == slurp(path("s2.svg")));
  }
}

TEST_CASE("selftest runs the acceptance suite") {
  const Run r = cli("selftest --skip-large");
  CHECK(r.code == 0);
  std::size_t lines = 0;
  for (auto pos = r.out.find("[PASS]"); pos != std::string::npos; pos = r.out.find("[PASS]", pos + 1)) ++lines;
  CHECK(lines == 10);
}

TEST_CASE("girth construction from a supplied auxiliary graph") {
  Json c7{{"n", 7}, {"edges", Json::array()}};
  for (int i = 0; i < 7; ++i) c7["edges"].push_back({std::min(i, (i + 1) % 7), std::max(i, (i + 1) % 7)});
  write(path("c7.json"), c7.dump());
  const Run r = cli("construct gcg --c 2 --g 7 --provider file --auxiliary " + path("c7.json"));
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["n"] == 21);
  // An even cycle is 2-colorable and is refused.
  Json c6{{"n", 6}, {"edges", Json::array()}};
  for (int i = 0; i < 6; ++i) c6["edges"].push_back({std::min(i, (i + 1) % 6), std::max(i, (i + 1) % 6)});
  write(path("c6.json"), c6.dump());
  CHECK(cli("construct gcg --c 2 --g 5 --provider file --auxiliary " + path("c6.json")).code == 1);
}
