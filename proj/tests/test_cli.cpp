#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FATPT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe.get())) r.out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args, int expected_code = 0) {
  const auto r = run("--no-store --format json " + args);
  REQUIRE(r.code == expected_code);
  return nlohmann::json::parse(r.out);
}

fs::path temp_store(const std::string& name) {
  auto p = fs::temp_directory_path() / ("fatpt-cli-" + name + ".ndjson");
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("expdim") {
  CHECK(run_json("expdim 13 4x10")["v"] == 4);
  const auto zero = run_json("expdim 0");
  CHECK(zero["v"] == 0);
  CHECK(zero["chi"] == 1);
  CHECK(run_json("expdim 38 12x10")["v"] == -1);
  CHECK(run_json("expdim -- 1 -1x12")["chi"] == 3);
  const auto table = run("--no-store expdim 13 4x10");
  CHECK(table.code == 0);
  CHECK(table.out.find("v           4") != std::string::npos);
}

TEST_CASE("certify") {
  const auto q = run_json("certify 4 1x10 --placement cubic");
  CHECK(q["verdict"] == "nonspecial-certified");
  CHECK(q["h0"] == 5);
  const auto free = run_json("certify 3 0x10");
  CHECK(free["verdict"] == "nonspecial-certified");
  CHECK(free["h0"] == 10);
  const auto ex4 = run_json("certify 57 18x10");
  CHECK(ex4["verdict"] == "nonspecial-certified");
  CHECK(ex4["h0"] == 1);
  CHECK(ex4["evidence"][0]["conditions"] == 1710);
  CHECK(ex4["evidence"][0]["monomials"] == 1711);

  const auto ex5 = run_json("certify --placement cubic -- 3 -2x10");
  CHECK(ex5["verdict"] == "special-exact");
  CHECK(ex5["h1"] == 10);

  const auto conic = run_json("certify 4 2x5", 2);
  CHECK(conic["verdict"] == "special-suspected");
}

TEST_CASE("certify reads per-point tags from JSON") {
  const auto path = fs::temp_directory_path() / "fatpt-cli-input.json";
  {
    std::ofstream(path) << R"({"d": 3, "mults": [1,1,1,1,1,1,1,1,1,1], "tags": ["on-cubic","on-cubic","on-cubic",
      "on-cubic","on-cubic","on-cubic","on-cubic","on-cubic","on-cubic","generic"]})";
  }
  const auto c = run_json("certify --input " + path.string());
  CHECK(c["system"]["tags"][9] == "generic");
  CHECK(c["h0"] == 0);
  fs::remove(path);
}

TEST_CASE("reduce") {
  const auto r2 = run_json("reduce 28 12 8");
  CHECK(r2["mu"] == 9);
  CHECK(r2["integral"] == true);
  CHECK(r2["reduced"]["d"] == 1);
  CHECK(r2["reduced"]["mults"] == nlohmann::json(std::vector<int>(12, -1)));
  CHECK(r2["reduced"]["tags"][0] == "on-cubic");

  const auto r0 = run_json("reduce 13 10 4 --mu 0");
  CHECK(r0["reduced"]["d"] == 13);
  CHECK(r0["chi_S"] == 0);

  const auto r5 = run_json("reduce 174 10 55");
  CHECK(r5["mu"] == 57);
  CHECK(r5["reduced"]["d"] == 3);
  CHECK(r5["reduced_certificate"]["verdict"] == "special-exact");
}

TEST_CASE("bound") {
  CHECK(run_json("bound 174 10 55")["h0_bound"] == 10);
  CHECK(run_json("bound 57 10 18")["h0_bound"] == 1);
  CHECK(run_json("bound 13 10 4")["h0_bound"] == 5);
}

TEST_CASE("sweep reproduces the worked examples and resumes") {
  const auto store = temp_store("sweep");
  const std::string args = "--store " + store.string() + " --format csv sweep 57 10 18";
  const auto a = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == "d,n,m,v,mu,integral,verdict,h0\n57,10,18,0,19,yes,nonspecial-certified,1\n");
  const auto b = run(args);
  CHECK(b.out == a.out);
  const auto empty = run("--no-store --format csv sweep 5:4 10 1");
  CHECK(empty.out == "d,n,m,v,mu,integral,verdict,h0\n");
  fs::remove(store);
}

TEST_CASE("certify persists and reuses certificates") {
  const auto store = temp_store("certify");
  const std::string args = "--store " + store.string() + " --format json certify 9 3x10";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::ifstream in(store);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1);
  fs::remove(store);
}

TEST_CASE("exit codes") {
  CHECK(run("--no-store").code == 1);
  CHECK(run("--no-store reduce 13 9 4").code == 1);
  CHECK(run("--no-store expdim 13 4y10").code == 1);
  CHECK(run("--no-store --prime 100 certify 4 1x3").code == 1);
  CHECK(run("--no-store --prime 5 certify 7 1x3").code == 1);
  CHECK(run("--no-store --format xml expdim 1").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("identical invocations give byte-identical output") {
  const auto a = run("--no-store --seed 9 --format json certify 10 3x10 --placement cubic");
  const auto b = run("--no-store --seed 9 --threads 1 --format json certify 10 3x10 --placement cubic");
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}
