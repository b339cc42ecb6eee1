#include "doctest.h"

#include "kstab/number.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KSTAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

json run_json(const std::string& args, int expected_status = 0) {
  const Run r = run(args + " --format json");
  CHECK(r.status == expected_status);
  return json::parse(r.out);
}

std::string last_line(const std::string& text) {
  std::string t = text;
  while (!t.empty() && t.back() == '\n') {
    t.pop_back();
  }
  return t.substr(t.rfind('\n') + 1);
}

}  // namespace

TEST_CASE("witness table ends with the value 1") {
  const Run r = run("witness");
  CHECK(r.status == 0);
  CHECK(last_line(r.out) == "witness value: 1");

  const json j = run_json("witness");
  CHECK(j["value"] == "1");
  CHECK(j["ok"] == true);
}

TEST_CASE("defect of n^2 at (3, 4, 5)") {
  const json j = run_json("defect --fn quadratic:1,0 --carrier Z --triple 3,4,5");
  CHECK(j["value"] == "0");
  CHECK(j["arithmetic"] == "exact");
  CHECK(j.contains("seed"));
  CHECK(j.contains("tol"));

  const json eta = run_json("defect --carrier 'F[ab]' --fn eta --triple a,a,bb");
  CHECK(eta["value"] == "1");
}

TEST_CASE("defect bound assertion sets the exit code") {
  CHECK(run("defect --carrier 'F[ab]' --fn eta --triple a,a,bb --c 5").status == 0);
  CHECK(run("defect --carrier 'F[ab]' --fn eta --triple a,a,bb --c 1/2").status == 1);
}

TEST_CASE("eta subcommand") {
  const json t = run_json("eta --word bbaa --tilde");
  CHECK(t["tilde"] == "1");
  CHECK(t["crossing"] == "1");
  CHECK(t["count"] == "0");

  const json p = run_json("eta --word bbaa --power 2");
  CHECK(p.dump().find("\"3\"") != std::string::npos);
}

TEST_CASE("limits and fits") {
  const json hat = run_json("limit --fn quadratic:1,1 --point 2 --mode hat");
  CHECK(hat["value"] == "4");

  const json tilde = run_json("limit --carrier 'F[ab]' --fn eta --point bbaa --mode tilde --path iterative");
  CHECK(tilde["converged"] == true);
  REQUIRE(tilde["value"].is_string());
  const kstab::Rational v = kstab::parse_rational(tilde["value"].get<std::string>());
  CHECK(abs(v - 1) <= kstab::Rational(1, 1000000000));

  const json fit = run_json("fit --carrier 'Z^2' --dim 2 --fn quadratic:1,2,2,3,5,-1");
  CHECK(fit.dump().find("\"5\"") != std::string::npos);
  CHECK(fit["ok"] == true);
}

TEST_CASE("parse errors exit with status 2") {
  CHECK(run("frobnicate").status == 2);
  CHECK(run("defect --fn quadratic:1,0 --triple 3,x,5").status == 2);
  CHECK(run("defect --carrier Q --fn quadratic:1,0 --triple 3,4,5").status == 2);
  CHECK(run("limit --point 3").status == 2);
}

TEST_CASE("JSON output is byte-identical across runs") {
  const std::string corpus = "test_cli_corpus.txt";
  {
    std::ofstream out(corpus);
    for (int n = -20; n <= 20; ++n) {
      out << n << "\n";
    }
  }
  const std::string args = "decompose --fn 'quadratic:1,1 + 1/2*noise:5,1' --corpus " + corpus + " --format json";
  const Run a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j["seed"].is_number());
  std::remove(corpus.c_str());

  const std::string sweep = "defect --fn 'quadratic:1,0 + 1/10*noise:3,1' --random 200 --seed 9 --format json";
  CHECK(run(sweep).out == run(sweep).out);
}
