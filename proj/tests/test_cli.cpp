// End-to-end tests that spawn the installed CLI binary (path supplied by the
// build through the CLI_UNDER_TEST environment variable).
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* cli_path() {
  const char* p = std::getenv("CLI_UNDER_TEST");
  REQUIRE_MESSAGE(p != nullptr, "CLI_UNDER_TEST must point at the binary");
  return p;
}

// `prefix` may carry env assignments (sh syntax); stderr folds into stdout.
RunResult run(const std::string& args, const std::string& prefix = "") {
  const std::string cmd =
      prefix + " \"" + cli_path() + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

int data_rows(const RunResult& r) {
  return static_cast<int>(lines_of(r.output).size()) - 1;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("cli: no arguments is a usage error") {
  CHECK(run("").exit_code == 2);
}

TEST_CASE("cli: version and help") {
  const RunResult v = run("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("1.0.0") != std::string::npos);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("sweep --help").exit_code == 0);
}

TEST_CASE("cli: state reports eigenvalues and both coherences") {
  const RunResult r = run("state");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "c1,c2,c3,eig1,eig2,eig3,eig4,l1,re");
  const auto f = fields_of(lines[1]);
  REQUIRE(f.size() == 9);
  CHECK(f[0] == "0.1");
  CHECK(f[1] == "0.4");
  CHECK(f[2] == "0.5");
  CHECK(std::stod(f[3]) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::stod(f[4]) == doctest::Approx(0.25));
  CHECK(std::stod(f[6]) == doctest::Approx(0.45));
  CHECK(f[7] == "0.4");
  CHECK(std::stod(f[8]) == doctest::Approx(0.271787054159));
}

TEST_CASE("cli: state rejects unphysical parameters") {
  const RunResult r = run("state --c1 0.9 --c2 0.9 --c3 0.9");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("(1 - c1 - c2 - c3)/4") != std::string::npos);
}

TEST_CASE("cli: sweep produces the documented csv") {
  const RunResult r =
      run("sweep --channel ad --p-count 3 --mu-list 0,1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 13);
  CHECK(lines[0] == "channel,measure,c1,c2,c3,mu,p,value");
  CHECK(lines[1] == "ad,l1,0.1,0.4,0.5,0,0,0.4");
  CHECK(lines[2] == "ad,re,0.1,0.4,0.5,0,0,0.271787054159");
}

TEST_CASE("cli: sweep usage errors") {
  CHECK(run("sweep").exit_code == 2);  // channel required
  CHECK(run("sweep --channel bogus").exit_code == 2);
  CHECK(run("sweep --channel ad --measure bogus").exit_code == 2);
  CHECK(run("sweep --channel ad --no-such-flag").exit_code == 2);
  CHECK(run("sweep --channel ad --p-count 1").exit_code == 2);
}

TEST_CASE("cli: sweep bytes do not depend on the worker count") {
  const std::string args = "sweep --channel dep --p-count 21";
  const RunResult one = run(args + " --workers 1");
  const RunResult four = run(args + " --workers 4");
  CHECK(one.exit_code == 0);
  CHECK(four.exit_code == 0);
  CHECK(one.output == four.output);
}

TEST_CASE("cli: time mode maps t to p through the damping rate") {
  const RunResult r = run(
      "sweep --channel ad --mu-list 0 --measure l1 "
      "--gamma 0.6931471805599453 --t-grid 0:2:3");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 4);
  // t = {0, 1, 2} with gamma = ln 2 gives p = {0, 0.5, 0.75}.
  CHECK(fields_of(lines[1])[6] == "0");
  CHECK(fields_of(lines[2])[6] == "0.5");
  CHECK(fields_of(lines[3])[6] == "0.75");

  CHECK(run("sweep --channel ad --gamma 0.5").exit_code == 2);
  CHECK(run("sweep --channel ad --t-grid 0:1:5").exit_code == 2);
  CHECK(run("sweep --channel ad --gamma 0.5 --t-grid 0:1:5 --p-count 7")
            .exit_code == 2);
  CHECK(run("sweep --channel ad --gamma 0.5 --t-grid 0:1").exit_code == 2);
}

TEST_CASE("cli: flags beat environment beats config file") {
  const std::string base = "sweep --channel ad --mu-list 0 --measure l1";
  const std::string cfg = write_temp("qcoh_cli_cfg.txt",
                                     "# grid settings\np-count = 4\n");

  // Config alone.
  RunResult r = run(base + " --config " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(data_rows(r) == 4);
  // Environment beats config.
  r = run(base + " --config " + cfg, "QCOH_P_COUNT=6");
  CHECK(r.exit_code == 0);
  CHECK(data_rows(r) == 6);
  // Flag beats both.
  r = run(base + " --config " + cfg + " --p-count 3", "QCOH_P_COUNT=6");
  CHECK(r.exit_code == 0);
  CHECK(data_rows(r) == 3);
  // Environment alone.
  r = run(base, "QCOH_P_COUNT=5");
  CHECK(r.exit_code == 0);
  CHECK(data_rows(r) == 5);
}

TEST_CASE("cli: unknown configuration is rejected") {
  CHECK(run("state", "QCOH_BOGUS=1").exit_code == 2);
  const std::string cfg =
      write_temp("qcoh_cli_badkey.txt", "no-such-key = 1\n");
  CHECK(run("state --config " + cfg).exit_code == 2);
  const std::string noeq = write_temp("qcoh_cli_noeq.txt", "p-count\n");
  CHECK(run("sweep --channel ad --config " + noeq).exit_code == 2);
  CHECK(run("state --config /tmp/does-not-exist-qcoh.cfg").exit_code == 3);
}

TEST_CASE("cli: output file handling") {
  const std::string out = "/tmp/qcoh_cli_sweep_out.csv";
  std::remove(out.c_str());
  const RunResult r = run("sweep --channel pd --p-count 3 --mu-list 0 --out " +
                          out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream f(out);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "channel,measure,c1,c2,c3,mu,p,value");

  CHECK(run("sweep --channel pd --out /no-such-dir/x.csv").exit_code == 3);
}

TEST_CASE("cli: verify agrees with the documented findings") {
  const RunResult r = run("verify --channel pd --strict");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("pd-l1") != std::string::npos);
  CHECK(r.output.find("MATCH") != std::string::npos);
  CHECK(r.output.find("MISMATCH") != std::string::npos);
  CHECK(r.output.find(
            "formula,channel,grid,max_abs_deviation,at_p,at_mu,"
            "divergent_points,verdict") != std::string::npos);

  // Literal per-use probabilities change the mismatch set: strict fails.
  const RunResult lit =
      run("verify --channel pd --strict --literal-text-probs");
  CHECK(lit.exit_code == 1);

  // Without --strict the same run reports but exits 0.
  const RunResult loose = run("verify --channel pd --literal-text-probs");
  CHECK(loose.exit_code == 0);
}

TEST_CASE("cli: verify writes the csv report to --out") {
  const std::string out = "/tmp/qcoh_cli_verify_out.csv";
  std::remove(out.c_str());
  const RunResult r = run("verify --channel ad --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("corrected") != std::string::npos);  // sign-fit block
  std::ifstream f(out);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header ==
        "formula,channel,grid,max_abs_deviation,at_p,at_mu,divergent_points,"
        "verdict");
  int rows = 0;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);  // five amplitude-damping formulas
}

TEST_CASE("cli: decohering power point query") {
  const RunResult r =
      run("power --channel pd --p 0.5 --mu 0 --measure l1");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "channel,power,measure,p,mu,value,formula,alpha,beta,theta,phi,"
        "evaluations");
  const auto f = fields_of(lines[1]);
  REQUIRE(f.size() == 12);
  CHECK(f[0] == "pd");
  CHECK(f[1] == "decohering");
  CHECK(f[2] == "l1");
  CHECK(std::stod(f[5]) == doctest::Approx(1.75).epsilon(1e-9));
  CHECK(std::stod(f[6]) == doctest::Approx(2.25).epsilon(1e-9));
  CHECK(std::stol(f[11]) >= 20736);
}

TEST_CASE("cli: cohering power point query") {
  const RunResult r =
      run("power --channel ad --power cohering --p 0.3 --mu 0.4");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "channel,power,measure,p,mu,value,argmax_index,evaluations");
  const auto f = fields_of(lines[1]);
  REQUIRE(f.size() == 8);
  CHECK(std::stod(f[5]) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f[6] == "0");
  CHECK(f[7] == "4");

  CHECK(run("power --channel ad --power cohering --bell-basis --p 0.3 "
            "--mu 0.4")
            .exit_code == 0);
}

TEST_CASE("cli: decohering power surface") {
  const RunResult r =
      run("power --channel dep --grid 3 --measure l1 --workers 2");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "channel,power,measure,mu,p,numeric,formula");
  // mu = 0, p = 1 row: numeric 20/9, printed formula happens to agree there.
  const auto f = fields_of(lines[3]);
  REQUIRE(f.size() == 7);
  CHECK(f[3] == "0");
  CHECK(f[4] == "1");
  CHECK(std::stod(f[5]) == doctest::Approx(20.0 / 9).epsilon(1e-9));
  CHECK(std::stod(f[6]) == doctest::Approx(20.0 / 9).epsilon(1e-9));
}

TEST_CASE("cli: power usage errors") {
  CHECK(run("power --channel pd --p 0.5 --mu 0 --measure both").exit_code ==
        2);
  CHECK(run("power --channel pd --p 0.5").exit_code == 2);          // no mu
  CHECK(run("power --channel pd --mu 0.5").exit_code == 2);         // no p
  CHECK(run("power --channel pd").exit_code == 2);
  CHECK(run("power --channel pd --power cohering --grid 3 --p 0 --mu 0")
            .exit_code == 2);
  CHECK(run("power --channel pd --grid 3 --p 0.5 --mu 0.5").exit_code == 2);
  CHECK(run("power --channel pd --p 0.5 --mu 0.5 --bell-basis").exit_code ==
        2);
  CHECK(run("power --channel pd --p 1.5 --mu 0.5").exit_code == 2);
}
