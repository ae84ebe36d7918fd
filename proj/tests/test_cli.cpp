// End-to-end checks of the installed command-line surface: exit codes,
// config-file handling, and the documented output formats.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(KRON_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run_cli("reproduce fig2-left").exit_code == 0);
  CHECK(run_cli("reproduce bogus-id").exit_code == 2);       // usage error
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("gaps --n 5 --alpha 1/2,oops").exit_code == 2);
  CHECK(run_cli("verify-bounds --d 1 --direction arc --trials 2").exit_code == 2);
}

TEST_CASE("cli gaps output") {
  const CliResult res = run_cli("gaps --alpha 19/50,33/250 --n 9");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("\"g\": 5") != std::string::npos);
  CHECK(res.output.find("74/15625") != std::string::npos);
}

TEST_CASE("cli scan csv") {
  const CliResult res =
      run_cli("scan --alpha 19/50,33/250 --n-max 10 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.rfind("N,g,max_g,bound,at_bound\n", 0) == 0);
  CHECK(res.output.find("9,5,5,5,1") != std::string::npos);
}

TEST_CASE("cli config file with flag override") {
  const std::string path = "/tmp/kron_cli_config.ini";
  {
    std::ofstream out(path);
    out << "[scan]\n";
    out << "alpha=\"19/50,33/250\"\n";  // quotes keep the commas out of INI array parsing
    out << "n-max=5\n";
    out << "format=csv\n";
  }
  const CliResult from_file = run_cli("--config " + path + " scan");
  REQUIRE(from_file.exit_code == 0);
  std::istringstream is(from_file.output);
  std::string line;
  int lines = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 6);  // header + five records

  // command-line flag wins over the file value
  const CliResult overridden = run_cli("--config " + path + " scan --n-max 9");
  std::istringstream is2(overridden.output);
  lines = 0;
  while (std::getline(is2, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 10);
}

TEST_CASE("cli lattice-f matches the gaps report") {
  const std::string path = "/tmp/kron_cli_affine.txt";
  {
    std::ofstream out(path);
    out << "2/19 19/50 33/250\n0 1 0\n0 0 1\n";
  }
  const CliResult res = run_cli("lattice-f --lattice " + path + " --t 0.1 --mode exact");
  REQUIRE(res.exit_code == 0);
  CHECK(res.output.find("\"len2\": \"74/15625\"") != std::string::npos);
}
