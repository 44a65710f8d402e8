#include "support/golden.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

namespace {

struct Outcome
{
  int exit_code;
  std::string out;
};

Outcome run_cli(const std::string &args, const std::string &input = {})
{
  auto dir = std::filesystem::temp_directory_path();
  auto out_path = dir / ("eqsat_cli_out_" + std::to_string(::getpid()));
  std::string cmd = std::string(EQSAT_CLI) + " " + args + " > " + out_path.string() + " 2>&1";
  if (!input.empty()) {
    auto in_path = dir / ("eqsat_cli_in_" + std::to_string(::getpid()));
    std::ofstream(in_path) << input;
    cmd += " < " + in_path.string();
  } else {
    cmd += " < /dev/null";
  }
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, eqsat::testing::slurp(out_path)};
}

std::string golden(const std::string &name) { return std::string(EQSAT_GOLDEN_DIR) + "/" + name; }

} // namespace

TEST_CASE("exit codes")
{
  CHECK(run_cli("run " + golden("eqsat_basic.egg")).exit_code == 0);
  CHECK(run_cli("run " + golden("check_fail.egg")).exit_code == 1);
  CHECK(run_cli("run " + golden("parse_error.egg")).exit_code == 2);
  CHECK(run_cli("run " + golden("type_error.egg")).exit_code == 2);
  CHECK(run_cli("run " + golden("overflow.egg")).exit_code == 3);
  CHECK(run_cli("run --max-nodes 200 " + golden("budget.egg")).exit_code == 3);
  CHECK(run_cli("run /nonexistent/file.egg").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("a failed check does not stop evaluation")
{
  auto r = run_cli("run " + golden("check_fail.egg"));
  CHECK(r.out == "check failed: (= p q)\nrun: 1 iteration, saturated\ncheck passed: (= p p)\n");
}

TEST_CASE("errors report file, line and column")
{
  auto r = run_cli("run " + golden("type_error.egg"));
  CHECK(r.out.rfind(golden("type_error.egg") + ":2:1: error: SortMismatch: ", 0) == 0);
}

TEST_CASE("golden transcripts")
{
  for (const auto &path : eqsat::testing::golden_programs()) {
    auto expected = path;
    expected.replace_extension(".out");
    REQUIRE_MESSAGE(std::filesystem::exists(expected), expected.string());
    auto want = eqsat::testing::slurp(expected);
    std::string flags = path.stem() == "budget" ? "--max-nodes 200 " : "";
    auto r = run_cli("run " + flags + path.string());
    // Error lines name the file; the expectations are path-independent.
    auto got = r.out;
    for (auto pos = got.find(path.string()); pos != std::string::npos; pos = got.find(path.string()))
      got.replace(pos, path.string().size(), path.filename().string());
    CHECK_MESSAGE(got + "exit " + std::to_string(r.exit_code) + "\n" == want, path.string());
  }
}

TEST_CASE("--json writes the export")
{
  auto json = std::filesystem::temp_directory_path() / ("eqsat_cli_json_" + std::to_string(::getpid()));
  auto r = run_cli("run --json " + json.string() + " " + golden("eqsat_basic.egg"));
  CHECK(r.exit_code == 0);
  eqsat::Program p;
  p.eval_text(eqsat::testing::slurp(golden("eqsat_basic.egg")));
  CHECK(eqsat::testing::slurp(json) == p.export_json() + "\n");
}

TEST_CASE("repl accumulates multi-line input and survives errors")
{
  auto r = run_cli("repl", "(datatype Math\n  (Num i64))\n(let a (Num 1))\n(let a (Num 2))\n(check (= a (Num 1)))\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("error: DuplicateName") != std::string::npos);
  CHECK(r.out.find("check passed: (= a (Num 1))") != std::string::npos);
}

TEST_CASE("--verbose prints run statistics")
{
  auto r = run_cli("run --verbose " + golden("commutativity.egg"));
  CHECK(r.out.find("{\"iterations_run\":2,\"saturated\":true") != std::string::npos);
}
