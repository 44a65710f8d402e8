// eqsat: run or interactively evaluate programs in the e-graph command
// language.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 the program was
// rejected (lexing, parsing, typing, I/O), 3 evaluation aborted at runtime
// (overflow, node budget, no finite term).

#include <eqsat/program.hpp>

#include <CLI11.hpp>

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit
{
  ok = 0,
  check_failed = 1,
  rejected = 2,
  runtime = 3,
};

void report(const std::string &where, const eqsat::Error &err)
{
  std::cerr << where;
  if (err.span())
    std::cerr << ":" << err.span()->line << ":" << err.span()->column;
  std::cerr << ": error: " << err.what() << "\n";
}

int exit_for(const eqsat::Error &err)
{
  return eqsat::is_runtime_error(err.code()) ? runtime : rejected;
}

void print(const eqsat::CommandOutput &out, bool verbose)
{
  auto line = eqsat::to_string(out);
  if (!line.empty())
    std::cout << line << "\n";
  if (verbose)
    if (const auto *r = std::get_if< eqsat::RunReport >(&out))
      std::cout << eqsat::to_json(*r) << "\n";
}

int run_file(const std::string &path, std::size_t max_nodes, const std::string &json_path, bool verbose)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << path << ": error: IoError: cannot open file\n";
    return rejected;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto text = buffer.str();

  eqsat::Program program;
  program.set_node_limit(max_nodes);
  bool failed = false;
  try {
    for (const auto &cmd : eqsat::parse_program(text)) {
      auto out = program.eval(cmd);
      if (const auto *c = std::get_if< eqsat::CheckOutcome >(&out))
        failed |= !c->passed;
      print(out, verbose);
    }
  } catch (const eqsat::Error &err) {
    report(path, err);
    return exit_for(err);
  }

  if (!json_path.empty()) {
    std::ofstream js(json_path, std::ios::binary);
    js << program.export_json() << "\n";
    if (!js) {
      std::cerr << json_path << ": error: IoError: cannot write file\n";
      return rejected;
    }
  }
  return failed ? check_failed : ok;
}

int repl(std::size_t max_nodes, bool verbose)
{
  eqsat::Program program;
  program.set_node_limit(max_nodes);
  bool interactive = isatty(STDIN_FILENO);
  bool failed = false;
  std::string pending;
  std::string line;
  while (true) {
    if (interactive)
      std::cout << (pending.empty() ? "> " : ". ") << std::flush;
    if (!std::getline(std::cin, line))
      break;
    pending += line;
    pending += "\n";
    if (eqsat::input_incomplete(pending))
      continue;
    try {
      for (const auto &cmd : eqsat::parse_program(pending)) {
        auto out = program.eval(cmd);
        if (const auto *c = std::get_if< eqsat::CheckOutcome >(&out))
          failed |= !c->passed;
        print(out, verbose);
      }
    } catch (const eqsat::Error &err) {
      report("<stdin>", err);
    }
    pending.clear();
  }
  return failed ? check_failed : ok;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Equality saturation over typed e-graphs"};
  app.require_subcommand(1);

  std::size_t max_nodes = eqsat::EGraph::default_node_limit;
  bool verbose = false;
  std::string file;
  std::string json_path;

  auto *run = app.add_subcommand("run", "Evaluate a program file");
  run->add_option("FILE", file, "Program to evaluate")->required();
  run->add_option("--max-nodes", max_nodes, "E-node budget")->check(CLI::PositiveNumber);
  run->add_option("--json", json_path, "Write the final e-graph as JSON to this path");
  run->add_flag("--verbose", verbose, "Print per-iteration statistics after each run");

  auto *interactive = app.add_subcommand("repl", "Read commands from standard input");
  interactive->add_option("--max-nodes", max_nodes, "E-node budget")->check(CLI::PositiveNumber);
  interactive->add_flag("--verbose", verbose, "Print per-iteration statistics after each run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    int code = app.exit(err);
    return code == 0 ? ok : rejected;
  }

  if (run->parsed())
    return run_file(file, max_nodes, json_path, verbose);
  return repl(max_nodes, verbose);
}
