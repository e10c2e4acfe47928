#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qice/driver/driver.hpp"
#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"

namespace {

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream is(cmd);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantified invariant inference for array programs via Horn-ICE learning"};
  qice::RunConfig cfg;
  std::string format = "auto";
  std::string solver_cmd = "z3 -in -smt2";
  app.add_option("--input", cfg.input, "Program (.mc) or Horn clause file (.chc)")->required();
  app.add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "mini", "chc"}));
  app.add_option("--solver-cmd", solver_cmd, "SMT solver command reading SMT-LIB on stdin");
  app.add_option("--solver-timeout", cfg.solver.timeout, "Per-query timeout in seconds")->check(CLI::PositiveNumber);
  app.add_option("--initial-n", cfg.initial_n, "Initial quantified variables per array (0: from the assertions)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-n", cfg.max_n, "Maximum quantified variables per array")->check(CLI::PositiveNumber);
  app.add_option("--max-const", cfg.max_k, "Maximum constant bound in attributes")->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", cfg.max_iterations, "Learner/teacher rounds")->check(CLI::PositiveNumber);
  app.add_option("--timeout", cfg.timeout, "Global time limit in seconds")->check(CLI::PositiveNumber);
  app.add_option("--min-array-len", cfg.solver.min_array_len, "Smallest array length in counterexamples")
      ->check(CLI::IsMember({0, 1}));
  app.add_option("--export-smtlib", cfg.export_path, "Write the clauses in SMT-LIB HORN form");
  app.add_flag("--export-only", "Stop after writing --export-smtlib");
  app.add_option("--report", cfg.report_path, "Write a JSON report");
  app.add_option("--trace", cfg.trace_path, "Write a per-iteration trace");
  CLI11_PARSE(app, argc, argv);

  if (format == "auto") {
    bool chc = cfg.input.size() >= 4 && cfg.input.substr(cfg.input.size() - 4) == ".chc";
    cfg.kind = chc ? qice::InputKind::Chc : qice::InputKind::Mini;
  } else {
    cfg.kind = format == "chc" ? qice::InputKind::Chc : qice::InputKind::Mini;
  }
  cfg.solver.command = split_command(solver_cmd);

  try {
    if (app.count("--export-only")) {
      qice::export_smtlib(cfg);
      return 0;
    }
    qice::RunReport rep = qice::run(cfg);
    std::cout << rep.to_text(qice::load_input(cfg).system);
    return qice::exit_code(rep.verdict);
  } catch (const qice::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const qice::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const qice::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
