#pragma once

#include <string>
#include <vector>

#include "qice/logic/sexpr.hpp"

namespace qice {

enum class SatResult : std::uint8_t { Sat, Unsat, Unknown };

/// An SMT-LIB solver subprocess driven over stdin/stdout. Each query starts
/// from (reset). A query exceeding the timeout kills the process; the next
/// query starts a fresh one.
class SolverProcess {
 public:
  SolverProcess(std::vector<std::string> command, double timeout_seconds);
  ~SolverProcess();
  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  /// Runs the commands (declarations and assertions) and (check-sat).
  /// `reason` receives the cause of an Unknown result. A positive
  /// `timeout_seconds` shortens the limit for this query only.
  SatResult check(const std::string& commands, std::string* reason = nullptr, double timeout_seconds = 0);
  /// (get-value ...) after a Sat answer; one value per term.
  std::vector<SExpr> get_values(const std::vector<std::string>& terms);

  std::size_t queries() const { return queries_; }
  double solver_seconds() const { return seconds_; }

 private:
  void start();
  void stop();
  void send(const std::string& text);
  /// Next complete response (atom or balanced list); throws SolverError on
  /// EOF, timeout returns false.
  bool read_response(std::string& out, double timeout_seconds);

  std::vector<std::string> command_;
  double timeout_;
  int pid_ = -1;
  int in_fd_ = -1;   // solver stdin
  int out_fd_ = -1;  // solver stdout
  std::string buffer_;
  std::size_t queries_ = 0;
  double seconds_ = 0;
};

}  // namespace qice
