#include "qice/teacher/solver.hpp"

#include <algorithm>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>

#include "qice/logic/errors.hpp"

namespace qice {

SolverProcess::SolverProcess(std::vector<std::string> command, double timeout_seconds)
    : command_(std::move(command)), timeout_(timeout_seconds) {
  if (command_.empty()) throw SolverError("empty solver command");
  if (!(timeout_ > 0)) throw SolverError("solver timeout must be positive");
  signal(SIGPIPE, SIG_IGN);
}

SolverProcess::~SolverProcess() { stop(); }

void SolverProcess::start() {
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
  const pid_t pid = fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(to_child[0], 0);
    dup2(from_child[1], 1);
    dup2(from_child[1], 2);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    std::vector<char*> argv;
    for (auto& a : command_) argv.push_back(a.data());
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    std::fprintf(stdout, "(error \"cannot execute %s: %s\")\n", argv[0], std::strerror(errno));
    std::fflush(stdout);
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  pid_ = pid;
  in_fd_ = to_child[1];
  out_fd_ = from_child[0];
  buffer_.clear();
}

void SolverProcess::stop() {
  if (pid_ < 0) return;
  close(in_fd_);
  close(out_fd_);
  kill(pid_, SIGKILL);
  waitpid(pid_, nullptr, 0);
  pid_ = in_fd_ = out_fd_ = -1;
}

void SolverProcess::send(const std::string& text) {
  std::size_t off = 0;
  while (off < text.size()) {
    const ssize_t n = write(in_fd_, text.data() + off, text.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      stop();
      throw SolverError("solver process closed its input");
    }
    off += static_cast<std::size_t>(n);
  }
}

namespace {

// Length of the first complete response in `buf`, or 0.
std::size_t complete_response(const std::string& buf) {
  std::size_t i = 0;
  while (i < buf.size() && std::isspace(static_cast<unsigned char>(buf[i]))) ++i;
  if (i == buf.size()) return 0;
  if (buf[i] != '(') {
    const std::size_t nl = buf.find('\n', i);
    return nl == std::string::npos ? 0 : nl + 1;
  }
  int depth = 0;
  bool str = false, quoted = false;
  for (; i < buf.size(); ++i) {
    const char c = buf[i];
    if (str) {
      if (c == '"') str = false;
    } else if (quoted) {
      if (c == '|') quoted = false;
    } else if (c == '"') {
      str = true;
    } else if (c == '|') {
      quoted = true;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')' && --depth == 0) {
      return i + 1;
    }
  }
  return 0;
}

}  // namespace

bool SolverProcess::read_response(std::string& out, double timeout_seconds) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  while (true) {
    if (const std::size_t n = complete_response(buffer_)) {
      out = buffer_.substr(0, n);
      buffer_.erase(0, n);
      while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
      while (!out.empty() && std::isspace(static_cast<unsigned char>(out.front()))) out.erase(0, 1);
      return true;
    }
    const auto left = std::chrono::duration<double>(deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) return false;
    pollfd p{out_fd_, POLLIN, 0};
    const int r = poll(&p, 1, static_cast<int>(std::ceil(left * 1000)));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) return false;
    char chunk[65536];
    const ssize_t n = read(out_fd_, chunk, sizeof chunk);
    if (n <= 0) {
      std::string tail = buffer_;
      stop();
      throw SolverError("solver process exited unexpectedly" + (tail.empty() ? std::string() : ": " + tail));
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

SatResult SolverProcess::check(const std::string& commands, std::string* reason, double timeout_seconds) {
  if (pid_ < 0) start();
  ++queries_;
  const auto t0 = std::chrono::steady_clock::now();
  const double limit = timeout_seconds > 0 ? std::min(timeout_seconds, timeout_) : timeout_;
  const long ms = std::lround(limit * 1000);
  send("(reset)\n(set-option :print-success false)\n(set-option :produce-models true)\n(set-option :timeout " +
       std::to_string(ms) + ")\n(set-logic ALL)\n" + commands + "\n(check-sat)\n");
  std::string resp;
  const bool got = read_response(resp, limit + 5);
  seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!got) {
    stop();
    if (reason) *reason = "solver timeout";
    return SatResult::Unknown;
  }
  if (resp == "sat") return SatResult::Sat;
  if (resp == "unsat") return SatResult::Unsat;
  if (resp == "unknown" || resp == "timeout") {
    if (reason) *reason = "solver returned " + resp;
    return SatResult::Unknown;
  }
  stop();
  throw SolverError("unexpected solver response: " + resp);
}

std::vector<SExpr> SolverProcess::get_values(const std::vector<std::string>& terms) {
  if (terms.empty()) return {};
  if (pid_ < 0) throw SolverError("get-value without a live solver");
  std::string cmd = "(get-value (";
  for (const auto& t : terms) cmd += " " + t;
  send(cmd + "))\n");
  std::string resp;
  if (!read_response(resp, timeout_ + 5)) {
    stop();
    throw SolverError("timeout while reading a model");
  }
  SExpr e = parse_sexpr(resp);
  if (e.head() == "error" || e.size() != terms.size()) throw SolverError("malformed get-value response: " + resp);
  std::vector<SExpr> out;
  for (const auto& pair : e.items) {
    if (pair.size() != 2) throw SolverError("malformed get-value entry: " + pair.to_string());
    out.push_back(pair[1]);
  }
  return out;
}

}  // namespace qice
