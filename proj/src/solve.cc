#include "gcut/solve.h"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace gcut {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "unknown";
}

std::vector<double> VarAssignment::dense(const MilpModel& m) const {
  std::vector<double> out(m.variables.size(), 0.0);
  for (std::size_t k = 0; k < m.variables.size(); ++k) {
    auto it = values.find(m.variables[k].name);
    if (it != values.end()) out[k] = it->second;
  }
  return out;
}

namespace {

std::optional<SolveStatus> parse_status(const std::string& word) {
  if (word == "optimal") return SolveStatus::kOptimal;
  if (word == "feasible") return SolveStatus::kFeasible;
  if (word == "infeasible") return SolveStatus::kInfeasible;
  if (word == "timeout") return SolveStatus::kTimeout;
  return std::nullopt;
}

double parse_number(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v))
    throw SolveError(SolveError::Kind::kUnparseable,
                     "solution line " + std::to_string(line) +
                         ": bad number '" + tok + "'");
  return v;
}

std::string replace_all(std::string text, const std::string& key,
                        const std::string& value) {
  for (std::size_t at = text.find(key); at != std::string::npos;
       at = text.find(key, at + value.size()))
    text.replace(at, key.size(), value);
  return text;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

}  // namespace

VarAssignment parse_solution_text(const std::string& text, SolveMode mode,
                                  const MilpModel* model) {
  VarAssignment a;
  std::optional<double> reported;
  std::optional<SolveStatus> status;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream fields(raw);
    std::string first;
    if (!(fields >> first)) continue;
    if (first[0] == '#') {
      std::string key = first.size() > 1 ? first.substr(1) : "";
      if (key.empty()) fields >> key;
      std::string value;
      fields >> value;
      if (key == "status") {
        status = parse_status(value);
        if (!status)
          throw SolveError(SolveError::Kind::kUnparseable,
                           "solution line " + std::to_string(number) +
                               ": unknown status '" + value + "'");
      } else if (key == "objective") {
        reported = parse_number(value, number);
      }
      continue;
    }
    std::string value, extra;
    if (!(fields >> value) || (fields >> extra))
      throw SolveError(SolveError::Kind::kUnparseable,
                       "solution line " + std::to_string(number) +
                           ": expected 'name value'");
    a.values[first] = parse_number(value, number);
  }
  a.status = status.value_or(SolveStatus::kOptimal);
  if (a.status == SolveStatus::kInfeasible) return a;

  if (mode == SolveMode::kMip) {
    for (auto& [name, v] : a.values) {
      bool integer = true;
      if (model) {
        const int col = model->find(name);
        if (col < 0)
          throw SolveError(SolveError::Kind::kUnparseable,
                           "solution names unknown variable " + name);
        integer = model->variables[col].integer;
      }
      if (!integer) continue;
      const double r = std::round(v);
      if (std::abs(v - r) > kIntegerTolerance)
        throw SolveError(SolveError::Kind::kIntegrality,
                         "variable " + name + " = " + std::to_string(v) +
                             " is not integral");
      v = r;
    }
  }
  if (model) {
    const double recomputed = objective_value(*model, a.dense(*model));
    if (reported && std::abs(*reported - recomputed) >
                        kIntegerTolerance * std::max(1.0, std::abs(recomputed)))
      throw SolveError(SolveError::Kind::kObjectiveMismatch,
                       "reported objective " + std::to_string(*reported) +
                           " differs from recomputed " +
                           std::to_string(recomputed));
    a.objective = recomputed;
  } else if (reported) {
    a.objective = *reported;
  } else {
    throw SolveError(SolveError::Kind::kUnparseable,
                     "solution has no objective and no model to recompute it");
  }
  return a;
}

VarAssignment external_solve(const SolveRequest& request) {
  if (request.backend.find("{mps}") == std::string::npos ||
      request.backend.find("{sol}") == std::string::npos)
    throw SolveError(SolveError::Kind::kLaunch,
                     "backend template needs {mps} and {sol} placeholders");
  namespace fs = std::filesystem;
  std::string sol = request.sol_path;
  bool temporary = false;
  if (sol.empty()) {
    static std::atomic<int> counter{0};
    sol = (fs::temp_directory_path() /
           ("gcut_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++) + ".sol"))
              .string();
    temporary = true;
  }
  std::error_code ec;
  fs::remove(sol, ec);

  std::ostringstream limit;
  limit << request.time_limit;
  std::string command = request.backend;
  command = replace_all(command, "{mps}", shell_quote(request.mps_path));
  command = replace_all(command, "{sol}", shell_quote(sol));
  command = replace_all(command, "{mode}",
                        request.mode == SolveMode::kMip ? "mip" : "lp");
  command = replace_all(command, "{time_limit}", limit.str());
  command = replace_all(command, "{seed}", std::to_string(request.seed));

  const pid_t pid = ::fork();
  if (pid < 0)
    throw SolveError(SolveError::Kind::kLaunch, "fork failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  const auto grace = std::chrono::duration<double>(request.time_limit + request.grace);
  const auto start = std::chrono::steady_clock::now();
  int wstatus = 0;
  while (true) {
    const pid_t done = ::waitpid(pid, &wstatus, WNOHANG);
    if (done == pid) break;
    if (done < 0)
      throw SolveError(SolveError::Kind::kLaunch, "waitpid failed");
    if (std::chrono::steady_clock::now() - start > grace) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &wstatus, 0);
      if (temporary) fs::remove(sol, ec);
      throw SolveError(SolveError::Kind::kTimeout,
                       "backend exceeded the time limit: " + command);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (!WIFEXITED(wstatus) || WEXITSTATUS(wstatus) != 0) {
    if (temporary) fs::remove(sol, ec);
    throw SolveError(SolveError::Kind::kNonzeroExit,
                     "backend failed (status " + std::to_string(wstatus) +
                         "): " + command);
  }
  std::ifstream in(sol);
  if (!in)
    throw SolveError(SolveError::Kind::kUnparseable,
                     "backend wrote no solution file " + sol);
  std::ostringstream text;
  text << in.rdbuf();
  in.close();
  if (temporary) fs::remove(sol, ec);
  return parse_solution_text(text.str(), request.mode, request.model);
}

std::string default_backend() {
#ifdef GCUT_HIGHS_BACKEND
  if (const char* env = std::getenv("GCUT_BACKEND_CMD"); env && *env)
    return env;
  if (std::filesystem::exists(GCUT_HIGHS_BACKEND))
    return std::string("python3 ") + GCUT_HIGHS_BACKEND +
           " {mps} {sol} --mode {mode} --time-limit {time_limit} --seed {seed}";
  return "";
#else
  const char* env = std::getenv("GCUT_BACKEND_CMD");
  return env ? env : "";
#endif
}

}  // namespace gcut
