#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgig {

/// u_t + mu u_x = nu u_xx on [0, L] x [0, T], L-periodic in x, with
/// u(x, 0) = u0(x) and u(0, t) = u(L, t) = g(t).
struct ADProblem {
  std::string name;
  double mu = 0.0;
  double nu = 0.0;
  double L = 0.0;
  double T = 0.0;
  std::function<double(double)> u0;
  std::function<double(double)> g;
  std::function<double(double, double)> exact;     // empty when unknown
  std::function<double(double, double)> exact_dx;  // empty when unknown

  [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact); }
  /// Throws std::invalid_argument on non-physical parameters or u0(0) != g(0).
  void validate() const;
};

struct SolverConfig {
  int N = 0;
  int N0 = 0;
  int M = 0;
  double lambda = -0.4;

  /// Builds a config with N0 = N + 2 and lambda = -0.4 unless given.
  [[nodiscard]] static SolverConfig with_defaults(int N, int M);
  /// Throws ConfigError naming the violated field.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Built-in test problems 1, 2 and 3 with their exact solutions.
[[nodiscard]] ADProblem test_problem(int id);

/// Everything a config file can carry. Sweep and study keys are optional and
/// only consumed by the matching CLI commands.
struct RunConfig {
  ADProblem problem;
  SolverConfig solver;
  double t_final = 0.0;
  std::vector<int> sweep_N;
  std::vector<int> sweep_M;
  std::vector<double> study_lambdas;
  std::vector<int> study_M;
  int repeats = 5;
};

/// Parses the flat key=value format (one pair per line, '#' comments).
[[nodiscard]] RunConfig parse_config(std::istream& in, const std::string& source = "<stream>");
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

}  // namespace fgig
