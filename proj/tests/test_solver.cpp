#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fgig/analysis.hpp"
#include "fgig/linalg.hpp"
#include "fgig/solver.hpp"

using namespace fgig;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

// Closed-form mode coefficient u_hat_n exp(-alpha_n t), the oracle for the
// integral equation.
std::complex<double> closed_form(const SpectralSolution& sol, int n, double t) {
  return sol.spectrum.at(n) * std::exp(-mode_alpha(n, sol.problem) * t);
}

double max_oracle_gap(const SpectralSolution& sol) {
  double gap = 0.0;
  for (int n = 1; n <= sol.config.N / 2; ++n) {
    for (int l = 0; l <= sol.config.M; ++l) {
      gap = std::max(gap, std::abs(sol.coefficient(n, l) - closed_form(sol, n, sol.time_grid.nodes[l])));
    }
  }
  return gap;
}

ADProblem frozen(ADProblem p) {
  p.mu = 0.0;
  p.nu = 0.0;
  return p;
}

ADProblem with_horizon(ADProblem p, double T) {
  p.T = T;
  return p;
}
}  // namespace

TEST_CASE("mode_alpha examples") {
  const std::complex<double> a1 = mode_alpha(1, test_problem(1));
  CHECK(a1.real() == Approx(kPi * kPi).epsilon(1e-15));
  CHECK(a1.imag() == 0.0);
  const std::complex<double> a8 = mode_alpha(8, test_problem(3));
  CHECK(a8.real() == Approx(63.1654681).epsilon(1e-8));
  CHECK(a8.imag() == Approx(0.251327412).epsilon(1e-8));
  CHECK(mode_alpha(3, frozen(test_problem(3))) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("assemble_mode") {
  const ADProblem p = test_problem(3);
  const SolverConfig c = SolverConfig::with_defaults(16, 6);
  const SolverSetup s = prepare(p, c);
  const ModeSystem sys = assemble_mode(2, p, c, s.TQ, s.spectrum);
  CHECK(sys.n == 2);
  CHECK(sys.rhs_value == s.spectrum.at(2));
  const Eigen::MatrixXcd expected =
      Eigen::MatrixXcd::Identity(7, 7) + sys.alpha * s.TQ.entries.cast<std::complex<double>>();
  CHECK((sys.matrix - expected).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sys.alpha.real() >= 0.0);
  CHECK(sys.alpha.imag() >= 0.0);

  const ModeSystem id = assemble_mode(5, frozen(p), c, s.TQ, s.spectrum);
  CHECK(id.matrix == Eigen::MatrixXcd::Identity(7, 7));
  CHECK_THROWS_AS((void)assemble_mode(0, p, c, s.TQ, s.spectrum), std::invalid_argument);
  CHECK_THROWS_AS((void)assemble_mode(9, p, c, s.TQ, s.spectrum), std::invalid_argument);
}

TEST_CASE("frozen transport gives constant coefficients") {
  const ADProblem p = frozen(test_problem(3));
  const SolverConfig c = SolverConfig::with_defaults(8, 5);
  const SpectralSolution sol = solve_modes(p, c);
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 5; ++l) CHECK(sol.coefficient(n, l) == sol.spectrum.at(n));
  const ModeCoefficients mid = coefficients_at(sol, 0.037);
  for (int n = 1; n <= 4; ++n) CHECK(std::abs(mid[n] - sol.spectrum.at(n)) <= 1e-15);
}

TEST_CASE("singular systems are reported with the mode index") {
  // Valid assemblies are never singular, so build one by hand.
  ModeSystem sys;
  sys.n = 3;
  sys.alpha = {1.0, 0.0};
  sys.matrix = Eigen::MatrixXcd::Zero(4, 4);
  sys.rhs_value = 1.0;
  try {
    (void)solve_mode(sys);
    FAIL("expected SingularSystemError");
  } catch (const SingularSystemError& e) {
    CHECK(e.mode() == 3);
  }
}

TEST_CASE("nodal coefficients match the closed form") {
  SUBCASE("TP1, N=4, M=12") {
    const SpectralSolution sol = solve_modes(test_problem(1), SolverConfig::with_defaults(4, 12));
    CHECK(max_oracle_gap(sol) <= 1e-12);
    const ModeCoefficients at_T = coefficients_at(sol, sol.problem.T);
    for (int n = 1; n <= 2; ++n) CHECK(std::abs(at_T[n] - closed_form(sol, n, sol.problem.T)) <= 1e-12);
  }
  SUBCASE("property: every built-in problem at M >= 12") {
    for (int id : {1, 2, 3}) {
      for (int M : {12, 16}) {
        const int N = id == 3 ? 16 : 4;
        CAPTURE(id);
        CAPTURE(M);
        const SpectralSolution sol = solve_modes(test_problem(id), SolverConfig::with_defaults(N, M));
        CHECK(max_oracle_gap(sol) <= 1e-11);
      }
    }
  }
}

TEST_CASE("property: structural invariants after every solve") {
  for (int id : {1, 2, 3}) {
    for (int N : {4, 10, 16}) {
      const ADProblem p = test_problem(id);
      const SpectralSolution sol = solve_modes(p, SolverConfig::with_defaults(N, 9));
      for (int l = 0; l <= 9; ++l) {
        std::complex<double> sum{};
        for (int k = -N / 2; k <= N / 2; ++k) {
          CHECK(sol.coefficient(-k, l) == std::conj(sol.coefficient(k, l)));
          sum += sol.coefficient(k, l);
        }
        CHECK(std::abs(sum) <= 1e-12);
      }
      const FourierGrid grid(p.L, N);
      double worst = 0.0;
      for (int i = 0; i <= 49; ++i) {
        const double t = p.T * i / 49.0;
        worst = std::max({worst, evaluate_u(sol, grid, t).imag_residue, evaluate_ux(sol, grid, t).imag_residue});
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("coefficients_at") {
  const SpectralSolution sol = solve_modes(test_problem(1), SolverConfig::with_defaults(4, 10));
  for (int l = 0; l <= 10; ++l) {
    const ModeCoefficients c = coefficients_at(sol, sol.time_grid.nodes[l]);
    for (int k = -2; k <= 2; ++k) CHECK(c[k] == sol.coefficient(k, l));
  }
  const ModeCoefficients c = coefficients_at(sol, 0.0731);
  for (int k = 1; k <= 2; ++k) CHECK(c[-k] == std::conj(c[k]));
  CHECK_THROWS_AS((void)coefficients_at(sol, -1e-3), std::invalid_argument);
  CHECK_THROWS_AS((void)coefficients_at(sol, 0.2 + 1e-3), std::invalid_argument);
}

TEST_CASE("field and derivative evaluation against the exact solution") {
  const ADProblem p1 = test_problem(1);
  const FourierGrid g4(p1.L, 4);
  SUBCASE("TP1 at t = 0 reproduces u0 and its derivative") {
    // t = 0 lies outside the collocation nodes; M = 14 resolves exp(-pi^2 t)
    // there to rounding level.
    for (int N : {4, 8}) {
      const SpectralSolution sol = solve_modes(p1, SolverConfig::with_defaults(N, 14));
      const FourierGrid grid(p1.L, N);
      const FieldSamples u = evaluate_u(sol, grid, 0.0);
      const FieldSamples ux = evaluate_ux(sol, grid, 0.0);
      for (int j = 0; j < N; ++j) {
        CHECK(std::abs(u.values[j] - std::sin(kPi * grid.node(j))) <= 1e-13);
        CHECK(std::abs(ux.values[j] - kPi * std::cos(kPi * grid.node(j))) <= 1e-12);
      }
    }
  }
  SUBCASE("TP1, N=4, M=10, t=0.1") {
    const SpectralSolution sol = solve_modes(with_horizon(p1, 0.1), SolverConfig::with_defaults(4, 10));
    const FieldSamples u = evaluate_u(sol, g4, 0.1);
    const FieldSamples ux = evaluate_ux(sol, g4, 0.1);
    CHECK(std::abs(u.values[1] - std::exp(-0.1 * kPi * kPi)) <= 1e-14);  // x = 0.5
    CHECK(std::abs(ux.values[0] - kPi * std::exp(-0.1 * kPi * kPi)) <= 1e-12);
  }
  SUBCASE("TP2, N=4, M=10, t=1") {
    const ADProblem p2 = test_problem(2);
    const SpectralSolution sol = solve_modes(p2, SolverConfig::with_defaults(4, 10));
    const FieldSamples u = evaluate_u(sol, g4, 1.0);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(u.values[j] - std::exp(-1.0) * std::sin(kPi * g4.node(j))) <= 1e-14);
  }
  SUBCASE("zero initial data") {
    ADProblem p = p1;
    p.u0 = [](double) { return 0.0; };
    const SpectralSolution sol = solve_modes(p, SolverConfig::with_defaults(4, 6));
    for (double v : evaluate_u(sol, g4, 0.13).values) CHECK(v == 0.0);
    for (double v : evaluate_ux(sol, g4, 0.13).values) CHECK(v == 0.0);
  }
  SUBCASE("boundary trace enters through g") {
    const ADProblem p3 = test_problem(3);
    const SpectralSolution sol = solve_modes(p3, SolverConfig::with_defaults(16, 12));
    const FieldSamples u = evaluate_u(sol, FourierGrid(p3.L, 16), 0.1);
    CHECK(std::abs(u.values[0] - p3.g(0.1)) <= 1e-13);
  }
}

TEST_CASE("serial and OpenMP solves are bit-identical") {
  for (int id : {1, 2, 3}) {
    const ADProblem p = test_problem(id);
    for (auto [N, M] : {std::pair{4, 10}, std::pair{16, 12}, std::pair{60, 30}}) {
      const SolverConfig c = SolverConfig::with_defaults(N, M);
      const SpectralSolution a = solve_modes(p, c, Execution::serial);
      const SpectralSolution b = solve_modes(p, c, Execution::parallel);
      const SpectralSolution again = solve_modes(p, c, Execution::serial);
      CHECK(a.psi == b.psi);
      CHECK(a.psi == again.psi);
    }
  }
}

TEST_CASE("errors surface from the parallel path too") {
  ADProblem p = test_problem(1);
  SolverConfig c = SolverConfig::with_defaults(4, 8);
  c.N = 3;
  CHECK_THROWS_AS((void)solve_modes(p, c, Execution::parallel), ConfigError);
}

TEST_CASE("property: temporal convergence is at least geometric") {
  // ln(DNE) at t = 0.2 for TP1 with N = 4 against M = 4, 6, 8, 10.
  const ADProblem p = test_problem(1);
  std::vector<double> ms, logs;
  for (int M : {4, 6, 8, 10}) {
    ms.push_back(M);
    logs.push_back(std::log(error_report(p, SolverConfig::with_defaults(4, M), 0.2).dne));
  }
  for (std::size_t i = 1; i < logs.size(); ++i) CHECK(logs[i] < logs[i - 1]);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    mx += ms[i] / ms.size();
    my += logs[i] / ms.size();
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    sxy += (ms[i] - mx) * (logs[i] - my);
    sxx += (ms[i] - mx) * (ms[i] - mx);
  }
  CHECK(sxy / sxx <= -2.0);
}
