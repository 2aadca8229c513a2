#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fgig/analysis.hpp"
#include "fgig/linalg.hpp"

using namespace fgig;
using doctest::Approx;

namespace {
ADProblem with_horizon(ADProblem p, double T) {
  p.T = T;
  return p;
}
}  // namespace

TEST_CASE("discrete norm error") {
  const std::vector<double> a = {1.0, -2.0, 0.5, 3.0};
  CHECK(discrete_norm_error(a, a, 2.0) == 0.0);
  const std::vector<double> b = {1.0, -2.0, 0.5, 2.0};
  CHECK(discrete_norm_error(a, b, 2.0) == Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS((void)discrete_norm_error(a, std::vector<double>{1.0}, 2.0), std::invalid_argument);
}

TEST_CASE("property: error report metrics are consistent") {
  for (int id : {1, 2, 3}) {
    const ADProblem p = test_problem(id);
    const SolverConfig c = SolverConfig::with_defaults(id == 3 ? 16 : 4, 6);
    const SpectralSolution sol = solve_modes(p, c);
    const ErrorReport r = error_report(sol, p.T);
    CHECK(r.pointwise_max >= 0.0);
    CHECK(r.dne <= std::sqrt(p.L) * r.pointwise_max);

    // Second route: pointwise errors reduced by hand.
    const FourierGrid grid(p.L, c.N);
    const FieldSamples u = evaluate_u(sol, grid, p.T);
    double sum = 0.0;
    for (int j = 0; j < c.N; ++j) {
      const double e = std::abs(p.exact(grid.node(j), p.T) - u.values[j]);
      sum += e * e;
    }
    CHECK(std::abs(r.dne - std::sqrt(p.L / c.N * sum)) <= 1e-14 * r.dne);
    CHECK(r.N == c.N);
    CHECK(r.M == 6);
    CHECK(r.N0 == c.N0);
    CHECK(r.lambda == -0.4);
    CHECK(r.t_final == p.T);
  }
  ADProblem no_exact = test_problem(1);
  no_exact.exact = nullptr;
  CHECK_THROWS_AS((void)error_report(no_exact, SolverConfig::with_defaults(4, 4), 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)sa_error_report(no_exact, SolverConfig::with_defaults(4, 4), 0.1), std::invalid_argument);
}

TEST_CASE("reference error levels within a factor of ten") {
  // Errors are measured at the terminal time of the horizon.
  const ErrorReport t1 = error_report(with_horizon(test_problem(1), 0.1), SolverConfig::with_defaults(4, 8), 0.1);
  CHECK(t1.pointwise_max >= 1.6445e-13);
  CHECK(t1.pointwise_max <= 1.6445e-11);
  const ErrorReport t2 = error_report(test_problem(2), SolverConfig::with_defaults(4, 7), 1.0);
  CHECK(t2.pointwise_max >= 7.0965e-12);
  CHECK(t2.pointwise_max <= 7.0965e-10);
}

TEST_CASE("convergence sweep") {
  const ADProblem p = test_problem(1);
  SUBCASE("temporal decay at N = 4") {
    const std::vector<int> Ns = {4}, Ms = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    const ConvergenceTable t = convergence_sweep(p, Ns, Ms, -0.4, 0.2);
    REQUIRE(t.rows.size() == 9);
    REQUIRE(t.decay.size() == 1);
    CHECK(t.decay[0].total_drop >= 8.0);
    CHECK(t.decay[0].monotone);
    CHECK(t.decay[0].slope < -1.0);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].M > t.rows[i - 1].M);
  }
  SUBCASE("flat along N at M = 12") {
    std::vector<int> Ns;
    for (int N = 4; N <= 22; N += 2) Ns.push_back(N);
    const std::vector<int> Ms = {12};
    const ConvergenceTable t = convergence_sweep(p, Ns, Ms, -0.4, 0.2);
    REQUIRE(t.rows.size() == 10);
    const double first = t.rows.front().log10_dne;
    for (const auto& r : t.rows) CHECK(std::abs(r.log10_dne - first) <= 1.0);
  }
  SUBCASE("single cell, unsorted input and parallel cells") {
    const std::vector<int> one = {6};
    CHECK(convergence_sweep(p, one, one, -0.4, 0.2).rows.size() == 1);
    const std::vector<int> Ns = {8, 4}, Ms = {10, 5};
    const ConvergenceTable s = convergence_sweep(p, Ns, Ms, -0.4, 0.2, Execution::serial);
    const ConvergenceTable q = convergence_sweep(p, Ns, Ms, -0.4, 0.2, Execution::parallel);
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[0].N == 4);
    CHECK(s.rows[0].M == 5);
    CHECK(s.rows[3].N == 8);
    CHECK(s.rows[3].M == 10);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.rows[i].dne == q.rows[i].dne);
    const std::vector<int> none;
    CHECK_THROWS_AS((void)convergence_sweep(p, none, Ms, -0.4, 0.2), std::invalid_argument);
  }
}

TEST_CASE("property: cond(TQ) equals cond(Q)") {
  for (double lambda : {-0.4, 0.0, 1.0}) {
    for (int M : {4, 20, 40}) {
      const IntegrationMatrix Q = build_integration_matrix(build_basis(lambda, M));
      const auto q = conditioning_of(Q.entries.cast<std::complex<double>>(), "Q", lambda, M, 0);
      for (double T : {0.1, 0.2, 5.0}) {
        const auto tq =
            conditioning_of(shift_integration_matrix(Q, T).entries.cast<std::complex<double>>(), "TQ", lambda, M, 0);
        CHECK(std::abs(tq.cond - q.cond) <= 1e-12 * q.cond);
        CHECK(tq.cond >= 1.0);
      }
    }
  }
}

TEST_CASE("conditioning examples") {
  SUBCASE("frozen transport gives the identity") {
    ADProblem p = test_problem(1);
    p.mu = 0.0;
    p.nu = 0.0;
    const auto conds = mode_condition_numbers(p, SolverConfig::with_defaults(8, 10));
    for (double c : conds) CHECK(c == 1.0);
  }
  SUBCASE("smallest singular value of Q near lambda = -1/2") {
    const std::vector<double> lambdas = {-0.4999, -0.49, -0.4};
    const std::vector<int> Ms = {40};
    const ConditioningStudy s = conditioning_study(test_problem(1), SolverConfig::with_defaults(4, 40), lambdas, Ms);
    CHECK(s.sigma_min_decays);
    REQUIRE(s.reports.size() == 3 + 6);
    CHECK(s.reports[0].lambda == -0.4999);
    CHECK(s.reports[0].sigma_min * 100.0 <= s.reports[2].sigma_min);
  }
  SUBCASE("study layout and ordering") {
    const std::vector<double> lambdas = {0.5, -0.4};
    const std::vector<int> Ms = {8, 4};
    const ConditioningStudy s = conditioning_study(test_problem(1), SolverConfig::with_defaults(4, 4), lambdas, Ms);
    REQUIRE(s.reports.size() == 4 + 8);
    CHECK(s.reports[0].matrix == "TQ");
    CHECK(s.reports[0].lambda == -0.4);
    CHECK(s.reports[0].M == 4);
    CHECK(s.reports[4].matrix == "A");
    CHECK(s.reports[4].n == 1);
    CHECK(s.reports[5].n == 2);
    for (const auto& r : s.reports) CHECK(r.cond >= 1.0);
    CHECK(s.nyquist_peak);
  }
  SUBCASE("peak conditioning sits at the highest mode") {
    ADProblem p = test_problem(1);
    p.mu = 1.0;
    p.nu = 1.0;
    for (int M : {4, 40}) {
      const auto conds = mode_condition_numbers(p, SolverConfig::with_defaults(50, M));
      REQUIRE(conds.size() == 25);
      CHECK(std::max_element(conds.begin(), conds.end()) - conds.begin() == 24);
    }
  }
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS((void)median({}), std::invalid_argument);
}

TEST_CASE("benchmark sanity") {
  SUBCASE("small problem") {
    const BenchReport r = bench_solve(test_problem(1), SolverConfig::with_defaults(4, 10), 3, 0.2);
    CHECK(r.bit_identical);
    CHECK(r.serial_total_median < 0.1);
    CHECK(r.setup_median >= 0.0);
    CHECK(r.parallel_speedup > 0.0);
    CHECK_THROWS_AS((void)bench_solve(test_problem(1), SolverConfig::with_defaults(4, 10), 2, 0.2),
                    std::invalid_argument);
  }
  SUBCASE("large problem stays bit-identical") {
    const BenchReport r = bench_solve(test_problem(3), SolverConfig::with_defaults(100, 100), 3, 0.1);
    CHECK(r.bit_identical);
    CHECK(r.N == 100);
    CHECK(r.M == 100);
  }
  SUBCASE("phase medians are finite and bounded by the total") {
    // Wall-clock ratios between runs are too noisy on shared machines to assert.
    const BenchReport r = bench_solve(test_problem(3), SolverConfig::with_defaults(40, 40), 9, 0.1);
    for (double s : {r.setup_median, r.assembly_median, r.solve_median, r.synthesis_median}) {
      CHECK(std::isfinite(s));
      CHECK(s >= 0.0);
    }
    CHECK(r.serial_total_median > 0.0);
  }
}
