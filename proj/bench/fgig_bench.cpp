// Serial reference vs OpenMP mode solves over a grid of (N, M) sizes.
//
//   fgig_bench [--problem 1] [--repeats 5] [--sizes 10,20,50,100]
//
// Prints one line per size with stage medians and the parallel speedup, and
// checks that both paths produce bit-identical coefficients.

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fgig/analysis.hpp"

int main(int argc, char** argv) {
  CLI::App app{"FGIG serial vs OpenMP benchmark"};
  int problem_id = 1;
  int repeats = 5;
  std::vector<int> sizes = {10, 20, 50, 100};
  app.add_option("--problem", problem_id, "built-in test problem")->check(CLI::Range(1, 3));
  app.add_option("--repeats", repeats, "repetitions per size (>= 3)")->check(CLI::Range(3, 1000));
  app.add_option("--sizes", sizes, "N = M values")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const fgig::ADProblem problem = fgig::test_problem(problem_id);
  std::cout << std::setw(5) << "N=M" << std::setw(8) << "threads" << std::setw(13) << "setup_s" << std::setw(13)
            << "assembly_s" << std::setw(13) << "solve_s" << std::setw(13) << "serial_s" << std::setw(13)
            << "parallel_s" << std::setw(9) << "speedup" << "  identical\n";
  bool all_identical = true;
  for (const int n : sizes) {
    fgig::SolverConfig cfg = fgig::SolverConfig::with_defaults(n % 2 == 0 ? n : n + 1, n);
    const fgig::BenchReport r = fgig::bench_solve(problem, cfg, repeats, problem.T);
    all_identical &= r.bit_identical;
    std::cout << std::setw(5) << n << std::setw(8) << r.threads << std::scientific << std::setprecision(3)
              << std::setw(13) << r.setup_median << std::setw(13) << r.assembly_median << std::setw(13)
              << r.solve_median << std::setw(13) << r.serial_total_median << std::setw(13)
              << r.parallel_total_median << std::fixed << std::setprecision(2) << std::setw(9)
              << r.parallel_speedup << "  " << (r.bit_identical ? "yes" : "NO") << "\n";
  }
  return all_identical ? 0 : 1;
}
