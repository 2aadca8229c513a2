#include "fgig/problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "fgig/gegenbauer.hpp"

namespace fgig {

namespace {

constexpr double kPi = std::numbers::pi;

// Decaying travelling wave sum_h a_h exp(-nu w_h^2 t) sin(w_h (x - mu t)),
// w_h = 2 pi h / L: the exact solution for any sine-series initial data.
ADProblem harmonic_family(std::string name, double mu, double nu, double L, double T,
                          std::vector<std::pair<int, double>> terms) {
  ADProblem p;
  p.name = std::move(name);
  p.mu = mu;
  p.nu = nu;
  p.L = L;
  p.T = T;
  auto exact = [=](double x, double t) {
    double u = 0.0;
    for (auto [h, a] : terms) {
      const double w = 2.0 * kPi * h / L;
      u += a * std::exp(-nu * w * w * t) * std::sin(w * (x - mu * t));
    }
    return u;
  };
  auto exact_dx = [=](double x, double t) {
    double u = 0.0;
    for (auto [h, a] : terms) {
      const double w = 2.0 * kPi * h / L;
      u += a * w * std::exp(-nu * w * w * t) * std::cos(w * (x - mu * t));
    }
    return u;
  };
  p.exact = exact;
  p.exact_dx = exact_dx;
  p.u0 = [exact](double x) { return exact(x, 0.0); };
  p.g = [exact](double t) { return exact(0.0, t); };
  return p;
}

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class KeyReader {
 public:
  KeyReader(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<double> real(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return parse_real(key, entries_.at(key).value);
  }

  std::optional<int> integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return parse_int(key, entries_.at(key).value);
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return entries_.at(key).value;
  }

  // Accepts "a:b" (step 1), "a:s:b", or a comma-separated list.
  std::vector<int> int_range(const std::string& key) const {
    if (!has(key)) return {};
    const std::string& v = entries_.at(key).value;
    std::vector<int> out;
    if (v.find(':') != std::string::npos) {
      std::vector<int> parts;
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(parse_int(key, trim(item)));
      if (parts.size() < 2 || parts.size() > 3) fail(key, "range must be first:last or first:step:last");
      const int first = parts.front();
      const int last = parts.back();
      const int step = parts.size() == 3 ? parts[1] : 1;
      if (step <= 0) fail(key, "range step must be positive");
      for (int x = first; x <= last; x += step) out.push_back(x);
    } else {
      for (const std::string& item : split_list(v)) out.push_back(parse_int(key, item));
    }
    if (out.empty()) fail(key, "empty range");
    return out;
  }

  std::vector<double> real_list(const std::string& key) const {
    if (!has(key)) return {};
    std::vector<double> out;
    for (const std::string& item : split_list(entries_.at(key).value)) out.push_back(parse_real(key, item));
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where = source_;
    if (has(key)) where += ":" + std::to_string(entries_.at(key).line);
    throw ConfigError(where + ": key '" + key + "': " + what);
  }

 private:
  static std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> items;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) items.push_back(item);
    }
    return items;
  }

  double parse_real(const std::string& key, const std::string& v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(key, "expected a real number, got '" + v + "'");
    }
    return out;
  }

  int parse_int(const std::string& key, const std::string& v) const {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) fail(key, "expected an integer, got '" + v + "'");
    return out;
  }

  std::map<std::string, Entry> entries_;
  std::string source_;
};

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "problem_id", "mu", "nu", "L", "T", "N", "N0", "M", "lambda", "t_final",
      "u0", "g", "sweep_N", "sweep_M", "study_lambda", "study_M", "repeats"};
  return keys;
}

}  // namespace

void ADProblem::validate() const {
  if (!(mu >= 0.0)) throw std::invalid_argument("problem: mu must be >= 0");
  if (!(nu >= 0.0)) throw std::invalid_argument("problem: nu must be >= 0");
  if (!(L > 0.0)) throw std::invalid_argument("problem: L must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("problem: T must be > 0");
  if (!u0 || !g) throw std::invalid_argument("problem: u0 and g are required");
  if (std::abs(u0(0.0) - g(0.0)) > 1e-12) {
    throw std::invalid_argument("problem: incompatible data, u0(0) != g(0)");
  }
}

SolverConfig SolverConfig::with_defaults(int N, int M) {
  SolverConfig c;
  c.N = N;
  c.N0 = N + 2;
  c.M = M;
  c.lambda = -0.4;
  return c;
}

void SolverConfig::validate() const {
  if (N < 2) throw ConfigError("N must be >= 2");
  if (N % 2 != 0) throw ConfigError("N must be even");
  if (N0 % 2 != 0) throw ConfigError("N0 must be even");
  if (N0 <= N) throw ConfigError("N0 must exceed N (N <= N0 - 2)");
  if (M < 1) throw ConfigError("M must be >= 1");
  if (!(lambda > -0.5 + kLambdaMargin)) throw ConfigError("lambda must exceed -1/2 + 1e-6");
}

ADProblem test_problem(int id) {
  ADProblem p;
  switch (id) {
    case 1:
      p.name = "tp1";
      p.mu = 0.0;
      p.nu = 1.0;
      p.L = 2.0;
      p.T = 0.2;
      p.u0 = [](double x) { return std::sin(kPi * x); };
      p.g = [](double) { return 0.0; };
      p.exact = [](double x, double t) { return std::exp(-kPi * kPi * t) * std::sin(kPi * x); };
      p.exact_dx = [](double x, double t) { return kPi * std::exp(-kPi * kPi * t) * std::cos(kPi * x); };
      return p;
    case 2:
      p.name = "tp2";
      p.mu = 0.0;
      p.nu = 1.0 / (kPi * kPi);
      p.L = 2.0;
      p.T = 1.0;
      p.u0 = [](double x) { return std::sin(kPi * x); };
      p.g = [](double) { return 0.0; };
      p.exact = [](double x, double t) { return std::exp(-t) * std::sin(kPi * x); };
      p.exact_dx = [](double x, double t) { return kPi * std::exp(-t) * std::cos(kPi * x); };
      return p;
    case 3: {
      p.name = "tp3";
      p.mu = 0.01;
      p.nu = 0.1;
      p.L = 2.0;
      p.T = 0.1;
      const double mu = p.mu, nu = p.nu, L = p.L;
      p.u0 = [L](double x) { return std::sin(2.0 * kPi * x / L); };
      p.g = [=](double t) { return -std::exp(-kPi * kPi * nu * t) * std::sin(2.0 * kPi * mu * t / L); };
      p.exact = [=](double x, double t) {
        return -std::exp(-kPi * kPi * nu * t) * std::sin(kPi * (mu * t - 2.0 * x / L));
      };
      p.exact_dx = [=](double x, double t) {
        return (2.0 * kPi / L) * std::exp(-kPi * kPi * nu * t) * std::cos(kPi * (mu * t - 2.0 * x / L));
      };
      return p;
    }
    default:
      throw std::invalid_argument("test_problem: unknown id " + std::to_string(id) + " (expected 1, 2 or 3)");
  }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": key '" + key + "' has no value");
    if (entries.count(key)) throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    entries[key] = Entry{value, line_no};
  }
  const KeyReader keys(std::move(entries), source);

  RunConfig run;
  const auto mu = keys.real("mu");
  const auto nu = keys.real("nu");
  const auto L = keys.real("L");
  const auto T = keys.real("T");

  if (const auto id = keys.integer("problem_id")) {
    try {
      run.problem = test_problem(*id);
    } catch (const std::invalid_argument& e) {
      keys.fail("problem_id", e.what());
    }
    if (keys.has("u0") || keys.has("g")) keys.fail("u0", "u0/g cannot be combined with problem_id");
    if (mu || nu || L) {
      // Changing the physics leaves the single-harmonic family, which still
      // has a closed form.
      const ADProblem base = run.problem;
      run.problem = harmonic_family(base.name + "-modified", mu.value_or(base.mu), nu.value_or(base.nu),
                                    L.value_or(base.L), base.T, {{1, 1.0}});
    }
  } else {
    if (!keys.has("u0")) keys.fail("u0", "required when problem_id is absent");
    for (const char* k : {"mu", "nu", "L", "T"}) {
      if (!keys.has(k)) keys.fail(k, "required when problem_id is absent");
    }
    const std::string name = *keys.text("u0");
    std::vector<std::pair<int, double>> terms;
    if (name == "harmonic") {
      terms = {{1, 1.0}};
    } else if (name == "two_harmonic") {
      terms = {{1, 1.0}, {3, 0.5}};
    } else {
      keys.fail("u0", "unknown built-in '" + name + "' (expected harmonic or two_harmonic)");
    }
    run.problem = harmonic_family(name, *mu, *nu, *L, *T, terms);
    const std::string g_name = keys.text("g").value_or("trace");
    if (g_name == "zero") {
      if (*mu != 0.0) {
        run.problem.exact = nullptr;
        run.problem.exact_dx = nullptr;
      }
      run.problem.g = [](double) { return 0.0; };
    } else if (g_name != "trace") {
      keys.fail("g", "unknown built-in '" + g_name + "' (expected trace or zero)");
    }
  }
  if (T) run.problem.T = *T;

  try {
    run.problem.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }

  const auto N = keys.integer("N");
  const auto M = keys.integer("M");
  if (!N) keys.fail("N", "missing");
  if (!M) keys.fail("M", "missing");
  run.solver.N = *N;
  run.solver.M = *M;
  run.solver.N0 = keys.integer("N0").value_or(*N + 2);
  run.solver.lambda = keys.real("lambda").value_or(-0.4);
  try {
    run.solver.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }

  run.t_final = keys.real("t_final").value_or(run.problem.T);
  if (run.t_final < 0.0 || run.t_final > run.problem.T) keys.fail("t_final", "must lie in [0, T]");

  run.sweep_N = keys.int_range("sweep_N");
  run.sweep_M = keys.int_range("sweep_M");
  run.study_lambdas = keys.real_list("study_lambda");
  run.study_M = keys.int_range("study_M");
  run.repeats = keys.integer("repeats").value_or(5);
  if (run.repeats < 3) keys.fail("repeats", "must be >= 3");
  return run;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

}  // namespace fgig
