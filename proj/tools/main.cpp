// bethe-zeros: solve convex Bethe systems and compute orthogonal polynomial
// zeros with certified a-priori bounds.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/bounds.hpp"
#include "bethezeros/errors.hpp"
#include "bethezeros/polyzeros.hpp"
#include "bethezeros/serialization.hpp"
#include "bethezeros/solver.hpp"
#include "bethezeros/verify.hpp"
#include "bethezeros/version.hpp"

namespace bz = bethezeros;
using bz::json;

namespace {

enum ExitCode {
  kOk = 0,
  kValidation = 1,
  kNonConvergence = 2,
  kTableMismatch = 3,
  kVerifyFailure = 4,
};

std::string fmt_num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Three decimals, half away from zero (table reproduction convention).
std::string fmt3(double x) {
  const double y = std::round(x * 1000.0) / 1000.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", y);
  return buf;
}

struct Timings {
  double solve_ms = 0.0;
  double oracle_ms = 0.0;
};

class Stopwatch {
public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_;
};

/// Everything a command run produced. Timings go to stderr only, so stdout
/// stays byte-identical across identical invocations.
struct RunReport {
  std::string command;
  json input;
  Eigen::VectorXd roots;
  Eigen::VectorXd lower, upper; // per-root bounds (family or coordinate)
  std::optional<Eigen::VectorXd> oracle_roots;
  Eigen::VectorXd bethe_res;
  std::optional<Eigen::VectorXd> de_res;
  double grad_norm = 0.0;
  int iterations = 0;
  bool within_bounds = false;
  double kappa_minus = 0.0, kappa_plus = 0.0;
  Timings timings;
};

json report_to_json(const RunReport& r) {
  json j;
  j["tool"] = bz::kToolName;
  j["version"] = bz::kVersion;
  j["command"] = r.command;
  j["input"] = r.input;
  j["roots"] = json::array();
  for (int i = 0; i < r.roots.size(); ++i) j["roots"].push_back(r.roots[i]);
  j["bounds"]["lower"] = json::array();
  j["bounds"]["upper"] = json::array();
  for (int i = 0; i < r.lower.size(); ++i) {
    j["bounds"]["lower"].push_back(bz::num_or_inf(r.lower[i]));
    j["bounds"]["upper"].push_back(bz::num_or_inf(r.upper[i]));
  }
  j["bounds"]["kappa_minus"] = r.kappa_minus;
  j["bounds"]["kappa_plus"] = r.kappa_plus;
  if (r.oracle_roots) {
    j["oracle_roots"] = json::array();
    for (int i = 0; i < r.oracle_roots->size(); ++i) j["oracle_roots"].push_back((*r.oracle_roots)[i]);
    j["residuals"]["max_oracle_discrepancy"] =
        (r.roots - *r.oracle_roots).lpNorm<Eigen::Infinity>();
  }
  j["residuals"]["grad_norm"] = r.grad_norm;
  j["residuals"]["bethe_residual"] = json::array();
  for (int i = 0; i < r.bethe_res.size(); ++i) j["residuals"]["bethe_residual"].push_back(r.bethe_res[i]);
  if (r.de_res) {
    j["residuals"]["de_residual"] = json::array();
    for (int i = 0; i < r.de_res->size(); ++i) j["residuals"]["de_residual"].push_back((*r.de_res)[i]);
  }
  j["certificate"]["iterations"] = r.iterations;
  j["certificate"]["within_bounds"] = r.within_bounds;
  return j;
}

void print_csv(const RunReport& r, std::ostream& os) {
  os << "j,root,lower,upper,oracle_root,bethe_residual,de_residual\n";
  for (int i = 0; i < r.roots.size(); ++i) {
    os << (i + 1) << ',' << fmt_num(r.roots[i]) << ',' << fmt_num(r.lower[i]) << ','
       << fmt_num(r.upper[i]) << ',';
    if (r.oracle_roots) os << fmt_num((*r.oracle_roots)[i]);
    os << ',' << fmt_num(r.bethe_res[i]) << ',';
    if (r.de_res) os << fmt_num((*r.de_res)[i]);
    os << '\n';
  }
}

void print_table(const RunReport& r, std::ostream& os) {
  os << "  j  root            lower           upper          ";
  if (r.oracle_roots) os << " oracle_root    ";
  os << " bethe_residual\n";
  for (int i = 0; i < r.roots.size(); ++i) {
    char line[256];
    std::snprintf(line, sizeof line, "%3d  %-15.10g %-15.10g %-15.10g", i + 1, r.roots[i],
                  r.lower[i], r.upper[i]);
    os << line;
    if (r.oracle_roots) {
      std::snprintf(line, sizeof line, " %-15.10g", (*r.oracle_roots)[i]);
      os << line;
    }
    std::snprintf(line, sizeof line, " %-12.3e\n", r.bethe_res[i]);
    os << line;
  }
  os << "iterations " << r.iterations << ", grad_norm " << fmt_num(r.grad_norm)
     << ", within_bounds " << (r.within_bounds ? "yes" : "no");
  if (r.de_res) os << ", de_residual " << fmt_num(r.de_res->maxCoeff());
  if (r.oracle_roots)
    os << ", max_oracle_discrepancy "
       << fmt_num((r.roots - *r.oracle_roots).lpNorm<Eigen::Infinity>());
  os << "\n";
}

void emit(const RunReport& r, const std::string& format) {
  if (format == "json") std::cout << report_to_json(r).dump(2) << "\n";
  else if (format == "csv") print_csv(r, std::cout);
  else print_table(r, std::cout);
  std::cerr << "timing: solve=" << r.timings.solve_ms << "ms oracle=" << r.timings.oracle_ms
            << "ms\n";
}

int cmd_solve(const std::string& config_path, double tol, int max_iters, const std::string& format) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open '" << config_path << "'\n";
    return kValidation;
  }
  json cfg = json::parse(in);
  if (!cfg.contains("system"))
    throw bz::ValidationError("config must contain a top-level \"system\" object");
  const bz::BetheSystem sys = bz::system_from_json(cfg.at("system"));
  bz::SolverConfig scfg;
  scfg.grad_tol = tol;
  scfg.max_iters = max_iters;

  RunReport rep;
  rep.command = "solve";
  rep.input = json{{"system", bz::system_to_json(sys)}};
  Stopwatch sw;
  const bz::BetheSolution sol = bz::solve(sys, scfg);
  rep.timings.solve_ms = sw.ms();
  const bz::BoundBox box = bz::bound_box(sys);
  rep.roots = sol.xi;
  rep.lower = box.coord_lower;
  rep.upper = box.coord_upper;
  rep.bethe_res = bz::bethe_residual(sys, sol.xi);
  rep.grad_norm = sol.grad_norm;
  rep.iterations = sol.iterations;
  rep.within_bounds = sol.within_bounds;
  rep.kappa_minus = box.kappa_minus;
  rep.kappa_plus = box.kappa_plus;
  emit(rep, format);
  return kOk;
}

bz::PolynomialSpec spec_from_cli(const std::string& family, int n, const std::string& params_csv) {
  bz::PolynomialSpec spec;
  spec.family = bz::family_from_string(family);
  spec.n = n;
  std::vector<std::complex<double>> values;
  std::stringstream ss(params_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // accept "x" or "re+imi" / "re-imi"
    size_t pos = tok.find_first_of("+-", 1);
    while (pos != std::string::npos && (tok[pos - 1] == 'e' || tok[pos - 1] == 'E'))
      pos = tok.find_first_of("+-", pos + 1);
    if (pos != std::string::npos && tok.back() == 'i') {
      const double re = std::stod(tok.substr(0, pos));
      const double im = std::stod(tok.substr(pos, tok.size() - pos - 1));
      values.emplace_back(re, im);
    } else {
      values.emplace_back(std::stod(tok), 0.0);
    }
  }
  if (spec.family == bz::PolyFamily::AskeyWilson) {
    if (values.size() != 5)
      throw bz::ValidationError("askey-wilson takes 5 comma-separated parameters a,b,c,d,q");
    if (values[4].imag() != 0.0) throw bz::ValidationError("q must be real");
    spec.q = values[4].real();
    values.pop_back();
  }
  spec.params = values;
  bz::validate(spec);
  return spec;
}

RunReport run_zeros(const bz::PolynomialSpec& spec, const bz::SolverConfig& scfg) {
  RunReport rep;
  rep.command = "zeros";
  rep.input = json{{"polynomial", bz::polynomial_to_json(spec)}};
  const bz::BetheSystem sys = bz::family_to_bethe(spec);
  Stopwatch sw;
  const bz::BetheSolution sol = bz::solve(sys, scfg);
  rep.timings.solve_ms = sw.ms();
  Stopwatch sw2;
  rep.oracle_roots = bz::zeros_via_oracle(spec);
  rep.timings.oracle_ms = sw2.ms();
  rep.roots = sol.xi;
  const auto [km, kp] = bz::family_k_pm(spec.family, spec.n, spec.params, spec.q);
  rep.kappa_minus = km;
  rep.kappa_plus = kp;
  rep.lower.resize(spec.n);
  rep.upper.resize(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    if (spec.family == bz::PolyFamily::ContinuousHahn) {
      // one-sided bounds for the positive zeros; others unbounded
      const int jj = j + 1;
      rep.lower[j] = (jj <= spec.n / 2) ? bz::kPi * (spec.n + 1 - 2 * jj) / (2.0 * km) : -bz::kInf;
      rep.upper[j] = bz::kInf;
    } else {
      rep.lower[j] = bz::kPi * (spec.n - j) / km;
      rep.upper[j] = (kp > 0.0) ? bz::kPi * (spec.n - j) / kp : bz::kInf;
    }
  }
  rep.bethe_res = bz::bethe_residual(sys, sol.xi);
  rep.de_res = bz::de_residual_components(spec, sol.xi);
  rep.grad_norm = sol.grad_norm;
  rep.iterations = sol.iterations;
  rep.within_bounds = sol.within_bounds;
  return rep;
}

int cmd_zeros(const std::string& family, int n, const std::string& params_csv, double tol,
              int max_iters, const std::string& format) {
  const bz::PolynomialSpec spec = spec_from_cli(family, n, params_csv);
  bz::SolverConfig scfg;
  scfg.grad_tol = tol;
  scfg.max_iters = max_iters;
  emit(run_zeros(spec, scfg), format);
  return kOk;
}

struct TableDef {
  bz::PolynomialSpec spec;
  std::vector<double> roots, lower, upper; // printed values, j = n..1 order for the positive half
};

TableDef table_def(int which) {
  TableDef t;
  switch (which) {
    case 1:
      t.spec.family = bz::PolyFamily::AskeyWilson;
      t.spec.n = 5;
      t.spec.params = {{0.300, 0.0}, {-0.200, 0.0}, {0.150, 0.0}, {0.100, 0.0}};
      t.spec.q = 0.100;
      t.roots = {0.496, 0.997, 1.508, 2.033, 2.577};
      t.lower = {0.400, 0.800, 1.200, 1.600, 2.000};
      t.upper = {0.675, 1.350, 2.025, 2.700, 3.375};
      break;
    case 2:
      t.spec.family = bz::PolyFamily::Wilson;
      t.spec.n = 5;
      t.spec.params = {{1.150, 0.0}, {1.100, 0.0}, {1.000, 0.0}, {0.900, 0.0}};
      t.roots = {0.632, 1.292, 2.090, 3.099, 4.477};
      t.lower = {0.264, 0.528, 0.793, 1.057, 1.321};
      break;
    case 3:
      t.spec.family = bz::PolyFamily::ContinuousHahn;
      t.spec.n = 10;
      t.spec.params = {{1.100, 0.0}, {0.900, 0.0}};
      t.roots = {0.261, 0.838, 1.554, 2.481, 3.770};
      t.lower = {0.131, 0.392, 0.653, 0.915, 1.176};
      break;
    default:
      throw bz::ValidationError("--which must be 1, 2, or 3");
  }
  return t;
}

int cmd_table(int which, bool check, const std::string& format) {
  const TableDef def = table_def(which);
  RunReport rep = run_zeros(def.spec, {});
  rep.command = "table";

  // printed orientation: columns xi_m .. xi_1 over the positive zeros
  const int m = static_cast<int>(def.roots.size());
  std::vector<double> roots(m), lower(m), upper(m);
  for (int i = 0; i < m; ++i) {
    roots[i] = rep.roots[m - 1 - i];     // xi_m ... xi_1
    lower[i] = rep.lower[m - 1 - i];
    upper[i] = rep.upper[m - 1 - i];
  }

  if (format == "json" || format == "csv") {
    emit(rep, format);
  } else {
    std::cout << "Table " << which << ": " << bz::to_string(def.spec.family)
              << " n=" << def.spec.n << "\n";
    auto row = [&](const char* name, const std::vector<double>& xs) {
      std::cout << name;
      for (double x : xs) std::cout << '\t' << fmt3(x);
      std::cout << "\n";
    };
    std::cout << "j";
    for (int i = m; i >= 1; --i) std::cout << "\txi_" << i;
    std::cout << "\n";
    row("root", roots);
    row("lower", lower);
    if (which == 1) row("upper", upper);
    std::cerr << "timing: solve=" << rep.timings.solve_ms << "ms oracle=" << rep.timings.oracle_ms
              << "ms\n";
  }

  if (!check) return kOk;
  std::vector<std::string> bad;
  auto compare = [&](const char* what, const std::vector<double>& got,
                     const std::vector<double>& want) {
    for (size_t i = 0; i < want.size(); ++i) {
      if (std::fabs(got[i] - want[i]) > 5e-4) {
        std::ostringstream os;
        os << what << " xi_" << (i + 1) << ": got " << fmt_num(got[i]) << ", expected "
           << fmt3(want[i]);
        bad.push_back(os.str());
      }
    }
  };
  compare("root", roots, def.roots);
  compare("lower", lower, def.lower);
  if (!def.upper.empty()) compare("upper", upper, def.upper);
  if (bad.empty()) {
    std::cout << "check: table " << which << " matches the embedded values within 5e-4\n";
    return kOk;
  }
  std::cout << "check: table " << which << " MISMATCH\n";
  for (const auto& b : bad) std::cout << "  " << b << "\n";
  return kTableMismatch;
}

int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  long cap = static_cast<long>(hw);
  if (const char* env = std::getenv("BETHE_ZEROS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = std::min(cap, v);
  }
  return static_cast<int>(cap);
}

int cmd_verify(std::uint64_t seed, int cases) {
  namespace vf = bz::verify;
  std::cout << "verify: seed=" << seed << " cases=" << cases << "\n";
  if (cases == 0) {
    std::cout << "warning: 0 cases requested; vacuous pass\n";
    return kOk;
  }
  struct Job {
    std::function<vf::CaseResult()> run;
  };
  std::vector<Job> jobs;
  for (bz::PolyFamily fam :
       {bz::PolyFamily::Wilson, bz::PolyFamily::AskeyWilson, bz::PolyFamily::ContinuousHahn}) {
    for (int i = 0; i < cases; ++i) {
      jobs.push_back({[fam, seed, i] {
        std::ostringstream lab;
        lab << bz::to_string(fam) << " case " << i;
        return vf::check_polynomial_case(vf::random_spec(fam, seed, i), lab.str());
      }});
    }
  }
  for (bz::SystemType st : {bz::SystemType::A, bz::SystemType::B}) {
    for (bz::PotentialKind k : {bz::PotentialKind::Rational, bz::PotentialKind::Hyperbolic,
                                bz::PotentialKind::Trigonometric}) {
      for (int i = 0; i < cases; ++i) {
        jobs.push_back({[st, k, seed, i] {
          std::ostringstream lab;
          lab << "system " << bz::to_string(st) << "/" << bz::to_string(k) << " case " << i;
          return vf::check_system_case(vf::random_system(st, k, seed, i), lab.str());
        }});
      }
    }
  }

  std::vector<vf::CaseResult> results(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      results[i] = jobs[i].run();
    }
  };
  const int nthreads = std::min<int>(thread_cap(), static_cast<int>(jobs.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int passed = 0;
  const vf::CaseResult* first_fail = nullptr;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << r.label << ": " << r.detail << "\n";
    if (r.pass) ++passed;
    else if (!first_fail) first_fail = &r;
  }
  std::cout << "verify: " << passed << "/" << results.size() << " cases passed\n";
  if (first_fail) {
    std::cout << "first counterexample (reusable config):\n"
              << first_fail->config.dump(2) << "\n";
    return kVerifyFailure;
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex Bethe-Ansatz systems and zeros of Wilson, Askey-Wilson, and "
               "continuous Hahn polynomials"};
  app.set_version_flag("--version", std::string(bz::kVersion));
  app.require_subcommand(1);

  std::string config_path, family, params_csv, format = "table";
  int n = 1, max_iters = 200, which = 1, cases = 25;
  double tol = 1e-12;
  bool check = false;
  std::uint64_t seed = 0;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"table", "csv", "json"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "solve a Bethe system from a JSON config");
  solve->add_option("config", config_path, "JSON file with a top-level \"system\"")->required();
  solve->add_option("--tol", tol, "gradient infinity-norm tolerance");
  solve->add_option("--max-iters", max_iters, "Newton iteration cap");
  add_format(solve);

  CLI::App* zeros = app.add_subcommand("zeros", "compute polynomial zeros and bounds");
  zeros->add_option("--family", family, "wilson | askey-wilson | continuous-hahn")->required();
  zeros->add_option("--n", n, "polynomial degree")->required();
  zeros->add_option("--params", params_csv,
                    "comma-separated parameters (a,b,c,d[,q]); complex as re+imi")->required();
  zeros->add_option("--tol", tol, "gradient infinity-norm tolerance");
  zeros->add_option("--max-iters", max_iters, "Newton iteration cap");
  add_format(zeros);

  CLI::App* table = app.add_subcommand("table", "reproduce a table of roots and bounds");
  table->add_option("--which", which, "table number")->check(CLI::IsMember({1, 2, 3}))->required();
  table->add_flag("--check", check, "compare against embedded expected values");
  add_format(table);

  CLI::App* verify = app.add_subcommand("verify", "run the seeded property suites");
  verify->add_option("--seed", seed, "RNG seed");
  verify->add_option("--cases", cases, "cases per category")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, tol, max_iters, format);
    if (zeros->parsed()) return cmd_zeros(family, n, params_csv, tol, max_iters, format);
    if (table->parsed()) return cmd_table(which, check, format);
    if (verify->parsed()) return cmd_verify(seed, cases);
  } catch (const bz::NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << " (grad_norm " << e.grad_norm << " after "
              << e.iterations << " iterations)\n";
    return kNonConvergence;
  } catch (const bz::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
