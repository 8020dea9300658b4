// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/bounds.hpp"
#include "bethezeros/polyzeros.hpp"
#include "bethezeros/solver.hpp"
#include "bethezeros/verify.hpp"

namespace bz = bethezeros;
using bz::kPi;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct TableCheck {
  bz::PolynomialSpec spec;
  std::vector<double> roots, lower, upper; // in xi_m..xi_1 order as printed
};

// criterion 1-3: table reproduction within +-5e-4, runtime < 1 s each
void table_criterion(int criterion, const TableCheck& t, const std::string& name) {
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd xi = bz::zeros_via_bethe(t.spec);
  const auto [km, kp] = bz::family_k_pm(t.spec.family, t.spec.n, t.spec.params, t.spec.q);
  const double elapsed = ms_since(t0);

  double worst = 0.0;
  const size_t m = t.roots.size();
  for (size_t i = 0; i < m; ++i) {
    const int j = static_cast<int>(m - i); // printed column xi_j
    worst = std::max(worst, std::fabs(xi[j - 1] - t.roots[i]));
    double lo, hi = bz::kInf;
    if (t.spec.family == bz::PolyFamily::ContinuousHahn) {
      lo = kPi * (t.spec.n + 1 - 2 * j) / (2.0 * km);
    } else {
      lo = kPi * (t.spec.n + 1 - j) / km;
      if (kp > 0.0) hi = kPi * (t.spec.n + 1 - j) / kp;
    }
    worst = std::max(worst, std::fabs(lo - t.lower[i]));
    if (!t.upper.empty()) worst = std::max(worst, std::fabs(hi - t.upper[i]));
  }
  const bool pass = worst <= 5e-4 && elapsed < 1000.0;
  char detail[128];
  std::snprintf(detail, sizeof detail, "max deviation %.2e, %.1f ms", worst, elapsed);
  report(criterion, pass, name, detail);
}

void criterion_chebyshev() {
  double worst_root = 0.0, worst_k = 0.0;
  bool ok = true;
  for (int n = 1; n <= 50; ++n) {
    bz::PolynomialSpec spec{bz::PolyFamily::AskeyWilson, n,
                            {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 0.0};
    const Eigen::VectorXd xi = bz::zeros_via_bethe(spec);
    for (int j = 1; j <= n; ++j)
      worst_root = std::max(worst_root, std::fabs(xi[j - 1] - (n + 1 - j) * kPi / (n + 1)));
    const auto [km, kp] = bz::family_k_pm(spec.family, n, spec.params, spec.q);
    worst_k = std::max({worst_k, std::fabs(km - (n + 1)), std::fabs(kp - (n + 1))});
  }
  ok = worst_root <= 1e-10 && worst_k == 0.0;
  char detail[128];
  std::snprintf(detail, sizeof detail, "max root error %.2e, k deviation %.1e", worst_root, worst_k);
  report(4, ok, "Chebyshev exactness for n = 1..50 at vanishing parameters", detail);
}

struct SweepData {
  std::vector<bz::PolynomialSpec> specs;
  std::vector<Eigen::VectorXd> bethe_roots;
  std::vector<double> bethe_res, de_res;
};

void criterion_oracle_equivalence(SweepData& sweep) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = 20240518;
  double worst = 0.0;
  int failures = 0;
  std::string first;
  for (bz::PolyFamily fam :
       {bz::PolyFamily::Wilson, bz::PolyFamily::AskeyWilson, bz::PolyFamily::ContinuousHahn}) {
    for (int i = 0; i < 100; ++i) {
      const bz::PolynomialSpec spec = bz::verify::random_spec(fam, seed, i);
      try {
        const bz::BetheSystem sys = bz::family_to_bethe(spec);
        const bz::BetheSolution sol = bz::solve(sys);
        const Eigen::VectorXd oracle = bz::zeros_via_oracle(spec);
        const double disc = (sol.xi - oracle).lpNorm<Eigen::Infinity>();
        worst = std::max(worst, disc);
        if (disc > 1e-8) {
          ++failures;
          if (first.empty()) first = std::string(bz::to_string(fam)) + " case " + std::to_string(i);
        }
        sweep.specs.push_back(spec);
        sweep.bethe_roots.push_back(sol.xi);
        sweep.bethe_res.push_back(sol.bethe_residual_max);
        sweep.de_res.push_back(bz::de_residual(spec, sol.xi));
      } catch (const std::exception& e) {
        ++failures;
        if (first.empty())
          first = std::string(bz::to_string(fam)) + " case " + std::to_string(i) + ": " + e.what();
      }
    }
  }
  const double elapsed = ms_since(t0);
  const bool pass = failures == 0 && elapsed < 60000.0;
  char detail[256];
  if (first.empty())
    std::snprintf(detail, sizeof detail, "300 specs, max discrepancy %.2e, %.0f ms", worst, elapsed);
  else
    std::snprintf(detail, sizeof detail, "300 specs, max discrepancy %.2e, %.0f ms, first failure: %s",
                  worst, elapsed, first.c_str());
  report(5, pass, "oracle equivalence over 100 seeded specs per family", detail);
}

void criterion_bound_satisfaction(const SweepData& sweep) {
  int violations = 0;
  std::string first;
  for (size_t i = 0; i < sweep.specs.size(); ++i) {
    const std::string msg = bz::verify::check_theorem_bounds(sweep.specs[i], sweep.bethe_roots[i]);
    if (!msg.empty()) {
      ++violations;
      if (first.empty()) first = msg;
    }
  }
  int sys_violations = 0;
  const std::uint64_t seed = 777;
  for (bz::SystemType st : {bz::SystemType::A, bz::SystemType::B}) {
    for (bz::PotentialKind k : {bz::PotentialKind::Rational, bz::PotentialKind::Hyperbolic,
                                bz::PotentialKind::Trigonometric}) {
      for (int i = 0; i < 50; ++i) {
        const bz::BetheSystem sys = bz::verify::random_system(st, k, seed, i);
        try {
          const bz::BetheSolution sol = bz::solve(sys);
          if (!bz::satisfies_bounds(sys, bz::bound_box(sys), sol.xi, 1e-12)) ++sys_violations;
        } catch (const std::exception&) {
          ++sys_violations;
        }
      }
    }
  }
  const bool pass = violations == 0 && sys_violations == 0;
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "%d theorem violations over %zu specs, %d box violations over 300 systems%s%s",
                violations, sweep.specs.size(), sys_violations, first.empty() ? "" : "; first: ",
                first.c_str());
  report(6, pass, "bound satisfaction (theorems and a-priori boxes, slack 1e-12)", detail);
}

void criterion_self_consistency(const SweepData& sweep) {
  // 200 random points: FD hessian vs gradient (rel 1e-6), FD morse vs
  // gradient (rel 1e-5), Cholesky success; residuals at converged solutions.
  const std::uint64_t seed = 424242;
  bz::verify::Rng rng(seed);
  int fd_failures = 0, llt_failures = 0;
  double worst_h = 0.0, worst_m = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto st = rng.coin() ? bz::SystemType::A : bz::SystemType::B;
    const auto kind = static_cast<bz::PotentialKind>(rng.uniform_int(0, 2));
    const bz::BetheSystem sys = bz::verify::random_system(st, kind, seed, t);
    Eigen::VectorXd x(sys.n);
    double prev = rng.uniform(2.0, 4.0);
    for (int j = 0; j < sys.n; ++j) {
      x[j] = prev;
      prev -= rng.uniform(0.2, 0.8);
    }
    const Eigen::VectorXd g = bz::gradient(sys, x);
    const Eigen::MatrixXd H = bz::hessian(sys, x);
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) ++llt_failures;
    const double h = 1e-5;
    for (int l = 0; l < sys.n; ++l) {
      Eigen::VectorXd xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      const Eigen::VectorXd col = (bz::gradient(sys, xp) - bz::gradient(sys, xm)) / (2 * h);
      for (int j = 0; j < sys.n; ++j) {
        const double rel = std::fabs(col[j] - H(j, l)) / std::max(1.0, std::fabs(H(j, l)));
        worst_h = std::max(worst_h, rel);
      }
      const double fd = (bz::morse_value(sys, xp) - bz::morse_value(sys, xm)) / (2 * h);
      const double rel = std::fabs(fd - g[l]) / std::max(1.0, std::fabs(g[l]));
      worst_m = std::max(worst_m, rel);
    }
  }
  if (worst_h > 1e-6 || worst_m > 1e-5) ++fd_failures;

  double worst_bethe = 0.0, worst_de = 0.0;
  for (size_t i = 0; i < sweep.specs.size(); ++i) {
    worst_bethe = std::max(worst_bethe, sweep.bethe_res[i]);
    worst_de = std::max(worst_de, sweep.de_res[i]);
  }
  const bool pass = fd_failures == 0 && llt_failures == 0 && worst_bethe <= 1e-8 && worst_de <= 1e-8;
  char detail[256];
  std::snprintf(detail, sizeof detail,
                "fd hessian %.2e, fd morse %.2e, llt failures %d, bethe res %.2e, de res %.2e",
                worst_h, worst_m, llt_failures, worst_bethe, worst_de);
  report(7, pass, "numerical self-consistency on 200 points and all converged solutions", detail);
}

// Independent adaptive Simpson quadrature of the defining integrands.
double integrand(const bz::CoupledParameter& p, double y) {
  switch (p.kind) {
    case bz::PotentialKind::Rational:
      return 2.0 * p.magnitude / (p.magnitude * p.magnitude + y * y);
    case bz::PotentialKind::Hyperbolic:
      return std::sin(p.magnitude) / (std::cosh(y) - std::cos(p.magnitude));
    case bz::PotentialKind::Trigonometric:
      return std::sinh(p.magnitude) / (std::cosh(p.magnitude) - p.trig_sign * std::cos(y));
  }
  return 0.0;
}

double simpson_rec(const bz::CoupledParameter& p, double a, double b, double fa, double fm,
                   double fb, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = integrand(p, lm), frm = integrand(p, rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(p, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
         simpson_rec(p, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double quad_integrand(const bz::CoupledParameter& p, double x) {
  if (x == 0.0) return 0.0;
  return simpson_rec(p, 0.0, x, integrand(p, 0.0), integrand(p, 0.5 * x), integrand(p, x), 1e-14, 48);
}

void criterion_closed_forms() {
  bz::verify::Rng rng(5150);
  double worst = 0.0;
  for (int kindi = 0; kindi < 3; ++kindi) {
    const auto kind = static_cast<bz::PotentialKind>(kindi);
    for (int t = 0; t < 20; ++t) {
      bz::CoupledParameter p;
      p.kind = kind;
      switch (kind) {
        case bz::PotentialKind::Rational: p.magnitude = rng.uniform(0.05, 4.0); break;
        case bz::PotentialKind::Hyperbolic: p.magnitude = rng.uniform(0.05, kPi - 0.05); break;
        case bz::PotentialKind::Trigonometric:
          p.magnitude = rng.uniform(0.05, 4.0);
          p.trig_sign = rng.coin() ? +1 : -1;
          break;
      }
      for (int i = 0; i < 100; ++i) {
        const double x = -10.0 + 20.0 * (i + 0.5) / 100.0;
        worst = std::max(worst, std::fabs(bz::v_eval(p, x) - quad_integrand(p, x)));
      }
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "max |closed form - quadrature| = %.2e over 60 parameters",
                worst);
  report(8, worst <= 1e-10, "closed-form potentials match the defining integrals", detail);
}

} // namespace

int main() {
  table_criterion(1,
                  {{bz::PolyFamily::AskeyWilson, 5,
                    {{0.300, 0.0}, {-0.200, 0.0}, {0.150, 0.0}, {0.100, 0.0}}, 0.100},
                   {0.496, 0.997, 1.508, 2.033, 2.577},
                   {0.400, 0.800, 1.200, 1.600, 2.000},
                   {0.675, 1.350, 2.025, 2.700, 3.375}},
                  "Table 1 reproduction (Askey-Wilson n=5)");
  table_criterion(2,
                  {{bz::PolyFamily::Wilson, 5,
                    {{1.150, 0.0}, {1.100, 0.0}, {1.000, 0.0}, {0.900, 0.0}}, 0.0},
                   {0.632, 1.292, 2.090, 3.099, 4.477},
                   {0.264, 0.528, 0.793, 1.057, 1.321},
                   {}},
                  "Table 2 reproduction (Wilson n=5)");
  table_criterion(3,
                  {{bz::PolyFamily::ContinuousHahn, 10, {{1.100, 0.0}, {0.900, 0.0}}, 0.0},
                   {0.261, 0.838, 1.554, 2.481, 3.770},
                   {0.131, 0.392, 0.653, 0.915, 1.176},
                   {}},
                  "Table 3 reproduction (continuous Hahn n=10, positive zeros)");
  criterion_chebyshev();
  SweepData sweep;
  criterion_oracle_equivalence(sweep);
  criterion_bound_satisfaction(sweep);
  criterion_self_consistency(sweep);
  criterion_closed_forms();

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 8 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
