#ifndef BETHEZEROS_VERIFY_HPP
#define BETHEZEROS_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/bounds.hpp"
#include "bethezeros/polyzeros.hpp"
#include "bethezeros/serialization.hpp"
#include "bethezeros/solver.hpp"

namespace bethezeros::verify {

/// Deterministic uniform sampling on top of the (standardized) mt19937_64
/// stream, so seeded runs are bit-identical across platforms. Distribution
/// classes from <random> are not pinned by the standard and are avoided.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (eng_() & 1u) != 0; }

private:
  std::mt19937_64 eng_;
};

inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  // splitmix64 over a stream/index tag; decorrelates cases so they can run
  // in any order or in parallel.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream * 0x100000001ull + index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Random spec in the theorem domain. Index 0 is always the conjugate-pair
/// case of the family; Askey-Wilson sampling covers negative parameters.
inline PolynomialSpec random_spec(PolyFamily family, std::uint64_t seed, int index) {
  Rng rng(case_seed(seed, static_cast<std::uint64_t>(family), static_cast<std::uint64_t>(index)));
  PolynomialSpec spec;
  spec.family = family;
  spec.n = rng.uniform_int(1, 12);
  const bool pair_case = (index == 0);
  switch (family) {
    case PolyFamily::Wilson: {
      for (int i = 0; i < 4; ++i) spec.params.emplace_back(rng.uniform(0.1, 2.0), 0.0);
      if (pair_case) {
        const double re = rng.uniform(0.3, 1.5), im = rng.uniform(0.1, 1.0);
        spec.params[0] = {re, im};
        spec.params[1] = {re, -im};
      }
      break;
    }
    case PolyFamily::AskeyWilson: {
      for (int i = 0; i < 4; ++i) spec.params.emplace_back(rng.uniform(-0.95, 0.95), 0.0);
      if (pair_case) {
        const double r = rng.uniform(0.1, 0.9), ph = rng.uniform(0.2, kPi - 0.2);
        spec.params[0] = std::polar(r, ph);
        spec.params[1] = std::conj(spec.params[0]);
      }
      spec.q = rng.uniform(-0.95, 0.95);
      break;
    }
    case PolyFamily::ContinuousHahn: {
      for (int i = 0; i < 2; ++i) spec.params.emplace_back(rng.uniform(0.1, 2.0), 0.0);
      if (pair_case) {
        const double re = rng.uniform(0.3, 1.5), im = rng.uniform(0.1, 1.0);
        spec.params[0] = {re, im};
        spec.params[1] = {re, -im};
      }
      break;
    }
  }
  validate(spec);
  return spec;
}

/// Random alpha > 0 system of the given type and kind, with occasional free
/// limits and conjugate pairs where the kind admits them.
inline BetheSystem random_system(SystemType stype, PotentialKind kind, std::uint64_t seed, int index) {
  const std::uint64_t stream = 16 + 2 * static_cast<std::uint64_t>(kind) + (stype == SystemType::B);
  Rng rng(case_seed(seed, stream, static_cast<std::uint64_t>(index)));
  BetheSystem sys;
  sys.stype = stype;
  sys.kind = kind;
  sys.n = rng.uniform_int(1, 8);
  sys.alpha = rng.uniform(0.1, 3.0);
  if (stype == SystemType::A) sys.beta = rng.uniform(0.0, 0.999);
  else sys.epsilon = rng.coin() ? 1 : 0;
  auto draw_param = [&]() {
    CoupledParameter p;
    p.kind = kind;
    switch (kind) {
      case PotentialKind::Rational:
        p.magnitude = rng.uniform(0.2, 3.0);
        if (rng.uniform() < 0.25) p.pair_offset = rng.uniform(0.1, 1.5);
        break;
      case PotentialKind::Hyperbolic:
        p.magnitude = rng.uniform(0.1, kPi - 0.1);
        if (rng.uniform() < 0.25) p.pair_offset = rng.uniform(0.1, 1.5);
        break;
      case PotentialKind::Trigonometric: {
        const double u = rng.uniform();
        p.magnitude = rng.uniform(0.2, 3.0);
        if (u < 0.15) p.magnitude = kInf;
        else if (u < 0.4) p.trig_sign = -1;
        else if (u < 0.6) p.pair_offset = rng.uniform(0.1, kPi - 0.2);
        break;
      }
    }
    return p;
  };
  const int K = rng.uniform_int(0, 3);
  const int L = rng.uniform_int(0, 2);
  for (int i = 0; i < K; ++i) sys.a_params.push_back(draw_param());
  for (int i = 0; i < L; ++i) sys.b_params.push_back(draw_param());
  // strictly decreasing mu; positive for type B
  int floor_mu = (stype == SystemType::B) ? 1 : -6;
  std::vector<int> mu(static_cast<size_t>(sys.n));
  int cur = floor_mu + rng.uniform_int(0, 3);
  for (int j = sys.n - 1; j >= 0; --j) {
    mu[static_cast<size_t>(j)] = cur;
    cur += rng.uniform_int(1, 3);
  }
  sys.mu = mu;
  validate(sys);
  return sys;
}

struct CaseResult {
  bool pass = true;
  std::string label;
  std::string detail;   // deterministic one-line summary
  json config;          // reusable configuration for reproduction
};

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

/// Checks the zero-location theorem inequalities for a computed root vector.
/// Returns an empty string on success, a description of the first violated
/// inequality otherwise.
inline std::string check_theorem_bounds(const PolynomialSpec& spec, const Eigen::VectorXd& xi,
                                        double slack = 1e-12) {
  const int n = spec.n;
  const auto [km, kp] = family_k_pm(spec.family, n, spec.params, spec.q);
  std::ostringstream os;
  if (spec.family != PolyFamily::ContinuousHahn) {
    for (int j = 0; j < n; ++j) {
      const double lo = kPi * (n - j) / km;
      if (xi[j] < lo - slack) {
        os << "coordinate lower bound violated at j=" << (j + 1);
        return os.str();
      }
      if (spec.family == PolyFamily::AskeyWilson) {
        const double hi = kPi * (n - j) / kp;
        if (xi[j] > hi + slack) {
          os << "coordinate upper bound violated at j=" << (j + 1);
          return os.str();
        }
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const double gap = xi[j] - xi[l];
      const double lo = kPi * (l - j) / km;
      if (gap < lo - slack) {
        os << "gap lower bound violated at (" << (j + 1) << "," << (l + 1) << ")";
        return os.str();
      }
      if (spec.family == PolyFamily::AskeyWilson) {
        const double hi = kPi * (l - j) / kp;
        if (gap > hi + slack) {
          os << "gap upper bound violated at (" << (j + 1) << "," << (l + 1) << ")";
          return os.str();
        }
      }
    }
  }
  if (spec.family == PolyFamily::AskeyWilson) {
    for (int j = 0; j < n; ++j)
      if (!(xi[j] > -slack && xi[j] < kPi + slack)) return "root outside (0, pi)";
  }
  if (spec.family == PolyFamily::ContinuousHahn) {
    for (int j = 1; j <= n / 2; ++j) {
      const double lo = kPi * (n + 1 - 2 * j) / (2.0 * km);
      if (xi[j - 1] < lo - slack) {
        os << "positive-zero lower bound violated at j=" << j;
        return os.str();
      }
    }
  }
  return {};
}

/// One polynomial sweep case: Bethe route vs oracle route, theorem bounds,
/// and both residual certificates.
inline CaseResult check_polynomial_case(const PolynomialSpec& spec, const std::string& label) {
  CaseResult res;
  res.label = label;
  res.config = json{{"polynomial", polynomial_to_json(spec)}};
  try {
    const BetheSystem sys = family_to_bethe(spec);
    const BetheSolution sol = solve(sys);
    const Eigen::VectorXd oracle = zeros_via_oracle(spec);
    const double disc = (sol.xi - oracle).lpNorm<Eigen::Infinity>();
    const double deres = de_residual(spec, sol.xi);
    std::string bounds_msg = check_theorem_bounds(spec, sol.xi);
    std::ostringstream os;
    os << "n=" << spec.n << " disc=" << fmt(disc) << " bethe_res=" << fmt(sol.bethe_residual_max)
       << " de_res=" << fmt(deres);
    res.detail = os.str();
    if (disc > 1e-8) { res.pass = false; res.detail += " [oracle discrepancy > 1e-8]"; }
    if (!bounds_msg.empty()) { res.pass = false; res.detail += " [" + bounds_msg + "]"; }
    if (sol.bethe_residual_max > 1e-8) { res.pass = false; res.detail += " [bethe residual > 1e-8]"; }
    if (deres > 1e-8) { res.pass = false; res.detail += " [de residual > 1e-8]"; }
    if (!sol.within_bounds) { res.pass = false; res.detail += " [outside bound box]"; }
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

/// One alpha > 0 system case: solve, box satisfaction, and the
/// finite-difference consistency of gradient/Hessian/Morse at the solution.
inline CaseResult check_system_case(const BetheSystem& sys, const std::string& label) {
  CaseResult res;
  res.label = label;
  res.config = json{{"system", system_to_json(sys)}};
  try {
    const BetheSolution sol = solve(sys);
    std::ostringstream os;
    os << "n=" << sys.n << " iters=" << sol.iterations << " bethe_res=" << fmt(sol.bethe_residual_max);
    res.detail = os.str();
    if (!sol.within_bounds) { res.pass = false; res.detail += " [outside bound box]"; }
    if (sol.bethe_residual_max > 1e-8) { res.pass = false; res.detail += " [bethe residual > 1e-8]"; }

    const Eigen::VectorXd& x = sol.xi;
    const Eigen::MatrixXd H = hessian(sys, x);
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) { res.pass = false; res.detail += " [Hessian factorization failed]"; }
    const double h = 1e-5;
    double worst_h = 0.0, worst_m = 0.0;
    for (int l = 0; l < sys.n; ++l) {
      Eigen::VectorXd xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      const Eigen::VectorXd fd_col = (gradient(sys, xp) - gradient(sys, xm)) / (2.0 * h);
      for (int j = 0; j < sys.n; ++j) {
        const double scale = std::max(1.0, std::fabs(H(j, l)));
        worst_h = std::max(worst_h, std::fabs(fd_col[j] - H(j, l)) / scale);
      }
      const double fd_g = (morse_value(sys, xp) - morse_value(sys, xm)) / (2.0 * h);
      const Eigen::VectorXd g = gradient(sys, x);
      const double scale = std::max(1.0, std::fabs(g[l]));
      worst_m = std::max(worst_m, std::fabs(fd_g - g[l]) / scale);
    }
    if (worst_h > 1e-6) { res.pass = false; res.detail += " [hessian fd mismatch " + fmt(worst_h) + "]"; }
    if (worst_m > 1e-5) { res.pass = false; res.detail += " [morse fd mismatch " + fmt(worst_m) + "]"; }
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

} // namespace bethezeros::verify

#endif
