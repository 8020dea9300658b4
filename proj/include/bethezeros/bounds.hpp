#ifndef BETHEZEROS_BOUNDS_HPP
#define BETHEZEROS_BOUNDS_HPP

#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/families.hpp"
#include "bethezeros/potentials.hpp"

namespace bethezeros {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A-priori localization of the Bethe roots. Coordinate bounds exist for
/// type B only (type A rows are -inf/+inf); gap entries are filled for
/// j < j'. Upper bounds are +inf when alpha + kappa_plus = 0.
struct BoundBox {
  Eigen::VectorXd coord_lower, coord_upper;
  Eigen::MatrixXd gap_lower, gap_upper;
  double kappa_minus = 0.0, kappa_plus = 0.0;
};

namespace detail {

// sup/inf of v' for one list entry, weighted by pair multiplicity.
inline std::pair<double, double> deriv_envelope(const CoupledParameter& p) {
  CoupledParameter base = p;
  base.pair_offset = 0.0;
  auto [lo, hi] = v_deriv_range(base);
  return {p.multiplicity() * lo, p.multiplicity() * hi};
}

} // namespace detail

/// The uniform derivative bounds kappa_-= sum of sup v' and kappa_+ = sum of
/// inf v', with the type-dependent combinatorial weights: type A weights the
/// a-sums by 1 and the b-sums by n; type B halves the a-sums and weights the
/// b-sums by n-1. Conjugate pairs contribute twice their Re-based term.
inline std::pair<double, double> kappa_pm(const BetheSystem& sys) {
  validate(sys);
  double a_hi = 0.0, a_lo = 0.0, b_hi = 0.0, b_lo = 0.0;
  for (const auto& p : sys.a_params) {
    auto [lo, hi] = detail::deriv_envelope(p);
    a_lo += lo;
    a_hi += hi;
  }
  for (const auto& p : sys.b_params) {
    auto [lo, hi] = detail::deriv_envelope(p);
    b_lo += lo;
    b_hi += hi;
  }
  double km, kp;
  if (sys.stype == SystemType::A) {
    km = a_hi + sys.n * b_hi;
    kp = a_lo + sys.n * b_lo;
  } else {
    km = 0.5 * a_hi + (sys.n - 1) * b_hi;
    kp = 0.5 * a_lo + (sys.n - 1) * b_lo;
  }
  return {km, kp};
}

/// Whether the (0, pi) localization of the trigonometric type-B roots is in
/// force (K > 2, L > 0, mu = rho, epsilon = 0).
inline bool trig_pi_cap_applies(const BetheSystem& sys) {
  return sys.stype == SystemType::B && sys.kind == PotentialKind::Trigonometric &&
         param_count(sys.a_params) > 2 && param_count(sys.b_params) > 0 &&
         sys.epsilon == 0 && sys.mu == make_rho(sys.n);
}

inline BoundBox bound_box(const BetheSystem& sys) {
  validate(sys);
  auto [km, kp] = kappa_pm(sys);
  const int n = sys.n;
  BoundBox box;
  box.kappa_minus = km;
  box.kappa_plus = kp;
  box.coord_lower = Eigen::VectorXd::Constant(n, -kInf);
  box.coord_upper = Eigen::VectorXd::Constant(n, kInf);
  box.gap_lower = Eigen::MatrixXd::Zero(n, n);
  box.gap_upper = Eigen::MatrixXd::Zero(n, n);
  const double denom_m = sys.alpha + km;
  const double denom_p = sys.alpha + kp;
  if (sys.stype == SystemType::B) {
    for (int j = 0; j < n; ++j) {
      const double num = kPi * (sys.mu[static_cast<size_t>(j)] + 0.5 * sys.epsilon);
      box.coord_lower[j] = num / denom_m;
      box.coord_upper[j] = (denom_p > 0.0) ? num / denom_p : kInf;
    }
  }
  const double gap_scale = (sys.stype == SystemType::A) ? 2.0 * kPi : kPi;
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const double dmu = gap_scale * (sys.mu[static_cast<size_t>(j)] - sys.mu[static_cast<size_t>(l)]);
      box.gap_lower(j, l) = dmu / denom_m;
      box.gap_upper(j, l) = (denom_p > 0.0) ? dmu / denom_p : kInf;
    }
  }
  return box;
}

/// Checks a candidate solution against the box (and the trigonometric (0,pi)
/// localization when it applies) with an absolute slack.
inline bool satisfies_bounds(const BetheSystem& sys, const BoundBox& box,
                             const Eigen::VectorXd& xi, double slack = 1e-12) {
  const int n = sys.n;
  if (xi.size() != n) return false;
  for (int j = 0; j < n; ++j) {
    if (xi[j] < box.coord_lower[j] - slack) return false;
    if (xi[j] > box.coord_upper[j] + slack) return false;
  }
  if (trig_pi_cap_applies(sys)) {
    for (int j = 0; j < n; ++j)
      if (xi[j] > kPi + slack || xi[j] < -slack) return false;
  }
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const double gap = xi[j] - xi[l];
      if (gap < box.gap_lower(j, l) - slack) return false;
      if (gap > box.gap_upper(j, l) + slack) return false;
    }
  }
  return true;
}

/// Family bound constants of the zero-location theorems. Wilson:
/// k_- = 2(n-1) + sum 1/Re(p), k_+ = 0 (one-sided). Askey-Wilson: both
/// k_-+ from the (1-|p|)/(1+|p|) factors. Continuous Hahn:
/// k_- = n + 1/Re(a) + 1/Re(b), k_+ = 0. A k_+ of 0 encodes an infinite
/// upper bound.
inline std::pair<double, double> family_k_pm(PolyFamily family, int n,
                                             const std::vector<std::complex<double>>& params,
                                             double q = 0.0) {
  PolynomialSpec spec{family, n, params, family == PolyFamily::AskeyWilson ? q : 0.0};
  validate(spec);
  switch (family) {
    case PolyFamily::Wilson: {
      double km = 2.0 * (n - 1);
      for (const auto& p : params) km += 1.0 / p.real();
      return {km, 0.0};
    }
    case PolyFamily::ContinuousHahn: {
      double km = n;
      for (const auto& p : params) km += 1.0 / p.real();
      return {km, 0.0};
    }
    case PolyFamily::AskeyWilson: {
      auto factor = [](double mod) { return (1.0 - mod) / (1.0 + mod); };
      const double fq = factor(std::fabs(q));
      double km = (n - 1) * (1.0 / fq);
      double kp = (n - 1) * fq;
      for (const auto& p : params) {
        const double f = factor(std::abs(p));
        km += 0.5 / f;
        kp += 0.5 * f;
      }
      return {km, kp};
    }
  }
  return {0.0, 0.0};
}

} // namespace bethezeros

#endif
