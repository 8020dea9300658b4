#ifndef BETHEZEROS_SOLVER_HPP
#define BETHEZEROS_SOLVER_HPP

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/bounds.hpp"
#include "bethezeros/errors.hpp"

namespace bethezeros {

struct SolverConfig {
  double grad_tol = 1e-12; // inf-norm of the gradient
  int max_iters = 200;
  bool fd_check = false;   // one-shot finite-difference gradient self-check
};

/// Minimizer with its convergence certificate.
struct BetheSolution {
  Eigen::VectorXd xi; // strictly decreasing; positive for type B
  int iterations = 0;
  double grad_norm = 0.0;
  double bethe_residual_max = 0.0;
  bool within_bounds = false;
};

/// Starting point assembled from the a-priori boxes: type B takes box
/// midpoints (or 1.5x the lower bound when the box is one-sided); type A
/// anchors xi_n and stacks gap midpoints.
inline Eigen::VectorXd initial_point(const BetheSystem& sys) {
  validate(sys);
  const BoundBox box = bound_box(sys);
  const int n = sys.n;
  Eigen::VectorXd xi(n);
  if (sys.stype == SystemType::B) {
    const bool cap = trig_pi_cap_applies(sys);
    for (int j = 0; j < n; ++j) {
      const double lo = box.coord_lower[j];
      double hi = box.coord_upper[j];
      if (cap && hi > kPi) hi = kPi;
      xi[j] = std::isfinite(hi) ? 0.5 * (lo + hi) : 1.5 * lo;
    }
  } else {
    xi[n - 1] = 2.0 * kPi * (sys.mu[static_cast<size_t>(n - 1)] + sys.beta) /
                (sys.alpha + box.kappa_minus);
    for (int j = n - 2; j >= 0; --j) {
      const double lo = box.gap_lower(j, j + 1);
      const double hi = box.gap_upper(j, j + 1);
      const double gap = std::isfinite(hi) ? 0.5 * (lo + hi) : 1.5 * lo;
      xi[j] = xi[j + 1] + gap;
    }
  }
  return xi;
}

namespace detail {

inline void fd_gradient_check(const BetheSystem& sys, const Eigen::VectorXd& xi) {
  const Eigen::VectorXd g = gradient(sys, xi);
  const double h = 1e-5;
  for (int j = 0; j < sys.n; ++j) {
    Eigen::VectorXd xp = xi, xm = xi;
    xp[j] += h;
    xm[j] -= h;
    const double fd = (morse_value(sys, xp) - morse_value(sys, xm)) / (2.0 * h);
    const double scale = std::max({1.0, std::fabs(g[j]), std::fabs(fd)});
    if (std::fabs(fd - g[j]) > 1e-4 * scale)
      throw NumericInstabilityError("finite-difference gradient self-check failed");
  }
}

} // namespace detail

/// Damped Newton on the critical equations with an Armijo backtracking line
/// search on the merit 1/2 ||g||^2. The Hessian is positive definite on the
/// whole domain, so the Newton direction is always a descent direction for
/// the merit and the iteration converges to the unique critical point from
/// any start.
inline BetheSolution solve_from(const BetheSystem& sys, Eigen::VectorXd xi,
                                const SolverConfig& cfg = {}) {
  validate(sys);
  if (cfg.grad_tol <= 0.0) throw ValidationError("grad_tol must be positive");
  if (cfg.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (xi.size() != sys.n) throw ValidationError("starting point must have length n");
  if (cfg.fd_check) detail::fd_gradient_check(sys, xi);

  Eigen::VectorXd g = gradient(sys, xi);
  double gn = g.lpNorm<Eigen::Infinity>();
  int iter = 0;
  while (gn > cfg.grad_tol) {
    if (iter >= cfg.max_iters) {
      std::vector<double> last(xi.data(), xi.data() + xi.size());
      throw NonConvergenceError("Newton iteration did not reach grad_tol within max_iters",
                                std::move(last), gn, iter);
    }
    const Eigen::MatrixXd H = hessian(sys, xi);
    Eigen::VectorXd dir;
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() == Eigen::Success) {
      dir = -llt.solve(g);
    } else {
      dir = -g; // steepest descent; not expected with a PD Hessian
    }
    const double phi = 0.5 * g.squaredNorm();
    const double slope = (H * g).dot(dir); // directional derivative of the merit
    double t = 1.0;
    Eigen::VectorXd xi_new, g_new;
    for (;;) {
      xi_new = xi + t * dir;
      g_new = gradient(sys, xi_new);
      const double phi_new = 0.5 * g_new.squaredNorm();
      if (phi_new <= phi + 1e-4 * t * slope) break;
      if (t < 1e-12 && phi_new < phi) break; // settle for monotone decrease at the roundoff floor
      t *= 0.5;
      if (t < 1e-18) {
        std::vector<double> last(xi.data(), xi.data() + xi.size());
        throw NonConvergenceError("line search stalled before reaching grad_tol",
                                  std::move(last), gn, iter);
      }
    }
    xi = xi_new;
    g = g_new;
    gn = g.lpNorm<Eigen::Infinity>();
    ++iter;
  }

  BetheSolution sol;
  sol.xi = xi;
  sol.iterations = iter;
  sol.grad_norm = gn;
  sol.bethe_residual_max = bethe_residual(sys, xi).maxCoeff();
  sol.within_bounds = satisfies_bounds(sys, bound_box(sys), xi);
  for (int j = 0; j + 1 < sys.n; ++j)
    if (!(xi[j] > xi[j + 1]))
      throw NumericInstabilityError("solution violates the strict ordering of the wedge");
  if (sys.stype == SystemType::B && !(xi[sys.n - 1] > 0.0))
    throw NumericInstabilityError("type-B solution violates positivity");
  return sol;
}

/// Solve from the a-priori starting point.
inline BetheSolution solve(const BetheSystem& sys, const SolverConfig& cfg = {}) {
  return solve_from(sys, initial_point(sys), cfg);
}

} // namespace bethezeros

#endif
