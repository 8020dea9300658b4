#ifndef BETHEZEROS_BETHE_SYSTEM_HPP
#define BETHEZEROS_BETHE_SYSTEM_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bethezeros/errors.hpp"
#include "bethezeros/potentials.hpp"

namespace bethezeros {

enum class SystemType { A, B };

inline const char* to_string(SystemType t) { return t == SystemType::A ? "A" : "B"; }

/// rho = (n, n-1, ..., 1), the minimal weight in Lambda_B.
inline std::vector<int> make_rho(int n) {
  if (n < 1) throw ValidationError("n must be >= 1");
  std::vector<int> mu(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) mu[static_cast<size_t>(j)] = n - j;
  return mu;
}

/// rho~ with rho~_j = floor((n+1-2j)/2) and the matching half-integer shift
/// beta_n = 1/2 (n even) or 0 (n odd).
inline std::pair<std::vector<int>, double> make_rho_tilde_and_beta(int n) {
  if (n < 1) throw ValidationError("n must be >= 1");
  std::vector<int> mu(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const int num = n + 1 - 2 * j;
    // floor division toward -inf for possibly negative numerators
    mu[static_cast<size_t>(j - 1)] = (num >= 0) ? num / 2 : -((-num + 1) / 2);
  }
  const double beta_n = (n % 2 == 0) ? 0.5 : 0.0;
  return {mu, beta_n};
}

struct BetheSystem {
  SystemType stype = SystemType::B;
  PotentialKind kind = PotentialKind::Rational;
  int n = 1;
  double alpha = 1.0;
  double beta = 0.0;   // type A only
  int epsilon = 0;     // type B only
  std::vector<CoupledParameter> a_params;
  std::vector<CoupledParameter> b_params;
  std::vector<int> mu;
};

/// Multiplicity-weighted parameter count (a conjugate pair counts as two).
inline int param_count(const std::vector<CoupledParameter>& ps) {
  int c = 0;
  for (const auto& p : ps) c += p.multiplicity();
  return c;
}

inline void validate(const BetheSystem& sys) {
  if (sys.n < 1) throw ValidationError("n must be >= 1");
  if (std::isnan(sys.alpha) || sys.alpha < 0.0)
    throw ValidationError("alpha must be nonnegative");
  if (sys.mu.size() != static_cast<size_t>(sys.n))
    throw ValidationError("mu must have length n");
  for (size_t j = 0; j + 1 < sys.mu.size(); ++j)
    if (sys.mu[j] <= sys.mu[j + 1])
      throw ValidationError("mu must be strictly decreasing");
  for (const auto& p : sys.a_params) {
    if (p.kind != sys.kind) throw ValidationError("all parameters must share the system kind");
    validate(p);
  }
  for (const auto& p : sys.b_params) {
    if (p.kind != sys.kind) throw ValidationError("all parameters must share the system kind");
    validate(p);
  }
  const int K = param_count(sys.a_params);
  const int L = param_count(sys.b_params);
  if (sys.stype == SystemType::A) {
    if (sys.epsilon != 0)
      throw ValidationError("epsilon belongs to type-B systems; type A takes beta");
    if (std::isnan(sys.beta) || sys.beta < 0.0 || sys.beta >= 1.0)
      throw ValidationError("beta must lie in [0, 1)");
  } else {
    if (sys.beta != 0.0)
      throw ValidationError("beta belongs to type-A systems; type B takes epsilon");
    if (sys.epsilon != 0 && sys.epsilon != 1)
      throw ValidationError("epsilon must be 0 or 1");
    if (sys.mu.back() <= 0)
      throw ValidationError("type-B weights require mu_n > 0");
  }
  if (sys.alpha == 0.0) {
    // The alpha = 0 degenerations are admitted exactly where the minimum is
    // guaranteed to exist, and nowhere else.
    if (sys.kind == PotentialKind::Hyperbolic)
      throw ValidationError(
          "hyperbolic systems at alpha=0 are rejected: the minimum is only guaranteed "
          "for parameters sufficiently close to 0 in the interval (0, pi), without quantification");
    if (sys.stype == SystemType::B) {
      if (sys.kind == PotentialKind::Rational) {
        if (!(K > 2 && L > 0))
          throw ValidationError("rational type-B systems at alpha=0 require K > 2 and L > 0");
        if (sys.mu != make_rho(sys.n))
          throw ValidationError("rational type-B systems at alpha=0 require the minimal weight mu = rho");
        if (sys.epsilon != 0)
          throw ValidationError("rational type-B systems at alpha=0 require epsilon = 0");
      } else {
        if (K <= 0)
          throw ValidationError("trigonometric type-B systems at alpha=0 require K > 0");
      }
    } else {
      if (sys.kind != PotentialKind::Rational)
        throw ValidationError("type-A systems at alpha=0 are only admitted for the rational kind");
      if (!(K > 0 && L > 0))
        throw ValidationError("rational type-A systems at alpha=0 require K > 0 and L > 0");
      auto [rho_tilde, beta_n] = make_rho_tilde_and_beta(sys.n);
      if (sys.mu != rho_tilde || sys.beta != beta_n)
        throw ValidationError("rational type-A systems at alpha=0 require mu = rho~ and beta = beta_n");
    }
  }
}

/// Gradient of the Morse function, i.e. LHS - RHS of the critical equations.
inline Eigen::VectorXd gradient(const BetheSystem& sys, const Eigen::VectorXd& xi) {
  if (xi.size() != sys.n) throw ValidationError("xi must have length n");
  Eigen::VectorXd g(sys.n);
  for (int j = 0; j < sys.n; ++j) {
    const double xj = xi[j];
    double acc = 0.0;
    for (const auto& p : sys.a_params) acc += v_eval(p, xj);
    if (sys.stype == SystemType::A) {
      for (int jp = 0; jp < sys.n; ++jp) {
        if (jp == j) continue;
        for (const auto& p : sys.b_params) acc += v_eval(p, xj - xi[jp]);
      }
      g[j] = sys.alpha * xj + acc - 2.0 * kPi * (sys.mu[static_cast<size_t>(j)] + sys.beta);
    } else {
      for (int jp = 0; jp < sys.n; ++jp) {
        if (jp == j) continue;
        for (const auto& p : sys.b_params)
          acc += v_eval(p, xj + xi[jp]) + v_eval(p, xj - xi[jp]);
      }
      g[j] = 2.0 * sys.alpha * xj + acc - 2.0 * kPi * (sys.mu[static_cast<size_t>(j)] + 0.5 * sys.epsilon);
    }
  }
  return g;
}

/// Analytic Hessian; symmetric, positive definite whenever alpha > 0 or K > 0.
inline Eigen::MatrixXd hessian(const BetheSystem& sys, const Eigen::VectorXd& xi) {
  if (xi.size() != sys.n) throw ValidationError("xi must have length n");
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(sys.n, sys.n);
  const double diag0 = (sys.stype == SystemType::A) ? sys.alpha : 2.0 * sys.alpha;
  for (int j = 0; j < sys.n; ++j) {
    double d = diag0;
    for (const auto& p : sys.a_params) d += v_deriv(p, xi[j]);
    H(j, j) = d;
  }
  for (int j = 0; j < sys.n; ++j) {
    for (int l = j + 1; l < sys.n; ++l) {
      double off = 0.0, diff = 0.0, sum = 0.0;
      for (const auto& p : sys.b_params) {
        diff += v_deriv(p, xi[j] - xi[l]);
        if (sys.stype == SystemType::B) sum += v_deriv(p, xi[j] + xi[l]);
      }
      if (sys.stype == SystemType::A) {
        off = -diff;
        H(j, j) += diff;
        H(l, l) += diff;
      } else {
        off = sum - diff;
        H(j, j) += sum + diff;
        H(l, l) += sum + diff;
      }
      H(j, l) = off;
      H(l, j) = off;
    }
  }
  return H;
}

/// Yang-Yang Morse function value (diagnostic; uses quadrature antiderivatives
/// for the hyperbolic/trigonometric kinds).
inline double morse_value(const BetheSystem& sys, const Eigen::VectorXd& xi) {
  if (xi.size() != sys.n) throw ValidationError("xi must have length n");
  double V = 0.0;
  for (int j = 0; j < sys.n; ++j) {
    const double xj = xi[j];
    if (sys.stype == SystemType::A)
      V += 0.5 * sys.alpha * xj * xj - 2.0 * kPi * (sys.mu[static_cast<size_t>(j)] + sys.beta) * xj;
    else
      V += sys.alpha * xj * xj - 2.0 * kPi * (sys.mu[static_cast<size_t>(j)] + 0.5 * sys.epsilon) * xj;
    for (const auto& p : sys.a_params) V += v_antideriv(p, xj);
  }
  for (int j = 0; j < sys.n; ++j) {
    for (int l = j + 1; l < sys.n; ++l) {
      for (const auto& p : sys.b_params) {
        V += v_antideriv(p, xi[j] - xi[l]);
        if (sys.stype == SystemType::B) V += v_antideriv(p, xi[j] + xi[l]);
      }
    }
  }
  return V;
}

/// Componentwise |LHS/RHS - 1| of the exponentiated product-form Bethe
/// equations, evaluated with complex arithmetic through s_eval.
inline Eigen::VectorXd bethe_residual(const BetheSystem& sys, const Eigen::VectorXd& xi) {
  if (xi.size() != sys.n) throw ValidationError("xi must have length n");
  using cd = std::complex<double>;
  Eigen::VectorXd r(sys.n);
  for (int j = 0; j < sys.n; ++j) {
    const double xj = xi[j];
    cd rhs(1.0, 0.0);
    cd lhs;
    if (sys.stype == SystemType::A) {
      lhs = std::exp(cd(0.0, sys.alpha * xj));
      rhs = std::exp(cd(0.0, 2.0 * kPi * sys.beta));
      for (const auto& p : sys.a_params) rhs *= s_ratio(p, xj);
      for (int jp = 0; jp < sys.n; ++jp) {
        if (jp == j) continue;
        for (const auto& p : sys.b_params) rhs *= s_ratio(p, xj - xi[jp]);
      }
    } else {
      lhs = std::exp(cd(0.0, 2.0 * sys.alpha * xj));
      rhs = (sys.epsilon == 1) ? cd(-1.0, 0.0) : cd(1.0, 0.0);
      for (const auto& p : sys.a_params) rhs *= s_ratio(p, xj);
      for (int jp = 0; jp < sys.n; ++jp) {
        if (jp == j) continue;
        for (const auto& p : sys.b_params)
          rhs *= s_ratio(p, xj + xi[jp]) * s_ratio(p, xj - xi[jp]);
      }
    }
    if (std::abs(rhs) == 0.0)
      throw SingularityError("Bethe product RHS vanished");
    r[j] = std::abs(lhs / rhs - 1.0);
  }
  return r;
}

} // namespace bethezeros

#endif
