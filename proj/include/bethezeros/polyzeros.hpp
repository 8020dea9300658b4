#ifndef BETHEZEROS_POLYZEROS_HPP
#define BETHEZEROS_POLYZEROS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/bounds.hpp"
#include "bethezeros/errors.hpp"
#include "bethezeros/families.hpp"
#include "bethezeros/solver.hpp"

namespace bethezeros {

using cd = std::complex<double>;

namespace detail {

// Convert a family parameter list into CoupledParameters, folding exact
// conjugate pairs into single pair-tagged entries.
inline std::vector<CoupledParameter> to_coupled(const std::vector<cd>& params, PotentialKind kind) {
  std::vector<CoupledParameter> out;
  std::vector<bool> used(params.size(), false);
  for (size_t i = 0; i < params.size(); ++i) {
    if (used[i]) continue;
    const cd p = params[i];
    CoupledParameter cp;
    cp.kind = kind;
    if (p.imag() != 0.0) {
      size_t partner = params.size();
      for (size_t j = i + 1; j < params.size(); ++j)
        if (!used[j] && params[j] == std::conj(p)) { partner = j; break; }
      if (partner == params.size())
        throw ValidationError("non-real family parameters must occur in complex conjugate pairs");
      used[partner] = true;
      if (kind == PotentialKind::Trigonometric) {
        cp.magnitude = -std::log(std::abs(p));
        cp.pair_offset = std::fabs(std::arg(p));
      } else {
        cp.magnitude = p.real();
        cp.pair_offset = std::fabs(p.imag());
      }
    } else if (kind == PotentialKind::Trigonometric) {
      const double v = p.real();
      if (v == 0.0) {
        cp.magnitude = kInf; // free limit
      } else {
        cp.magnitude = -std::log(std::fabs(v));
        cp.trig_sign = (v < 0.0) ? -1 : +1;
      }
    } else {
      cp.magnitude = p.real();
    }
    out.push_back(cp);
  }
  return out;
}

} // namespace detail

/// The Bethe system whose global minimum carries the polynomial zeros:
/// Wilson -> rational type B (a-params = a,b,c,d, b_1 = 1, mu = rho);
/// Askey-Wilson -> trigonometric type B (magnitudes -log|.|, signs from the
/// parameter signs, q -> b_1, zeros mapping to the free limit);
/// continuous Hahn -> rational type A (mu = rho~, beta = beta_n). All at
/// alpha = 0.
inline BetheSystem family_to_bethe(const PolynomialSpec& spec) {
  validate(spec);
  BetheSystem sys;
  sys.n = spec.n;
  sys.alpha = 0.0;
  switch (spec.family) {
    case PolyFamily::Wilson:
      sys.stype = SystemType::B;
      sys.kind = PotentialKind::Rational;
      sys.epsilon = 0;
      sys.mu = make_rho(spec.n);
      sys.a_params = detail::to_coupled(spec.params, sys.kind);
      sys.b_params = {CoupledParameter{sys.kind, 1.0, +1, 0.0}};
      break;
    case PolyFamily::AskeyWilson: {
      sys.stype = SystemType::B;
      sys.kind = PotentialKind::Trigonometric;
      sys.epsilon = 0;
      sys.mu = make_rho(spec.n);
      sys.a_params = detail::to_coupled(spec.params, sys.kind);
      sys.b_params = detail::to_coupled({cd(spec.q, 0.0)}, sys.kind);
      break;
    }
    case PolyFamily::ContinuousHahn: {
      sys.stype = SystemType::A;
      sys.kind = PotentialKind::Rational;
      auto [mu, beta_n] = make_rho_tilde_and_beta(spec.n);
      sys.mu = mu;
      sys.beta = beta_n;
      sys.a_params = detail::to_coupled(spec.params, sys.kind);
      sys.b_params = {CoupledParameter{sys.kind, 1.0, +1, 0.0}};
      break;
    }
  }
  validate(sys);
  return sys;
}

/// Evaluates the monic polynomial through its three-term recurrence in the
/// family's basis variable (xi^2, cos xi, or xi). This is the
/// removable-singularity-limit form of the hypergeometric representation: the
/// recurrence coefficients are rational in the parameters with denominators
/// bounded away from zero on the whole domain, so the evaluation stays
/// accurate where the direct series summation loses all significant digits
/// (small |q| or small parameters). Coefficients are computed once per spec.
class MonicEvaluator {
public:
  explicit MonicEvaluator(const PolynomialSpec& spec) : family_(spec.family), n_(spec.n) {
    validate(spec);
    b_.resize(static_cast<size_t>(n_));
    c_.resize(static_cast<size_t>(n_));
    double residue = 0.0;
    auto real_part = [&residue](cd z) {
      residue = std::max(residue, std::abs(z.imag()) / std::max(1.0, std::abs(z)));
      return z.real();
    };
    switch (family_) {
      case PolyFamily::Wilson: {
        const cd a = spec.params[0], b = spec.params[1], c = spec.params[2], d = spec.params[3];
        const cd s = a + b + c + d;
        auto A = [&](int m) -> cd {
          if (m == 0) return (a + b) * (a + c) * (a + d) / s;
          return (double(m) + s - 1.0) * (double(m) + a + b) * (double(m) + a + c) *
                 (double(m) + a + d) / ((2.0 * m + s - 1.0) * (2.0 * m + s));
        };
        auto C = [&](int m) -> cd {
          if (m == 0) return 0.0;
          return double(m) * (double(m) + b + c - 1.0) * (double(m) + b + d - 1.0) *
                 (double(m) + c + d - 1.0) / ((2.0 * m + s - 2.0) * (2.0 * m + s - 1.0));
        };
        for (int m = 0; m < n_; ++m) {
          b_[static_cast<size_t>(m)] = real_part(A(m) + C(m) - a * a);
          c_[static_cast<size_t>(m)] = (m == 0) ? 0.0 : real_part(A(m - 1) * C(m));
        }
        break;
      }
      case PolyFamily::ContinuousHahn: {
        const cd a = spec.params[0], b = spec.params[1];
        const cd two_c = 2.0 * (a + b);
        for (int m = 0; m < n_; ++m) {
          b_[static_cast<size_t>(m)] = 0.0; // even weight: no diagonal term
          cd gam;
          if (m == 0) gam = 0.0;
          else if (m == 1) gam = a * b / (two_c + 1.0);
          else
            gam = double(m) * (double(m) + 2.0 * a - 1.0) * (double(m) + 2.0 * b - 1.0) *
                  (double(m) + two_c - 2.0) /
                  (4.0 * (2.0 * m + two_c - 3.0) * (2.0 * m + two_c - 1.0));
          c_[static_cast<size_t>(m)] = real_part(gam);
        }
        break;
      }
      case PolyFamily::AskeyWilson: {
        const cd a = spec.params[0], b = spec.params[1], c = spec.params[2], d = spec.params[3];
        const double q = spec.q;
        const cd s1 = a + b + c + d;
        const cd s3 = a * b * c + a * b * d + a * c * d + b * c * d;
        const cd s4 = a * b * c * d;
        const cd pairs[6] = {a * b, a * c, a * d, b * c, b * d, c * d};
        for (int m = 0; m < n_; ++m) {
          cd bm;
          if (m == 0) {
            bm = (s1 - s3) / (2.0 * (1.0 - s4));
          } else {
            const double w = std::pow(q, m - 1);
            const cd num = s1 * (q - s4 * w * (1.0 + q - q * q * w)) +
                           s3 * (1.0 - q * w - q * q * w + s4 * q * w * w);
            const cd den = 2.0 * (1.0 - s4 * w * w) * (1.0 - s4 * q * q * w * w);
            bm = w * num / den;
          }
          b_[static_cast<size_t>(m)] = real_part(bm);
          cd cm;
          if (m == 0) {
            cm = 0.0;
          } else if (m == 1) {
            cd num = 1.0 - q;
            for (const cd& p : pairs) num *= (1.0 - p);
            cm = 0.25 * num / ((1.0 - s4) * (1.0 - s4) * (1.0 - s4 * q));
          } else {
            const double w = std::pow(q, m - 1);
            cd num = (1.0 - std::pow(q, m)) * (1.0 - s4 * std::pow(q, m - 2));
            for (const cd& p : pairs) num *= (1.0 - p * w);
            const cd den = (1.0 - s4 * std::pow(q, 2 * m - 3)) *
                           (1.0 - s4 * std::pow(q, 2 * m - 2)) *
                           (1.0 - s4 * std::pow(q, 2 * m - 2)) *
                           (1.0 - s4 * std::pow(q, 2 * m - 1));
            cm = 0.25 * num / den;
          }
          c_[static_cast<size_t>(m)] = real_part(cm);
        }
        break;
      }
    }
    if (residue > 1e-10)
      throw NumericInstabilityError("imaginary residue of recurrence coefficients exceeds tolerance");
  }

  int degree() const { return n_; }

  double operator()(double xi) const {
    double t;
    switch (family_) {
      case PolyFamily::Wilson: t = xi * xi; break;
      case PolyFamily::AskeyWilson: t = std::cos(xi); break;
      case PolyFamily::ContinuousHahn: t = xi; break;
      default: t = xi;
    }
    double pm1 = 0.0, p0 = 1.0;
    for (int m = 0; m < n_; ++m) {
      const double p1 = (t - b_[static_cast<size_t>(m)]) * p0 - c_[static_cast<size_t>(m)] * pm1;
      pm1 = p0;
      p0 = p1;
    }
    return p0;
  }

private:
  PolyFamily family_;
  int n_;
  std::vector<double> b_, c_;
};

/// Monic polynomial value at real xi.
inline double eval_poly(const PolynomialSpec& spec, double xi) {
  return MonicEvaluator(spec)(xi);
}

/// Direct summation of the terminating hypergeometric representation
/// (4F3 / 4Phi3 / 3F2 with the monic prefactor), by forward recurrence on the
/// terms. For Askey-Wilson the parameter slots are permuted so the
/// largest-modulus parameter sits in the "a" slot (the monic polynomial is
/// symmetric in a,b,c,d). Returns the real part after checking that the
/// imaginary residue is <= 1e-10 relative to the summed term magnitudes.
/// Throws NumericInstabilityError where the representation is singular or has
/// lost the digits to cancellation (use eval_poly there instead).
inline double eval_poly_series(const PolynomialSpec& spec, double xi) {
  validate(spec);
  const int n = spec.n;
  cd pref(1.0, 0.0);
  cd sum(1.0, 0.0), term(1.0, 0.0);
  double sum_abs = 1.0;
  switch (spec.family) {
    case PolyFamily::Wilson: {
      const cd a = spec.params[0], b = spec.params[1], c = spec.params[2], d = spec.params[3];
      const cd s = a + b + c + d;
      pref = (n % 2 == 0) ? 1.0 : -1.0;
      for (int m = 0; m < n; ++m)
        pref *= (a + b + double(m)) * (a + c + double(m)) * (a + d + double(m)) /
                (double(n) + s - 1.0 + double(m));
      for (int k = 0; k < n; ++k) {
        term *= (double(-n + k)) * (double(n + k) + s - 1.0) * (a + double(k) + cd(0.0, xi)) *
                (a + double(k) - cd(0.0, xi)) /
                ((a + b + double(k)) * (a + c + double(k)) * (a + d + double(k)) * double(k + 1));
        sum += term;
        sum_abs += std::abs(term);
      }
      break;
    }
    case PolyFamily::ContinuousHahn: {
      const cd a = spec.params[0], b = spec.params[1];
      pref = std::pow(cd(0.0, 1.0), n);
      for (int m = 0; m < n; ++m)
        pref *= (2.0 * a + double(m)) * (a + b + double(m)) /
                (double(n) + 2.0 * a + 2.0 * b - 1.0 + double(m));
      for (int k = 0; k < n; ++k) {
        term *= (double(-n + k)) * (double(n + k) + 2.0 * a + 2.0 * b - 1.0) *
                (a + double(k) + cd(0.0, xi)) /
                ((2.0 * a + double(k)) * (a + b + double(k)) * double(k + 1));
        sum += term;
        sum_abs += std::abs(term);
      }
      break;
    }
    case PolyFamily::AskeyWilson: {
      std::vector<cd> ps = spec.params;
      std::sort(ps.begin(), ps.end(), [](cd x, cd y) { return std::abs(x) > std::abs(y); });
      const cd a = ps[0], b = ps[1], c = ps[2], d = ps[3];
      const double q = spec.q;
      if (std::abs(a) < 1e-8)
        throw NumericInstabilityError("Askey-Wilson series is singular for vanishing parameters");
      if (std::fabs(q) < 1e-8)
        throw NumericInstabilityError("Askey-Wilson series is singular at q = 0");
      const cd A = a * b * c * d * std::pow(q, n - 1);
      for (int m = 0; m < n; ++m) {
        const double qm = std::pow(q, m);
        pref *= (1.0 - a * b * qm) * (1.0 - a * c * qm) * (1.0 - a * d * qm) / (1.0 - A * qm);
      }
      pref /= std::pow(2.0 * a, n);
      const cd u = a * std::exp(cd(0.0, xi));
      const cd v = a * std::exp(cd(0.0, -xi));
      for (int k = 0; k < n; ++k) {
        const double qk = std::pow(q, k);
        term *= (1.0 - std::pow(q, k - n)) * (1.0 - A * qk) * (1.0 - u * qk) * (1.0 - v * qk) /
                ((1.0 - a * b * qk) * (1.0 - a * c * qk) * (1.0 - a * d * qk) *
                 (1.0 - std::pow(q, k + 1))) * q;
        sum += term;
        sum_abs += std::abs(term);
      }
      break;
    }
  }
  const cd val = pref * sum;
  const double scale = std::abs(pref) * sum_abs;
  if (std::abs(val.imag()) > 1e-10 * std::max(scale, 1e-300))
    throw NumericInstabilityError("imaginary residue of series value exceeds tolerance");
  return val.real();
}

/// Zeros as the Bethe minimum of the mapped system, decreasing.
inline Eigen::VectorXd zeros_via_bethe(const PolynomialSpec& spec, const SolverConfig& cfg = {}) {
  const BetheSystem sys = family_to_bethe(spec);
  return solve(sys, cfg).xi;
}

/// Independent root finder: scans for sign changes of the polynomial and
/// refines each bracket by bisection to 1e-12. Askey-Wilson scans the
/// guaranteed interval (0, pi); Wilson scans (0, U) and continuous Hahn
/// (-U, U) with U doubled from the gap-bound scale until n sign changes
/// appear. Throws OracleFailure after 20 doublings.
inline Eigen::VectorXd zeros_via_oracle(const PolynomialSpec& spec) {
  validate(spec);
  const MonicEvaluator f(spec);
  const int n = spec.n;

  double lo = 0.0, hi = kPi;
  bool fixed_interval = (spec.family == PolyFamily::AskeyWilson);
  double U = 0.0;
  if (!fixed_interval) {
    const auto [km, kp] = family_k_pm(spec.family, n, spec.params, spec.q);
    (void)kp;
    U = 2.0 * kPi * n / km;
  }

  std::vector<std::pair<double, double>> brackets;
  std::vector<double> exact_hits;
  int grid = 8 * n;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 20)
      throw OracleFailure("bisection oracle found fewer sign changes than the polynomial degree");
    if (!fixed_interval) {
      lo = (spec.family == PolyFamily::ContinuousHahn) ? -U : 0.0;
      hi = U;
    }
    brackets.clear();
    exact_hits.clear();
    const int N = grid;
    double xprev = lo + (hi - lo) * 0.5 / (N + 1);
    double fprev = f(xprev);
    if (fprev == 0.0) exact_hits.push_back(xprev);
    for (int i = 1; i <= N; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / (N + 1);
      const double fx = f(x);
      if (fx == 0.0) {
        exact_hits.push_back(x);
      } else if (fprev != 0.0 && ((fx < 0.0) != (fprev < 0.0))) {
        brackets.emplace_back(xprev, x);
      }
      xprev = x;
      fprev = fx;
    }
    const int found = static_cast<int>(brackets.size() + exact_hits.size());
    if (found == n) break;
    if (found > n)
      throw OracleFailure("bisection oracle found more sign changes than the polynomial degree");
    grid *= 2;
    if (!fixed_interval && attempt % 2 == 1) U *= 2.0;
  }

  std::vector<double> roots = exact_hits;
  for (auto [a, b] : brackets) {
    double fa = f(a);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (fm == 0.0) { a = b = m; break; }
      if ((fm < 0.0) == (fa < 0.0)) { a = m; fa = fm; }
      else b = m;
    }
    roots.push_back(0.5 * (a + b));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) out[j] = roots[static_cast<size_t>(j)];
  return out;
}

/// Coefficient data of the family's second-order difference equation:
/// A(xi), the eigenvalue E_n, and the imaginary shift of the argument.
struct DifferenceOperatorData {
  PolynomialSpec spec;
  double E_n = 0.0;
  cd shift;

  cd A(double xi) const {
    const auto& p = spec.params;
    const cd i(0.0, 1.0);
    switch (spec.family) {
      case PolyFamily::Wilson:
        return (xi + i * p[0]) * (xi + i * p[1]) * (xi + i * p[2]) * (xi + i * p[3]) /
               (2.0 * xi * (2.0 * xi + i));
      case PolyFamily::ContinuousHahn:
        return (xi + i * p[0]) * (xi + i * p[1]);
      case PolyFamily::AskeyWilson: {
        const cd e = std::exp(i * xi);
        return (1.0 - p[0] * e) * (1.0 - p[1] * e) * (1.0 - p[2] * e) * (1.0 - p[3] * e) /
               ((1.0 - e * e) * (1.0 - spec.q * e * e));
      }
    }
    return {};
  }
};

/// Difference-operator eigenvalue E_m for degree m (distinct across
/// 0..n on the parameter domain; diverges like q^-m as q -> 0 for
/// Askey-Wilson).
inline double de_eigenvalue(const PolynomialSpec& spec, int m) {
  const auto& p = spec.params;
  switch (spec.family) {
    case PolyFamily::Wilson: {
      const double s = (p[0] + p[1] + p[2] + p[3]).real();
      return -double(m) * (double(m) + s - 1.0);
    }
    case PolyFamily::ContinuousHahn: {
      const double s = 2.0 * (p[0] + p[1]).real();
      return -double(m) * (double(m) + s - 1.0);
    }
    case PolyFamily::AskeyWilson: {
      if (m == 0) return 0.0;
      const double s4 = (p[0] * p[1] * p[2] * p[3]).real();
      return std::pow(spec.q, -m) * (1.0 - std::pow(spec.q, m)) *
             (1.0 - s4 * std::pow(spec.q, m - 1));
    }
  }
  return 0.0;
}

inline DifferenceOperatorData diff_op_data(const PolynomialSpec& spec) {
  validate(spec);
  DifferenceOperatorData data;
  data.spec = spec;
  data.E_n = de_eigenvalue(spec, spec.n);
  if (spec.family == PolyFamily::AskeyWilson)
    data.shift = -cd(0.0, 1.0) * std::log(cd(spec.q, 0.0));
  else
    data.shift = cd(0.0, 1.0);
  return data;
}

/// Relative residuals of the two-term identity
/// A(xi_j) p(xi_j + shift) + A(-xi_j) p(xi_j - shift) = 0, with p evaluated
/// as the product over the supplied roots. The Askey-Wilson case uses the
/// per-factor form (2q)(cos(xi - i log q) - cos xi_k) = e^{-i xi} + q^2
/// e^{i xi} - 2 q cos xi_k, which is polynomial in q and therefore covers
/// q = 0 and q < 0 without a log branch.
inline Eigen::VectorXd de_residual_components(const PolynomialSpec& spec,
                                              const Eigen::VectorXd& roots) {
  validate(spec);
  if (roots.size() != spec.n) throw ValidationError("root vector must have length n");
  for (int j = 0; j + 1 < spec.n; ++j)
    if (!(roots[j] > roots[j + 1]))
      throw ValidationError("roots must be strictly decreasing");
  const DifferenceOperatorData op = diff_op_data(spec);
  const cd i(0.0, 1.0);
  Eigen::VectorXd out(spec.n);
  for (int j = 0; j < spec.n; ++j) {
    const double x = roots[j];
    cd tp, tm;
    if (spec.family == PolyFamily::AskeyWilson) {
      const double q = spec.q;
      const cd ep = std::exp(i * x), em = std::exp(-i * x);
      cd Pp(1.0, 0.0), Pm(1.0, 0.0);
      for (int k = 0; k < spec.n; ++k) {
        const double ck = std::cos(roots[k]);
        Pp *= em + q * q * ep - 2.0 * q * ck;
        Pm *= ep + q * q * em - 2.0 * q * ck;
      }
      tp = op.A(x) * Pp;
      tm = op.A(-x) * Pm;
    } else {
      cd Pp(1.0, 0.0), Pm(1.0, 0.0);
      for (int k = 0; k < spec.n; ++k) {
        if (spec.family == PolyFamily::Wilson) {
          const double rk2 = roots[k] * roots[k];
          Pp *= (x + i) * (x + i) - rk2;
          Pm *= (x - i) * (x - i) - rk2;
        } else {
          Pp *= (x + i) - roots[k];
          Pm *= (x - i) - roots[k];
        }
      }
      tp = op.A(x) * Pp;
      tm = op.A(-x) * Pm;
    }
    const double norm = std::max(std::abs(tp), std::abs(tm));
    if (norm == 0.0) throw SingularityError("difference-equation residual normalizer vanished");
    out[j] = std::abs(tp + tm) / norm;
  }
  return out;
}

/// Max over j of the relative difference-equation residual.
inline double de_residual(const PolynomialSpec& spec, const Eigen::VectorXd& roots) {
  return de_residual_components(spec, roots).maxCoeff();
}

} // namespace bethezeros

#endif
