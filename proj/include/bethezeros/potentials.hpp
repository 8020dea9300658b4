#ifndef BETHEZEROS_POTENTIALS_HPP
#define BETHEZEROS_POTENTIALS_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bethezeros/errors.hpp"

namespace bethezeros {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class PotentialKind { Rational, Hyperbolic, Trigonometric };

inline const char* to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::Rational: return "rational";
    case PotentialKind::Hyperbolic: return "hyperbolic";
    case PotentialKind::Trigonometric: return "trigonometric";
  }
  return "?";
}

/// One interaction parameter a_k or b_l.
///
/// `magnitude` is the real part of the parameter: a in (0,inf) for the
/// rational kind, a in (0,pi) for the hyperbolic kind, and A = Re(a) in
/// (0,inf] for the trigonometric kind, where A = +inf encodes the free limit
/// v(x) = x. `trig_sign = -1` encodes the Im(a) = pi branch of the
/// trigonometric domain (negative family-side values). A `pair_offset`
/// theta > 0 means the value represents the conjugate pair {a, conj(a)} with
/// Im(a) = theta and contributes the combined pair potential
/// v_Re(x+theta) + v_Re(x-theta).
struct CoupledParameter {
  PotentialKind kind = PotentialKind::Rational;
  double magnitude = 1.0;
  int trig_sign = +1;
  double pair_offset = 0.0;

  bool is_pair() const { return pair_offset > 0.0; }
  bool is_free_limit() const {
    return kind == PotentialKind::Trigonometric && std::isinf(magnitude);
  }
  /// Number of underlying complex parameters this value stands for.
  int multiplicity() const { return is_pair() ? 2 : 1; }
};

inline void validate(const CoupledParameter& p) {
  if (std::isnan(p.magnitude) || p.magnitude <= 0.0)
    throw ValidationError("parameter magnitude must be positive");
  if (std::isnan(p.pair_offset) || p.pair_offset < 0.0)
    throw ValidationError("pair_offset must be nonnegative");
  switch (p.kind) {
    case PotentialKind::Rational:
    case PotentialKind::Hyperbolic:
      if (std::isinf(p.magnitude))
        throw ValidationError("infinite magnitude is only defined for the trigonometric free limit");
      if (p.kind == PotentialKind::Hyperbolic && p.magnitude >= kPi)
        throw ValidationError("hyperbolic parameters must lie in (0, pi)");
      if (p.trig_sign != +1)
        throw ValidationError("trig_sign is defined only for trigonometric parameters");
      break;
    case PotentialKind::Trigonometric:
      if (p.trig_sign != +1 && p.trig_sign != -1)
        throw ValidationError("trig_sign must be +1 or -1");
      if (p.pair_offset > 0.0) {
        // The Im(a)=pi branch combined with a conjugate-pair offset is not
        // defined by the convex parameter domain; rejected rather than guessed.
        if (p.trig_sign == -1)
          throw ValidationError("a trigonometric parameter cannot carry both the sign branch and a pair offset");
        if (p.is_free_limit())
          throw ValidationError("the free limit does not admit a pair offset");
        if (p.pair_offset >= kPi)
          throw ValidationError("trigonometric pair_offset must lie in [0, pi)");
      }
      break;
  }
}

/// s^(u)(x) = x/2, sinh(x/2), sin(x/2) for u = r, h, t.
inline std::complex<double> s_eval(PotentialKind kind, std::complex<double> z) {
  switch (kind) {
    case PotentialKind::Rational: return z / 2.0;
    case PotentialKind::Hyperbolic: return std::sinh(z / 2.0);
    case PotentialKind::Trigonometric: return std::sin(z / 2.0);
  }
  return {};
}

namespace detail {

// v for a single real parameter of each kind (pair_offset handled by callers).
inline double v_rational(double a, double x) { return 2.0 * std::atan(x / a); }

inline double v_hyperbolic(double a, double x) {
  // 2*atan(tanh(x/2) * cot(a/2)); limit pi - a as x -> +inf.
  const double cot_half = std::cos(0.5 * a) / std::sin(0.5 * a);
  return 2.0 * std::atan(std::tanh(0.5 * x) * cot_half);
}

// Reduce x to r in [-pi, pi) with x = r + 2*pi*m.
inline void trig_reduce(double x, double& r, double& m) {
  m = std::floor((x + kPi) / (2.0 * kPi));
  r = x - 2.0 * kPi * m;
}

inline double v_trig(double magnitude, int sign, double x) {
  if (std::isinf(magnitude)) return x; // free limit v(x) = x
  double r, m;
  trig_reduce(x, r, m);
  const double t = std::tanh(0.5 * magnitude);
  const double c = (sign > 0) ? 1.0 / t : t;
  double base;
  if (r == -kPi) {
    base = -kPi; // continuous limit at the tan pole
  } else {
    base = 2.0 * std::atan(c * std::tan(0.5 * r));
  }
  return base + 2.0 * kPi * m;
}

inline double vd_rational(double a, double x) { return 2.0 * a / (a * a + x * x); }

inline double vd_hyperbolic(double a, double x) {
  // sin(a)/(cosh(x)-cos(a)) via cosh x - cos a = 2(sinh^2(x/2) + sin^2(a/2)).
  const double ax = std::fabs(x);
  if (ax > 600.0) return 2.0 * std::sin(a) * std::exp(-ax);
  const double sh = std::sinh(0.5 * x), sa = std::sin(0.5 * a);
  return std::sin(a) / (2.0 * (sh * sh + sa * sa));
}

inline double vd_trig(double magnitude, int sign, double x) {
  if (std::isinf(magnitude) || magnitude > 700.0) return 1.0;
  // sinh(A)/(cosh(A) -+ cos(x)) in cancellation-free half-angle form.
  const double shA = std::sinh(0.5 * magnitude), chA = std::cosh(0.5 * magnitude);
  if (sign > 0) {
    const double sx = std::sin(0.5 * x);
    return shA * chA / (shA * shA + sx * sx);
  }
  const double cx = std::cos(0.5 * x);
  return shA * chA / (shA * shA + cx * cx);
}

inline double v_single(const CoupledParameter& p, double x) {
  switch (p.kind) {
    case PotentialKind::Rational: return v_rational(p.magnitude, x);
    case PotentialKind::Hyperbolic: return v_hyperbolic(p.magnitude, x);
    case PotentialKind::Trigonometric: return v_trig(p.magnitude, p.trig_sign, x);
  }
  return 0.0;
}

inline double vd_single(const CoupledParameter& p, double x) {
  switch (p.kind) {
    case PotentialKind::Rational: return vd_rational(p.magnitude, x);
    case PotentialKind::Hyperbolic: return vd_hyperbolic(p.magnitude, x);
    case PotentialKind::Trigonometric: return vd_trig(p.magnitude, p.trig_sign, x);
  }
  return 0.0;
}

inline double quad_v(const CoupledParameter& p, double a, double b) {
  auto f = [&](double t) { return v_single(p, t); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, /*max_depth=*/12, /*tol=*/1e-13, &err);
}

inline double antideriv_single(const CoupledParameter& p, double x) {
  const double ax = std::fabs(x);
  if (ax == 0.0) return 0.0;
  if (p.kind == PotentialKind::Rational) {
    const double a = p.magnitude, r = ax / a;
    return 2.0 * ax * std::atan(r) - a * std::log1p(r * r);
  }
  if (p.is_free_limit()) return 0.5 * x * x;
  // No elementary antiderivative for the hyperbolic/trigonometric kinds;
  // integrate the closed-form v over a reduced interval.
  if (p.kind == PotentialKind::Hyperbolic) {
    // v saturates at pi - a with error ~ e^{-t}; cut the quadrature there.
    const double cut = 40.0;
    if (ax <= cut) return quad_v(p, 0.0, ax);
    return quad_v(p, 0.0, cut) + (ax - cut) * (kPi - p.magnitude);
  }
  // Quasi-periodicity integrates exactly over whole periods:
  // int_0^{x} v = 2 pi^2 m^2 + 2 pi m r + int_0^r v with x = r + 2 pi m.
  double r, m;
  trig_reduce(ax, r, m);
  double val = 2.0 * kPi * kPi * m * m + 2.0 * kPi * m * r;
  if (r != 0.0) val += (r > 0.0 ? quad_v(p, 0.0, r) : quad_v(p, r, 0.0) * -1.0);
  return val;
}

} // namespace detail

/// v_p(x): odd, strictly increasing; trig version satisfies
/// v(x + 2*pi) = v(x) + 2*pi per underlying parameter. A pair parameter
/// returns v_Re(x+theta) + v_Re(x-theta).
inline double v_eval(const CoupledParameter& p, double x) {
  validate(p);
  if (!p.is_pair()) return detail::v_single(p, x);
  CoupledParameter base = p;
  base.pair_offset = 0.0;
  return detail::v_single(base, x + p.pair_offset) + detail::v_single(base, x - p.pair_offset);
}

/// v'_p(x) > 0.
inline double v_deriv(const CoupledParameter& p, double x) {
  validate(p);
  if (!p.is_pair()) return detail::vd_single(p, x);
  CoupledParameter base = p;
  base.pair_offset = 0.0;
  return detail::vd_single(base, x + p.pair_offset) + detail::vd_single(base, x - p.pair_offset);
}

/// Range of v' over the real line: (0, 2/a], (0, cot(a/2)], or
/// [tanh(A/2), coth(A/2)]. Pair parameters are combined at the bounds layer
/// and rejected here.
inline std::pair<double, double> v_deriv_range(const CoupledParameter& p) {
  validate(p);
  if (p.is_pair())
    throw ValidationError("v_deriv_range is undefined for pair parameters; combine per-member ranges at the bounds layer");
  switch (p.kind) {
    case PotentialKind::Rational:
      return {0.0, 2.0 / p.magnitude};
    case PotentialKind::Hyperbolic:
      return {0.0, std::cos(0.5 * p.magnitude) / std::sin(0.5 * p.magnitude)};
    case PotentialKind::Trigonometric: {
      if (p.is_free_limit() || p.magnitude > 700.0) return {1.0, 1.0};
      const double t = std::tanh(0.5 * p.magnitude);
      return {t, 1.0 / t};
    }
  }
  return {0.0, 0.0};
}

/// Antiderivative int_0^x v_p(t) dt; even and nonnegative. Diagnostic only,
/// never on the solver path.
inline double v_antideriv(const CoupledParameter& p, double x) {
  validate(p);
  if (!p.is_pair()) return detail::antideriv_single(p, x);
  CoupledParameter base = p;
  base.pair_offset = 0.0;
  const double th = p.pair_offset;
  return detail::antideriv_single(base, x + th) + detail::antideriv_single(base, x - th)
       - 2.0 * detail::antideriv_single(base, th);
}

/// The exponentiated interaction factor s(ia + x)/s(ia - x) = e^{-i v_a(x)}.
/// Pair parameters multiply both members' factors; the free trig limit gives
/// e^{-ix}. Throws SingularityError on a vanishing denominator.
inline std::complex<double> s_ratio(const CoupledParameter& p, double x) {
  validate(p);
  using cd = std::complex<double>;
  if (p.is_free_limit()) return std::exp(cd(0.0, -x));
  auto one_factor = [&](cd a) -> cd {
    const cd ia = cd(0.0, 1.0) * a;
    const cd num = s_eval(p.kind, ia + x);
    const cd den = s_eval(p.kind, ia - x);
    if (std::abs(den) == 0.0)
      throw SingularityError("vanishing s-factor in Bethe product");
    return num / den;
  };
  if (p.is_pair()) {
    const cd a(p.magnitude, p.pair_offset);
    return one_factor(a) * one_factor(std::conj(a));
  }
  const cd a(p.magnitude, p.trig_sign < 0 ? kPi : 0.0);
  return one_factor(a);
}

} // namespace bethezeros

#endif
