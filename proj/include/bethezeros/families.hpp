#ifndef BETHEZEROS_FAMILIES_HPP
#define BETHEZEROS_FAMILIES_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bethezeros/errors.hpp"

namespace bethezeros {

enum class PolyFamily { Wilson, AskeyWilson, ContinuousHahn };

inline const char* to_string(PolyFamily f) {
  switch (f) {
    case PolyFamily::Wilson: return "wilson";
    case PolyFamily::AskeyWilson: return "askey-wilson";
    case PolyFamily::ContinuousHahn: return "continuous-hahn";
  }
  return "?";
}

/// Family parameters. Non-real entries must occur in exact complex conjugate
/// pairs. For Askey-Wilson, `params` holds (a,b,c,d) and `q` the (real) base.
struct PolynomialSpec {
  PolyFamily family = PolyFamily::Wilson;
  int n = 1;
  std::vector<std::complex<double>> params;
  double q = 0.0; // Askey-Wilson only
};

namespace detail {

inline void check_conjugate_pairing(const std::vector<std::complex<double>>& ps) {
  std::vector<std::complex<double>> open;
  for (const auto& p : ps) {
    if (p.imag() == 0.0) continue;
    bool matched = false;
    for (size_t i = 0; i < open.size(); ++i) {
      if (open[i] == std::conj(p)) {
        open.erase(open.begin() + static_cast<long>(i));
        matched = true;
        break;
      }
    }
    if (!matched) open.push_back(p);
  }
  if (!open.empty())
    throw ValidationError("non-real family parameters must occur in complex conjugate pairs");
}

} // namespace detail

inline void validate(const PolynomialSpec& spec) {
  if (spec.n < 1) throw ValidationError("polynomial degree n must be >= 1");
  const size_t want = (spec.family == PolyFamily::ContinuousHahn) ? 2u : 4u;
  if (spec.params.size() != want)
    throw ValidationError("wrong number of family parameters");
  for (const auto& p : spec.params) {
    if (std::isnan(p.real()) || std::isnan(p.imag()))
      throw ValidationError("family parameters must be finite");
    if (spec.family == PolyFamily::AskeyWilson) {
      if (std::abs(p) >= 1.0)
        throw ValidationError("Askey-Wilson parameters must lie in the open unit disc (reals in (-1,1))");
    } else {
      if (p.real() <= 0.0)
        throw ValidationError("Wilson/continuous-Hahn parameters require positive real part");
    }
  }
  if (spec.family == PolyFamily::AskeyWilson) {
    if (std::isnan(spec.q) || std::fabs(spec.q) >= 1.0)
      throw ValidationError("Askey-Wilson base q must lie in (-1, 1)");
  } else if (spec.q != 0.0) {
    throw ValidationError("q is only meaningful for the Askey-Wilson family");
  }
  detail::check_conjugate_pairing(spec.params);
}

} // namespace bethezeros

#endif
