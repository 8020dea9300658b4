#ifndef BETHEZEROS_SERIALIZATION_HPP
#define BETHEZEROS_SERIALIZATION_HPP

#include <cmath>
#include <complex>
#include <string>

#include <json.hpp>

#include "bethezeros/bethe_system.hpp"
#include "bethezeros/errors.hpp"
#include "bethezeros/families.hpp"
#include "bethezeros/potentials.hpp"

namespace bethezeros {

using json = nlohmann::json;

// Numeric JSON values may carry the sentinel string "inf" in place of an
// infinite double (JSON itself has no infinity).
inline json num_or_inf(double x) {
  if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
  return json(x);
}

inline double parse_num_or_inf(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ValidationError(std::string(what) + " must be a number or \"inf\"");
}

inline PotentialKind kind_from_string(const std::string& s) {
  if (s == "rational") return PotentialKind::Rational;
  if (s == "hyperbolic") return PotentialKind::Hyperbolic;
  if (s == "trigonometric") return PotentialKind::Trigonometric;
  throw ValidationError("unknown kind '" + s + "' (expected rational|hyperbolic|trigonometric)");
}

inline PolyFamily family_from_string(const std::string& s) {
  if (s == "wilson") return PolyFamily::Wilson;
  if (s == "askey-wilson") return PolyFamily::AskeyWilson;
  if (s == "continuous-hahn") return PolyFamily::ContinuousHahn;
  throw ValidationError("unknown family '" + s + "' (expected wilson|askey-wilson|continuous-hahn)");
}

/// Parameter entries are either bare numbers or {magnitude, sign,
/// pair_offset} objects. For the trigonometric kind a bare number is a
/// family-style value in (-1,1) (0 encodes the free limit) and is normalized
/// to the magnitude/sign form.
inline CoupledParameter param_from_json(const json& j, PotentialKind kind) {
  CoupledParameter p;
  p.kind = kind;
  if (j.is_number()) {
    const double x = j.get<double>();
    if (kind == PotentialKind::Trigonometric) {
      if (std::fabs(x) >= 1.0)
        throw ValidationError("family-style trigonometric parameter must lie in (-1, 1)");
      if (x == 0.0) {
        p.magnitude = kInf;
      } else {
        p.magnitude = -std::log(std::fabs(x));
        p.trig_sign = x < 0.0 ? -1 : +1;
      }
    } else {
      p.magnitude = x;
    }
  } else if (j.is_object()) {
    if (!j.contains("magnitude")) throw ValidationError("parameter object requires 'magnitude'");
    p.magnitude = parse_num_or_inf(j.at("magnitude"), "magnitude");
    if (j.contains("sign")) p.trig_sign = j.at("sign").get<int>();
    if (j.contains("pair_offset")) p.pair_offset = j.at("pair_offset").get<double>();
  } else {
    throw ValidationError("parameter must be a number or an object");
  }
  validate(p);
  return p;
}

inline json param_to_json(const CoupledParameter& p) {
  if (p.kind != PotentialKind::Trigonometric && !p.is_pair()) return json(p.magnitude);
  json j;
  j["magnitude"] = num_or_inf(p.magnitude);
  if (p.kind == PotentialKind::Trigonometric) j["sign"] = p.trig_sign;
  if (p.is_pair()) j["pair_offset"] = p.pair_offset;
  return j;
}

inline BetheSystem system_from_json(const json& j) {
  BetheSystem sys;
  const std::string t = j.at("type").get<std::string>();
  if (t == "A") sys.stype = SystemType::A;
  else if (t == "B") sys.stype = SystemType::B;
  else throw ValidationError("system type must be \"A\" or \"B\"");
  sys.kind = kind_from_string(j.at("kind").get<std::string>());
  sys.n = j.at("n").get<int>();
  sys.alpha = j.at("alpha").get<double>();
  if (sys.stype == SystemType::A) {
    if (j.contains("epsilon"))
      throw ValidationError("epsilon belongs to type-B systems; type A takes beta");
    if (j.contains("beta")) sys.beta = j.at("beta").get<double>();
  } else {
    if (j.contains("beta"))
      throw ValidationError("beta belongs to type-A systems; type B takes epsilon");
    if (j.contains("epsilon")) sys.epsilon = j.at("epsilon").get<int>();
  }
  if (j.contains("a_params"))
    for (const auto& e : j.at("a_params")) sys.a_params.push_back(param_from_json(e, sys.kind));
  if (j.contains("b_params"))
    for (const auto& e : j.at("b_params")) sys.b_params.push_back(param_from_json(e, sys.kind));
  sys.mu = j.at("mu").get<std::vector<int>>();
  validate(sys);
  return sys;
}

inline json system_to_json(const BetheSystem& sys) {
  json j;
  j["type"] = to_string(sys.stype);
  j["kind"] = to_string(sys.kind);
  j["n"] = sys.n;
  j["alpha"] = sys.alpha;
  if (sys.stype == SystemType::A) j["beta"] = sys.beta;
  else j["epsilon"] = sys.epsilon;
  j["a_params"] = json::array();
  for (const auto& p : sys.a_params) j["a_params"].push_back(param_to_json(p));
  j["b_params"] = json::array();
  for (const auto& p : sys.b_params) j["b_params"].push_back(param_to_json(p));
  j["mu"] = sys.mu;
  return j;
}

inline std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object() && j.contains("re"))
    return {j.at("re").get<double>(), j.value("im", 0.0)};
  throw ValidationError("polynomial parameter must be a number or {re, im}");
}

inline json complex_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) return json(z.real());
  return json{{"re", z.real()}, {"im", z.imag()}};
}

inline PolynomialSpec polynomial_from_json(const json& j) {
  PolynomialSpec spec;
  spec.family = family_from_string(j.at("family").get<std::string>());
  spec.n = j.at("n").get<int>();
  for (const auto& e : j.at("params")) spec.params.push_back(complex_from_json(e));
  if (j.contains("q")) spec.q = j.at("q").get<double>();
  validate(spec);
  return spec;
}

inline json polynomial_to_json(const PolynomialSpec& spec) {
  json j;
  j["family"] = to_string(spec.family);
  j["n"] = spec.n;
  j["params"] = json::array();
  for (const auto& p : spec.params) j["params"].push_back(complex_to_json(p));
  if (spec.family == PolyFamily::AskeyWilson) j["q"] = spec.q;
  return j;
}

} // namespace bethezeros

#endif
