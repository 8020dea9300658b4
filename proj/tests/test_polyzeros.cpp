#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "bethezeros/polyzeros.hpp"
#include "bethezeros/verify.hpp"

using namespace bethezeros;
using Catch::Approx;

namespace {

PolynomialSpec aw_t1() {
  return {PolyFamily::AskeyWilson, 5, {{0.3, 0.0}, {-0.2, 0.0}, {0.15, 0.0}, {0.1, 0.0}}, 0.1};
}
PolynomialSpec wilson_t2() {
  return {PolyFamily::Wilson, 5, {{1.15, 0.0}, {1.1, 0.0}, {1.0, 0.0}, {0.9, 0.0}}, 0.0};
}
PolynomialSpec chahn_t3() { return {PolyFamily::ContinuousHahn, 10, {{1.1, 0.0}, {0.9, 0.0}}, 0.0}; }
PolynomialSpec chebyshev(int n) {
  return {PolyFamily::AskeyWilson, n, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 0.0};
}

} // namespace

TEST_CASE("family_to_bethe parameter mapping") {
  // Askey-Wilson: magnitudes -log|p|, signs from parameter signs, q -> b_1
  const BetheSystem aw = family_to_bethe(aw_t1());
  CHECK(aw.stype == SystemType::B);
  CHECK(aw.kind == PotentialKind::Trigonometric);
  CHECK(aw.alpha == 0.0);
  CHECK(aw.epsilon == 0);
  CHECK(aw.mu == make_rho(5));
  REQUIRE(aw.a_params.size() == 4);
  CHECK(aw.a_params[0].magnitude == Approx(-std::log(0.3)));
  CHECK(aw.a_params[0].trig_sign == +1);
  CHECK(aw.a_params[1].magnitude == Approx(-std::log(0.2)));
  CHECK(aw.a_params[1].trig_sign == -1);
  CHECK(aw.a_params[2].magnitude == Approx(-std::log(0.15)));
  CHECK(aw.a_params[3].magnitude == Approx(-std::log(0.1)));
  REQUIRE(aw.b_params.size() == 1);
  CHECK(aw.b_params[0].magnitude == Approx(-std::log(0.1)));
  CHECK(aw.b_params[0].trig_sign == +1);

  const BetheSystem w = family_to_bethe(wilson_t2());
  CHECK(w.kind == PotentialKind::Rational);
  CHECK(w.stype == SystemType::B);
  REQUIRE(w.a_params.size() == 4);
  CHECK(w.a_params[0].magnitude == 1.15);
  CHECK(w.b_params[0].magnitude == 1.0);

  const BetheSystem c = family_to_bethe(chahn_t3());
  CHECK(c.stype == SystemType::A);
  CHECK(c.beta == 0.5); // beta_10
  CHECK(c.mu == make_rho_tilde_and_beta(10).first);
  CHECK(c.a_params.size() == 2);
  CHECK(c.b_params[0].magnitude == 1.0);

  // conjugate pairs fold into pair parameters
  PolynomialSpec pw{PolyFamily::Wilson, 3, {{0.8, 0.6}, {0.8, -0.6}, {1.0, 0.0}, {0.9, 0.0}}, 0.0};
  const BetheSystem wp = family_to_bethe(pw);
  REQUIRE(wp.a_params.size() == 3);
  CHECK(wp.a_params[0].magnitude == Approx(0.8));
  CHECK(wp.a_params[0].pair_offset == Approx(0.6));
  CHECK(param_count(wp.a_params) == 4);

  PolynomialSpec paw{PolyFamily::AskeyWilson, 3, {{0.3, 0.4}, {0.3, -0.4}, {0.2, 0.0}, {0.0, 0.0}}, 0.2};
  const BetheSystem awp = family_to_bethe(paw);
  REQUIRE(awp.a_params.size() == 3);
  CHECK(awp.a_params[0].magnitude == Approx(-std::log(0.5)));
  CHECK(awp.a_params[0].pair_offset == Approx(std::atan2(0.4, 0.3)));
  CHECK(awp.a_params[2].is_free_limit());
}

TEST_CASE("eval_poly is monic via divided differences at n=1") {
  // leading coefficient of xi (cHahn), xi^2 (Wilson), cos xi (AW) equals 1
  PolynomialSpec c{PolyFamily::ContinuousHahn, 1, {{1.1, 0.0}, {0.9, 0.0}}, 0.0};
  CHECK((eval_poly(c, 2.0) - eval_poly(c, 1.0)) / 1.0 == Approx(1.0));

  PolynomialSpec w{PolyFamily::Wilson, 1, {{1.15, 0.0}, {1.1, 0.0}, {1.0, 0.0}, {0.9, 0.0}}, 0.0};
  const double y0 = 1.0, y1 = 4.0; // xi = 1, 2
  CHECK((eval_poly(w, 2.0) - eval_poly(w, 1.0)) / (y1 - y0) == Approx(1.0));

  PolynomialSpec a = aw_t1();
  a.n = 1;
  const double x0 = std::cos(1.0), x1 = std::cos(2.0);
  CHECK((eval_poly(a, 2.0) - eval_poly(a, 1.0)) / (x1 - x0) == Approx(1.0));
}

TEST_CASE("eval_poly hits the Chebyshev identity at zero parameters") {
  const PolynomialSpec cheb = chebyshev(5);
  CHECK(eval_poly(cheb, kPi / 6) == Approx(0.0).margin(1e-14));
  for (double xi : {0.4, 1.0, 2.5}) {
    const double expect = std::sin(6 * xi) / (std::sin(xi) * 32.0); // monic U_5
    CHECK(eval_poly(cheb, xi) == Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("eval_poly vanishes at a Wilson table root") {
  const auto spec = wilson_t2();
  // |p| at the root is tiny relative to the polynomial scale at the origin
  const double scale = std::fabs(eval_poly(spec, 0.0));
  CHECK(std::fabs(eval_poly(spec, 0.632098784367)) <= 1e-6 * scale);
}

TEST_CASE("series evaluation agrees with the recurrence where well-conditioned") {
  // Wilson / continuous Hahn at moderate degree
  for (const auto& spec : {wilson_t2(), chahn_t3()}) {
    for (double xi : {0.3, 1.1, 2.7, 4.0}) {
      const double lhs = eval_poly_series(spec, xi);
      const double rhs = eval_poly(spec, xi);
      const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      CHECK(std::fabs(lhs - rhs) / scale < 1e-9);
    }
  }
  // Askey-Wilson with mild q and n
  PolynomialSpec aw{PolyFamily::AskeyWilson, 4, {{0.5, 0.0}, {-0.4, 0.0}, {0.3, 0.0}, {0.2, 0.0}}, 0.45};
  for (double xi : {0.5, 1.5, 2.8}) {
    const double lhs = eval_poly_series(aw, xi);
    const double rhs = eval_poly(aw, xi);
    CHECK(std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)) < 1e-8);
  }
  // the series form is singular at q = 0 and reports it
  CHECK_THROWS_AS(eval_poly_series(chebyshev(3), 1.0), NumericInstabilityError);
}

TEST_CASE("series slot symmetrization handles a vanishing leading parameter") {
  // continuity from small |a|: the largest-modulus slot takes over
  PolynomialSpec tiny{PolyFamily::AskeyWilson, 3, {{1e-12, 0.0}, {0.5, 0.0}, {-0.3, 0.0}, {0.2, 0.0}}, 0.4};
  PolynomialSpec small{PolyFamily::AskeyWilson, 3, {{1e-6, 0.0}, {0.5, 0.0}, {-0.3, 0.0}, {0.2, 0.0}}, 0.4};
  for (double xi : {0.7, 1.9}) {
    CHECK(eval_poly_series(tiny, xi) == Approx(eval_poly_series(small, xi)).epsilon(1e-5));
    CHECK(eval_poly_series(tiny, xi) == Approx(eval_poly(tiny, xi)).epsilon(1e-8));
  }
}

TEST_CASE("zeros via Bethe reproduce the printed tables") {
  const Eigen::VectorXd aw = zeros_via_bethe(aw_t1());
  const double t1[5] = {2.577, 2.033, 1.508, 0.997, 0.496};
  for (int j = 0; j < 5; ++j) CHECK(aw[j] == Approx(t1[j]).margin(5e-4));

  const Eigen::VectorXd w = zeros_via_bethe(wilson_t2());
  const double t2[5] = {4.477, 3.099, 2.090, 1.292, 0.632};
  for (int j = 0; j < 5; ++j) CHECK(w[j] == Approx(t2[j]).margin(5e-4));

  const Eigen::VectorXd c = zeros_via_bethe(chahn_t3());
  const double t3[5] = {3.770, 2.481, 1.554, 0.838, 0.261};
  for (int j = 0; j < 5; ++j) CHECK(c[j] == Approx(t3[j]).margin(5e-4));
}

TEST_CASE("oracle finds the exact Chebyshev roots") {
  const Eigen::VectorXd r = zeros_via_oracle(chebyshev(5));
  for (int j = 1; j <= 5; ++j)
    CHECK(std::fabs(r[j - 1] - kPi * (6 - j) / 6.0) <= 1e-11);
}

TEST_CASE("oracle equivalence on the sample specs") {
  for (const auto& spec : {aw_t1(), wilson_t2(), chahn_t3()}) {
    const Eigen::VectorXd zb = zeros_via_bethe(spec);
    const Eigen::VectorXd zo = zeros_via_oracle(spec);
    CHECK((zb - zo).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("continuous Hahn zeros are antisymmetric") {
  const Eigen::VectorXd r = zeros_via_oracle(chahn_t3());
  const int n = chahn_t3().n;
  for (int j = 0; j < n; ++j)
    CHECK(r[n - 1 - j] == Approx(-r[j]).margin(1e-10));
}

TEST_CASE("difference-equation residual certifies the roots") {
  const Eigen::VectorXd aw = zeros_via_bethe(aw_t1());
  CHECK(de_residual(aw_t1(), aw) <= 1e-8);

  Eigen::VectorXd cheb(5);
  for (int j = 1; j <= 5; ++j) cheb[j - 1] = kPi * (6 - j) / 6.0;
  CHECK(de_residual(chebyshev(5), cheb) <= 1e-12);

  Eigen::VectorXd off = aw;
  for (int j = 0; j < 5; ++j) off[j] += (j % 2 ? 1e-3 : -1e-3);
  CHECK(de_residual(aw_t1(), off) > 1e-6);

  CHECK(de_residual(wilson_t2(), zeros_via_bethe(wilson_t2())) <= 1e-8);
  CHECK(de_residual(chahn_t3(), zeros_via_bethe(chahn_t3())) <= 1e-8);
}

TEST_CASE("difference operator data") {
  const auto op = diff_op_data(wilson_t2());
  CHECK(op.E_n == Approx(-5.0 * (5 + 4.15 - 1)));
  CHECK(op.shift == cd(0.0, 1.0));
  // eigenvalue nondegeneracy across 0..n
  for (const auto& spec : {wilson_t2(), chahn_t3(), aw_t1()}) {
    std::vector<double> evs;
    for (int m = 0; m <= spec.n; ++m) evs.push_back(de_eigenvalue(spec, m));
    for (size_t i = 0; i < evs.size(); ++i)
      for (size_t j = i + 1; j < evs.size(); ++j)
        CHECK(std::fabs(evs[i] - evs[j]) > 1e-10);
  }
  const auto aw_op = diff_op_data(aw_t1());
  CHECK(aw_op.shift.real() == Approx(0.0).margin(1e-15));
  CHECK(aw_op.shift.imag() == Approx(-std::log(0.1)));
}

TEST_CASE("parity and evenness of the families") {
  const auto c = chahn_t3();
  for (double xi : {0.4, 1.3, 2.9}) {
    const double scale = std::max(1.0, std::fabs(eval_poly(c, xi)));
    CHECK(std::fabs(eval_poly(c, -xi) - eval_poly(c, xi)) / scale < 1e-10); // n even
  }
  PolynomialSpec codd = c;
  codd.n = 7;
  for (double xi : {0.4, 1.3}) {
    const double scale = std::max(1.0, std::fabs(eval_poly(codd, xi)));
    CHECK(std::fabs(eval_poly(codd, -xi) + eval_poly(codd, xi)) / scale < 1e-10);
  }
  const auto w = wilson_t2();
  for (double xi : {0.7, 2.2})
    CHECK(eval_poly(w, -xi) == Approx(eval_poly(w, xi)).epsilon(1e-12));
}

TEST_CASE("product identity at random points") {
  std::mt19937_64 eng(23);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  for (const auto& spec : {aw_t1(), wilson_t2(), chahn_t3()}) {
    const Eigen::VectorXd roots = zeros_via_oracle(spec);
    for (int t = 0; t < 20; ++t) {
      const double xi = uni(0.05, 3.0);
      double prod = 1.0;
      for (int k = 0; k < spec.n; ++k) {
        switch (spec.family) {
          case PolyFamily::Wilson: prod *= xi * xi - roots[k] * roots[k]; break;
          case PolyFamily::AskeyWilson: prod *= std::cos(xi) - std::cos(roots[k]); break;
          case PolyFamily::ContinuousHahn: prod *= xi - roots[k]; break;
        }
      }
      const double val = eval_poly(spec, xi);
      CHECK(std::fabs(val - prod) / std::max(1.0, std::fabs(prod)) < 1e-8);
    }
  }
}

TEST_CASE("oracle equivalence over a random sweep") {
  for (PolyFamily fam : {PolyFamily::Wilson, PolyFamily::AskeyWilson, PolyFamily::ContinuousHahn}) {
    for (int i = 0; i < 20; ++i) {
      const PolynomialSpec spec = verify::random_spec(fam, 20250810, i);
      const auto res = verify::check_polynomial_case(spec, "sweep");
      INFO(to_string(fam) << " case " << i << ": " << res.detail);
      CHECK(res.pass);
    }
  }
}

TEST_CASE("AW zeros live strictly inside (0, pi)") {
  for (int i = 0; i < 10; ++i) {
    const PolynomialSpec spec = verify::random_spec(PolyFamily::AskeyWilson, 99, i);
    const Eigen::VectorXd r = zeros_via_bethe(spec);
    for (int j = 0; j < spec.n; ++j) {
      CHECK(r[j] > 0.0);
      CHECK(r[j] < kPi);
    }
  }
}

TEST_CASE("spec validation rejects out-of-domain polynomials") {
  CHECK_THROWS_AS(validate(PolynomialSpec{PolyFamily::Wilson, 0, {{1, 0}, {1, 0}, {1, 0}, {1, 0}}, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(validate(PolynomialSpec{PolyFamily::Wilson, 2, {{1, 0}, {1, 0}}, 0.0}),
                  ValidationError);
  CHECK_THROWS_AS(
      validate(PolynomialSpec{PolyFamily::AskeyWilson, 2, {{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}}, 1.0}),
      ValidationError);
  // unpaired complex parameter
  CHECK_THROWS_AS(
      validate(PolynomialSpec{PolyFamily::Wilson, 2, {{0.8, 0.6}, {0.8, 0.6}, {1, 0}, {1, 0}}, 0.0}),
      ValidationError);
  // de_residual demands ordered roots
  Eigen::VectorXd bad(5);
  bad << 1.0, 2.0, 0.5, 0.4, 0.3;
  CHECK_THROWS_AS(de_residual(aw_t1(), bad), ValidationError);
}

TEST_CASE("conjugate-pair specs run end to end") {
  PolynomialSpec aw{PolyFamily::AskeyWilson, 4, {{0.3, 0.4}, {0.3, -0.4}, {-0.25, 0.0}, {0.1, 0.0}}, -0.3};
  const auto res = verify::check_polynomial_case(aw, "aw pair");
  INFO(res.detail);
  CHECK(res.pass);

  PolynomialSpec ch{PolyFamily::ContinuousHahn, 6, {{0.9, 0.5}, {0.9, -0.5}}, 0.0};
  const auto res2 = verify::check_polynomial_case(ch, "chahn pair");
  INFO(res2.detail);
  CHECK(res2.pass);
}
