#include <doctest.h>

#include <cmath>
#include <numbers>

#include "autocorr/errors.hpp"
#include "autocorr/special_functions.hpp"
#include "autocorr/spectral.hpp"

using namespace autocorr;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("builtin closed forms") {
  const auto psi1 = builtin_coefficients(Psi1{});
  CHECK(psi1.coefficient(1) == doctest::Approx(std::sqrt(6.0) / pi).epsilon(1e-15));
  CHECK(psi1.coefficient(1) == doctest::Approx(0.779697).epsilon(1e-6));
  CHECK(psi1.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));

  const auto psi2 = builtin_coefficients(Psi2{});
  CHECK(psi2.coefficient(2) == 0.0);
  CHECK(psi2.is_zero(2));
  CHECK(psi2.coefficient(3) == doctest::Approx(-4.0 * std::sqrt(6.0) / (9 * pi * pi)).epsilon(1e-15));

  const auto psi3 = builtin_coefficients(Psi3{});
  CHECK(psi3.coefficient(3) == doctest::Approx(8.0 * std::sqrt(15.0) / (27.0 * pi * pi * pi)).epsilon(1e-15));
  CHECK(psi3.is_zero(4));

  for (const BuiltinState& s : {BuiltinState{Psi1{}}, BuiltinState{Psi2{}}, BuiltinState{Psi3{}},
                                BuiltinState{Psi4{}}, BuiltinState{ChiBeta{0.3}}, BuiltinState{Bloch{0.3}}}) {
    INFO(state_name(s));
    CHECK(builtin_coefficients(s).norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("psi4 is the renormalized 20-term psi1 prefix") {
  const auto c = builtin_coefficients(Psi4{});
  REQUIRE(c.length() == kPsi4Terms);
  CHECK(c.is_zero(21));
  double s = 0.0;
  for (int n = 1; n <= 20; ++n) s += 6.0 / (n * n * pi * pi);
  CHECK(c.coefficient(7) == doctest::Approx(std::sqrt(6.0) / (7 * pi) / std::sqrt(s)).epsilon(1e-14));
}

TEST_CASE("bloch enumeration is two-sided with linear energies") {
  const auto c = builtin_coefficients(Bloch{0.3});
  CHECK(c.energy_rule() == EnergyRule::LinearTwoSided);
  CHECK(bloch_lattice_index(1) == 0);
  CHECK(bloch_lattice_index(2) == 1);
  CHECK(bloch_lattice_index(3) == -1);
  CHECK(bloch_lattice_index(4) == 2);
  CHECK(c.energy(3) == -1);
  const double w = std::sin(0.3 * pi) / (pi * (-1 + 0.3));
  CHECK(c.coefficient(3) == doctest::Approx(w).epsilon(1e-15));
}

TEST_CASE("parameter domains") {
  CHECK_THROWS_AS(builtin_coefficients(ChiBeta{0.0}), ParameterDomainError);
  CHECK_THROWS_AS(builtin_coefficients(ChiBeta{0.5}), ParameterDomainError);
  CHECK_THROWS_AS(builtin_coefficients(Bloch{2.0}), ParameterDomainError);
  CHECK_THROWS_AS(builtin_coefficients(Bloch{std::nan("")}), ParameterDomainError);
  CHECK_NOTHROW(builtin_coefficients(Bloch{-1.5}));
}

TEST_CASE("decompose_piecewise reproduces the closed forms") {
  for (const BuiltinState& s : {BuiltinState{Psi1{}}, BuiltinState{Psi2{}}, BuiltinState{Psi3{}}}) {
    INFO(state_name(s));
    const auto exact = builtin_coefficients(s);
    const auto got = decompose_piecewise(*piecewise_form(s), 100);
    for (int n = 1; n <= 100; ++n) CHECK(std::abs(got.coefficient(n) - exact.coefficient(n)) <= 1e-12);
  }
  const auto psi2 = decompose_piecewise(*piecewise_form(Psi2{}), 3);
  CHECK(psi2.coefficient(1) == doctest::Approx(4.0 * std::sqrt(6.0) / (pi * pi)).epsilon(1e-14));
  const PiecewisePolynomial psi3({{0.0, pi, {0.0, std::sqrt(30.0 / std::pow(pi, 5)) * pi, -std::sqrt(30.0 / std::pow(pi, 5))}}});
  CHECK(std::abs(decompose_piecewise(psi3, 2).coefficient(2)) <= 1e-15);
}

TEST_CASE("parity: states symmetric about pi/2 have no even modes") {
  // A symmetric two-piece tent with a quadratic cap, not one of the builtins.
  const double h = pi / 2;
  const PiecewisePolynomial sym({{0.0, h, {0.0, 1.0, 0.5}}, {h, pi, {pi + 0.5 * pi * pi, -1.0 - pi, 0.5}}});
  REQUIRE(sym(0.3) == doctest::Approx(sym(pi - 0.3)).epsilon(1e-13));
  const auto c = decompose_piecewise(sym, 40);
  for (int n = 2; n <= 40; n += 2) CHECK(std::abs(c.coefficient(n)) <= 1e-13);
  CHECK(std::abs(c.coefficient(1)) > 0.1);
}

TEST_CASE("piecewise layout validation") {
  CHECK_THROWS_AS(PiecewisePolynomial({}), StateFormatError);
  CHECK_THROWS_AS(PiecewisePolynomial({{0.0, 1.0, {1.0}}}), StateFormatError);
  CHECK_THROWS_AS(PiecewisePolynomial({{0.0, 1.0, {1.0}}, {1.5, pi, {1.0}}}), StateFormatError);
  CHECK_THROWS_AS(PiecewisePolynomial({{0.0, pi, {}}}), StateFormatError);
  CHECK_NOTHROW(PiecewisePolynomial({{0.0, 3.141592653589793, {1.0}}}));
}

TEST_CASE("l2 norm of the builtin pieces is one") {
  for (const BuiltinState& s : {BuiltinState{Psi1{}}, BuiltinState{Psi2{}}, BuiltinState{Psi3{}}})
    CHECK(l2_norm_sq(*piecewise_form(s)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("decay exponents") {
  CHECK(decay_exponent_fit(builtin_coefficients(Psi1{}), 10, 10000) == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(decay_exponent_fit(builtin_coefficients(Psi2{}), 11, 9999) == doctest::Approx(-2.0).epsilon(0.005));
  CHECK(decay_exponent_fit(builtin_coefficients(Psi3{}), 11, 9999) == doctest::Approx(-3.0).epsilon(0.004));
  for (double beta : {0.1, 0.25, 0.4})
    CHECK(decay_exponent_fit(builtin_coefficients(ChiBeta{beta}), 10, 10000) ==
          doctest::Approx(-(1 + beta)).epsilon(1e-6));
  CHECK_THROWS_AS(decay_exponent_fit(builtin_coefficients(Psi1{}), 10, 99), DomainError);
  // psi4 has 20 stored modes: [25, 250] holds none.
  CHECK_THROWS_AS(decay_exponent_fit(builtin_coefficients(Psi4{}), 25, 250), InsufficientDataError);
}

TEST_CASE("evaluate_state") {
  CHECK(evaluate_state(Psi1{}, pi, 10) == 0.0);
  CHECK(evaluate_state(Psi2{}, pi / 2, 10) == doctest::Approx(std::sqrt(3.0 / pi)).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate_state(Psi1{}, -0.1, 10), DomainError);
  CHECK_THROWS_AS(evaluate_state(Psi1{}, 3.2, 10), DomainError);
  // psi4 is the 20-mode psi1 series.
  const auto c = builtin_coefficients(Psi4{});
  double direct = 0.0;
  for (int n = 1; n <= 20; ++n) direct += c.coefficient(n) * std::sqrt(2.0 / pi) * std::sin(n * 1.1);
  CHECK(evaluate_state(Psi4{}, 1.1, 100) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("chi_beta small-x law") {
  const double beta = 0.1;
  const double x = 1e-3;
  const double norm = std::sqrt(2.0 / pi) / std::sqrt(zeta_real(2 + 2 * beta));
  // Next Mellin term of the sine sum is zeta(beta) x; the following is O(x^3).
  const double expected = chi_beta_small_x_prefactor(beta) * std::pow(x, beta) + norm * zeta_real(beta) * x;
  const double got = evaluate_state(ChiBeta{beta}, x, 20'000'000);
  CHECK(got == doctest::Approx(expected).epsilon(1e-5));
  const double prefactor = std::tgamma(-beta) * std::sin(-pi * beta / 2) * std::sqrt(2.0) /
                           std::sqrt(pi * zeta_real(2 + 2 * beta));
  CHECK(chi_beta_small_x_prefactor(beta) == doctest::Approx(prefactor).epsilon(1e-14));
}

TEST_CASE("chi_beta term count follows the absolute tail bound") {
  const double beta = 0.4, tol = 1e-3;
  const auto n = chi_beta_terms_for_tolerance(beta, tol);
  const double pref = std::sqrt(2.0 / pi) / std::sqrt(zeta_real(2 + 2 * beta));
  CHECK(pref * std::pow(static_cast<double>(n), -beta) / beta <= tol);
  CHECK(pref * std::pow(static_cast<double>(n - 1), -beta) / beta > tol * 0.999);
}
