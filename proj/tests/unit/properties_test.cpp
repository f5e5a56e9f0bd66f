#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "autocorr/fractal.hpp"
#include "autocorr/mellin.hpp"
#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"

using namespace autocorr;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_times(int count, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> t(count);
  for (auto& x : t) x = dist(rng);
  return t;
}

}  // namespace

TEST_CASE("Parseval: partial sums rise to one at the smoothness rate") {
  struct Case {
    BuiltinState state;
    int order;
  };
  for (const auto& c : {Case{Psi1{}, 1}, Case{Psi2{}, 2}, Case{Psi3{}, 3}}) {
    INFO(state_name(c.state));
    const auto coeffs = builtin_coefficients(c.state);
    double partial = 0.0, previous = 0.0;
    for (std::int64_t n = 1; n <= 4096; ++n) {
      partial += coeffs.weight(n);
      CHECK(partial >= previous);
      previous = partial;
      if (n == 64 || n == 512 || n == 4096) {
        const double defect = 1.0 - partial;
        const double rate = std::pow(static_cast<double>(n), 1.0 - 2.0 * c.order);
        // 1 - partial cannot resolve a defect below the rounding of the sum.
        const double floor = 64 * std::numeric_limits<double>::epsilon();
        CHECK(defect > -floor);
        CHECK(defect < rate + floor);
      }
    }
  }
}

TEST_CASE("|A| <= 1 and conjugate symmetry") {
  const std::vector<BuiltinState> states{Psi1{}, Psi2{}, Psi3{}, Psi4{}, ChiBeta{0.1}, ChiBeta{0.4}};
  for (const auto& s : states) {
    INFO(state_name(s));
    const auto coeffs = builtin_coefficients(s);
    for (double t : random_times(6, 0.0, 40.0, 7)) {
      const auto plus = eval_autocorr(coeffs, t, 1e-6);
      const auto minus = eval_autocorr(coeffs, -t, 1e-6);
      CHECK(std::abs(plus.value) <= 1.0 + 1e-14);
      CHECK(std::abs(minus.value - std::conj(plus.value)) <= 1e-13);
    }
  }
  for (double alpha : {0.2, 0.77}) {
    for (double t : random_times(20, -20.0, 20.0, 11)) {
      const auto b = eval_bloch(alpha, t, 1e-9);
      CHECK(std::abs(b.value) <= 1.0 + 1e-9);
      CHECK(std::abs(eval_bloch(alpha, -t, 1e-9).value - std::conj(b.value)) <= 1e-12);
    }
  }
}

TEST_CASE("2 pi periodicity") {
  struct Case {
    BuiltinState state;
    double tol;
  };
  for (const auto& c : {Case{Psi1{}, 1e-6}, Case{Psi2{}, 1e-10}, Case{Psi3{}, 1e-10}, Case{ChiBeta{0.3}, 1e-6}}) {
    INFO(state_name(c.state));
    const auto coeffs = builtin_coefficients(c.state);
    for (double t : random_times(4, 0.0, 2 * pi, 3)) {
      const double shifted = t + 2 * pi;
      const auto a = eval_autocorr(coeffs, t, c.tol).value;
      const auto b = eval_autocorr(coeffs, shifted, c.tol).value;
      // t + 2 pi is rounded; A is Hoelder-1/2 at worst, so the rounding shift
      // contributes at most ~sqrt(ulp).
      const double rounding = std::sqrt(std::abs((shifted - 2 * pi) - t));
      CHECK(std::abs(a - b) <= 2 * c.tol + rounding);
    }
  }
}

TEST_CASE("truncation bounds are honest") {
  const std::vector<BuiltinState> states{Psi1{}, Psi2{}, Psi3{}, ChiBeta{0.1}, ChiBeta{0.4}};
  for (const auto& s : states) {
    const auto coeffs = builtin_coefficients(s);
    for (std::int64_t n : {10, 1000, 100000}) {
      for (double t : random_times(3, 0.0, 7.0, 5)) {
        const auto small = eval_autocorr_terms(coeffs, t, n);
        const auto large = eval_autocorr_terms(coeffs, t, 4 * n);
        INFO(state_name(s) << " N = " << n << " t = " << t);
        CHECK(std::abs(small.value - large.value) <= small.truncation_bound);
      }
    }
  }
  for (const auto& spec : {HarmonicSumSpec::f1(2), HarmonicSumSpec::f2(4), HarmonicSumSpec::f3(1.1),
                           HarmonicSumSpec::f3(1.4)}) {
    for (std::int64_t n : {10, 1000, 100000}) {
      for (double x : random_times(3, 0.01, 3.0, 9)) {
        const auto small = eval_harmonic_terms(spec, x, n);
        const auto large = eval_harmonic_terms(spec, x, 4 * n);
        CHECK(std::abs(small.value - large.value) <= small.truncation_bound);
      }
    }
  }
  for (double alpha : {0.2, 0.499, 0.77}) {
    for (std::int64_t n : {10, 1000, 100000}) {
      for (double t : random_times(3, 0.01, 6.2, 13)) {
        const auto small = eval_bloch_terms(alpha, t, n);
        const auto large = eval_bloch_terms(alpha, t, 4 * n);
        CHECK(std::abs(small.value - large.value) <= small.truncation_bound);
        CHECK(std::abs(small.value - bloch_closed(alpha, t)) <= small.truncation_bound + 1e-13);
      }
    }
  }
}

TEST_CASE("expansions match the series with an O(t^valid_order) remainder") {
  struct Case {
    BuiltinState state;
    double depth;
  };
  for (const auto& c : {Case{Psi1{}, 3.5}, Case{Psi2{}, 3.5}, Case{Psi3{}, 5.5}}) {
    const auto e = autocorr_expansion(c.state, c.depth);
    const auto coeffs = builtin_coefficients(c.state);
    int checked = 0;
    for (double t = 1e-2; t >= 1e-8; t /= 10) {
      const double scale = std::pow(t, e.valid_order);
      const double tol = 0.01 * scale;
      // Skip points below the rounding floor or beyond a few seconds of summation.
      if (scale < 1e-13 || coeffs.terms_for_tail(tol) > 100'000'000) continue;
      const auto s = eval_autocorr(coeffs, t, tol);
      const double ratio = std::abs(s.value - eval_expansion(e, t)) / scale;
      INFO(state_name(c.state) << " t = " << t << " ratio = " << ratio);
      CHECK(ratio < 5.0);
      ++checked;
    }
    CHECK(checked >= 3);
  }
}

TEST_CASE("f3 expansion reproduces the chi_beta small-x law") {
  // Reference values of sum sin(n x) / n^mu from the Hurwitz zeta function
  // (tools/gen_f3_table.py). Certified partial sums at x = 1e-3 would need
  // ~1e11 terms, so the series itself is checked at x = 1e-2 only.
  std::ifstream in(AUTOCORR_FIXTURE_DIR "/f3_small_x.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string mu_s, x_s, value_s;
    std::getline(fields, mu_s, ',');
    std::getline(fields, x_s, ',');
    std::getline(fields, value_s, ',');
    const double mu = std::stod(mu_s), x = std::stod(x_s), reference = std::stod(value_s);
    const double beta = mu - 1;
    const auto e = expand(HarmonicSumSpec::f3(mu), Part::Re, 2.5);
    REQUIRE(!e.terms.empty());
    CHECK(e.terms.front().power == doctest::Approx(beta).epsilon(1e-15));
    INFO("mu = " << mu << " x = " << x);
    CHECK(std::abs(eval_expansion(e, x).real() - reference) <= std::pow(x, 2.5));
    if (x >= 1e-2) {
      const auto s = eval_harmonic(HarmonicSumSpec::f3(mu), x, 1e-6);
      CHECK(std::abs(s.value.real() - reference) <= s.truncation_bound + 1e-12);
    }
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("dimension estimates are stable under sample doubling") {
  for (const BuiltinState& s : {BuiltinState{Psi1{}}, BuiltinState{Psi2{}}, BuiltinState{Psi3{}}}) {
    const auto coeffs = builtin_coefficients(s);
    for (Channel ch : {Channel::Re, Channel::Im}) {
      const double d1 = box_count_dimension(period_graph(coeffs, 1 << 17, ch)).fitted_dimension;
      const double d2 = box_count_dimension(period_graph(coeffs, 1 << 18, ch)).fitted_dimension;
      INFO(state_name(s) << " " << channel_name(ch) << ": " << d1 << " -> " << d2);
      CHECK(std::abs(d1 - d2) < 0.05);
      CHECK(d2 >= 1.0 - 0.02);
      CHECK(d2 <= 2.0);
    }
  }
}
