#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "autocorr/errors.hpp"
#include "autocorr/special_functions.hpp"

using namespace autocorr;

namespace {

double reference_eval(const std::string& fn, double x) {
  if (fn == "zeta") return zeta_real(x);
  if (fn == "gamma") return gamma_real(x);
  return digamma(x);
}

}  // namespace

TEST_CASE("reference table at 50 digits, 1e-12 relative") {
  std::ifstream in(AUTOCORR_FIXTURE_DIR "/special_functions.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string fn, x, value;
    std::getline(fields, fn, ',');
    std::getline(fields, x, ',');
    std::getline(fields, value, ',');
    const double expected = std::stod(value);
    const double got = reference_eval(fn, std::stod(x));
    INFO(fn << "(" << x << ") = " << got << ", expected " << value);
    CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected));
    ++rows;
  }
  CHECK(rows == 60);
}

TEST_CASE("classical values") {
  const double pi = std::numbers::pi;
  CHECK(zeta_real(2.0) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(zeta_real(0.0) == -0.5);
  CHECK(gamma_real(-0.5) == doctest::Approx(-2.0 * std::sqrt(pi)).epsilon(1e-15));
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-15));
}

TEST_CASE("poles carry their location") {
  try {
    zeta_real(1.0);
    FAIL("expected a pole error");
  } catch (const PoleError& e) {
    CHECK(e.location() == 1.0);
    CHECK(e.code() == "pole");
  }
  CHECK_THROWS_AS(gamma_real(0.0), PoleError);
  CHECK_THROWS_AS(gamma_real(-3.0), PoleError);
  CHECK_THROWS_AS(digamma(-2.0), PoleError);
  CHECK_THROWS_AS(zeta_real(std::nan("")), DomainError);
}
