#include "autocorr/special_functions.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "autocorr/errors.hpp"

namespace autocorr {
namespace {

bool is_nonpositive_integer(double s) { return s <= 0.0 && s == std::floor(s); }

[[noreturn]] void throw_pole(const char* fn, double s) {
  throw PoleError(s, std::string(fn) + " has a pole at s = " + std::to_string(s));
}

}  // namespace

double zeta_real(double s) {
  if (s == 1.0) throw_pole("zeta", s);
  if (!std::isfinite(s)) throw DomainError("zeta argument must be finite");
  return boost::math::zeta(s);
}

double gamma_real(double s) {
  if (is_nonpositive_integer(s)) throw_pole("gamma", s);
  if (!std::isfinite(s)) throw DomainError("gamma argument must be finite");
  return boost::math::tgamma(s);
}

double digamma(double s) {
  if (is_nonpositive_integer(s)) throw_pole("digamma", s);
  if (!std::isfinite(s)) throw DomainError("digamma argument must be finite");
  return boost::math::digamma(s);
}

}  // namespace autocorr
