#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace autocorr::detail {

// Error-free transformations. a + b == s + e exactly.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// a * b == p + e exactly (requires a correctly rounded fma).
inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

/// Neumaier (improved Kahan-Babuska) accumulator. Unlike plain Kahan it stays
/// exact when an addend is larger than the running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double s, e;
    two_sum(sum_, x, s, e);
    sum_ = s;
    carry_ += e;
  }

  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.carry_);
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  void add(const CompensatedComplexSum& other) {
    re_.add(other.re_);
    im_.add(other.im_);
  }

  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  static DoubleDouble from_double(double x) { return {x, 0.0}; }

  // x*x without rounding loss.
  static DoubleDouble square(double x) {
    DoubleDouble r;
    two_prod(x, x, r.hi, r.lo);
    return r;
  }

  double value() const { return hi + lo; }
};

// 2*pi to ~32 significant digits.
inline constexpr double kTwoPiHi = 6.283185307179586232;
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;

/// Argument t expressed in turns, t / (2 pi), as a double-double.
inline DoubleDouble to_turns(DoubleDouble t) {
  const double q = t.hi / kTwoPiHi;
  // r = t - q * 2pi, evaluated with the product split exactly.
  double p, pe;
  two_prod(q, kTwoPiHi, p, pe);
  const double r = ((t.hi - p) - pe) + t.lo - q * kTwoPiLo;
  const double q_lo = r / kTwoPiHi;
  DoubleDouble out;
  two_sum(q, q_lo, out.hi, out.lo);
  return out;
}

/// Phase angle of multiplier * t reduced into [-pi, pi]. `turns` is t/(2 pi)
/// from to_turns(). The product is formed in double-double so the reduction
/// stays accurate for |multiplier| up to ~1e17.
inline double reduced_phase(std::int64_t multiplier, const DoubleDouble& turns) {
  const double m_hi = static_cast<double>(multiplier);
  const double m_lo =
      static_cast<double>(multiplier - static_cast<std::int64_t>(m_hi));
  double p_hi, p_lo;
  two_prod(m_hi, turns.hi, p_hi, p_lo);
  p_lo += m_hi * turns.lo + m_lo * turns.hi;
  double frac = (p_hi - std::floor(p_hi)) + p_lo;
  frac -= std::nearbyint(frac);
  return 2.0 * std::numbers::pi * frac;
}

}  // namespace autocorr::detail
