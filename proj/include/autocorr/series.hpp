#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "autocorr/spectral.hpp"

namespace autocorr {

inline constexpr double kDefaultTolerance = 1e-8;

/// A truncated series together with a certified bound on the discarded tail:
/// |value - exact| <= truncation_bound (rounding excluded).
struct SeriesValue {
  std::complex<double> value;
  double truncation_bound = 0.0;
  std::int64_t terms_used = 0;
};

enum class WeightPattern { AllN, OddN, SineKernel };
enum class PhaseKernel { QuadraticExp, LinearSine };

/// sum_n w(n) K(n, x) / n^mu with
///   f1: AllN + QuadraticExp  -> sum exp(-i n^2 x^2) / n^mu
///   f2: OddN + QuadraticExp  -> same over odd n
///   f3: SineKernel + LinearSine -> sum sin(n x) / n^mu
struct HarmonicSumSpec {
  WeightPattern weight_pattern = WeightPattern::AllN;
  double mu = 2.0;
  PhaseKernel phase_kernel = PhaseKernel::QuadraticExp;

  static HarmonicSumSpec f1(double mu) { return {WeightPattern::AllN, mu, PhaseKernel::QuadraticExp}; }
  static HarmonicSumSpec f2(double mu) { return {WeightPattern::OddN, mu, PhaseKernel::QuadraticExp}; }
  static HarmonicSumSpec f3(double mu) { return {WeightPattern::SineKernel, mu, PhaseKernel::LinearSine}; }
};

/// Throws ConvergenceError for mu <= 1 and std::invalid_argument for a
/// weight/kernel pairing other than f1, f2, f3.
void validate(const HarmonicSumSpec& spec);

/// A(t) = sum_k |c_k|^2 exp(-i E_k t), truncated where the coefficient tail
/// drops below tol. Stored prefixes are summed in full (bound 0).
SeriesValue eval_autocorr(const SpectralCoefficients& coeffs, double t,
                          double tol = kDefaultTolerance);

/// Same sum with a fixed number of enumerated terms.
SeriesValue eval_autocorr_terms(const SpectralCoefficients& coeffs, double t, std::int64_t terms);

SeriesValue eval_harmonic(const HarmonicSumSpec& spec, double x, double tol = kDefaultTolerance);
SeriesValue eval_harmonic_terms(const HarmonicSumSpec& spec, double x, std::int64_t terms);

/// Certified tail bound of eval_harmonic after `terms` terms.
double harmonic_tail_bound(const HarmonicSumSpec& spec, double x, std::int64_t terms);

/// Riemann's function R(t) = sum sin(n^2 t) / n^2.
double eval_riemann(double t, double tol = kDefaultTolerance);

/// D(t) = sum over odd n of exp(-i n^2 t) / n^2.
SeriesValue eval_d(double t, double tol = kDefaultTolerance);

/// B(t) = sin^2(pi alpha)/pi^2 * sum_{n in Z} exp(-i n t) / (n + alpha)^2,
/// summed over the balanced range |n| <= N.
SeriesValue eval_bloch(double alpha, double t, double tol = kDefaultTolerance);
SeriesValue eval_bloch_terms(double alpha, double t, std::int64_t half_width);

/// Closed form (1 - (1 - e^{-2 pi i alpha}) t / 2pi) e^{i alpha t} with t
/// reduced into [0, 2pi).
std::complex<double> bloch_closed(double alpha, double t);

/// A(t) on the uniform grid t_j = 2 pi j / count, j = 0..count-1, for integer
/// energy rules. Weights are binned by E_k mod count and transformed by one
/// FFT, so the cost is independent of how finely the period is sampled.
struct PeriodSamples {
  double dt = 0.0;
  std::vector<std::complex<double>> values;
  double truncation_bound = 0.0;
  std::int64_t terms_used = 0;
};

PeriodSamples sample_autocorr_period(const SpectralCoefficients& coeffs, std::int64_t count,
                                     double tol = kDefaultTolerance);

}  // namespace autocorr
