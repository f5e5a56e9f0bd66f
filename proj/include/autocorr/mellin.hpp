#pragma once

#include <complex>
#include <string>
#include <vector>

#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr {

// Short-time asymptotics of harmonic sums by Mellin inversion.
//
// For a harmonic sum h(x) = sum_n w(n) K(n x) / n^mu the Mellin transform
// factors as M[h; s] = M[K; s] * zeta(s + mu) (times 1 - 2^{-s-mu} when only
// odd n contribute). Shifting the inversion contour from the fundamental
// strip to Re s = -depth collects the residues of x^{-s} M[h; s]; each pole
// s0 yields a term x^{-s0}, and a double pole additionally x^{-s0} ln x.
//
// Integrands:
//   Re f1, f2:  (1/2) Gamma(s/2) cos(pi s/4) zeta(s+mu) [1 - 2^{-s-mu}]
//   Im f1, f2: -(1/2) Gamma(s/2) sin(pi s/4) zeta(s+mu) [1 - 2^{-s-mu}]
//   f3:              Gamma(s)   sin(pi s/2) zeta(s+mu)
// Residues come from analytic Laurent data: Gamma(-k + d) =
// (-1)^k/k! (1/d + psi(k+1) + O(d)) and zeta(1 + e) = 1/e + gamma + O(e).

enum class Part { Re, Im };

enum class PoleSource { Gamma, Zeta, Collision };

struct PoleDescriptor {
  double location = 0.0;
  int order = 1;  // 1 simple, 2 double
  PoleSource source = PoleSource::Gamma;
  // The zeta pole was within 1e-9 of the Gamma lattice but not on it, and was
  // merged into a double pole.
  bool near_collision = false;
};

enum class ExpansionVariable { X, T };

struct ExpansionTerm {
  std::complex<double> coeff;
  double power = 0.0;
  int log_power = 0;
};

/// sum coeff * v^power * (ln v)^log_power + O(v^valid_order).
/// Terms are sorted by (power, log_power) with no duplicate pairs.
struct AsymptoticExpansion {
  ExpansionVariable variable = ExpansionVariable::X;
  std::vector<ExpansionTerm> terms;
  double valid_order = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultDepth = 3.5;

/// Poles of the Mellin integrand with location > -depth, right to left.
/// Trigonometric and zeta zeros that cancel Gamma poles are removed.
std::vector<PoleDescriptor> enumerate_poles(const HarmonicSumSpec& spec, Part part, double depth);

/// Residue expansion in x. The remainder is O(x^valid_order) with
/// valid_order = depth for the sine kernel and min(depth, 2 mu - 1) for the
/// quadratic kernels, whose contour cannot be pushed past Re s = 1 - 2 mu.
/// Throws PoleOnLineError if a pole sits on Re s = -depth.
AsymptoticExpansion expand(const HarmonicSumSpec& spec, Part part, double depth = kDefaultDepth);

/// Rewrite a quadratic-kernel expansion in t = x^2: powers and valid_order
/// halve, each ln x contributes a factor 1/2.
AsymptoticExpansion to_time_variable(const AsymptoticExpansion& in_x);

/// coeff-wise scale.
AsymptoticExpansion scaled(const AsymptoticExpansion& e, std::complex<double> factor);

/// re + i im, merging equal (power, log_power) pairs.
AsymptoticExpansion combine_parts(const AsymptoticExpansion& re, const AsymptoticExpansion& im);

/// Full complex expansion of A(t) in t for psi1, psi2, psi3, chi_beta.
/// Throws DomainError for states without a harmonic-sum form.
AsymptoticExpansion autocorr_expansion(const BuiltinState& state, double depth = kDefaultDepth);

/// Harmonic-sum form of A(t): A = scale * f(sqrt t).
struct HarmonicForm {
  HarmonicSumSpec spec;
  double scale = 1.0;
};
HarmonicForm harmonic_form(const BuiltinState& state);

/// Evaluate at v > 0 (DomainError otherwise).
std::complex<double> eval_expansion(const AsymptoticExpansion& e, double v);

}  // namespace autocorr
