#pragma once

namespace autocorr {

/// Riemann zeta on the real line, analytically continued. Throws PoleError at s = 1.
double zeta_real(double s);

/// Gamma on the real line. Throws PoleError at s = 0, -1, -2, ...
double gamma_real(double s);

/// Digamma psi = Gamma'/Gamma. Throws PoleError at s = 0, -1, -2, ...
double digamma(double s);

/// Euler-Mascheroni constant, the zeroth Stieltjes constant:
/// zeta(1 + e) = 1/e + kEulerGamma + O(e).
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

}  // namespace autocorr
