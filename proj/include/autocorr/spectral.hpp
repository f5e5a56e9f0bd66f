#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace autocorr {

/// One polynomial piece on [a, b); coeffs in ascending powers of x.
struct PolynomialPiece {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> coeffs;
};

/// A wave function on the well (0, pi) made of polynomial pieces.
///
/// The pieces must be ordered, share endpoints exactly, start at 0 and end at
/// pi (up to 4 ulp, so a JSON literal 3.141592653589793 is accepted). Each
/// piece needs at least one coefficient.
class PiecewisePolynomial {
 public:
  explicit PiecewisePolynomial(std::vector<PolynomialPiece> pieces);

  const std::vector<PolynomialPiece>& pieces() const { return pieces_; }

  /// Value at x in [0, pi]; the right-most piece includes x = pi.
  double operator()(double x) const;

 private:
  std::vector<PolynomialPiece> pieces_;
};

/// Which eigenvalue each enumerated coefficient carries.
///  - Quadratic: infinite square well, index k >= 1 has E = k^2.
///  - LinearTwoSided: Bloch quench, index k enumerates n in Z as
///    0, 1, -1, 2, -2, ... and E = n.
enum class EnergyRule { Quadratic, LinearTwoSided };

/// c_n = scale * sign * n^-exponent. With odd_only, even n vanish; with
/// alternating, sign = (-1)^((n-1)/2) on odd n (i.e. sin(n pi / 2)).
struct PowerLawRule {
  double scale = 1.0;
  double exponent = 1.0;
  bool odd_only = false;
  bool alternating = false;
};

/// Stored coefficients c_1..c_N; every later coefficient is exactly zero.
struct PrefixRule {
  std::vector<double> values;
};

/// Bloch quench weights: c_n = sin(pi alpha) / (pi (n + alpha)), n in Z.
struct BlochRule {
  double alpha = 0.5;
};

/// Eigenbasis decomposition {c_n} of a state, either as a closed-form rule or
/// a finite prefix. Immutable after construction.
class SpectralCoefficients {
 public:
  using Rule = std::variant<PowerLawRule, PrefixRule, BlochRule>;

  explicit SpectralCoefficients(Rule rule);

  const Rule& rule() const { return rule_; }
  EnergyRule energy_rule() const;

  /// c_k for enumeration index k >= 1.
  double coefficient(std::int64_t k) const;
  double weight(std::int64_t k) const;
  std::int64_t energy(std::int64_t k) const;

  /// Exact-zero test on the rule itself (parity, past-the-prefix), never a
  /// magnitude threshold.
  bool is_zero(std::int64_t k) const;

  /// Sum of |c_k|^2 over all k (analytic for closed forms).
  double norm_sq() const { return norm_sq_; }

  /// Number of stored terms for prefix rules; nullopt for infinite rules.
  std::optional<std::int64_t> length() const;

  /// Upper bound on sum_{k > terms} |c_k|^2.
  double tail_bound(std::int64_t terms) const;

  /// Smallest term count whose tail_bound is <= tol.
  std::int64_t terms_for_tail(double tol) const;

  std::vector<double> prefix(std::int64_t count) const;

 private:
  Rule rule_;
  double norm_sq_ = 0.0;
};

/// Bloch enumeration index k >= 1 -> lattice index n in Z.
std::int64_t bloch_lattice_index(std::int64_t k);

struct Psi1 {};
struct Psi2 {};
struct Psi3 {};
struct Psi4 {};
struct ChiBeta {
  double beta = 0.25;
};
struct Bloch {
  double alpha = 0.5;
};

using BuiltinState = std::variant<Psi1, Psi2, Psi3, Psi4, ChiBeta, Bloch>;

std::string state_name(const BuiltinState& state);

/// Throws ParameterDomainError unless 0 < beta < 1/2 (ChiBeta) or alpha is
/// finite and non-integer (Bloch).
void validate(const BuiltinState& state);

/// Number of stored terms in the truncated psi_1 expansion.
inline constexpr int kPsi4Terms = 20;

SpectralCoefficients builtin_coefficients(const BuiltinState& state);

/// Polynomial form of psi_1, psi_2, psi_3; nullopt for series-defined states.
std::optional<PiecewisePolynomial> piecewise_form(const BuiltinState& state);

/// Integral of psi^2 over the well, from exact antiderivatives.
double l2_norm_sq(const PiecewisePolynomial& psi);

/// c_1..c_count of a piecewise state, integrating x^k sin(nx) exactly by the
/// integration-by-parts recurrence.
SpectralCoefficients decompose_piecewise(const PiecewisePolynomial& psi, std::int64_t count);

/// Least-squares slope of log|c_n| against log n over the nonzero
/// coefficients with n_min <= n <= n_max. Requires n_max >= 10 n_min.
double decay_exponent_fit(const SpectralCoefficients& coeffs, std::int64_t n_min,
                          std::int64_t n_max);

/// Wave function value at x in [0, pi]. Piecewise states are exact; Psi4 is
/// its 20-term sum; ChiBeta uses the first `terms` sine modes.
double evaluate_state(const BuiltinState& state, double x, std::int64_t terms);
double evaluate_state(const PiecewisePolynomial& psi, double x);

/// Term count so that the chi_beta partial sum is within tol pointwise,
/// from sum_{n>N} n^-(1+beta) <= N^-beta / beta.
std::int64_t chi_beta_terms_for_tolerance(double beta, double tol);

/// Limit of chi_beta(x) / x^beta as x -> 0.
double chi_beta_small_x_prefactor(double beta);

}  // namespace autocorr
