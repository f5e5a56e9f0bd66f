#include "autocorr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "autocorr/detail/compensated.hpp"
#include "autocorr/detail/least_squares.hpp"
#include "autocorr/errors.hpp"
#include "autocorr/special_functions.hpp"

namespace autocorr {
namespace {

using std::numbers::pi;

constexpr std::int64_t kMaxTerms = std::int64_t{1} << 62;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double inverse_power(double n, double q) {
  if (q == 2.0) return 1.0 / (n * n);
  if (q == 4.0) {
    const double n2 = n * n;
    return 1.0 / (n2 * n2);
  }
  if (q == 6.0) {
    const double n3 = n * n * n;
    return 1.0 / (n3 * n3);
  }
  return std::pow(n, -q);
}

std::int64_t clamp_terms(double n) {
  if (!(n < static_cast<double>(kMaxTerms))) {
    throw ToleranceError("tolerance needs more than 2^62 terms");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

// sin(n x), cos(n x). Endpoints lying on a multiple of pi/2 (to 4 ulp) take
// exact values so parity cancellations come out exactly.
void sin_cos_multiple(std::int64_t n, double x, double& s, double& c) {
  const double quarter = pi / 2.0;
  const double q = std::nearbyint(x / quarter);
  if (std::abs(x - q * quarter) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                        std::max(1.0, std::abs(x))) {
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    const auto m = static_cast<std::int64_t>(q);
    const auto turn = static_cast<std::size_t>(((n % 4) * (m % 4) % 4 + 4) % 4);
    s = kSin[turn];
    c = kCos[turn];
    return;
  }
  const double phase = detail::reduced_phase(n, detail::to_turns(detail::DoubleDouble::from_double(x)));
  s = std::sin(phase);
  c = std::cos(phase);
}

// Definite integral of p(x) sin(n x) over [a, b] for a polynomial p with
// ascending coefficients, via
//   S_k = -x^k cos(nx)/n + (k/n) C_{k-1},  C_k = x^k sin(nx)/n - (k/n) S_{k-1}.
double sine_moment(const std::vector<double>& coeffs, double a, double b, std::int64_t n) {
  const double nn = static_cast<double>(n);
  auto antiderivative = [&](double x) {
    double s, c;
    sin_cos_multiple(n, x, s, c);
    double sk = -c / nn;  // S_0
    double ck = s / nn;   // C_0
    detail::CompensatedSum acc;
    acc.add(coeffs[0] * sk);
    double xk = 1.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      xk *= x;
      const double kk = static_cast<double>(k);
      const double s_next = -xk * c / nn + kk / nn * ck;
      const double c_next = xk * s / nn - kk / nn * sk;
      sk = s_next;
      ck = c_next;
      acc.add(coeffs[k] * sk);
    }
    return acc.value();
  };
  return antiderivative(b) - antiderivative(a);
}

double horner(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::vector<PolynomialPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw StateFormatError("piecewise state needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !(p.a < p.b)) {
      throw StateFormatError("piece " + std::to_string(i) + " has an empty or invalid interval");
    }
    if (p.coeffs.empty()) {
      throw StateFormatError("piece " + std::to_string(i) + " has no coefficients");
    }
    if (!std::all_of(p.coeffs.begin(), p.coeffs.end(), [](double c) { return std::isfinite(c); })) {
      throw StateFormatError("piece " + std::to_string(i) + " has a non-finite coefficient");
    }
    if (i > 0 && pieces_[i - 1].b != p.a) {
      throw StateFormatError("pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                             " do not share an endpoint");
    }
  }
  if (pieces_.front().a != 0.0) throw StateFormatError("first piece must start at 0");
  const double end = pieces_.back().b;
  if (std::abs(end - pi) > 4.0 * std::numeric_limits<double>::epsilon() * pi) {
    throw StateFormatError("last piece must end at pi");
  }
}

double PiecewisePolynomial::operator()(double x) const {
  if (!(x >= 0.0 && x <= pieces_.back().b)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside [0, pi]");
  }
  for (const auto& p : pieces_) {
    if (x < p.b) return horner(p.coeffs, x);
  }
  return horner(pieces_.back().coeffs, x);
}

// ---------------------------------------------------------------------------
// SpectralCoefficients

std::int64_t bloch_lattice_index(std::int64_t k) { return (k % 2 == 0) ? k / 2 : -(k - 1) / 2; }

SpectralCoefficients::SpectralCoefficients(Rule rule) : rule_(std::move(rule)) {
  norm_sq_ = std::visit(
      Overloaded{
          [](const PowerLawRule& r) {
            const double q = 2.0 * r.exponent;
            if (!(q > 1.0)) {
              throw ConvergenceError("power-law coefficients with exponent <= 1/2 are not square summable");
            }
            const double odd_factor = r.odd_only ? 1.0 - std::pow(2.0, -q) : 1.0;
            return r.scale * r.scale * zeta_real(q) * odd_factor;
          },
          [](const PrefixRule& r) {
            detail::CompensatedSum acc;
            for (double c : r.values) acc.add(c * c);
            return acc.value();
          },
          [](const BlochRule& r) {
            validate(Bloch{r.alpha});
            // sum_n 1/(n+alpha)^2 = pi^2 / sin^2(pi alpha)
            return 1.0;
          },
      },
      rule_);
}

EnergyRule SpectralCoefficients::energy_rule() const {
  return std::holds_alternative<BlochRule>(rule_) ? EnergyRule::LinearTwoSided
                                                  : EnergyRule::Quadratic;
}

double SpectralCoefficients::coefficient(std::int64_t k) const {
  return std::visit(
      Overloaded{
          [k](const PowerLawRule& r) {
            if (r.odd_only && k % 2 == 0) return 0.0;
            double sign = 1.0;
            if (r.alternating && ((k - 1) / 2) % 2 == 1) sign = -1.0;
            return sign * r.scale * std::pow(static_cast<double>(k), -r.exponent);
          },
          [k](const PrefixRule& r) {
            return k <= static_cast<std::int64_t>(r.values.size())
                       ? r.values[static_cast<std::size_t>(k - 1)]
                       : 0.0;
          },
          [k](const BlochRule& r) {
            const double n = static_cast<double>(bloch_lattice_index(k));
            return std::sin(pi * r.alpha) / (pi * (n + r.alpha));
          },
      },
      rule_);
}

double SpectralCoefficients::weight(std::int64_t k) const {
  if (const auto* r = std::get_if<PowerLawRule>(&rule_)) {
    if (r->odd_only && k % 2 == 0) return 0.0;
    return r->scale * r->scale * inverse_power(static_cast<double>(k), 2.0 * r->exponent);
  }
  const double c = coefficient(k);
  return c * c;
}

std::int64_t SpectralCoefficients::energy(std::int64_t k) const {
  if (energy_rule() == EnergyRule::LinearTwoSided) return bloch_lattice_index(k);
  return k * k;
}

bool SpectralCoefficients::is_zero(std::int64_t k) const {
  return std::visit(Overloaded{
                        [k](const PowerLawRule& r) { return r.odd_only && k % 2 == 0; },
                        [k](const PrefixRule& r) {
                          return k > static_cast<std::int64_t>(r.values.size()) ||
                                 r.values[static_cast<std::size_t>(k - 1)] == 0.0;
                        },
                        [](const BlochRule&) { return false; },
                    },
                    rule_);
}

std::optional<std::int64_t> SpectralCoefficients::length() const {
  if (const auto* r = std::get_if<PrefixRule>(&rule_)) {
    return static_cast<std::int64_t>(r->values.size());
  }
  return std::nullopt;
}

double SpectralCoefficients::tail_bound(std::int64_t terms) const {
  return std::visit(
      Overloaded{
          [terms](const PowerLawRule& r) {
            // sum_{n>N} n^-q <= int_N^inf x^-q dx
            const double q = 2.0 * r.exponent;
            if (terms < 1) return std::numeric_limits<double>::infinity();
            return r.scale * r.scale * std::pow(static_cast<double>(terms), 1.0 - q) / (q - 1.0);
          },
          [terms](const PrefixRule& r) {
            detail::CompensatedSum acc;
            for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(terms, 0));
                 i < r.values.size(); ++i) {
              acc.add(r.values[i] * r.values[i]);
            }
            return acc.value();
          },
          [terms, this](const BlochRule& r) {
            // Both sides covered up to |n| <= N; (n +- alpha)^-2 <= (n - |alpha|)^-2.
            const double covered = static_cast<double>((terms - 1) / 2);
            const double gap = covered - std::abs(r.alpha);
            if (gap < 1.0) return norm_sq_;
            const double s = std::sin(pi * r.alpha);
            return std::min(norm_sq_, 2.0 * s * s / (pi * pi) / gap);
          },
      },
      rule_);
}

std::int64_t SpectralCoefficients::terms_for_tail(double tol) const {
  if (!(tol > 0.0)) throw ToleranceError("tolerance must be positive");
  return std::visit(
      Overloaded{
          [tol, this](const PowerLawRule& r) {
            const double q = 2.0 * r.exponent;
            const double scale2 = r.scale * r.scale;
            auto n = clamp_terms(std::pow(scale2 / ((q - 1.0) * tol), 1.0 / (q - 1.0)));
            while (tail_bound(n) > tol) n = clamp_terms(static_cast<double>(n) * 1.01 + 1.0);
            return n;
          },
          [](const PrefixRule& r) { return static_cast<std::int64_t>(r.values.size()); },
          [tol](const BlochRule& r) {
            const double s = std::sin(pi * r.alpha);
            const double w2 = 2.0 * s * s / (pi * pi);
            const auto side = clamp_terms(std::abs(r.alpha) + std::max(1.0, w2 / tol));
            return 2 * side + 1;
          },
      },
      rule_);
}

std::vector<double> SpectralCoefficients::prefix(std::int64_t count) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t k = 1; k <= count; ++k) out.push_back(coefficient(k));
  return out;
}

// ---------------------------------------------------------------------------
// Built-in states

std::string state_name(const BuiltinState& state) {
  return std::visit(Overloaded{
                        [](const Psi1&) { return std::string("psi1"); },
                        [](const Psi2&) { return std::string("psi2"); },
                        [](const Psi3&) { return std::string("psi3"); },
                        [](const Psi4&) { return std::string("psi4"); },
                        [](const ChiBeta&) { return std::string("chibeta"); },
                        [](const Bloch&) { return std::string("bloch"); },
                    },
                    state);
}

void validate(const BuiltinState& state) {
  if (const auto* c = std::get_if<ChiBeta>(&state)) {
    if (!(c->beta > 0.0 && c->beta < 0.5)) {
      throw ParameterDomainError("chi_beta requires 0 < beta < 1/2, got " + std::to_string(c->beta));
    }
  }
  if (const auto* b = std::get_if<Bloch>(&state)) {
    if (!std::isfinite(b->alpha) || b->alpha == std::nearbyint(b->alpha)) {
      throw ParameterDomainError("Bloch state requires a finite non-integer alpha, got " +
                                 std::to_string(b->alpha));
    }
  }
}

SpectralCoefficients builtin_coefficients(const BuiltinState& state) {
  validate(state);
  return std::visit(
      Overloaded{
          [](const Psi1&) {
            return SpectralCoefficients(PowerLawRule{std::sqrt(6.0) / pi, 1.0, false, false});
          },
          [](const Psi2&) {
            return SpectralCoefficients(PowerLawRule{4.0 * std::sqrt(6.0) / (pi * pi), 2.0, true, true});
          },
          [](const Psi3&) {
            return SpectralCoefficients(
                PowerLawRule{8.0 * std::sqrt(15.0) / (pi * pi * pi), 3.0, true, false});
          },
          [](const Psi4&) {
            std::vector<double> values;
            detail::CompensatedSum norm;
            for (int n = 1; n <= kPsi4Terms; ++n) {
              values.push_back(std::sqrt(6.0) / (n * pi));
              norm.add(values.back() * values.back());
            }
            const double scale = 1.0 / std::sqrt(norm.value());
            for (double& v : values) v *= scale;
            return SpectralCoefficients(PrefixRule{std::move(values)});
          },
          [](const ChiBeta& c) {
            return SpectralCoefficients(
                PowerLawRule{1.0 / std::sqrt(zeta_real(2.0 + 2.0 * c.beta)), 1.0 + c.beta, false, false});
          },
          [](const Bloch& b) { return SpectralCoefficients(BlochRule{b.alpha}); },
      },
      state);
}

std::optional<PiecewisePolynomial> piecewise_form(const BuiltinState& state) {
  if (std::holds_alternative<Psi1>(state)) {
    const double k = std::sqrt(3.0 / (pi * pi * pi));
    return PiecewisePolynomial({{0.0, pi, {k * pi, -k}}});
  }
  if (std::holds_alternative<Psi2>(state)) {
    const double k = std::sqrt(12.0 / (pi * pi * pi));
    return PiecewisePolynomial({{0.0, pi / 2.0, {0.0, k}}, {pi / 2.0, pi, {k * pi, -k}}});
  }
  if (std::holds_alternative<Psi3>(state)) {
    const double k = std::sqrt(30.0 / std::pow(pi, 5));
    return PiecewisePolynomial({{0.0, pi, {0.0, k * pi, -k}}});
  }
  return std::nullopt;
}

double l2_norm_sq(const PiecewisePolynomial& psi) {
  detail::CompensatedSum total;
  for (const auto& p : psi.pieces()) {
    const std::size_t m = p.coeffs.size();
    // Coefficients of p^2, then its antiderivative at b minus at a.
    std::vector<double> sq(2 * m - 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sq[i + j] += p.coeffs[i] * p.coeffs[j];
    for (std::size_t k = 0; k < sq.size(); ++k) {
      const double e = static_cast<double>(k + 1);
      total.add(sq[k] * std::pow(p.b, e) / e);
      total.add(-sq[k] * std::pow(p.a, e) / e);
    }
  }
  return total.value();
}

SpectralCoefficients decompose_piecewise(const PiecewisePolynomial& psi, std::int64_t count) {
  if (count < 1) throw DomainError("decomposition needs at least one coefficient");
  const double basis_norm = std::sqrt(2.0 / pi);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (std::int64_t n = 1; n <= count; ++n) {
    detail::CompensatedSum acc;
    for (const auto& p : psi.pieces()) acc.add(sine_moment(p.coeffs, p.a, p.b, n));
    values.push_back(basis_norm * acc.value());
  }
  return SpectralCoefficients(PrefixRule{std::move(values)});
}

double decay_exponent_fit(const SpectralCoefficients& coeffs, std::int64_t n_min, std::int64_t n_max) {
  if (n_min < 1 || n_max < 10 * n_min) {
    throw DomainError("decay fit needs 1 <= n_min and n_max >= 10 n_min");
  }
  std::vector<double> xs, ys;
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    if (coeffs.is_zero(n)) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(std::abs(coeffs.coefficient(n))));
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("decay fit found " + std::to_string(xs.size()) +
                                " nonzero coefficients, needs 3");
  }
  return detail::fit_line(xs, ys).slope;
}

double evaluate_state(const PiecewisePolynomial& psi, double x) { return psi(x); }

double evaluate_state(const BuiltinState& state, double x, std::int64_t terms) {
  validate(state);
  if (!(x >= 0.0 && x <= pi)) {
    throw DomainError("x = " + std::to_string(x) + " lies outside [0, pi]");
  }
  if (auto psi = piecewise_form(state)) return (*psi)(x);
  if (std::holds_alternative<Bloch>(state)) {
    throw ParameterDomainError("the Bloch state has no wave function on the well");
  }
  const auto coeffs = builtin_coefficients(state);
  const auto n_max = coeffs.length() ? std::min(*coeffs.length(), terms) : terms;
  const auto turns = detail::to_turns(detail::DoubleDouble::from_double(x));
  detail::CompensatedSum acc;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    acc.add(coeffs.coefficient(n) * std::sin(detail::reduced_phase(n, turns)));
  }
  return std::sqrt(2.0 / pi) * acc.value();
}

std::int64_t chi_beta_terms_for_tolerance(double beta, double tol) {
  validate(ChiBeta{beta});
  if (!(tol > 0.0)) throw ToleranceError("tolerance must be positive");
  const double prefactor = std::sqrt(2.0 / pi) / std::sqrt(zeta_real(2.0 + 2.0 * beta));
  // prefactor * N^-beta / beta <= tol
  return clamp_terms(std::pow(prefactor / (beta * tol), 1.0 / beta));
}

double chi_beta_small_x_prefactor(double beta) {
  validate(ChiBeta{beta});
  return gamma_real(-beta) * std::sin(-pi * beta / 2.0) * std::sqrt(2.0) /
         std::sqrt(pi * zeta_real(2.0 + 2.0 * beta));
}

}  // namespace autocorr
