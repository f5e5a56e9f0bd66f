#include "autocorr/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "autocorr/errors.hpp"
#include "autocorr/special_functions.hpp"

namespace autocorr {
namespace {

using std::numbers::pi;
using std::numbers::ln2;

constexpr double kSnap = 1e-9;
constexpr double kMaxDepth = 1000.0;

bool near_integer(double v) { return std::abs(v - std::nearbyint(v)) < kSnap; }

// Two leading Laurent coefficients: c[0] e^lead + c[1] e^(lead+1), e = s - s0.
struct Laurent {
  int lead = 0;
  std::array<double, 2> c{0.0, 0.0};
};

Laurent operator*(const Laurent& a, const Laurent& b) {
  return {a.lead + b.lead, {a.c[0] * b.c[0], a.c[0] * b.c[1] + a.c[1] * b.c[0]}};
}

// Shape of the integrand for one (spec, part).
struct Integrand {
  double prefactor = 1.0;
  double gamma_scale = 0.5;  // Gamma(gamma_scale * s)
  double trig_freq = pi / 4;  // trig(trig_freq * s)
  bool trig_is_cos = true;
  bool odd_factor = false;
  double mu = 2.0;
};

Integrand integrand_for(const HarmonicSumSpec& spec, Part part) {
  validate(spec);
  Integrand f;
  f.mu = spec.mu;
  if (spec.phase_kernel == PhaseKernel::LinearSine) {
    if (part == Part::Im) throw std::invalid_argument("the sine-kernel sum is real; use Part::Re");
    f.prefactor = 1.0;
    f.gamma_scale = 1.0;
    f.trig_freq = pi / 2;
    f.trig_is_cos = false;
    return f;
  }
  f.prefactor = part == Part::Re ? 0.5 : -0.5;
  f.gamma_scale = 0.5;
  f.trig_freq = pi / 4;
  f.trig_is_cos = part == Part::Re;
  f.odd_factor = spec.weight_pattern == WeightPattern::OddN;
  return f;
}

// Multiples of pi/2 take exact trig values.
double trig_value(bool is_cos, double arg) {
  const double q = arg / (pi / 2);
  if (near_integer(q)) {
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    const auto m = static_cast<std::size_t>(((static_cast<long long>(std::nearbyint(q)) % 4) + 4) % 4);
    return is_cos ? kCos[m] : kSin[m];
  }
  return is_cos ? std::cos(arg) : std::sin(arg);
}

struct PointOrders {
  bool gamma_pole = false;
  bool zeta_pole = false;
  bool trig_zero = false;
  bool zeta_zero = false;
  bool odd_zero = false;

  int order() const {
    return int(gamma_pole) + int(zeta_pole) - int(trig_zero) - int(zeta_zero) - int(odd_zero);
  }
};

PointOrders classify(const Integrand& f, double s0, bool is_zeta_pole) {
  PointOrders p;
  const double z = f.gamma_scale * s0;
  p.gamma_pole = z <= kSnap && near_integer(z);
  p.zeta_pole = is_zeta_pole;
  const double trig_q = f.trig_freq * s0 / (pi / 2);
  // cos vanishes on odd multiples of pi/2, sin on even ones.
  if (near_integer(trig_q)) {
    const bool odd = std::abs(std::fmod(std::nearbyint(trig_q), 2.0)) == 1.0;
    p.trig_zero = f.trig_is_cos ? odd : !odd;
  }
  const double u = s0 + f.mu;
  p.zeta_zero = !is_zeta_pole && u < -1.0 && near_integer(u / 2.0);
  p.odd_zero = f.odd_factor && std::abs(u) < kSnap;
  return p;
}

Laurent gamma_laurent(const Integrand& f, double s0, bool pole) {
  const double a = f.gamma_scale;
  if (pole) {
    const int k = static_cast<int>(std::nearbyint(-a * s0));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double inv_fact = 1.0 / std::tgamma(k + 1.0);
    // Gamma(-k + a e) = (-1)^k/k! (1/(a e) + psi(k+1) + ...)
    return {-1, {sign * inv_fact / a, sign * inv_fact * digamma(k + 1.0)}};
  }
  const double z = a * s0;
  const double g = gamma_real(z);
  return {0, {g, a * g * digamma(z)}};
}

Laurent trig_laurent(const Integrand& f, double s0, bool zero) {
  const double b = f.trig_freq;
  const double arg = b * s0;
  // d/ds cos(b s) = -b sin(b s), d/ds sin(b s) = b cos(b s)
  const double value = trig_value(f.trig_is_cos, arg);
  const double slope = f.trig_is_cos ? -b * trig_value(false, arg) : b * trig_value(true, arg);
  if (zero) return {1, {slope, -0.5 * b * b * value}};
  return {0, {value, slope}};
}

Laurent zeta_laurent(double u, bool pole, bool need_slope) {
  if (pole) return {-1, {1.0, kEulerGamma}};
  if (!need_slope) return {0, {zeta_real(u), 0.0}};
  const double h = 1e-4;
  const double d = (8.0 * (zeta_real(u + h) - zeta_real(u - h)) -
                    (zeta_real(u + 2 * h) - zeta_real(u - 2 * h))) /
                   (12.0 * h);
  return {0, {zeta_real(u), d}};
}

Laurent odd_laurent(double u, bool zero) {
  // 1 - 2^{-u-e}
  if (zero) return {1, {ln2, -0.5 * ln2 * ln2}};
  const double p = std::pow(2.0, -u);
  return {0, {1.0 - p, ln2 * p}};
}

struct Candidate {
  double location;
  bool is_zeta_pole;
  bool near_collision;
};

std::vector<Candidate> candidates(const Integrand& f, double depth) {
  if (!(depth > 0.0) || depth > kMaxDepth) {
    throw std::invalid_argument("depth must lie in (0, 1000]");
  }
  std::vector<Candidate> out;
  const double step = 1.0 / f.gamma_scale;
  for (int k = 0; -k * step > -depth - kSnap; ++k) out.push_back({-k * step, false, false});
  const double zeta_pole = 1.0 - f.mu;
  if (zeta_pole > -depth - kSnap) {
    auto hit = std::find_if(out.begin(), out.end(), [&](const Candidate& c) {
      return std::abs(c.location - zeta_pole) < kSnap;
    });
    if (hit != out.end()) {
      hit->is_zeta_pole = true;
      hit->near_collision = hit->location != zeta_pole;
    } else {
      out.push_back({zeta_pole, true, false});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Candidate& a, const Candidate& b) { return a.location > b.location; });
  return out;
}

struct ResolvedPole {
  PoleDescriptor descriptor;
  PointOrders orders;
};

std::vector<ResolvedPole> resolve_poles(const Integrand& f, double depth) {
  std::vector<ResolvedPole> poles;
  for (const auto& c : candidates(f, depth)) {
    const auto orders = classify(f, c.location, c.is_zeta_pole);
    const int order = orders.order();
    if (order < 1) continue;
    if (std::abs(c.location + depth) < kSnap) {
      throw PoleOnLineError(c.location, "a pole lies on the shifted line Re s = " +
                                            std::to_string(-depth) + "; choose another depth");
    }
    PoleDescriptor d;
    d.location = c.location;
    d.order = order;
    d.near_collision = c.near_collision && order == 2;
    if (order == 2) {
      d.source = PoleSource::Collision;
    } else if (orders.zeta_pole && !(orders.gamma_pole && !orders.trig_zero)) {
      d.source = PoleSource::Zeta;
    } else {
      d.source = PoleSource::Gamma;
    }
    poles.push_back({d, orders});
  }
  return poles;
}

// Laurent data of the integrand (without x^{-s}) at a resolved pole.
Laurent integrand_laurent(const Integrand& f, const ResolvedPole& pole) {
  const double s0 = pole.descriptor.location;
  const double u = s0 + f.mu;
  Laurent l{0, {f.prefactor, 0.0}};
  l = l * gamma_laurent(f, s0, pole.orders.gamma_pole);
  l = l * trig_laurent(f, s0, pole.orders.trig_zero);
  l = l * zeta_laurent(pole.orders.zeta_pole ? 1.0 : u, pole.orders.zeta_pole,
                       pole.descriptor.order > 1);
  if (f.odd_factor) l = l * odd_laurent(u, pole.orders.odd_zero);
  return l;
}

AsymptoticExpansion normalized(AsymptoticExpansion e) {
  std::map<std::pair<double, int>, std::complex<double>> merged;
  for (const auto& t : e.terms) merged[{t.power, t.log_power}] += t.coeff;
  e.terms.clear();
  for (const auto& [key, coeff] : merged) e.terms.push_back({coeff, key.first, key.second});
  return e;
}

}  // namespace

std::vector<PoleDescriptor> enumerate_poles(const HarmonicSumSpec& spec, Part part, double depth) {
  const auto f = integrand_for(spec, part);
  std::vector<PoleDescriptor> out;
  for (const auto& p : resolve_poles(f, depth)) out.push_back(p.descriptor);
  return out;
}

AsymptoticExpansion expand(const HarmonicSumSpec& spec, Part part, double depth) {
  const auto f = integrand_for(spec, part);
  AsymptoticExpansion e;
  e.variable = ExpansionVariable::X;
  e.valid_order = spec.phase_kernel == PhaseKernel::QuadraticExp ? std::min(depth, 2.0 * spec.mu - 1.0)
                                                                 : depth;
  for (const auto& pole : resolve_poles(f, depth)) {
    const auto l = integrand_laurent(f, pole);
    const double power = 0.0 - pole.descriptor.location;
    if (l.lead != -pole.descriptor.order) {
      throw std::logic_error("Laurent order disagrees with the pole classification");
    }
    if (pole.descriptor.order == 1) {
      e.terms.push_back({l.c[0], power, 0});
    } else {
      // Res x^{-s}(p2/e^2 + p1/e) = x^{-s0} (p1 - p2 ln x)
      e.terms.push_back({l.c[1], power, 0});
      e.terms.push_back({-l.c[0], power, 1});
    }
    if (pole.descriptor.near_collision) {
      e.warnings.push_back("zeta pole merged with Gamma pole at s = " +
                           std::to_string(pole.descriptor.location) +
                           "; mu is within 1e-9 of a collision");
    }
  }
  return normalized(std::move(e));
}

AsymptoticExpansion to_time_variable(const AsymptoticExpansion& in_x) {
  if (in_x.variable != ExpansionVariable::X) return in_x;
  AsymptoticExpansion out = in_x;
  out.variable = ExpansionVariable::T;
  out.valid_order = in_x.valid_order / 2.0;
  for (auto& t : out.terms) {
    t.power /= 2.0;
    t.coeff /= std::pow(2.0, t.log_power);
  }
  return out;
}

AsymptoticExpansion scaled(const AsymptoticExpansion& e, std::complex<double> factor) {
  AsymptoticExpansion out = e;
  for (auto& t : out.terms) t.coeff *= factor;
  return out;
}

AsymptoticExpansion combine_parts(const AsymptoticExpansion& re, const AsymptoticExpansion& im) {
  if (re.variable != im.variable) throw std::invalid_argument("expansions use different variables");
  AsymptoticExpansion out;
  out.variable = re.variable;
  out.valid_order = std::min(re.valid_order, im.valid_order);
  out.terms = re.terms;
  for (const auto& t : im.terms) out.terms.push_back({std::complex<double>(0.0, 1.0) * t.coeff, t.power, t.log_power});
  out.warnings = re.warnings;
  out.warnings.insert(out.warnings.end(), im.warnings.begin(), im.warnings.end());
  return normalized(std::move(out));
}

HarmonicForm harmonic_form(const BuiltinState& state) {
  validate(state);
  const double p2 = pi * pi;
  if (std::holds_alternative<Psi1>(state)) return {HarmonicSumSpec::f1(2.0), 6.0 / p2};
  if (std::holds_alternative<Psi2>(state)) return {HarmonicSumSpec::f2(4.0), 96.0 / (p2 * p2)};
  if (std::holds_alternative<Psi3>(state)) return {HarmonicSumSpec::f2(6.0), 960.0 / (p2 * p2 * p2)};
  if (const auto* c = std::get_if<ChiBeta>(&state)) {
    const double mu = 2.0 + 2.0 * c->beta;
    return {HarmonicSumSpec::f1(mu), 1.0 / zeta_real(mu)};
  }
  throw DomainError("state " + state_name(state) + " has no harmonic-sum form");
}

AsymptoticExpansion autocorr_expansion(const BuiltinState& state, double depth) {
  const auto form = harmonic_form(state);
  const auto re = expand(form.spec, Part::Re, depth);
  const auto im = expand(form.spec, Part::Im, depth);
  return to_time_variable(scaled(combine_parts(re, im), form.scale));
}

std::complex<double> eval_expansion(const AsymptoticExpansion& e, double v) {
  if (!(v > 0.0)) throw DomainError("expansions are evaluated at positive arguments only");
  const double lv = std::log(v);
  std::complex<double> sum;
  for (const auto& t : e.terms) sum += t.coeff * std::pow(v, t.power) * std::pow(lv, t.log_power);
  return sum;
}

}  // namespace autocorr
