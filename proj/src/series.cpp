#include "autocorr/series.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fftw3.h>

#include "autocorr/detail/compensated.hpp"
#include "autocorr/errors.hpp"

namespace autocorr {
namespace {

using std::numbers::pi;
using detail::CompensatedComplexSum;
using detail::DoubleDouble;

constexpr std::int64_t kChunk = std::int64_t{1} << 18;
constexpr double kMaxTerms = 4.0e18;

// sum_{j=1}^{count} term(j), in fixed chunks combined in chunk order. The
// result does not depend on how many threads ran the chunks.
template <class Term>
std::complex<double> chunked_sum(std::int64_t count, const Term& term) {
  if (count <= 0) return {};
  const auto chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
  std::vector<CompensatedComplexSum> partial(chunks);
  auto run_chunk = [&](std::size_t c) {
    const std::int64_t first = static_cast<std::int64_t>(c) * kChunk + 1;
    const std::int64_t last = std::min(count, first + kChunk - 1);
    CompensatedComplexSum acc;
    for (std::int64_t j = first; j <= last; ++j) acc.add(term(j));
    partial[c] = acc;
  };
  const auto workers =
      std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }
  CompensatedComplexSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

// exp(-i phase)
inline std::complex<double> unit_phase(double phase) { return {std::cos(phase), -std::sin(phase)}; }

template <class F>
auto with_inverse_power(double q, F&& f) {
  if (q == 2.0) return f([](double n) { return 1.0 / (n * n); });
  if (q == 4.0) {
    return f([](double n) {
      const double n2 = n * n;
      return 1.0 / (n2 * n2);
    });
  }
  if (q == 6.0) {
    return f([](double n) {
      const double n3 = n * n * n;
      return 1.0 / (n3 * n3);
    });
  }
  return f([q](double n) { return std::pow(n, -q); });
}

std::int64_t checked_terms(double n) {
  if (!(n < kMaxTerms)) throw ToleranceError("tolerance needs an unreachable number of terms");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(n)));
}

void require_tolerance(double tol) {
  if (!(tol > 0.0)) throw ToleranceError("tolerance must be positive");
}

// sum over n = 1..terms (odd n only if requested) of n^-q exp(-i n^2 t).
std::complex<double> quadratic_sum(double q, bool odd_only, DoubleDouble t, std::int64_t terms) {
  const auto turns = detail::to_turns(t);
  const std::int64_t count = odd_only ? (terms + 1) / 2 : terms;
  return with_inverse_power(q, [&](auto inv) {
    return chunked_sum(count, [&](std::int64_t j) {
      const std::int64_t n = odd_only ? 2 * j - 1 : j;
      return inv(static_cast<double>(n)) * unit_phase(detail::reduced_phase(n * n, turns));
    });
  });
}

}  // namespace

void validate(const HarmonicSumSpec& spec) {
  if (!(spec.mu > 1.0) || !std::isfinite(spec.mu)) {
    throw ConvergenceError("harmonic sum needs mu > 1, got " + std::to_string(spec.mu));
  }
  const bool sine_weight = spec.weight_pattern == WeightPattern::SineKernel;
  const bool sine_kernel = spec.phase_kernel == PhaseKernel::LinearSine;
  if (sine_weight != sine_kernel) {
    throw std::invalid_argument("SineKernel weights pair only with the LinearSine kernel");
  }
}

// ---------------------------------------------------------------------------
// Autocorrelation

SeriesValue eval_autocorr_terms(const SpectralCoefficients& coeffs, double t, std::int64_t terms) {
  if (terms < 1) throw ToleranceError("at least one term is required");
  if (const auto len = coeffs.length()) terms = std::min(terms, *len);

  SeriesValue out;
  out.terms_used = terms;
  out.truncation_bound = coeffs.tail_bound(terms);

  if (const auto* r = std::get_if<PowerLawRule>(&coeffs.rule())) {
    out.value = r->scale * r->scale *
                quadratic_sum(2.0 * r->exponent, r->odd_only, DoubleDouble::from_double(t), terms);
    return out;
  }
  const auto turns = detail::to_turns(DoubleDouble::from_double(t));
  out.value = chunked_sum(terms, [&](std::int64_t k) {
    const double w = coeffs.weight(k);
    if (w == 0.0) return std::complex<double>{};
    return w * unit_phase(detail::reduced_phase(coeffs.energy(k), turns));
  });
  return out;
}

SeriesValue eval_autocorr(const SpectralCoefficients& coeffs, double t, double tol) {
  require_tolerance(tol);
  return eval_autocorr_terms(coeffs, t, coeffs.terms_for_tail(tol));
}

// ---------------------------------------------------------------------------
// Harmonic sums

double harmonic_tail_bound(const HarmonicSumSpec& spec, double x, std::int64_t terms) {
  validate(spec);
  const double n = static_cast<double>(terms);
  double bound = std::pow(n, 1.0 - spec.mu) / (spec.mu - 1.0);
  if (spec.phase_kernel == PhaseKernel::LinearSine) {
    // Abel summation: partial sums of sin(nx) are bounded by 1/|sin(x/2)|.
    const double s = std::abs(std::sin(x / 2.0));
    if (s > 0.0) bound = std::min(bound, std::pow(n + 1.0, -spec.mu) / s);
  }
  return bound;
}

SeriesValue eval_harmonic_terms(const HarmonicSumSpec& spec, double x, std::int64_t terms) {
  validate(spec);
  if (terms < 1) throw ToleranceError("at least one term is required");
  SeriesValue out;
  out.terms_used = terms;
  out.truncation_bound = harmonic_tail_bound(spec, x, terms);
  if (spec.phase_kernel == PhaseKernel::QuadraticExp) {
    out.value = quadratic_sum(spec.mu, spec.weight_pattern == WeightPattern::OddN,
                              DoubleDouble::square(x), terms);
    return out;
  }
  const auto turns = detail::to_turns(DoubleDouble::from_double(x));
  const double s = with_inverse_power(spec.mu, [&](auto inv) {
    return chunked_sum(terms, [&](std::int64_t n) {
             return std::complex<double>(
                 inv(static_cast<double>(n)) * std::sin(detail::reduced_phase(n, turns)), 0.0);
           })
        .real();
  });
  out.value = {s, 0.0};
  return out;
}

SeriesValue eval_harmonic(const HarmonicSumSpec& spec, double x, double tol) {
  validate(spec);
  require_tolerance(tol);
  const double mu = spec.mu;
  double n = std::pow(1.0 / ((mu - 1.0) * tol), 1.0 / (mu - 1.0));
  if (spec.phase_kernel == PhaseKernel::LinearSine) {
    const double s = std::abs(std::sin(x / 2.0));
    if (s > 0.0) n = std::min(n, std::pow(1.0 / (s * tol), 1.0 / mu));
  }
  auto terms = checked_terms(n);
  while (harmonic_tail_bound(spec, x, terms) > tol) {
    terms = checked_terms(static_cast<double>(terms) * 1.01 + 1.0);
  }
  return eval_harmonic_terms(spec, x, terms);
}

double eval_riemann(double t, double tol) {
  require_tolerance(tol);
  // sum_{n>N} 1/n^2 <= 1/N
  const auto terms = checked_terms(1.0 / tol);
  return -quadratic_sum(2.0, false, DoubleDouble::from_double(t), terms).imag();
}

SeriesValue eval_d(double t, double tol) {
  require_tolerance(tol);
  const auto terms = checked_terms(1.0 / tol);
  SeriesValue out;
  out.terms_used = terms;
  out.truncation_bound = 1.0 / static_cast<double>(terms);
  out.value = quadratic_sum(2.0, true, DoubleDouble::from_double(t), terms);
  return out;
}

// ---------------------------------------------------------------------------
// Bloch quench

namespace {

double bloch_prefactor(double alpha) {
  validate(Bloch{alpha});
  const double s = std::sin(pi * alpha);
  return s * s / (pi * pi);
}

double bloch_tail(double alpha, double t, std::int64_t half_width) {
  const double w = bloch_prefactor(alpha);
  const double gap = static_cast<double>(half_width) - std::abs(alpha);
  if (gap < 1.0) return std::numeric_limits<double>::infinity();
  double bound = 2.0 * w / gap;
  const double s = std::abs(std::sin(t / 2.0));
  if (s > 0.0) bound = std::min(bound, 2.0 * w / ((gap + 1.0) * (gap + 1.0) * s));
  return bound;
}

}  // namespace

SeriesValue eval_bloch_terms(double alpha, double t, std::int64_t half_width) {
  const double w = bloch_prefactor(alpha);
  if (half_width < 0) throw ToleranceError("half width must be non-negative");
  const auto turns = detail::to_turns(DoubleDouble::from_double(t));
  const auto tail = chunked_sum(half_width, [&](std::int64_t m) {
    const double md = static_cast<double>(m);
    const auto z = unit_phase(detail::reduced_phase(m, turns));
    const double up = md + alpha;
    const double down = -md + alpha;
    return z / (up * up) + std::conj(z) / (down * down);
  });
  SeriesValue out;
  out.value = w * (tail + 1.0 / (alpha * alpha));
  out.terms_used = 2 * half_width + 1;
  out.truncation_bound = bloch_tail(alpha, t, half_width);
  return out;
}

SeriesValue eval_bloch(double alpha, double t, double tol) {
  require_tolerance(tol);
  const double w = bloch_prefactor(alpha);
  double n = std::abs(alpha) + 2.0 * w / tol;
  const double s = std::abs(std::sin(t / 2.0));
  if (s > 0.0) n = std::min(n, std::abs(alpha) - 1.0 + std::sqrt(2.0 * w / (s * tol)));
  auto half = checked_terms(std::max(n, std::abs(alpha) + 1.0));
  while (bloch_tail(alpha, t, half) > tol) half = checked_terms(static_cast<double>(half) * 1.01 + 1.0);
  return eval_bloch_terms(alpha, t, half);
}

std::complex<double> bloch_closed(double alpha, double t) {
  validate(Bloch{alpha});
  const double two_pi = 2.0 * pi;
  double tau = std::fmod(t, two_pi);
  if (tau < 0.0) tau += two_pi;
  const std::complex<double> i(0.0, 1.0);
  const auto kappa = (1.0 - std::exp(-i * two_pi * alpha)) / two_pi;
  return (1.0 - kappa * tau) * std::exp(i * alpha * tau);
}

// ---------------------------------------------------------------------------
// Full-period sampling

namespace {

// Only fftw_execute is thread-safe; planning and destruction are serialized.
std::mutex& fftw_planner() {
  static std::mutex m;
  return m;
}

}  // namespace

PeriodSamples sample_autocorr_period(const SpectralCoefficients& coeffs, std::int64_t count,
                                     double tol) {
  require_tolerance(tol);
  if (count < 1 || count > (std::int64_t{1} << 30)) {
    throw std::invalid_argument("period sample count must lie in [1, 2^30]");
  }
  const auto terms = coeffs.terms_for_tail(tol);
  const auto used = coeffs.length() ? std::min(terms, *coeffs.length()) : terms;

  std::vector<detail::CompensatedSum> bins(static_cast<std::size_t>(count));
  const bool quadratic = coeffs.energy_rule() == EnergyRule::Quadratic;
  for (std::int64_t k = 1; k <= used; ++k) {
    if (coeffs.is_zero(k)) continue;
    std::int64_t r;
    if (quadratic) {
      const std::int64_t km = k % count;
      r = (km * km) % count;
    } else {
      r = ((coeffs.energy(k) % count) + count) % count;
    }
    bins[static_cast<std::size_t>(r)].add(coeffs.weight(k));
  }

  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(count)));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(count)));
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner());
    plan = fftw_plan_dft_1d(static_cast<int>(count), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t r = 0; r < bins.size(); ++r) {
    in[r][0] = bins[r].value();
    in[r][1] = 0.0;
  }
  fftw_execute(plan);

  PeriodSamples samples;
  samples.dt = 2.0 * pi / static_cast<double>(count);
  samples.values.resize(static_cast<std::size_t>(count));
  for (std::size_t j = 0; j < samples.values.size(); ++j) samples.values[j] = {out[j][0], out[j][1]};
  samples.truncation_bound = coeffs.tail_bound(used);
  samples.terms_used = used;
  {
    std::lock_guard lock(fftw_planner());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return samples;
}

}  // namespace autocorr
