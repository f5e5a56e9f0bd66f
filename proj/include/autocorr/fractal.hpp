#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr {

/// Real channel extracted from complex autocorrelation samples.
enum class Channel { Re, Im, Abs2, OneMinusRe, NegIm, OneMinusAbs2 };

std::string channel_name(Channel c);
Channel parse_channel(const std::string& name);
double channel_value(std::complex<double> a, Channel c);

enum class Spacing { Linear, Log };

/// Samples of one channel against t. Linear graphs are uniform in t, log
/// graphs uniform in ln t; spacing is checked to rounding on construction.
class SampledGraph {
 public:
  SampledGraph(std::vector<double> t, std::vector<double> values, Channel channel, Spacing spacing);

  static SampledGraph from_complex(std::span<const double> t, std::span<const std::complex<double>> a,
                                   Channel channel, Spacing spacing);

  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& values() const { return values_; }
  Channel channel() const { return channel_; }
  Spacing spacing() const { return spacing_; }
  std::size_t size() const { return t_.size(); }

 private:
  std::vector<double> t_;
  std::vector<double> values_;
  Channel channel_;
  Spacing spacing_;
};

std::vector<double> linear_grid(double start, double stop, std::int64_t count);
std::vector<double> log_grid(double start, double stop, std::int64_t count);

/// A(t) at each t, each point to tolerance tol.
std::vector<SeriesValue> eval_autocorr_many(const SpectralCoefficients& coeffs, std::span<const double> t,
                                            double tol);

/// Graph of one channel over one full period [0, 2 pi] with intervals + 1
/// samples (the last repeats the first), built from sample_autocorr_period.
SampledGraph period_graph(const SpectralCoefficients& coeffs, std::int64_t intervals, Channel channel,
                          double tol = kDefaultTolerance);

inline constexpr std::size_t kMinDimensionSamples = std::size_t{1} << 14;

struct BoxCountReport {
  std::vector<double> scales;         // box widths in t units, strictly decreasing
  std::vector<std::int64_t> counts;   // occupied boxes per scale
  double fitted_dimension = 0.0;
  double fit_residual = 0.0;          // rms residual of the log-log fit
  std::size_t fit_first = 0;          // fitted scales are [fit_first, fit_last)
  std::size_t fit_last = 0;
};

/// Box-counting dimension of the polyline through the samples.
///
/// The graph is mapped affinely onto the unit square (time span and value
/// range both to [0, 1]) so boxes are isotropic. Scales are dyadic,
/// eps_max * 2^-k down to eps_min, so grids nest and counts are monotone.
/// Within each column the polyline covers a vertical interval, and every box
/// of that interval is counted, including boxes the segments merely cross.
/// The dimension is minus the least-squares slope of log N against log eps
/// over the scales left after dropping size/6 from each end.
///
/// Requires a linear graph with at least 2^14 samples,
/// eps_min >= 4 * spacing and eps_max <= span / 8; throws ScaleError otherwise.
BoxCountReport box_count_dimension(const SampledGraph& g, double eps_max, double eps_min);

/// Default scale range: span/8 down to 4 sample spacings.
BoxCountReport box_count_dimension(const SampledGraph& g);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of log(value) = exponent * log(t) + log(prefactor) over
/// samples with t_a <= t <= t_b. Throws ChannelError on a nonpositive value
/// in the window and InsufficientDataError with fewer than 3 samples.
PowerLawFit power_law_fit(const SampledGraph& g, double t_a, double t_b);

struct SlopeProfile {
  std::vector<double> t_center;  // geometric window centre
  std::vector<double> slope;
};

/// Local log-log slopes over windows [t_i, t_i * 10^window_decades].
SlopeProfile sliding_slopes(const SampledGraph& g, double window_decades = 0.5);

struct SlopePlateau {
  double t_start = 0.0;
  double t_end = 0.0;
  double mean_slope = 0.0;
  double min_slope = 0.0;
  double max_slope = 0.0;
};

/// Maximal runs, scanned left to right, over which the local slope varies by
/// less than max_variation and which span at least min_span_decades of
/// window centres.
std::vector<SlopePlateau> find_plateaus(const SlopeProfile& profile, double max_variation = 0.05,
                                        double min_span_decades = 0.5);

}  // namespace autocorr
