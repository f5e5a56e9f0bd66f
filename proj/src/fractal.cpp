#include "autocorr/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "autocorr/detail/least_squares.hpp"
#include "autocorr/errors.hpp"

namespace autocorr {

namespace {

struct ChannelEntry {
  Channel channel;
  const char* name;
};

constexpr ChannelEntry kChannels[] = {
    {Channel::Re, "re"},
    {Channel::Im, "im"},
    {Channel::Abs2, "abs2"},
    {Channel::OneMinusRe, "one_minus_re"},
    {Channel::NegIm, "neg_im"},
    {Channel::OneMinusAbs2, "one_minus_abs2"},
};

void check_spacing(const std::vector<double>& t, Spacing spacing) {
  const std::size_t n = t.size();
  if (n < 2) return;
  constexpr double kUlps = 16.0 * std::numeric_limits<double>::epsilon();
  if (spacing == Spacing::Linear) {
    const double t0 = t.front(), t1 = t.back();
    if (!(t1 > t0)) throw DomainError("sample times must increase");
    const double step = (t1 - t0) / static_cast<double>(n - 1);
    const double slack = kUlps * std::max({std::abs(t0), std::abs(t1), t1 - t0});
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t[j] - (t0 + static_cast<double>(j) * step)) > slack)
        throw DomainError("linear graph samples are not uniformly spaced");
    }
    return;
  }
  if (!(t.front() > 0.0)) throw DomainError("log-spaced graph needs t > 0");
  const double l0 = std::log(t.front()), l1 = std::log(t.back());
  if (!(l1 > l0)) throw DomainError("sample times must increase");
  const double step = (l1 - l0) / static_cast<double>(n - 1);
  const double slack = 1e3 * kUlps * std::max({1.0, std::abs(l0), std::abs(l1)});
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(std::log(t[j]) - (l0 + static_cast<double>(j) * step)) > slack)
      throw DomainError("log graph samples are not uniformly spaced in ln t");
  }
}

std::int64_t cell(double u, double h, std::int64_t cells) {
  const auto c = static_cast<std::int64_t>(std::floor(u / h));
  return std::clamp<std::int64_t>(c, 0, cells - 1);
}

// Occupied boxes of side h for the polyline (xs, ys) in the unit square.
std::int64_t count_boxes(const std::vector<double>& xs, const std::vector<double>& ys, double h) {
  const auto cells = static_cast<std::int64_t>(std::ceil(1.0 / h));
  std::vector<double> lo(static_cast<std::size_t>(cells), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(cells), -std::numeric_limits<double>::infinity());
  auto touch = [&](std::int64_t c, double y) {
    auto& l = lo[static_cast<std::size_t>(c)];
    auto& u = hi[static_cast<std::size_t>(c)];
    l = std::min(l, y);
    u = std::max(u, y);
  };
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    const double x0 = xs[j], x1 = xs[j + 1], y0 = ys[j], y1 = ys[j + 1];
    const std::int64_t ca = cell(x0, h, cells), cb = cell(x1, h, cells);
    touch(ca, y0);
    touch(cb, y1);
    // Interior column boundaries crossed by the segment.
    for (std::int64_t c = ca + 1; c <= cb; ++c) {
      const double xb = static_cast<double>(c) * h;
      const double y = y0 + (y1 - y0) * ((xb - x0) / (x1 - x0));
      touch(c - 1, y);
      touch(c, y);
    }
  }
  std::int64_t total = 0;
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto i = static_cast<std::size_t>(c);
    if (lo[i] > hi[i]) continue;
    total += cell(hi[i], h, cells) - cell(lo[i], h, cells) + 1;
  }
  return total;
}

}  // namespace

std::string channel_name(Channel c) {
  for (const auto& e : kChannels)
    if (e.channel == c) return e.name;
  return "re";
}

Channel parse_channel(const std::string& name) {
  for (const auto& e : kChannels)
    if (name == e.name) return e.channel;
  throw ChannelError("unknown channel '" + name + "'");
}

double channel_value(std::complex<double> a, Channel c) {
  switch (c) {
    case Channel::Re: return a.real();
    case Channel::Im: return a.imag();
    case Channel::Abs2: return std::norm(a);
    case Channel::OneMinusRe: return 1.0 - a.real();
    case Channel::NegIm: return -a.imag();
    case Channel::OneMinusAbs2: return 1.0 - std::norm(a);
  }
  return a.real();
}

SampledGraph::SampledGraph(std::vector<double> t, std::vector<double> values, Channel channel,
                           Spacing spacing)
    : t_(std::move(t)), values_(std::move(values)), channel_(channel), spacing_(spacing) {
  if (t_.size() != values_.size()) throw DomainError("t and value arrays differ in length");
  for (std::size_t j = 0; j < t_.size(); ++j) {
    if (!std::isfinite(t_[j]) || !std::isfinite(values_[j]))
      throw DomainError("graph samples must be finite");
  }
  check_spacing(t_, spacing_);
}

SampledGraph SampledGraph::from_complex(std::span<const double> t, std::span<const std::complex<double>> a,
                                        Channel channel, Spacing spacing) {
  if (t.size() != a.size()) throw DomainError("t and value arrays differ in length");
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) v[j] = channel_value(a[j], channel);
  return SampledGraph(std::vector<double>(t.begin(), t.end()), std::move(v), channel, spacing);
}

std::vector<double> linear_grid(double start, double stop, std::int64_t count) {
  if (count < 2 || !(stop > start) || !std::isfinite(start) || !std::isfinite(stop))
    throw DomainError("linear grid needs start < stop and count >= 2");
  std::vector<double> t(static_cast<std::size_t>(count));
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::int64_t j = 0; j < count; ++j) t[static_cast<std::size_t>(j)] = start + static_cast<double>(j) * step;
  t.back() = stop;
  return t;
}

std::vector<double> log_grid(double start, double stop, std::int64_t count) {
  if (count < 2 || !(start > 0.0) || !(stop > start) || !std::isfinite(stop))
    throw DomainError("log grid needs 0 < start < stop and count >= 2");
  std::vector<double> t(static_cast<std::size_t>(count));
  const double l0 = std::log(start);
  const double step = (std::log(stop) - l0) / static_cast<double>(count - 1);
  for (std::int64_t j = 0; j < count; ++j)
    t[static_cast<std::size_t>(j)] = std::exp(l0 + static_cast<double>(j) * step);
  t.front() = start;
  t.back() = stop;
  return t;
}

std::vector<SeriesValue> eval_autocorr_many(const SpectralCoefficients& coeffs, std::span<const double> t,
                                            double tol) {
  std::vector<SeriesValue> out;
  out.reserve(t.size());
  for (double ti : t) out.push_back(eval_autocorr(coeffs, ti, tol));
  return out;
}

SampledGraph period_graph(const SpectralCoefficients& coeffs, std::int64_t intervals, Channel channel,
                          double tol) {
  const PeriodSamples s = sample_autocorr_period(coeffs, intervals, tol);
  std::vector<std::complex<double>> a = s.values;
  a.push_back(s.values.front());
  const std::vector<double> t = linear_grid(0.0, 2.0 * std::numbers::pi, intervals + 1);
  return SampledGraph::from_complex(t, a, channel, Spacing::Linear);
}

BoxCountReport box_count_dimension(const SampledGraph& g, double eps_max, double eps_min) {
  if (g.spacing() != Spacing::Linear) throw ScaleError("box counting needs linearly spaced samples");
  if (g.size() < kMinDimensionSamples)
    throw ScaleError("box counting needs at least 2^14 samples, got " + std::to_string(g.size()));
  const auto& t = g.t();
  const double span = t.back() - t.front();
  const double spacing = span / static_cast<double>(g.size() - 1);
  constexpr double kRel = 1e-12;
  if (!(eps_min >= 4.0 * spacing * (1.0 - kRel)))
    throw ScaleError("smallest scale must be at least 4 sample spacings");
  if (!(eps_max <= span / 8.0 * (1.0 + kRel))) throw ScaleError("largest scale must be at most span/8");
  if (!(eps_min <= eps_max)) throw ScaleError("smallest scale exceeds largest scale");

  const auto& v = g.values();
  const auto [vmin_it, vmax_it] = std::minmax_element(v.begin(), v.end());
  const double vmin = *vmin_it, range = *vmax_it - *vmin_it;
  std::vector<double> xs(g.size()), ys(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    xs[j] = (t[j] - t.front()) / span;
    ys[j] = range > 0.0 ? (v[j] - vmin) / range : 0.0;
  }

  BoxCountReport report;
  for (double eps = eps_max; eps >= eps_min * (1.0 - kRel); eps *= 0.5) {
    report.scales.push_back(eps);
    report.counts.push_back(count_boxes(xs, ys, eps / span));
  }
  const std::size_t n = report.scales.size();
  const std::size_t drop = n / 6;
  if (n - 2 * drop < 3) throw ScaleError("scale range spans fewer than 3 fitted dyadic scales");
  report.fit_first = drop;
  report.fit_last = n - drop;
  std::vector<double> lx, ly;
  for (std::size_t i = report.fit_first; i < report.fit_last; ++i) {
    lx.push_back(std::log(report.scales[i]));
    ly.push_back(std::log(static_cast<double>(report.counts[i])));
  }
  const auto fit = detail::fit_line(lx, ly);
  report.fitted_dimension = -fit.slope;
  report.fit_residual = fit.rms_residual;
  return report;
}

BoxCountReport box_count_dimension(const SampledGraph& g) {
  if (g.size() < 2) throw ScaleError("box counting needs at least 2^14 samples");
  const double span = g.t().back() - g.t().front();
  return box_count_dimension(g, span / 8.0, 4.0 * span / static_cast<double>(g.size() - 1));
}

PowerLawFit power_law_fit(const SampledGraph& g, double t_a, double t_b) {
  if (!(t_a > 0.0) || !(t_b > t_a)) throw DomainError("fit window needs 0 < t_a < t_b");
  std::vector<double> lx, ly;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double tj = g.t()[j];
    if (tj < t_a || tj > t_b) continue;
    const double vj = g.values()[j];
    if (!(vj > 0.0))
      throw ChannelError("channel " + channel_name(g.channel()) + " is not positive at t = " + std::to_string(tj));
    lx.push_back(std::log(tj));
    ly.push_back(std::log(vj));
  }
  if (lx.size() < 3) throw InsufficientDataError("fewer than 3 samples in the fit window");
  const auto fit = detail::fit_line(lx, ly);
  return {fit.slope, std::exp(fit.intercept), fit.rms_residual, lx.size()};
}

SlopeProfile sliding_slopes(const SampledGraph& g, double window_decades) {
  if (!(window_decades > 0.0)) throw DomainError("window width must be positive");
  const auto& t = g.t();
  const auto& v = g.values();
  std::vector<double> lx(g.size()), ly(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!(t[j] > 0.0)) throw DomainError("slope profile needs t > 0");
    if (!(v[j] > 0.0))
      throw ChannelError("channel " + channel_name(g.channel()) + " is not positive at t = " + std::to_string(t[j]));
    lx[j] = std::log(t[j]);
    ly[j] = std::log(v[j]);
  }
  const double width = window_decades * std::numbers::ln10;
  SlopeProfile profile;
  std::size_t end = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    end = std::max(end, i);
    while (end + 1 < g.size() && lx[end + 1] <= lx[i] + width) ++end;
    if (lx[i] + width > lx.back()) break;
    if (end - i + 1 < 3) continue;
    const std::span<const double> xs(lx.data() + i, end - i + 1), ys(ly.data() + i, end - i + 1);
    profile.t_center.push_back(std::exp(0.5 * (lx[i] + lx[end])));
    profile.slope.push_back(detail::fit_line(xs, ys).slope);
  }
  return profile;
}

std::vector<SlopePlateau> find_plateaus(const SlopeProfile& profile, double max_variation,
                                        double min_span_decades) {
  std::vector<SlopePlateau> out;
  const auto& s = profile.slope;
  const auto& c = profile.t_center;
  std::size_t i = 0;
  while (i < s.size()) {
    double lo = s[i], hi = s[i], sum = s[i];
    std::size_t j = i + 1;
    while (j < s.size() && std::max(hi, s[j]) - std::min(lo, s[j]) < max_variation) {
      lo = std::min(lo, s[j]);
      hi = std::max(hi, s[j]);
      sum += s[j];
      ++j;
    }
    if (std::log10(c[j - 1] / c[i]) >= min_span_decades) {
      out.push_back({c[i], c[j - 1], sum / static_cast<double>(j - i), lo, hi});
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace autocorr
