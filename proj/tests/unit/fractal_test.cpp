#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "autocorr/errors.hpp"
#include "autocorr/fractal.hpp"

using namespace autocorr;

namespace {

constexpr double pi = std::numbers::pi;

SampledGraph linear_graph(std::int64_t intervals, double (*f)(double)) {
  auto t = linear_grid(0.0, 2 * pi, intervals + 1);
  std::vector<double> v;
  for (double x : t) v.push_back(f(x));
  return SampledGraph(std::move(t), std::move(v), Channel::Re, Spacing::Linear);
}

// Weierstrass function with a = 2^-1/2, b = 2: graph dimension 2 + ln a / ln b = 3/2.
double weierstrass(double t) {
  double s = 0.0, a = 1.0, b = 1.0;
  for (int k = 0; k < 40; ++k, a *= std::sqrt(0.5), b *= 2.0) s += a * std::cos(b * t);
  return s;
}

// Marks the boxes hit by densely supersampled points on each segment.
std::int64_t supersampled_count(const SampledGraph& g, double eps) {
  const auto& t = g.t();
  const auto& v = g.values();
  double lo = v[0], hi = v[0];
  for (double y : v) lo = std::min(lo, y), hi = std::max(hi, y);
  const double span = t.back() - t.front();
  const double h = eps / span;
  const auto cells = static_cast<std::int64_t>(std::ceil(1.0 / h));
  std::set<std::pair<std::int64_t, std::int64_t>> boxes;
  auto mark = [&](double x, double y) {
    auto c = std::min(static_cast<std::int64_t>(std::floor(x / h)), cells - 1);
    auto r = std::min(static_cast<std::int64_t>(std::floor(y / h)), cells - 1);
    boxes.insert({c, r});
  };
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const double x0 = (t[j] - t.front()) / span, x1 = (t[j + 1] - t.front()) / span;
    const double y0 = (v[j] - lo) / (hi - lo), y1 = (v[j + 1] - lo) / (hi - lo);
    for (int k = 0; k < 256; ++k) {
      const double u = k / 256.0;
      mark(x0 + u * (x1 - x0), y0 + u * (y1 - y0));
    }
  }
  mark(1.0, (v.back() - lo) / (hi - lo));
  return static_cast<std::int64_t>(boxes.size());
}

}  // namespace

TEST_CASE("straight line has dimension one") {
  const auto g = linear_graph(1 << 16, [](double t) { return t; });
  const auto r = box_count_dimension(g);
  CHECK(r.fitted_dimension == doctest::Approx(1.0).epsilon(0.02));
  for (std::size_t i = 0; i < r.scales.size(); ++i) {
    // The diagonal meets 2 boxes per column except where it passes a corner.
    const double cells = std::round((g.t().back() - g.t().front()) / r.scales[i]);
    CHECK(r.counts[i] >= static_cast<std::int64_t>(cells));
    CHECK(r.counts[i] <= static_cast<std::int64_t>(3 * cells));
  }
}

TEST_CASE("Weierstrass graph has dimension 3/2") {
  const auto r = box_count_dimension(linear_graph(1 << 18, weierstrass));
  CHECK(r.fitted_dimension == doctest::Approx(1.5).epsilon(0.1 / 1.5));
}

TEST_CASE("column counting matches a supersampled oracle") {
  const auto g = linear_graph(1 << 14, weierstrass);
  const auto r = box_count_dimension(g);
  for (std::size_t i = 0; i < r.scales.size(); ++i) {
    const auto oracle = supersampled_count(g, r.scales[i]);
    INFO("eps = " << r.scales[i]);
    CHECK(r.counts[i] >= oracle);
    CHECK(static_cast<double>(r.counts[i]) <= 1.01 * static_cast<double>(oracle) + 2);
  }
}

TEST_CASE("scales decrease and counts never drop") {
  const auto r = box_count_dimension(linear_graph(1 << 15, weierstrass));
  REQUIRE(r.scales.size() >= 3);
  for (std::size_t i = 1; i < r.scales.size(); ++i) {
    CHECK(r.scales[i] < r.scales[i - 1]);
    CHECK(r.counts[i] >= r.counts[i - 1]);
  }
  CHECK(r.fit_first == r.scales.size() / 6);
  CHECK(r.fit_last == r.scales.size() - r.scales.size() / 6);
}

TEST_CASE("scale preconditions") {
  const auto g = linear_graph(1 << 14, weierstrass);
  const double span = 2 * pi, dt = span / (1 << 14);
  CHECK_THROWS_AS(box_count_dimension(g, span / 4, 8 * dt), ScaleError);
  CHECK_THROWS_AS(box_count_dimension(g, span / 8, 2 * dt), ScaleError);
  CHECK_THROWS_AS(box_count_dimension(g, span / 8, span / 16), ScaleError);
  CHECK_NOTHROW(box_count_dimension(g, span / 8, 4 * dt));
  CHECK_THROWS_AS(box_count_dimension(linear_graph(1 << 12, weierstrass)), ScaleError);
  const auto t = log_grid(1e-3, 1.0, 1 << 14);
  const SampledGraph lg(t, std::vector<double>(t.size(), 1.0), Channel::Re, Spacing::Log);
  CHECK_THROWS_AS(box_count_dimension(lg), ScaleError);
}

TEST_CASE("sample spacing is validated") {
  CHECK_THROWS_AS(SampledGraph({0.0, 1.0, 3.0}, {0.0, 0.0, 0.0}, Channel::Re, Spacing::Linear), DomainError);
  CHECK_THROWS_AS(SampledGraph({1.0, 10.0, 50.0}, {0.0, 0.0, 0.0}, Channel::Re, Spacing::Log), DomainError);
  CHECK_NOTHROW(SampledGraph({1.0, 10.0, 100.0}, {0.0, 0.0, 0.0}, Channel::Re, Spacing::Log));
}

TEST_CASE("power_law_fit recovers synthetic exponents") {
  const auto t = log_grid(1e-6, 1e-3, 41);
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    std::vector<double> v;
    for (double x : t) v.push_back(3.7 * std::pow(x, p));
    const SampledGraph g(t, v, Channel::OneMinusRe, Spacing::Log);
    const auto fit = power_law_fit(g, 1e-6, 1e-3);
    CHECK(std::abs(fit.exponent - p) <= 1e-6);
    CHECK(fit.prefactor == doctest::Approx(3.7).epsilon(1e-6));
    CHECK(fit.points == 41);
  }
}

TEST_CASE("power_law_fit errors") {
  const auto t = log_grid(1e-3, 1.0, 20);
  std::vector<double> v(t.size(), 1.0);
  v[10] = -0.5;
  const SampledGraph g(t, v, Channel::NegIm, Spacing::Log);
  CHECK_THROWS_AS(power_law_fit(g, 1e-3, 1.0), ChannelError);
  CHECK_NOTHROW(power_law_fit(g, 1e-3, t[9]));
  CHECK_THROWS_AS(power_law_fit(g, 2e-3, 3e-3), InsufficientDataError);
}

TEST_CASE("plateau scan finds a crossover in order") {
  // t^2 below 1e-3 joined continuously to a t^(1/2) law.
  const auto t = log_grid(1e-7, 1.0, 281);
  std::vector<double> v;
  for (double x : t) v.push_back(x < 1e-3 ? x * x : 1e-6 * std::pow(x / 1e-3, 0.5));
  const SampledGraph g(t, v, Channel::OneMinusAbs2, Spacing::Log);
  const auto plateaus = find_plateaus(sliding_slopes(g, 0.5), 0.05);
  REQUIRE(plateaus.size() == 2);
  CHECK(std::abs(plateaus[0].mean_slope - 2.0) < 0.05);
  CHECK(std::abs(plateaus[1].mean_slope - 0.5) < 0.05);
  CHECK(plateaus[0].t_end < plateaus[1].t_start);
}

TEST_CASE("channels") {
  const std::complex<double> a(0.6, -0.3);
  CHECK(channel_value(a, Channel::Re) == 0.6);
  CHECK(channel_value(a, Channel::NegIm) == 0.3);
  CHECK(channel_value(a, Channel::OneMinusAbs2) == doctest::Approx(1 - 0.45));
  CHECK(parse_channel("one_minus_re") == Channel::OneMinusRe);
  CHECK_THROWS_AS(parse_channel("phase"), ChannelError);
}
