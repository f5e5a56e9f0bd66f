#include "autocorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autocorr/errors.hpp"
#include "autocorr/fractal.hpp"
#include "autocorr/io.hpp"
#include "autocorr/mellin.hpp"
#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"
#include "autocorr/detail/compensated.hpp"

namespace autocorr::cli {

namespace {

using io::format_double;

class UnknownStateError : public Error {
 public:
  explicit UnknownStateError(const std::string& what) : Error("unknown_state", what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

class OutputError : public Error {
 public:
  explicit OutputError(const std::string& what) : Error("output", what) {}
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0   success\n"
    "  2   usage error (bad flag, malformed range)\n"
    "  3   unknown state\n"
    "  4   state parameter out of range (beta, alpha)\n"
    "  5   malformed JSON state file\n"
    "  6   unreachable or invalid tolerance\n"
    "  7   divergent series\n"
    "  8   argument outside a function's domain\n"
    "  9   box-count scale range violates its preconditions\n"
    "  10  channel not positive on the fit window, or unknown channel\n"
    "  11  pole hit (special function or shifted contour)\n"
    "  12  too few samples for a fit\n"
    "  13  output file cannot be written\n"
    "  70  internal error\n"
    "Errors are reported on stderr as one JSON object: {\"error\": code, \"message\": text}.";

int exit_code_for(const std::string& code) {
  static const std::pair<const char*, int> table[] = {
      {"usage", kUsage},
      {"unknown_state", kUnknownState},
      {"parameter_domain", kParameterDomain},
      {"state_format", kStateFormat},
      {"tolerance", kTolerance},
      {"convergence", kConvergence},
      {"domain", kDomain},
      {"scale", kScale},
      {"channel", kChannel},
      {"pole", kPole},
      {"pole_on_line", kPole},
      {"insufficient_data", kInsufficientData},
      {"output", kOutput},
  };
  for (const auto& [name, value] : table)
    if (code == name) return value;
  return kInternal;
}

struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::int64_t count = 1;
};

struct RunConfig {
  std::string state;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::string state_file;
  std::string t_range;
  bool log = false;
  double tol = kDefaultTolerance;
  double depth = kDefaultDepth;
  std::string channel;
  std::string window;
  std::string output;
  std::string format;
  std::int64_t terms = 1000;
  std::string fit;
  std::int64_t samples = std::int64_t{1} << 18;
  std::string eps;
  std::string sum;
  double mu = 2.0;
  std::string part = "re";
  bool plateaus = false;
  double plateau_window = 0.5;
  double plateau_variation = 0.05;
  std::int64_t period = 0;
  std::string x_range;
  std::string function;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + s + "' in " + what);
  }
}

std::int64_t parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("malformed integer '" + s + "' in " + what);
  }
}

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw UsageError(what + " must be a:b, got '" + s + "'");
  return {parse_number(parts[0], what), parse_number(parts[1], what)};
}

Range parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw UsageError("--t must be start:stop:count, got '" + s + "'");
  Range r{parse_number(parts[0], "--t"), parse_number(parts[1], "--t"), parse_count(parts[2], "--t")};
  if (r.count < 1) throw UsageError("--t count must be at least 1");
  if (!(r.start < r.stop)) throw UsageError("--t needs start < stop");
  return r;
}

std::vector<double> grid(const Range& r, bool log) {
  if (log && !(r.start > 0.0)) throw UsageError("--log needs a positive start");
  if (r.count == 1) return {r.start};
  return log ? log_grid(r.start, r.stop, r.count) : linear_grid(r.start, r.stop, r.count);
}

std::optional<BuiltinState> builtin_state(const RunConfig& c) {
  if (c.state.empty()) return std::nullopt;
  BuiltinState s;
  if (c.state == "psi1") {
    s = Psi1{};
  } else if (c.state == "psi2") {
    s = Psi2{};
  } else if (c.state == "psi3") {
    s = Psi3{};
  } else if (c.state == "psi4") {
    s = Psi4{};
  } else if (c.state == "chibeta") {
    if (!c.beta) throw ParameterDomainError("state chibeta requires --beta");
    s = ChiBeta{*c.beta};
  } else if (c.state == "bloch") {
    if (!c.alpha) throw ParameterDomainError("state bloch requires --alpha");
    s = Bloch{*c.alpha};
  } else {
    throw UnknownStateError("unknown state '" + c.state + "'");
  }
  validate(s);
  return s;
}

// A state together with the way its series is truncated.
struct Source {
  std::string name;
  std::optional<BuiltinState> builtin;
  SpectralCoefficients coeffs{PrefixRule{{}}};
  // For file states the stored prefix is finite, and the tail follows from
  // the exact norm by Parseval.
  double tail_weight = 0.0;
};

Source file_source(const std::string& path, double tol) {
  const PiecewisePolynomial psi = io::load_state_file(path);
  const double norm = l2_norm_sq(psi);
  constexpr std::int64_t kMaxPrefix = std::int64_t{1} << 24;
  for (std::int64_t n = 1024;; n *= 2) {
    SpectralCoefficients coeffs = decompose_piecewise(psi, n);
    detail::CompensatedSum partial;
    for (std::int64_t k = 1; k <= n; ++k) partial.add(coeffs.weight(k));
    const double tail = std::max(norm - partial.value(), 0.0);
    if (tail <= tol) return {path, std::nullopt, std::move(coeffs), tail};
    if (n >= kMaxPrefix)
      throw ToleranceError("state file needs more than 2^24 modes to reach tol " + format_double(tol));
  }
}

Source make_source(const RunConfig& c) {
  if (!c.state.empty() && !c.state_file.empty()) throw UsageError("use either --state or --state-file");
  if (!c.state_file.empty()) return file_source(c.state_file, c.tol);
  if (c.state.empty()) throw UsageError("a state is required (--state or --state-file)");
  const auto s = builtin_state(c);
  return {state_name(*s), s, builtin_coefficients(*s), 0.0};
}

SeriesValue evaluate(const Source& src, double t, double tol) {
  SeriesValue v = eval_autocorr(src.coeffs, t, tol);
  v.truncation_bound += src.tail_weight;
  return v;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw OutputError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw OutputError("writing output failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string format_or(const RunConfig& c, const std::string& fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

void cmd_decompose(const RunConfig& c, std::ostream& out) {
  if (c.terms < 1) throw UsageError("--terms must be positive");
  std::string name;
  std::optional<SpectralCoefficients> coeffs;
  // Decay fits skip exact zeros, which only a closed-form generator knows.
  std::optional<SpectralCoefficients> fit_coeffs;
  if (!c.state_file.empty()) {
    if (!c.state.empty()) throw UsageError("use either --state or --state-file");
    name = c.state_file;
    coeffs = decompose_piecewise(io::load_state_file(c.state_file), c.terms);
  } else {
    if (c.state.empty()) throw UsageError("a state is required (--state or --state-file)");
    const auto s = builtin_state(c);
    name = state_name(*s);
    // Polynomial states go through the exact integration path.
    fit_coeffs = builtin_coefficients(*s);
    if (auto psi = piecewise_form(*s)) {
      coeffs = decompose_piecewise(*psi, c.terms);
    } else {
      coeffs = fit_coeffs;
    }
  }
  std::int64_t n_min = 10, n_max = c.terms;
  if (!c.fit.empty()) {
    const auto [a, b] = parse_pair(c.fit, "--fit");
    n_min = static_cast<std::int64_t>(a);
    n_max = static_cast<std::int64_t>(b);
  }
  if (format_or(c, "csv") == "csv") {
    io::write_coefficients_csv(out, *coeffs, c.terms);
    return;
  }
  const double slope = decay_exponent_fit(fit_coeffs ? *fit_coeffs : *coeffs, n_min, n_max);
  out << "{\"state\":" << nlohmann::json(name).dump() << ",\"decay_exponent\":" << format_double(slope)
      << ",\"fit_window\":[" << n_min << ',' << n_max << "],\"coefficients\":[";
  for (std::int64_t k = 1; k <= c.terms; ++k)
    out << (k > 1 ? "," : "") << format_double(coeffs->coefficient(k));
  out << "]}\n";
}

// Uniform samples t_j = 2 pi j / count over one period by a single FFT.
void period_sweep(const SpectralCoefficients& coeffs, double extra_bound, std::int64_t count, double tol,
                  std::vector<double>& t, std::vector<SeriesValue>& values) {
  const PeriodSamples p = sample_autocorr_period(coeffs, count, tol);
  t.resize(p.values.size());
  values.resize(p.values.size());
  for (std::size_t j = 0; j < p.values.size(); ++j) {
    t[j] = static_cast<double>(j) * p.dt;
    values[j] = {p.values[j], p.truncation_bound + extra_bound, p.terms_used};
  }
}

void cmd_autocorr(const RunConfig& c, std::ostream& out) {
  if (c.t_range.empty() == (c.period == 0))
    throw UsageError("autocorr needs exactly one of --t start:stop:count and --period count");
  const Source src = make_source(c);
  std::vector<double> t;
  std::vector<SeriesValue> values;
  if (c.period != 0) {
    if (src.builtin && std::holds_alternative<Bloch>(*src.builtin))
      throw DomainError("--period needs integer energies; use the bloch command");
    period_sweep(src.coeffs, src.tail_weight, c.period, c.tol, t, values);
  } else {
    t = grid(parse_range(c.t_range), c.log);
    values.reserve(t.size());
    for (double ti : t) values.push_back(evaluate(src, ti, c.tol));
  }
  if (format_or(c, "csv") == "csv") {
    io::write_autocorr_csv(out, t, values);
    return;
  }
  out << "{\"state\":" << nlohmann::json(src.name).dump() << ",\"samples\":[";
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto& v = values[j];
    out << (j ? "," : "") << "{\"t\":" << format_double(t[j]) << ",\"re_A\":" << format_double(v.value.real())
        << ",\"im_A\":" << format_double(v.value.imag()) << ",\"abs2_A\":" << format_double(std::norm(v.value))
        << ",\"trunc_bound\":" << format_double(v.truncation_bound) << '}';
  }
  out << "]}\n";
}

void cmd_asymptote(const RunConfig& c, std::ostream& out) {
  AsymptoticExpansion e;
  std::function<SeriesValue(double)> series;
  if (!c.sum.empty()) {
    HarmonicSumSpec spec;
    if (c.sum == "f1") {
      spec = HarmonicSumSpec::f1(c.mu);
    } else if (c.sum == "f2") {
      spec = HarmonicSumSpec::f2(c.mu);
    } else if (c.sum == "f3") {
      spec = HarmonicSumSpec::f3(c.mu);
    } else {
      throw UsageError("--sum must be f1, f2 or f3");
    }
    validate(spec);
    if (c.part != "re" && c.part != "im") throw UsageError("--part must be re or im");
    const Part part = c.part == "re" ? Part::Re : Part::Im;
    e = expand(spec, part, c.depth);
    series = [spec, part, tol = c.tol](double x) {
      SeriesValue v = eval_harmonic(spec, x, tol);
      v.value = part == Part::Re ? std::complex<double>(v.value.real(), 0.0)
                                 : std::complex<double>(v.value.imag(), 0.0);
      return v;
    };
  } else {
    if (!c.state_file.empty()) throw DomainError("file states have no harmonic-sum form");
    if (c.state.empty()) throw UsageError("asymptote needs --state or --sum");
    const auto s = builtin_state(c);
    e = autocorr_expansion(*s, c.depth);
    series = [coeffs = builtin_coefficients(*s), tol = c.tol](double t) { return eval_autocorr(coeffs, t, tol); };
  }
  if (format_or(c, "json") == "json") {
    out << io::expansion_json(e) << '\n';
    return;
  }
  const auto t = grid(parse_range(c.t_range.empty() ? "1e-6:1e-3:31" : c.t_range), c.t_range.empty() || c.log);
  const char* v = e.variable == ExpansionVariable::T ? "t" : "x";
  out << v << ",re_series,im_series,re_expansion,im_expansion,trunc_bound\n";
  for (double ti : t) {
    const SeriesValue s = series(ti);
    const auto a = eval_expansion(e, ti);
    out << format_double(ti) << ',' << format_double(s.value.real()) << ',' << format_double(s.value.imag()) << ','
        << format_double(a.real()) << ',' << format_double(a.imag()) << ',' << format_double(s.truncation_bound)
        << '\n';
  }
}

void cmd_fractal(const RunConfig& c, std::ostream& out) {
  const Source src = make_source(c);
  if (src.builtin && std::holds_alternative<Bloch>(*src.builtin))
    throw DomainError("bloch weights have non-integer energy offsets; fractal sampling needs integer energies");
  const Channel channel = parse_channel(c.channel.empty() ? "re" : c.channel);
  const SampledGraph g = period_graph(src.coeffs, c.samples, channel, c.tol);
  BoxCountReport report;
  if (c.eps.empty()) {
    report = box_count_dimension(g);
  } else {
    const auto [hi, lo] = parse_pair(c.eps, "--eps");
    report = box_count_dimension(g, hi, lo);
  }
  if (format_or(c, "csv") == "csv") {
    io::write_box_count_csv(out, report);
    return;
  }
  out << io::box_count_summary_json(report) << '\n';
}

Channel scaling_channel(const std::string& name) {
  if (name.empty() || name == "re") return Channel::OneMinusRe;
  if (name == "im") return Channel::NegIm;
  if (name == "abs2") return Channel::OneMinusAbs2;
  return parse_channel(name);
}

void cmd_scaling(const RunConfig& c, std::ostream& out) {
  const Source src = make_source(c);
  const Channel channel = scaling_channel(c.channel);
  std::optional<std::pair<double, double>> window;
  if (!c.window.empty()) window = parse_pair(c.window, "--window");
  std::vector<double> t;
  if (!c.t_range.empty()) {
    t = grid(parse_range(c.t_range), true);
  } else if (window) {
    t = log_grid(window->first, window->second, 61);
  } else {
    throw UsageError("scaling needs --window or --t");
  }
  std::vector<std::complex<double>> a;
  a.reserve(t.size());
  for (double ti : t) a.push_back(evaluate(src, ti, c.tol).value);
  const SampledGraph g = SampledGraph::from_complex(t, a, channel, Spacing::Log);
  const bool json = format_or(c, "json") == "json";
  if (c.plateaus) {
    const auto plateaus = find_plateaus(sliding_slopes(g, c.plateau_window), c.plateau_variation);
    if (!json) {
      out << "t_start,t_end,mean_slope,min_slope,max_slope\n";
      for (const auto& p : plateaus)
        out << format_double(p.t_start) << ',' << format_double(p.t_end) << ',' << format_double(p.mean_slope)
            << ',' << format_double(p.min_slope) << ',' << format_double(p.max_slope) << '\n';
      return;
    }
    out << "{\"state\":" << nlohmann::json(src.name).dump() << ",\"channel\":\"" << channel_name(channel)
        << "\",\"plateaus\":[";
    for (std::size_t i = 0; i < plateaus.size(); ++i) {
      const auto& p = plateaus[i];
      out << (i ? "," : "") << "{\"t_start\":" << format_double(p.t_start) << ",\"t_end\":"
          << format_double(p.t_end) << ",\"mean_slope\":" << format_double(p.mean_slope) << '}';
    }
    out << "]}\n";
    return;
  }
  const auto w = window.value_or(std::pair{t.front(), t.back()});
  const PowerLawFit fit = power_law_fit(g, w.first, w.second);
  if (!json) {
    out << "channel,exponent,prefactor,rms_residual,points\n"
        << channel_name(channel) << ',' << format_double(fit.exponent) << ',' << format_double(fit.prefactor) << ','
        << format_double(fit.rms_residual) << ',' << fit.points << '\n';
    return;
  }
  out << "{\"state\":" << nlohmann::json(src.name).dump() << ",\"channel\":\"" << channel_name(channel)
      << "\",\"window\":[" << format_double(w.first) << ',' << format_double(w.second)
      << "],\"exponent\":" << format_double(fit.exponent) << ",\"prefactor\":" << format_double(fit.prefactor)
      << ",\"rms_residual\":" << format_double(fit.rms_residual) << ",\"points\":" << fit.points << "}\n";
}

void cmd_wavefunction(const RunConfig& c, std::ostream& out) {
  if (c.x_range.empty()) throw UsageError("wavefunction needs --x start:stop:count");
  if (c.terms < 1) throw UsageError("--terms must be positive");
  const auto x = grid(parse_range(c.x_range), false);
  std::function<double(double)> psi;
  if (!c.state_file.empty()) {
    if (!c.state.empty()) throw UsageError("use either --state or --state-file");
    psi = [p = io::load_state_file(c.state_file)](double v) { return evaluate_state(p, v); };
  } else {
    if (c.state.empty()) throw UsageError("a state is required (--state or --state-file)");
    psi = [s = *builtin_state(c), n = c.terms](double v) { return evaluate_state(s, v, n); };
  }
  if (format_or(c, "csv") == "json") {
    out << "{\"samples\":[";
    for (std::size_t j = 0; j < x.size(); ++j)
      out << (j ? "," : "") << "{\"x\":" << format_double(x[j]) << ",\"psi\":" << format_double(psi(x[j])) << '}';
    out << "]}\n";
    return;
  }
  out << "x,psi\n";
  for (double v : x) out << format_double(v) << ',' << format_double(psi(v)) << '\n';
}

void cmd_series(const RunConfig& c, std::ostream& out) {
  if (c.function != "d" && c.function != "riemann") throw UsageError("--function must be d or riemann");
  std::vector<double> t;
  std::vector<SeriesValue> values;
  if (c.period != 0) {
    if (!c.t_range.empty()) throw UsageError("use either --t or --period");
    // D(t): |c_n|^2 = 1/n^2 on odd n. R(t) = -Im of the all-n sum.
    const bool d = c.function == "d";
    period_sweep(SpectralCoefficients(PowerLawRule{1.0, 1.0, d, false}), 0.0, c.period, c.tol, t, values);
    if (!d)
      for (auto& v : values) v.value = {-v.value.imag(), 0.0};
  } else {
    if (c.t_range.empty()) throw UsageError("series needs --t start:stop:count or --period count");
    t = grid(parse_range(c.t_range), c.log);
    for (double ti : t) {
      if (c.function == "d") {
        values.push_back(eval_d(ti, c.tol));
      } else {
        values.push_back({{eval_riemann(ti, c.tol), 0.0}, c.tol, 0});
      }
    }
  }
  if (format_or(c, "csv") == "json") throw UsageError("series emits csv only");
  out << "t,re,im,trunc_bound\n";
  for (std::size_t j = 0; j < t.size(); ++j)
    out << format_double(t[j]) << ',' << format_double(values[j].value.real()) << ','
        << format_double(values[j].value.imag()) << ',' << format_double(values[j].truncation_bound) << '\n';
}

void cmd_bloch(const RunConfig& c, std::ostream& out) {
  if (!c.alpha) throw ParameterDomainError("bloch requires --alpha");
  validate(BuiltinState{Bloch{*c.alpha}});
  if (c.t_range.empty()) throw UsageError("bloch needs --t start:stop:count");
  const auto t = grid(parse_range(c.t_range), c.log);
  const bool json = format_or(c, "csv") == "json";
  if (!json) out << "t,re_series,im_series,re_closed,im_closed,abs_diff,trunc_bound\n";
  if (json) out << "{\"alpha\":" << format_double(*c.alpha) << ",\"samples\":[";
  double max_diff = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const SeriesValue s = eval_bloch(*c.alpha, t[j], c.tol);
    const auto closed = bloch_closed(*c.alpha, t[j]);
    const double diff = std::abs(s.value - closed);
    max_diff = std::max(max_diff, diff);
    if (json) {
      out << (j ? "," : "") << "{\"t\":" << format_double(t[j]) << ",\"abs_diff\":" << format_double(diff)
          << ",\"trunc_bound\":" << format_double(s.truncation_bound) << '}';
    } else {
      out << format_double(t[j]) << ',' << format_double(s.value.real()) << ',' << format_double(s.value.imag())
          << ',' << format_double(closed.real()) << ',' << format_double(closed.imag()) << ','
          << format_double(diff) << ',' << format_double(s.truncation_bound) << '\n';
    }
  }
  if (json) out << "],\"max_abs_diff\":" << format_double(max_diff) << "}\n";
}

void report(std::ostream& err, const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  err << j.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Autocorrelation functions of quantum states: series, asymptotics, fractal graphs.", "autocorr"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", c.state, "psi1 | psi2 | psi3 | psi4 | chibeta | bloch");
    sub->add_option("--beta", c.beta, "chibeta exponent, 0 < beta < 1/2");
    sub->add_option("--alpha", c.alpha, "bloch offset, non-integer");
    sub->add_option("--state-file", c.state_file, "JSON piecewise-polynomial state");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "series truncation tolerance");
    sub->add_option("--output", c.output, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv | json");
  };

  auto* decompose = app.add_subcommand("decompose", "coefficient table and decay-exponent fit");
  add_state(decompose);
  add_common(decompose);
  decompose->add_option("--terms", c.terms, "number of coefficients");
  decompose->add_option("--fit", c.fit, "decay fit range n_min:n_max (json format)");

  auto* autocorr = app.add_subcommand("autocorr", "A(t) sweep");
  add_state(autocorr);
  add_common(autocorr);
  autocorr->add_option("--t", c.t_range, "start:stop:count");
  autocorr->add_flag("--log", c.log, "log-spaced samples");
  autocorr->add_option("--period", c.period, "instead of --t: count uniform samples of [0, 2 pi) by FFT");

  auto* asymptote = app.add_subcommand("asymptote", "short-time expansion (json) or series comparison (csv)");
  add_state(asymptote);
  add_common(asymptote);
  asymptote->add_option("--depth", c.depth, "contour shift Re s = -depth");
  asymptote->add_option("--sum", c.sum, "expand a bare harmonic sum f1 | f2 | f3 in x instead of a state");
  asymptote->add_option("--mu", c.mu, "harmonic-sum exponent");
  asymptote->add_option("--part", c.part, "re | im (with --sum)");
  asymptote->add_option("--t", c.t_range, "comparison grid start:stop:count (csv)");
  asymptote->add_flag("--log", c.log, "log-spaced comparison grid");

  auto* fractal = app.add_subcommand("fractal", "box-counting dimension of a graph over one period");
  add_state(fractal);
  add_common(fractal);
  fractal->add_option("--channel", c.channel, "re | im | abs2 | one_minus_re | neg_im | one_minus_abs2");
  fractal->add_option("--samples", c.samples, "samples per period");
  fractal->add_option("--eps", c.eps, "scale range eps_max:eps_min");

  auto* scaling = app.add_subcommand("scaling", "short-time power-law fit");
  add_state(scaling);
  add_common(scaling);
  scaling->add_option("--channel", c.channel, "re -> 1-Re A, im -> -Im A, abs2 -> 1-|A|^2");
  scaling->add_option("--window", c.window, "fit window t_a:t_b");
  scaling->add_option("--t", c.t_range, "log-spaced sample grid start:stop:count");
  scaling->add_flag("--plateaus", c.plateaus, "report slope plateaus instead of one fit");
  scaling->add_option("--plateau-window", c.plateau_window, "sliding window width in decades");
  scaling->add_option("--plateau-variation", c.plateau_variation, "maximal slope spread on a plateau");

  auto* wavefunction = app.add_subcommand("wavefunction", "state psi(x) on the well");
  add_state(wavefunction);
  add_common(wavefunction);
  wavefunction->add_option("--x", c.x_range, "start:stop:count within [0, pi]");
  wavefunction->add_option("--terms", c.terms, "sine modes for series-defined states");

  auto* series = app.add_subcommand("series", "D(t) (odd-n sum) or Riemann's function");
  add_common(series);
  series->add_option("--function", c.function, "d | riemann")->required();
  series->add_option("--t", c.t_range, "start:stop:count");
  series->add_flag("--log", c.log, "log-spaced samples");
  series->add_option("--period", c.period, "instead of --t: count uniform samples of [0, 2 pi) by FFT");

  auto* bloch = app.add_subcommand("bloch", "Bloch series against its closed form");
  add_common(bloch);
  bloch->add_option("--alpha", c.alpha, "non-integer offset")->required();
  bloch->add_option("--t", c.t_range, "start:stop:count");
  bloch->add_flag("--log", c.log, "log-spaced samples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    return kUsage;
  }

  try {
    if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ToleranceError("--tol must be positive");
    std::ostringstream buffer;
    if (decompose->parsed()) cmd_decompose(c, buffer);
    if (autocorr->parsed()) cmd_autocorr(c, buffer);
    if (asymptote->parsed()) cmd_asymptote(c, buffer);
    if (fractal->parsed()) cmd_fractal(c, buffer);
    if (scaling->parsed()) cmd_scaling(c, buffer);
    if (bloch->parsed()) cmd_bloch(c, buffer);
    if (wavefunction->parsed()) cmd_wavefunction(c, buffer);
    if (series->parsed()) cmd_series(c, buffer);
    Output output(c.output, out);
    *output << buffer.str();
    output.finish();
    return kOk;
  } catch (const Error& e) {
    report(err, e.code(), e.what());
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    report(err, "usage", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return kInternal;
  }
}

}  // namespace autocorr::cli
