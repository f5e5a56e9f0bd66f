#include "autocorr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "autocorr/errors.hpp"

namespace autocorr::io {

namespace {

using nlohmann::ordered_json;

// JSON numbers are written through format_double so dumps are byte-stable.
std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_double(v);
}

std::string quoted(const std::string& s) { return ordered_json(s).dump(); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PiecewisePolynomial parse_state_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw StateFormatError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pieces") || !doc["pieces"].is_array())
    throw StateFormatError("state file needs a top-level \"pieces\" array");
  std::vector<PolynomialPiece> pieces;
  for (const auto& p : doc["pieces"]) {
    if (!p.is_object() || !p.contains("a") || !p.contains("b") || !p.contains("coeffs"))
      throw StateFormatError("each piece needs \"a\", \"b\" and \"coeffs\"");
    if (!p["a"].is_number() || !p["b"].is_number() || !p["coeffs"].is_array())
      throw StateFormatError("piece fields have the wrong type");
    PolynomialPiece piece{p["a"].get<double>(), p["b"].get<double>(), {}};
    for (const auto& c : p["coeffs"]) {
      if (!c.is_number()) throw StateFormatError("coefficients must be numbers");
      piece.coeffs.push_back(c.get<double>());
    }
    pieces.push_back(std::move(piece));
  }
  return PiecewisePolynomial(std::move(pieces));
}

PiecewisePolynomial load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("cannot open state file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_state_json(text.str());
}

void write_coefficients_csv(std::ostream& out, const SpectralCoefficients& coeffs, std::int64_t count) {
  out << "n,c_n\n";
  for (std::int64_t k = 1; k <= count; ++k) out << k << ',' << format_double(coeffs.coefficient(k)) << '\n';
}

void write_autocorr_csv(std::ostream& out, std::span<const double> t, std::span<const SeriesValue> values) {
  out << "t,re_A,im_A,abs2_A,trunc_bound\n";
  for (std::size_t j = 0; j < t.size(); ++j) {
    const auto& v = values[j];
    out << format_double(t[j]) << ',' << format_double(v.value.real()) << ',' << format_double(v.value.imag())
        << ',' << format_double(std::norm(v.value)) << ',' << format_double(v.truncation_bound) << '\n';
  }
}

std::string expansion_json(const AsymptoticExpansion& e) {
  std::ostringstream out;
  out << "{\"variable\":" << quoted(e.variable == ExpansionVariable::T ? "t" : "x") << ",\"terms\":[";
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const auto& term = e.terms[i];
    if (i) out << ',';
    out << "{\"coeff_re\":" << number(term.coeff.real()) << ",\"coeff_im\":" << number(term.coeff.imag())
        << ",\"power\":" << number(term.power) << ",\"log_power\":" << term.log_power << '}';
  }
  out << "],\"valid_order\":" << number(e.valid_order);
  if (!e.warnings.empty()) {
    out << ",\"warnings\":[";
    for (std::size_t i = 0; i < e.warnings.size(); ++i) out << (i ? "," : "") << quoted(e.warnings[i]);
    out << ']';
  }
  out << '}';
  return out.str();
}

void write_box_count_csv(std::ostream& out, const BoxCountReport& report) {
  out << "eps,count\n";
  for (std::size_t i = 0; i < report.scales.size(); ++i)
    out << format_double(report.scales[i]) << ',' << report.counts[i] << '\n';
}

std::string box_count_summary_json(const BoxCountReport& report) {
  std::ostringstream out;
  out << "{\"fitted_dimension\":" << number(report.fitted_dimension)
      << ",\"fit_residual\":" << number(report.fit_residual) << ",\"fit_first\":" << report.fit_first
      << ",\"fit_last\":" << report.fit_last << ",\"scales\":" << report.scales.size() << '}';
  return out.str();
}

}  // namespace autocorr::io
