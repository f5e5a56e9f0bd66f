#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "autocorr/fractal.hpp"
#include "autocorr/mellin.hpp"
#include "autocorr/series.hpp"
#include "autocorr/spectral.hpp"

namespace autocorr::io {

/// Shortest round-trip independent form: printf "%.17g".
std::string format_double(double v);

/// Parse {"pieces": [{"a": .., "b": .., "coeffs": [..]}]}; StateFormatError
/// on malformed JSON, missing fields or an invalid piece layout.
PiecewisePolynomial parse_state_json(const std::string& text);
PiecewisePolynomial load_state_file(const std::string& path);

/// Header `n,c_n`, rows for k = 1..count (the enumeration index).
void write_coefficients_csv(std::ostream& out, const SpectralCoefficients& coeffs, std::int64_t count);

/// Header `t,re_A,im_A,abs2_A,trunc_bound`.
void write_autocorr_csv(std::ostream& out, std::span<const double> t, std::span<const SeriesValue> values);

std::string expansion_json(const AsymptoticExpansion& e);

/// Header `eps,count`.
void write_box_count_csv(std::ostream& out, const BoxCountReport& report);
std::string box_count_summary_json(const BoxCountReport& report);

}  // namespace autocorr::io
