#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "hecke/singular_series.hpp"
#include "hecke/sums.hpp"

namespace hecke {

// Shortest decimal that round-trips the double ("%.17g").
std::string format_double(double x);

// q,dq
void write_dq_csv(std::ostream& out, const SingularSeries& series, std::size_t q_max);
// h,bh,qmax,tail
void write_bh_csv(std::ostream& out, std::span<const SingularSeriesResult> results);
// X,h,sum,bh,norm_error
void write_shifted_csv(std::ostream& out, std::span<const ShiftedSumRecord> records);
// kind,alpha,X,re,im,abs
void write_expsum_header(std::ostream& out);
void write_expsum_rows(std::ostream& out, std::span<const ExpSumSample> samples);
// keys X, H, quantiles, thresholds, counts, l1_average
void write_report_json(std::ostream& out, const ErrorReport& report, std::size_t h_max);
// gnuplot script plotting |norm_error| against h from a shifted CSV.
void write_error_plot_script(std::ostream& out, const std::string& csv_name, const std::string& png_name);

}  // namespace hecke
