#include "hecke/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace hecke {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_dq_csv(std::ostream& out, const SingularSeries& series, std::size_t q_max) {
  out << "q,dq\n";
  for (std::size_t q = 1; q <= q_max; ++q) out << q << ',' << format_double(series.dq(q)) << '\n';
}

void write_bh_csv(std::ostream& out, std::span<const SingularSeriesResult> results) {
  out << "h,bh,qmax,tail\n";
  for (const auto& r : results) {
    out << r.h << ',' << format_double(r.value) << ',' << r.q_max << ',' << format_double(r.tail_bound) << '\n';
  }
}

void write_shifted_csv(std::ostream& out, std::span<const ShiftedSumRecord> records) {
  out << "X,h,sum,bh,norm_error\n";
  for (const auto& r : records) {
    out << r.x << ',' << r.h << ',' << format_double(r.sum) << ',' << format_double(r.bh) << ','
        << format_double(r.norm_error) << '\n';
  }
}

void write_expsum_header(std::ostream& out) { out << "kind,alpha,X,re,im,abs\n"; }

void write_expsum_rows(std::ostream& out, std::span<const ExpSumSample> samples) {
  for (const auto& s : samples) {
    out << to_string(s.kind) << ',' << format_double(s.alpha) << ',' << s.x << ',' << format_double(s.value.real())
        << ',' << format_double(s.value.imag()) << ',' << format_double(std::abs(s.value)) << '\n';
  }
}

void write_report_json(std::ostream& out, const ErrorReport& report, std::size_t h_max) {
  nlohmann::ordered_json j;
  j["X"] = report.x;
  j["H"] = h_max;
  j["quantiles"] = report.quantiles;
  j["thresholds"] = report.thresholds;
  j["counts"] = report.counts;
  j["l1_average"] = report.l1_average;
  out << j.dump(2) << '\n';
}

void write_error_plot_script(std::ostream& out, const std::string& csv_name, const std::string& png_name) {
  out << "set datafile separator ','\n"
      << "set terminal pngcairo size 1000,600\n"
      << "set output '" << png_name << "'\n"
      << "set xlabel 'h'\n"
      << "set ylabel '|S(X,h)/X - B_h|'\n"
      << "set logscale y\n"
      << "plot '" << csv_name << "' every ::1 using 2:(abs($5)) with points pt 7 ps 0.4 title 'normalized error'\n";
}

}  // namespace hecke
