#include "dfreq/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dfreq {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_metric_csv(const std::string& path, const MetricSeries& series) {
  std::ofstream out = open_out(path);
  out << "run,iteration,node,f_hat,valid,sq_error,algorithm\n";
  for (const MetricRow& r : series) {
    out << r.run << ',' << r.iteration << ',' << r.node << ',' << format_double(r.f_hat)
        << ',' << (r.valid ? 1 : 0) << ',' << format_double(r.sq_error) << ','
        << algorithm_label(r.algorithm, r.sl_mode) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out = open_out(path);
  out << "snr_db,node,algorithm,bias,variance,samples,invalid\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.snr_db) << ',' << r.node << ','
        << algorithm_label(r.algorithm, r.sl_mode) << ',' << format_double(r.bias) << ','
        << format_double(r.variance) << ',' << r.samples << ',' << r.invalid << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

void write_stability_csv(const std::string& path, const StabilityReport& report) {
  std::ofstream out = open_out(path);
  out << "multiplier,mu,max_weight_norm,mu_max,kappa,lambda_min,lambda_max,w_bar_norm2\n";
  for (const auto& r : report.rows) {
    out << format_double(r.multiplier) << ',' << format_double(r.mu) << ','
        << format_double(r.max_weight_norm) << ',' << format_double(report.mu_max) << ','
        << format_double(report.kappa) << ',' << format_double(report.lambda_min) << ','
        << format_double(report.lambda_max) << ',' << format_double(report.w_bar_norm2)
        << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

}  // namespace dfreq
