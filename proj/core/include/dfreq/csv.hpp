#pragma once

#include <string>

#include "dfreq/metrics.hpp"

namespace dfreq {

struct SweepRow {
  double snr_db = 0.0;
  int node = 0;
  Algorithm algorithm = Algorithm::damtcc;
  bool sl_mode = false;
  double bias = 0.0;
  double variance = 0.0;
  std::size_t samples = 0;
  std::size_t invalid = 0;
};

struct StabilityReport {
  double mu_max = 0.0;
  double kappa = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double w_bar_norm2 = 0.0;
  struct Row {
    double multiplier = 0.0;
    double mu = 0.0;
    double max_weight_norm = 0.0;
  };
  std::vector<Row> rows;
};

// All writers emit UTF-8, comma separated, LF line endings, one header
// row, doubles with 15 significant digits. Identical data gives identical
// bytes.
void write_metric_csv(const std::string& path, const MetricSeries& series);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_stability_csv(const std::string& path, const StabilityReport& report);

std::string format_double(double v);  // %.15g, shared by all writers

}  // namespace dfreq
