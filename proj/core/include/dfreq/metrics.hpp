#pragma once

#include <string>
#include <vector>

#include "dfreq/wlfilter.hpp"

namespace dfreq {

// One recorded estimate: node `node` at iteration `iteration` of Monte-Carlo
// run `run`. sq_error is |e|^2 from the local adapt step of that iteration.
struct MetricRow {
  int run = 0;
  long iteration = 0;
  int node = 0;
  double f_hat = 0.0;
  bool valid = false;
  double sq_error = 0.0;
  Algorithm algorithm = Algorithm::damtcc;
  bool sl_mode = false;  // conjugate weight frozen at zero
};

using MetricSeries = std::vector<MetricRow>;

// "damtcc", "daclms", or the frozen-conjugate variants "damtcc-sl"/"daclms-sl"
std::string algorithm_label(Algorithm a, bool sl_mode);

}  // namespace dfreq
