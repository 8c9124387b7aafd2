// Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.
// Run with no arguments for the full suite or with a criterion number
// (1..9) for a single one. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dfreq/analysis.hpp"
#include "dfreq/experiments.hpp"

using namespace dfreq;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// mean |f_hat - f_true| over the trailing window, valid rows only
double mean_abs_dev(const MetricSeries& series, double f_true, long first_iter) {
  double acc = 0.0;
  long n = 0;
  for (const MetricRow& r : series) {
    if (r.iteration < first_iter || !r.valid) continue;
    acc += std::abs(r.f_hat - f_true);
    ++n;
  }
  return n > 0 ? acc / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

double mean_estimate(const MetricSeries& series, long first_iter) {
  double acc = 0.0;
  long n = 0;
  for (const MetricRow& r : series) {
    if (r.iteration < first_iter || !r.valid) continue;
    acc += r.f_hat;
    ++n;
  }
  return n > 0 ? acc / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// C1: Clarke orthogonality and balanced circularity
Result criterion1() {
  const double t0 = now_seconds();

  // columns of the transform from unit frames
  double c[3][3];
  const ThreePhaseFrame units[3] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    const ClarkeFrame f = clarke(units[j]);
    c[0][j] = f.v0;
    c[1][j] = f.v_alpha;
    c[2][j] = f.v_beta;
  }
  double ortho_dev = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += c[k][i] * c[k][j];
      ortho_dev = std::max(ortho_dev, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }

  const PhaseParams balanced;
  const Scenario sc({{0, balanced}});
  const auto v = sc.stream(10001);
  const cplx rotor = std::polar(1.0, 2.0 * std::numbers::pi * balanced.freq * balanced.dt);
  double circ_dev = 0.0;
  for (std::size_t t = 0; t + 1 < v.size(); ++t)
    circ_dev = std::max(circ_dev, std::abs(v[t + 1] - v[t] * rotor));

  const double elapsed = now_seconds() - t0;
  const bool pass = ortho_dev < 1e-12 && circ_dev < 1e-12 && elapsed < 1.0;
  return {pass, fmt("C^T C deviation %.2e (< 1e-12), circularity deviation %.2e over 1e4 "
                    "samples (< 1e-12), %.2f s",
                    ortho_dev, circ_dev, elapsed)};
}

// ---------------------------------------------------------------------------
// C2: analytic gradients vs central finite differences
Result criterion2() {
  const double t0 = now_seconds();
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> sig(0.5, 2.0);
  std::uniform_real_distribution<double> gam(0.1, 2.0);
  auto rand_c = [&] { return std::polar(mag(eng), ang(eng)); };

  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const AugmentedWeights w{rand_c(), rand_c()};
    const cplx v = rand_c();
    const cplx d = rand_c();
    FilterParams p;
    p.sigma = sig(eng);
    p.gamma = gam(eng);
    const cplx e = prediction_error(d, w, v);
    const WlGradients a = damtcc_gradients(e, v, w, p);
    const WlGradients f = finite_difference_gradients(w, v, d, p, 1e-5);
    const double scale = std::max(std::sqrt(std::norm(f.h) + std::norm(f.g)), 1e-12);
    const double err = std::sqrt(std::norm(a.h - f.h) + std::norm(a.g - f.g)) / scale;
    worst = std::max(worst, err);
  }
  const double elapsed = now_seconds() - t0;
  const bool pass = worst < 1e-6 && elapsed < 1.0;
  return {pass, fmt("worst relative error %.2e over 200 random points (< 1e-6), %.2f s",
                    worst, elapsed)};
}

// ---------------------------------------------------------------------------
// C3: exact WL recovery on a clean type-D stream
Result criterion3() {
  const double t0 = now_seconds();
  const Scenario sc({{0, make_type_d_sag(0.5)}});
  const auto v = sc.stream(1000);
  const AugmentedWeights w = solve_wl_weights(v);

  double pred_err = 0.0;
  for (std::size_t t = 0; t + 1 < v.size(); ++t)
    pred_err = std::max(pred_err, std::abs(prediction_error(v[t + 1], w, v[t])));

  const FrequencyEstimate fe = frequency_estimate(w, 1.0 / 2500.0);
  const double f_err = std::abs(fe.f_hat - 50.0);

  const double elapsed = now_seconds() - t0;
  const bool pass = pred_err < 1e-10 && fe.valid && f_err < 1e-6 && elapsed < 1.0;
  return {pass, fmt("prediction error %.2e (< 1e-10), f_hat = 50 %+.2e Hz (tol 1e-6), %.2f s",
                    pred_err, fe.f_hat - 50.0, elapsed)};
}

// ---------------------------------------------------------------------------
// C4: balanced convergence on the 8-node fixture at 40 dB
Result criterion4() {
  const double t0 = now_seconds();
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology1");
  cfg.snr_db.assign(8, 40.0);
  cfg.impulse.prob = 0.0;
  cfg.algorithm = AlgoSelect::damtcc;
  cfg.mu = 0.005;
  cfg.sigma = 1.0;
  cfg.iters = 5000;
  cfg.monte_carlo_runs = 20;
  cfg.seed = 4001;

  const MetricSeries series = run_tracking(cfg);
  const double mad = mean_abs_dev(series, 50.0, cfg.iters - cfg.steady_window());
  const double elapsed = now_seconds() - t0;
  const bool pass = mad < 0.05 && elapsed < 30.0;
  return {pass, fmt("network mean |f_hat - 50| = %.4f Hz over final 20%% (< 0.05), "
                    "20 runs x 5000 iters, %.1f s",
                    mad, elapsed)};
}

// ---------------------------------------------------------------------------
// C5: type-D sag tracking, widely-linear vs strictly-linear
Result criterion5() {
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology1");
  cfg.snr_db.assign(8, 40.0);
  cfg.impulse.prob = 0.0;
  cfg.algorithm = AlgoSelect::damtcc;
  cfg.mu = 0.02;
  cfg.iters = 12000;
  cfg.monte_carlo_runs = 5;
  cfg.seed = 4001;
  cfg.scenario = {{0, PhaseParams{}}, {6000, make_type_d_sag(0.5)}};

  const long first = cfg.iters - cfg.steady_window();
  const MetricSeries wl = run_tracking(cfg);
  const double wl_mean = mean_estimate(wl, first);
  const double wl_mad = mean_abs_dev(wl, 50.0, first);

  cfg.freeze_conjugate = true;
  const MetricSeries sl = run_tracking(cfg);
  const double sl_mad = mean_abs_dev(sl, 50.0, first);

  const bool reconverged = std::abs(wl_mean - 50.0) < 0.1;
  const bool separated = sl_mad >= 5.0 * wl_mad;
  return {reconverged && separated,
          fmt("post-switch mean f_hat = %.4f Hz (within 0.1 of 50: %s); strictly-linear "
              "mean |dev| = %.3f Hz vs widely-linear %.4f Hz (ratio %.0fx >= 5x: %s)",
              wl_mean, reconverged ? "yes" : "NO", sl_mad, wl_mad, sl_mad / wl_mad,
              separated ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// C6: impulsive robustness, per-node variance ordering
Result criterion6() {
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology1");
  cfg.snr_db = fixture_snr_schedule(8);
  cfg.impulse = {0.005, 10.0};
  cfg.algorithm = AlgoSelect::both;
  cfg.mu = 0.005;
  cfg.iters = 5000;
  cfg.monte_carlo_runs = 50;
  cfg.seed = 4001;
  cfg.scenario = {{0, make_type_d_sag(0.5)}};

  const MetricSeries series = run_tracking(cfg);
  MetricSeries mtcc, clms;
  for (const MetricRow& r : series)
    (r.algorithm == Algorithm::damtcc ? mtcc : clms).push_back(r);
  const auto sm = bias_variance(mtcc, 50.0, cfg.steady_window());
  const auto sc = bias_variance(clms, 50.0, cfg.steady_window());

  bool per_node = true;
  double net_m = 0.0, net_c = 0.0;
  for (int l = 0; l < 8; ++l) {
    per_node = per_node && sm[l].variance < sc[l].variance;
    net_m += sm[l].variance / 8.0;
    net_c += sc[l].variance / 8.0;
  }
  const bool net_order = net_m < net_c;
  return {per_node && net_order,
          fmt("steady-state variance damtcc < daclms at all 8 nodes: %s; network means "
              "%.3e < %.3e: %s (50 runs, impulses p=0.005 var=10)",
              per_node ? "yes" : "NO", net_m, net_c, net_order ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// C7: steady-state variance vs SNR trend
Result criterion7() {
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology1");
  cfg.snr_db.assign(8, 40.0);
  cfg.impulse = {0.005, 10.0};
  cfg.algorithm = AlgoSelect::both;
  cfg.mu = 0.005;
  cfg.iters = 5000;
  cfg.monte_carlo_runs = 50;
  cfg.seed = 4001;
  cfg.scenario = {{0, make_type_d_sag(0.5)}};

  const std::vector<double> snrs = {10, 15, 20, 25, 30, 35, 40};
  const auto rows = run_snr_sweep(cfg, snrs);

  auto net_variance = [&](Algorithm alg, double snr) {
    double acc = 0.0;
    int n = 0;
    for (const SweepRow& r : rows)
      if (r.algorithm == alg && r.snr_db == snr) {
        acc += r.variance;
        ++n;
      }
    return acc / n;
  };

  int violations = 0;
  std::string curve;
  double prev = 0.0;
  for (std::size_t k = 0; k < snrs.size(); ++k) {
    const double v = net_variance(Algorithm::damtcc, snrs[k]);
    curve += fmt("%s%.0fdB:%.2e", k ? " " : "", snrs[k], v);
    if (k > 0 && v > prev) ++violations;
    prev = v;
  }
  bool low_snr_order = true;
  for (double snr : {10.0, 15.0, 20.0})
    low_snr_order = low_snr_order &&
                    net_variance(Algorithm::damtcc, snr) <= net_variance(Algorithm::daclms, snr);

  const bool pass = violations <= 1 && low_snr_order;
  return {pass, fmt("damtcc variance [%s], adjacent increases %d (<= 1), "
                    "damtcc <= daclms at 10-20 dB: %s",
                    curve.c_str(), violations, low_snr_order ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// C8: step-size stability bound probe
Result criterion8() {
  const double t0 = now_seconds();
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology1");
  cfg.snr_db.assign(8, 60.0);  // low-noise balanced data
  cfg.impulse.prob = 0.0;
  cfg.mu = 0.005;
  cfg.sigma = 1.0;
  cfg.iters = 10000;
  cfg.monte_carlo_runs = 1;
  cfg.seed = 4001;

  const std::vector<double> multipliers = {0.1, 50.0};
  cfg.algorithm = AlgoSelect::damtcc;
  const StabilityReport mtcc = run_stability_probe(cfg, multipliers);
  cfg.algorithm = AlgoSelect::daclms;
  const StabilityReport clms = run_stability_probe(cfg, multipliers);

  // Below the bound both algorithms stay tightly bounded. Far above it the
  // instability shows as norm divergence (> 1e3) on the ungated baseline;
  // the correntropy gating of damtcc keeps its norm finite (bounded-update
  // property) while still leaving the stable regime by an order of
  // magnitude.
  const double m_small = mtcc.rows[0].max_weight_norm;
  const double m_large = mtcc.rows[1].max_weight_norm;
  const double c_small = clms.rows[0].max_weight_norm;
  const double c_large = clms.rows[1].max_weight_norm;

  const double elapsed = now_seconds() - t0;
  const bool pass = m_small < 10.0 && c_small < 10.0 && m_large > 10.0 && c_large > 1e3 &&
                    elapsed < 10.0;
  return {pass, fmt("mu_max = %.3f; max ||w|| at 0.1 mu_max: damtcc %.3f, daclms %.3f "
                    "(< 10); at 50 mu_max: daclms %s (> 1e3), damtcc %.1f (gated, > 10); "
                    "%.1f s",
                    mtcc.mu_max, m_small, c_small,
                    std::isinf(c_large) ? "inf" : fmt("%.3g", c_large).c_str(), m_large,
                    elapsed)};
}

// ---------------------------------------------------------------------------
// C9: diffusion invariants
Result criterion9() {
  // Metropolis matrices doubly stochastic on both fixtures
  double worst = 0.0;
  for (const char* name : {"topology1", "topology2"}) {
    const auto t = NetworkTopology::fixture(name);
    const auto c = metropolis_weights(t);
    for (int l = 0; l < t.n; ++l) {
      double col = 0.0, row = 0.0;
      for (int i = 0; i < t.n; ++i) {
        col += c.at(i, l);
        row += c.at(l, i);
      }
      worst = std::max({worst, std::abs(col - 1.0), std::abs(row - 1.0)});
    }
  }
  const bool stochastic = worst < 1e-12;

  // N=1 network equals the single filter bit for bit
  const Scenario sc({{0, PhaseParams{}}});
  const auto clean = sc.stream(501);
  NoiseConfig nc;
  nc.snr_db = 30.0;
  nc.seed = 99;
  const auto pairs = corrupt_stream(clean, nc, analytic_power(PhaseParams{}));
  FilterParams p;
  p.mu = 0.005;
  NetworkState one = NetworkState::uniform({1, {}}, p);
  const std::vector<std::vector<NoisyPair>> streams{pairs};
  const MetricSeries net = run(one, streams, 500, Algorithm::damtcc, 1.0 / 2500.0);
  const auto solo = run_single(AugmentedWeights{}, p, pairs, 1.0 / 2500.0, Algorithm::damtcc);
  bool bitwise = net.size() == solo.size();
  for (std::size_t k = 0; bitwise && k < net.size(); ++k)
    bitwise = net[k].f_hat == solo[k].estimate.f_hat &&
              net[k].sq_error == solo[k].sq_error &&
              net[k].valid == solo[k].estimate.valid;

  // identical seeds give byte-identical CSVs
  ExperimentConfig cfg;
  cfg.topology = NetworkTopology::fixture("topology2");
  cfg.snr_db = fixture_snr_schedule(8);
  cfg.iters = 400;
  cfg.monte_carlo_runs = 2;
  cfg.mu = 0.005;
  cfg.seed = 1234;
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("dfreq_acceptance_" + std::to_string(rd()));
  std::filesystem::create_directories(dir);
  const auto pa = dir / "a.csv";
  const auto pb = dir / "b.csv";
  run_tracking_to_csv(cfg, pa.string());
  run_tracking_to_csv(cfg, pb.string());
  auto slurp = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const bool bytes_equal = slurp(pa) == slurp(pb) && !slurp(pa).empty();
  std::filesystem::remove_all(dir);

  return {stochastic && bitwise && bytes_equal,
          fmt("metropolis stochasticity deviation %.2e (< 1e-12); N=1 bitwise equal: %s; "
              "seeded CSVs byte-identical: %s",
              worst, bitwise ? "yes" : "NO", bytes_equal ? "yes" : "NO")};
}

const struct {
  const char* name;
  std::function<Result()> fn;
} kCriteria[] = {
    {"clarke orthogonality & balanced circularity", criterion1},
    {"gradient oracle agreement", criterion2},
    {"exact WL recovery on clean type-D data", criterion3},
    {"balanced network convergence at 40 dB", criterion4},
    {"unbalanced tracking: WL vs strictly-linear", criterion5},
    {"impulsive robustness: variance ordering", criterion6},
    {"steady-state variance vs SNR trend", criterion7},
    {"step-size stability bound probe", criterion8},
    {"diffusion invariants", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1..9]\n", argv[0]);
      return 2;
    }
  }

  int failures = 0;
  for (int k = 1; k <= 9; ++k) {
    if (only && k != only) continue;
    const auto& c = kCriteria[k - 1];
    Result r;
    try {
      r = c.fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] C%d %s: %s\n", r.pass ? "PASS" : "FAIL", k, c.name, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures;
}
