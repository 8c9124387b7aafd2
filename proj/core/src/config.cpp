#include "dfreq/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dfreq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

// SNR values may be numeric or the string "inf" (noiseless)
double snr_value(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    fail(where + ": only the string \"inf\" is accepted, otherwise use a number");
  }
  if (!j.is_number()) fail(where + " must be a number or \"inf\"");
  return j.get<double>();
}

NetworkTopology parse_topology(const json& j) {
  if (j.is_string()) return NetworkTopology::fixture(j.get<std::string>());
  if (!j.is_object()) fail("topology must be a fixture name or an object");
  check_keys(j, "topology", {"nodes", "edges"});
  if (!j.contains("nodes") || !j.contains("edges"))
    fail("topology object needs 'nodes' and 'edges'");
  NetworkTopology t;
  t.n = j.at("nodes").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) fail("each edge must be a [i, l] pair");
    t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  t.validate();
  return t;
}

PhaseParams parse_phase_params(const json& j, double freq, double dt) {
  PhaseParams p;
  p.freq = freq;
  p.dt = dt;
  if (j.contains("freq")) p.freq = j.at("freq").get<double>();
  if (j.contains("theta0")) p.theta0 = j.at("theta0").get<double>();

  const bool has_sag = j.contains("sag_d");
  const bool has_amps = j.contains("amp_a") || j.contains("amp_b") || j.contains("amp_c") ||
                        j.contains("dtheta_b") || j.contains("dtheta_c");
  if (has_sag && has_amps) fail("scenario event: give either sag_d or explicit amplitudes");

  if (has_sag) {
    PhaseParams base = p;
    if (j.contains("amplitude")) {
      const double a = j.at("amplitude").get<double>();
      base.amp_a = base.amp_b = base.amp_c = a;
    }
    return make_type_d_sag(j.at("sag_d").get<double>(), base);
  }
  if (j.contains("amplitude")) {
    const double a = j.at("amplitude").get<double>();
    p.amp_a = p.amp_b = p.amp_c = a;
  }
  if (j.contains("amp_a")) p.amp_a = j.at("amp_a").get<double>();
  if (j.contains("amp_b")) p.amp_b = j.at("amp_b").get<double>();
  if (j.contains("amp_c")) p.amp_c = j.at("amp_c").get<double>();
  if (j.contains("dtheta_b")) p.dtheta_b = j.at("dtheta_b").get<double>();
  if (j.contains("dtheta_c")) p.dtheta_c = j.at("dtheta_c").get<double>();
  return p;
}

std::vector<ScenarioEvent> parse_scenario(const json& j, double dt) {
  if (!j.is_array() || j.empty()) fail("scenario must be a nonempty array of events");
  std::vector<ScenarioEvent> events;
  for (const auto& ev : j) {
    if (!ev.is_object()) fail("scenario events must be objects");
    check_keys(ev, "scenario event",
               {"at", "freq", "theta0", "amplitude", "sag_d", "amp_a", "amp_b", "amp_c",
                "dtheta_b", "dtheta_c"});
    ScenarioEvent e;
    e.at_tau = ev.value("at", 0L);
    e.params = parse_phase_params(ev, 50.0, dt);
    events.push_back(e);
  }
  return events;
}

}  // namespace

void ExperimentConfig::validate() const {
  topology.validate();
  if (static_cast<int>(snr_db.size()) != topology.n)
    fail("snr_db must list one value per node");
  for (double s : snr_db)
    if (std::isnan(s)) fail("snr_db entries must not be NaN");
  if (gamma && output_snr_db) fail("gamma and output_snr_db are mutually exclusive");
  if (gamma && !(*gamma >= 0.0)) fail("gamma must be >= 0");
  if (!(impulse.prob >= 0.0) || !(impulse.prob <= 1.0))
    fail("impulse.prob must lie in [0, 1]");
  if (!(impulse.variance >= 0.0)) fail("impulse.variance must be >= 0");
  if (!(mu > 0.0)) fail("filter.mu must be positive");
  if (!(sigma > 0.0)) fail("filter.sigma must be positive");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (iters <= 0) fail("iters must be positive");
  if (monte_carlo_runs < 1) fail("monte_carlo_runs must be >= 1");
  if (snr_sweep_db.empty()) fail("snr_sweep_db must be nonempty");
  if (mu_multipliers.empty()) fail("mu_multipliers must be nonempty");
  for (double m : mu_multipliers)
    if (!(m > 0.0)) fail("mu_multipliers must be positive");
  if (!(steady_window_fraction > 0.0) || !(steady_window_fraction <= 1.0))
    fail("steady_window_fraction must lie in (0, 1]");
  make_scenario();  // validates events
}

Scenario ExperimentConfig::make_scenario() const {
  if (scenario.empty()) {
    PhaseParams p;
    p.dt = dt;
    return Scenario({{0, p}});
  }
  return Scenario(scenario);
}

long ExperimentConfig::steady_window() const {
  const long w = static_cast<long>(std::floor(steady_window_fraction * static_cast<double>(iters)));
  return std::max(1L, w);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config root must be an object");
  check_keys(j, "config",
             {"topology", "snr_db", "output_snr_db", "gamma", "impulse", "algorithm",
              "filter", "freeze_conjugate", "scenario", "dt", "iters", "monte_carlo_runs",
              "seed", "snr_sweep_db", "mu_multipliers", "steady_window_fraction",
              "shared_measurement_noise"});

  ExperimentConfig cfg;
  if (j.contains("topology")) cfg.topology = parse_topology(j.at("topology"));
  if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();

  if (j.contains("snr_db")) {
    const json& s = j.at("snr_db");
    if (s.is_array()) {
      for (const auto& v : s) cfg.snr_db.push_back(snr_value(v, "snr_db"));
    } else {
      cfg.snr_db.assign(static_cast<std::size_t>(cfg.topology.n), snr_value(s, "snr_db"));
    }
  } else {
    cfg.snr_db.assign(static_cast<std::size_t>(cfg.topology.n), 40.0);
  }
  if (j.contains("output_snr_db")) cfg.output_snr_db = snr_value(j.at("output_snr_db"), "output_snr_db");
  if (j.contains("gamma")) cfg.gamma = j.at("gamma").get<double>();

  if (j.contains("impulse")) {
    const json& imp = j.at("impulse");
    check_keys(imp, "impulse", {"prob", "variance"});
    if (imp.contains("prob")) cfg.impulse.prob = imp.at("prob").get<double>();
    if (imp.contains("variance")) cfg.impulse.variance = imp.at("variance").get<double>();
  }

  if (j.contains("algorithm")) {
    const std::string a = j.at("algorithm").get<std::string>();
    if (a == "damtcc") cfg.algorithm = AlgoSelect::damtcc;
    else if (a == "daclms") cfg.algorithm = AlgoSelect::daclms;
    else if (a == "both") cfg.algorithm = AlgoSelect::both;
    else fail("algorithm must be damtcc, daclms or both");
  }

  if (j.contains("filter")) {
    const json& f = j.at("filter");
    check_keys(f, "filter", {"mu", "sigma"});
    if (f.contains("mu")) cfg.mu = f.at("mu").get<double>();
    if (f.contains("sigma")) cfg.sigma = f.at("sigma").get<double>();
  }
  if (j.contains("freeze_conjugate")) cfg.freeze_conjugate = j.at("freeze_conjugate").get<bool>();
  if (j.contains("scenario")) cfg.scenario = parse_scenario(j.at("scenario"), cfg.dt);
  if (j.contains("iters")) cfg.iters = j.at("iters").get<long>();
  if (j.contains("monte_carlo_runs")) cfg.monte_carlo_runs = j.at("monte_carlo_runs").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("snr_sweep_db")) {
    cfg.snr_sweep_db.clear();
    for (const auto& v : j.at("snr_sweep_db")) cfg.snr_sweep_db.push_back(snr_value(v, "snr_sweep_db"));
  }
  if (j.contains("mu_multipliers")) {
    cfg.mu_multipliers.clear();
    for (const auto& v : j.at("mu_multipliers")) cfg.mu_multipliers.push_back(v.get<double>());
  }
  if (j.contains("steady_window_fraction"))
    cfg.steady_window_fraction = j.at("steady_window_fraction").get<double>();
  if (j.contains("shared_measurement_noise"))
    cfg.shared_measurement_noise = j.at("shared_measurement_noise").get<bool>();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> fixture_snr_schedule(int n) {
  // spread of sensor qualities between 30 and 45 dB
  static const double base[] = {40, 35, 42, 33, 45, 38, 30, 43};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = base[i % 8];
  return out;
}

}  // namespace dfreq
