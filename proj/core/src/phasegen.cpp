#include "dfreq/phasegen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;

// w*tau*dt + offset, with the whole cycles removed before the multiply by
// 2*pi so the cosine argument stays small and sample 10^4 is as accurate
// as sample 0.
double phase_angle(double cycles_per_sample, long tau, double offset) {
  const double turns = std::fmod(cycles_per_sample * static_cast<double>(tau), 1.0);
  return kTwoPi * turns + offset;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

bool PhaseParams::balanced() const {
  return amp_a == amp_b && amp_b == amp_c && dtheta_b == 0.0 && dtheta_c == 0.0;
}

void PhaseParams::validate() const {
  const std::pair<double, const char*> fields[] = {
      {amp_a, "amp_a"},       {amp_b, "amp_b"}, {amp_c, "amp_c"},
      {freq, "freq"},         {dt, "dt"},       {theta0, "theta0"},
      {dtheta_b, "dtheta_b"}, {dtheta_c, "dtheta_c"}};
  for (auto [v, name] : fields) require_finite(v, name);
  if (amp_a < 0.0 || amp_b < 0.0 || amp_c < 0.0)
    throw std::invalid_argument("phase amplitudes must be nonnegative");
  if (dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (freq <= 0.0 || freq >= 0.5 / dt)
    throw std::invalid_argument("freq must lie in (0, Nyquist)");
}

ThreePhaseFrame gen_three_phase(const PhaseParams& p, long tau) {
  const double base = phase_angle(p.freq * p.dt, tau, p.theta0);
  return {tau,
          p.amp_a * std::cos(base),
          p.amp_b * std::cos(base + p.dtheta_b - kTwoThirdsPi),
          p.amp_c * std::cos(base + p.dtheta_c + kTwoThirdsPi)};
}

ClarkeFrame clarke(const ThreePhaseFrame& f) {
  static const double s23 = std::sqrt(2.0 / 3.0);
  static const double s22 = std::sqrt(2.0) / 2.0;
  static const double s32 = std::sqrt(3.0) / 2.0;
  return {s23 * s22 * (f.va + f.vb + f.vc),
          s23 * (f.va - 0.5 * f.vb - 0.5 * f.vc),
          s23 * s32 * (f.vb - f.vc)};
}

cplx complex_voltage(double v_alpha, double v_beta) { return {v_alpha, v_beta}; }

cplx complex_voltage(const PhaseParams& p, long tau) {
  const ClarkeFrame c = clarke(gen_three_phase(p, tau));
  return complex_voltage(c.v_alpha, c.v_beta);
}

PhasorPair theoretical_phasors(const PhaseParams& p) {
  static const double r = std::sqrt(6.0) / 6.0;
  const cplx a = r * (p.amp_a + p.amp_b * std::polar(1.0, p.dtheta_b) +
                      p.amp_c * std::polar(1.0, p.dtheta_c));
  const cplx b = r * (p.amp_a + p.amp_b * std::polar(1.0, -(p.dtheta_b + kTwoThirdsPi)) +
                      p.amp_c * std::polar(1.0, -(p.dtheta_c - kTwoThirdsPi)));
  return {a, b};
}

double analytic_power(const PhaseParams& p) {
  const PhasorPair ph = theoretical_phasors(p);
  return std::norm(ph.a) + std::norm(ph.b);
}

PhaseParams make_type_d_sag(double d, const PhaseParams& base) {
  if (!(d > 0.0) || d > 1.0)
    throw std::invalid_argument("sag characteristic voltage d must lie in (0, 1]");
  if (!base.balanced())
    throw std::invalid_argument("type-D sag requires a balanced base segment");
  if (d == 1.0) return base;  // no sag

  static const double s32 = std::sqrt(3.0) / 2.0;
  const cplx vb{-d / 2.0, -s32};
  const cplx vc{-d / 2.0, s32};

  PhaseParams out = base;
  out.amp_a = d * base.amp_a;
  out.amp_b = std::abs(vb) * base.amp_b;
  out.amp_c = std::abs(vc) * base.amp_c;
  out.dtheta_b = std::arg(vb) + kTwoThirdsPi;
  out.dtheta_c = std::arg(vc) - kTwoThirdsPi;
  return out;
}

Scenario::Scenario(std::vector<ScenarioEvent> events) : events_(std::move(events)) {
  if (events_.empty()) throw std::invalid_argument("scenario needs at least one event");
  if (events_.front().at_tau != 0)
    throw std::invalid_argument("first scenario event must be at tau = 0");
  for (std::size_t i = 0; i < events_.size(); ++i) {
    events_[i].params.validate();
    if (i > 0 && events_[i].at_tau <= events_[i - 1].at_tau)
      throw std::invalid_argument("scenario events must be strictly increasing in tau");
    if (events_[i].params.dt != events_.front().params.dt)
      throw std::invalid_argument("all scenario segments must share the same dt");
  }
  powers_.reserve(events_.size());
  for (const auto& e : events_) powers_.push_back(analytic_power(e.params));
}

const PhaseParams& Scenario::params_at(long tau) const {
  std::size_t k = 0;
  while (k + 1 < events_.size() && events_[k + 1].at_tau <= tau) ++k;
  return events_[k].params;
}

double Scenario::power_at(long tau) const {
  std::size_t k = 0;
  while (k + 1 < events_.size() && events_[k + 1].at_tau <= tau) ++k;
  return powers_[k];
}

std::vector<cplx> Scenario::stream(long n) const {
  if (n <= 0) throw std::invalid_argument("stream length must be positive");
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  std::size_t k = 0;
  for (long tau = 0; tau < n; ++tau) {
    while (k + 1 < events_.size() && events_[k + 1].at_tau <= tau) ++k;
    out.push_back(complex_voltage(events_[k].params, tau));
  }
  return out;
}

std::vector<cplx> scenario_stream(const std::vector<ScenarioEvent>& events, long n) {
  return Scenario(events).stream(n);
}

}  // namespace dfreq
