#pragma once

#include <complex>
#include <vector>

#include "dfreq/rng.hpp"

namespace dfreq {

// One segment of a three-phase voltage scenario. Angles in radians,
// frequency in Hz, dt in seconds. dtheta_b/dtheta_c are deviations from
// the nominal -2pi/3 / +2pi/3 phase displacements; a balanced segment has
// equal amplitudes and zero deviations.
struct PhaseParams {
  double amp_a = 1.0;
  double amp_b = 1.0;
  double amp_c = 1.0;
  double freq = 50.0;
  double dt = 1.0 / 2500.0;
  double theta0 = 0.0;
  double dtheta_b = 0.0;
  double dtheta_c = 0.0;

  bool balanced() const;
  void validate() const;  // throws std::invalid_argument
};

struct ThreePhaseFrame {
  long tau = 0;
  double va = 0.0, vb = 0.0, vc = 0.0;
};

// 0/alpha/beta components; v0 is kept for the orthogonality checks but is
// never fed to the filters.
struct ClarkeFrame {
  double v0 = 0.0, v_alpha = 0.0, v_beta = 0.0;
};

// Rotating (a) and counter-rotating (b) phasors of the complex voltage:
// v(tau) = a e^{j(w tau dt + theta)} + b e^{-j(w tau dt + theta)}.
// Balanced segments have b == 0.
struct PhasorPair {
  cplx a;
  cplx b;
};

struct ScenarioEvent {
  long at_tau = 0;
  PhaseParams params;
};

ThreePhaseFrame gen_three_phase(const PhaseParams& p, long tau);
ClarkeFrame clarke(const ThreePhaseFrame& f);
cplx complex_voltage(double v_alpha, double v_beta);
// gen_three_phase + clarke + alpha/beta combination in one call
cplx complex_voltage(const PhaseParams& p, long tau);

PhasorPair theoretical_phasors(const PhaseParams& p);

// Mean of |v(tau)|^2 over whole cycles: |a|^2 + |b|^2. This is the signal
// power that SNR configurations are taken against.
double analytic_power(const PhaseParams& p);

// Type-D voltage sag with characteristic voltage d in (0, 1]: phase a
// depressed to d pu, phases b/c replaced by -d/2 -+ j sqrt(3)/2 (scaled by
// the base amplitude). d == 1 returns the base segment unchanged.
PhaseParams make_type_d_sag(double d, const PhaseParams& base = PhaseParams{});

// Validated, strictly increasing event list starting at tau = 0.
class Scenario {
 public:
  explicit Scenario(std::vector<ScenarioEvent> events);

  const PhaseParams& params_at(long tau) const;
  double power_at(long tau) const;
  double dt() const { return events_.front().params.dt; }

  // n clean complex voltage samples, switching parameters at each event
  std::vector<cplx> stream(long n) const;

  const std::vector<ScenarioEvent>& events() const { return events_; }

 private:
  std::vector<ScenarioEvent> events_;
  std::vector<double> powers_;  // per segment
};

std::vector<cplx> scenario_stream(const std::vector<ScenarioEvent>& events, long n);

}  // namespace dfreq
