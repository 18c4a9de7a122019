#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/states.hpp"

namespace qsl {

/// P_1(t) ... P_M(t) from the factor states. Throws NotSeparable for a
/// composite without a factor list.
double product_survival(const CompositeState& c, double t);

struct RatioPoint {
  double eps = 0.0;
  double r_lower = 1.0;
  double ml_branch = 1.0;          // M alpha(eps^{1/M}) / alpha(eps)
  double heisenberg_branch = 1.0;  // sqrt(M) beta(eps^{1/M}) / beta(eps)
  Regime branch = Regime::Heisenberg;
};

/// Lower bound on the slowdown of a homogeneous separable state of M
/// subsystems relative to the speed limit. Returns 1 for eps >= 1 - 1e-12.
/// Throws OutOfRange unless 0 <= eps <= 1 and m >= 2.
RatioPoint ratio_point(double eps, std::size_t m);
double ratio_lower_bound(double eps, std::size_t m);

struct RatioCurve {
  std::size_t m = 0;
  std::vector<RatioPoint> points;
};

/// ratio_point on `resolution` equally spaced eps in [0, 1].
RatioCurve ratio_curve(std::size_t m, std::size_t resolution);

struct EntangledSpeedupReport {
  double xi = 0.0;
  double e0 = 0.0;
  std::size_t m = 0;
  double touch_eps = 0.0;

  double joint_energy = 0.0;
  double joint_spread = 0.0;
  double subsystem_energy = 0.0;  // from the reduced state of subsystem 0
  double subsystem_spread = 0.0;
  std::optional<double> crossing_time;
  double qsl = 0.0;
  double relative_gap = 0.0;  // (crossing - qsl) / qsl
  bool saturates = false;     // relative_gap within 1e-6

  // Omega_xi(e0)^{(x) M}: same per-subsystem energy and spread.
  double separable_energy = 0.0;
  double separable_spread = 0.0;
  std::optional<double> separable_crossing;  // nullopt: never reaches eps
  double ratio_lower = 1.0;
  bool separable_slower = false;  // t_sep >= (ratio_lower - 1e-6) * crossing
};

/// Compares the entangled family with its separable counterpart at the eps
/// where the two-level state Omega_xi touches the forbidden region.
/// Throws OutOfRange unless 0 < xi <= 1/sqrt(2), e0 > 0 and m >= 1.
EntangledSpeedupReport entangled_speedup_check(double xi, double e0, std::size_t m);

struct SubsystemResources {
  double energy = 0.0;
  double spread = 0.0;
  double rotation = 1.0;  // P_k(T) of this subsystem
};

struct MixtureComponentReport {
  double prob = 0.0;
  std::vector<SubsystemResources> subsystems;
  std::size_t dominant = 0;      // subsystem carrying the largest spread
  double spread_elsewhere = 0.0; // sqrt(sum of dE_k^2 over the other subsystems)
  double energy_elsewhere = 0.0; // sum of E_k over the other subsystems
  bool concentrated = false;
};

struct SeparableMixtureReport {
  double eps = 0.0;
  double energy = 0.0;
  double spread = 0.0;
  double time = 0.0;  // qsl_time(eps, E, dE) of the mixture
  Regime regime = Regime::MargolusLevitin;
  std::vector<MixtureComponentReport> components;
  bool candidate = false;
};

/// Per-component resource distribution of a mixture of product states.
/// A component counts as concentrated when every subsystem but one has zero
/// spread (and, in the ML regime, zero energy) within 1e-12 relative.
/// Throws NotSeparable, BadProbabilities, SpectrumMismatch.
SeparableMixtureReport separable_mixture_diagnostic(std::span<const double> probs,
                                                    std::span<const CompositeState> components,
                                                    double eps);

}  // namespace qsl
