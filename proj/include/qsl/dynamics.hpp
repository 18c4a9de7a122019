#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

/// <psi|psi(t)> = sum_n |c_n|^2 exp(-i E_n t), hbar = 1.
cplx overlap_amplitude(const PureState& s, double t);

/// P(t) = |<psi|psi(t)>|^2, clamped to [0, 1].
double survival_probability(const PureState& s, double t);

/// rho_jk -> rho_jk exp(-i (E_j - E_k) t)
DensityMatrix evolve_density(const DensityMatrix& rho, double t);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Throws SpectrumMismatch when the
/// two states live on different spectra.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// First time in (0, t_max] at which P(t) = eps.
///
/// The trajectory is scanned with a step tied to the fastest phase in the
/// state, then the crossing is refined by bisection to 1e-12. Local minima
/// that only touch eps (within 1e-12) count as crossings. Returns nullopt
/// when P never reaches eps before t_max. Throws Degenerate for a state with
/// zero energy spread and OutOfRange unless 0 <= eps < 1 and t_max > 0.
std::optional<double> time_to_fidelity(const PureState& s, double eps, double t_max);

/// Scan step used by time_to_fidelity.
double crossing_scan_step(const PureState& s);

/// E t / hbar at which the two-level state sqrt(1-xi^2)|0> + xi|E0> first
/// reaches P = eps. Throws Unreachable when the state never decays that far.
double two_level_crossing_time(double xi, double eps);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
};

/// P(t) on `steps + 1` equally spaced times in [0, t_max].
Trajectory survival_trajectory(const PureState& s, double t_max, std::size_t steps);

/// F(rho, rho(t)) on `steps + 1` equally spaced times in [0, t_max].
Trajectory fidelity_trajectory(const DensityMatrix& rho, double t_max, std::size_t steps);

/// Pure state on system (x) ancilla whose partial trace is the ensemble's
/// density matrix. The ancilla states are orthonormal and all sit on a zero
/// energy level, so the joint state has the same E and dE as rho.
struct Purification {
  DensityMatrix system_state;
  PureState joint_pure;  // index = system_level * ancilla_dim + ancilla_index
  std::vector<double> ancilla_phases;
  std::size_t ancilla_dimension = 0;

  /// Partial trace of |chi><chi| over the ancilla.
  DensityMatrix reduced_system() const;
};

/// sum_n sqrt(p_n) exp(i phase_n) |phi_n>|xi_n>. `phases` may be empty.
Purification ground_ancilla_purification(std::span<const double> probs,
                                         std::span<const PureState> states,
                                         std::span<const double> phases = {});

}  // namespace qsl
