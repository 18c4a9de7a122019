#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsl/linalg.hpp"

namespace qsl {

inline constexpr double kNormTol = 1e-12;
inline constexpr std::size_t kMaxJointDimension = 4096;

/// Finite Hamiltonian spectrum with zero ground energy, ascending.
/// Degenerate levels are allowed.
class EnergySpectrum {
 public:
  EnergySpectrum() = default;
  /// Throws InvalidState unless levels[0] == 0, levels are nondecreasing,
  /// finite and non-negative.
  explicit EnergySpectrum(std::vector<double> levels);

  /// Subtracts the minimum level. Input must already be nondecreasing.
  static EnergySpectrum shift_to_zero_ground(std::vector<double> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  double operator[](std::size_t i) const { return levels_[i]; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  double max_level() const noexcept { return levels_.empty() ? 0.0 : levels_.back(); }

  friend bool operator==(const EnergySpectrum&, const EnergySpectrum&) = default;

 private:
  std::vector<double> levels_;
};

/// Normalised superposition of energy eigenstates.
class PureState {
 public:
  PureState() = default;
  /// Throws InvalidState if the amplitude count does not match the spectrum
  /// or sum |c_n|^2 differs from 1 by more than kNormTol.
  PureState(EnergySpectrum spectrum, std::vector<cplx> amplitudes);

  /// Rescales the amplitudes to unit norm.
  static PureState normalized(EnergySpectrum spectrum, std::vector<cplx> amplitudes);
  static PureState eigenstate(EnergySpectrum spectrum, std::size_t index);
  /// Accepts levels in any order and any ground energy: sorts the
  /// (level, amplitude) pairs, shifts the ground to zero, normalises.
  static PureState from_levels(std::vector<double> levels, std::vector<cplx> amplitudes);

  const EnergySpectrum& spectrum() const noexcept { return spectrum_; }
  const std::vector<cplx>& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  /// |c_n|^2
  std::vector<double> weights() const;

 private:
  EnergySpectrum spectrum_;
  std::vector<cplx> amplitudes_;
};

double mean_energy(const PureState& s);
double energy_spread(const PureState& s);

/// sqrt(1 - xi^2)|0> + xi|E0>
struct TwoLevelState {
  double xi;
  double e0;

  /// Throws OutOfRange unless 0 <= xi <= 1 and e0 > 0.
  PureState state() const;
};

/// Unit-trace positive semidefinite matrix in the energy eigenbasis.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Throws InvalidState on trace or dimension mismatch, NotPSD if an
  /// eigenvalue is below -1e-12.
  DensityMatrix(EnergySpectrum spectrum, HermitianMatrix rho);

  static DensityMatrix from_pure(const PureState& s);

  const EnergySpectrum& spectrum() const noexcept { return spectrum_; }
  const HermitianMatrix& matrix() const noexcept { return rho_; }
  std::size_t dimension() const noexcept { return rho_.dimension(); }

  double mean_energy() const;
  double energy_spread() const;
  /// Tr(rho^2)
  double purity() const;

 private:
  struct Unchecked {};
  DensityMatrix(EnergySpectrum spectrum, HermitianMatrix rho, Unchecked)
      : spectrum_(std::move(spectrum)), rho_(std::move(rho)) {}
  friend DensityMatrix evolve_density(const DensityMatrix& rho, double t);

  EnergySpectrum spectrum_;
  HermitianMatrix rho_;
};

/// sum_n p_n |phi_n><phi_n|. Throws BadProbabilities or SpectrumMismatch.
DensityMatrix ensemble_to_density(std::span<const double> probs, std::span<const PureState> states);

/// Validates a probability vector: positive entries summing to 1 within 1e-12.
void check_probabilities(std::span<const double> probs);

/// Pure state of M non-interacting subsystems, stored as explicit joint
/// amplitudes. The joint state lives on the sorted product spectrum; the
/// mapping from a subsystem multi-index to the joint index is kept so that
/// partial traces remain possible.
class CompositeState {
 public:
  /// Joint amplitudes in row-major multi-index order (last subsystem
  /// fastest). Throws InvalidState / TooLarge.
  static CompositeState from_joint(std::vector<EnergySpectrum> subsystems,
                                   std::vector<cplx> joint_amplitudes);

  std::size_t subsystem_count() const noexcept { return subsystems_.size(); }
  const std::vector<EnergySpectrum>& subsystems() const noexcept { return subsystems_; }
  /// Present for separable states built with composite_product.
  const std::optional<std::vector<PureState>>& factors() const noexcept { return factors_; }
  bool is_separable() const noexcept { return factors_.has_value(); }

  /// The whole system viewed as one pure state on the product spectrum.
  const PureState& joint() const noexcept { return joint_; }
  /// Amplitude at a subsystem multi-index.
  cplx amplitude(std::span<const std::size_t> multi_index) const;
  /// Reduced state of subsystem k.
  DensityMatrix reduced_density(std::size_t k) const;

 private:
  friend CompositeState composite_product(std::span<const PureState> factors);

  std::vector<EnergySpectrum> subsystems_;
  std::vector<std::size_t> joint_index_;  // multi-index (row-major) -> joint index
  PureState joint_;
  std::optional<std::vector<PureState>> factors_;
};

/// Tensor product of the factor states.
CompositeState composite_product(std::span<const PureState> factors);

/// sqrt(1 - xi^2)|0...0> + xi|E0...E0> on M two-level subsystems {0, E0}.
CompositeState entangled_family(double xi, double e0, std::size_t m);

}  // namespace qsl
