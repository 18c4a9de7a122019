#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qsl/states.hpp"

namespace qsl {

/// Seeded generator with a portable mapping to doubles, so that sampled
/// instances are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

/// 0 followed by sorted uniform levels in (0, e_max].
EnergySpectrum random_spectrum(Rng& rng, std::size_t levels, double e_max = 1.0);

/// Gaussian amplitudes on the given spectrum, normalised.
PureState random_pure_state(Rng& rng, const EnergySpectrum& spectrum);

/// Random spectrum with 2..max_levels levels and a random state on it.
PureState random_pure_state(Rng& rng, std::size_t max_levels, double e_max = 1.0);

struct Ensemble {
  std::vector<double> probs;
  std::vector<PureState> states;
};

/// `count` random states on a shared random spectrum of `levels` levels,
/// with positive weights summing to one.
Ensemble random_ensemble(Rng& rng, std::size_t levels, std::size_t count, double e_max = 1.0);

}  // namespace qsl
