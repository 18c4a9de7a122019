#include "qsl/random_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsl/error.hpp"

namespace qsl {

double Rng::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  return r * std::cos(2.0 * std::numbers::pi * uniform());
}

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw Error(Errc::OutOfRange, "empty index range");
  const std::size_t span = hi - lo + 1;
  return lo + std::min(static_cast<std::size_t>(uniform() * static_cast<double>(span)), span - 1);
}

EnergySpectrum random_spectrum(Rng& rng, std::size_t levels, double e_max) {
  if (levels < 1) throw Error(Errc::OutOfRange, "need at least one level");
  std::vector<double> e(levels, 0.0);
  for (std::size_t i = 1; i < levels; ++i) e[i] = e_max * rng.uniform_open();
  std::sort(e.begin() + 1, e.end());
  return EnergySpectrum(std::move(e));
}

PureState random_pure_state(Rng& rng, const EnergySpectrum& spectrum) {
  std::vector<cplx> amps(spectrum.size());
  for (auto& a : amps) a = cplx(rng.normal(), rng.normal());
  return PureState::normalized(spectrum, std::move(amps));
}

PureState random_pure_state(Rng& rng, std::size_t max_levels, double e_max) {
  const std::size_t d = rng.index(2, std::max<std::size_t>(max_levels, 2));
  return random_pure_state(rng, random_spectrum(rng, d, e_max));
}

Ensemble random_ensemble(Rng& rng, std::size_t levels, std::size_t count, double e_max) {
  if (count < 1) throw Error(Errc::OutOfRange, "ensemble needs at least one state");
  Ensemble ens;
  const EnergySpectrum spec = random_spectrum(rng, levels, e_max);
  double total = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    ens.probs.push_back(0.05 + rng.uniform());
    total += ens.probs.back();
    ens.states.push_back(random_pure_state(rng, spec));
  }
  for (double& p : ens.probs) p /= total;
  return ens;
}

}  // namespace qsl
