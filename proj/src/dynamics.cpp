#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsl/error.hpp"
#include "qsl/numerics.hpp"

namespace qsl {

namespace {

// Crossings that only graze eps from above by less than this count as hits.
constexpr double kTouchTol = 1e-12;
// Purity above 1 - kPureTol is treated as an exactly pure state.
constexpr double kPureTol = 1e-13;

struct Spectral {
  std::vector<double> energies;
  std::vector<double> weights;
};

Spectral occupied(const PureState& s) {
  Spectral sp;
  const auto w = s.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) {
      sp.energies.push_back(s.spectrum()[i]);
      sp.weights.push_back(w[i]);
    }
  }
  return sp;
}

double survival(const Spectral& sp, double t) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < sp.energies.size(); ++i) {
    const double phase = sp.energies[i] * t;
    re += sp.weights[i] * std::cos(phase);
    im -= sp.weights[i] * std::sin(phase);
  }
  return std::clamp(re * re + im * im, 0.0, 1.0);
}

}  // namespace

cplx overlap_amplitude(const PureState& s, double t) {
  cplx a = 0.0;
  const auto w = s.weights();
  for (std::size_t i = 0; i < w.size(); ++i) a += w[i] * std::polar(1.0, -s.spectrum()[i] * t);
  return a;
}

double survival_probability(const PureState& s, double t) { return survival(occupied(s), t); }

DensityMatrix evolve_density(const DensityMatrix& rho, double t) {
  const std::size_t n = rho.dimension();
  ComplexMatrix m = rho.matrix().matrix();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      m(j, k) *= std::polar(1.0, -(rho.spectrum()[j] - rho.spectrum()[k]) * t);
    }
  }
  return DensityMatrix(rho.spectrum(), HermitianMatrix(std::move(m)), DensityMatrix::Unchecked{});
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.spectrum() == sigma.spectrum())) {
    throw Error(Errc::SpectrumMismatch, "fidelity between states on different spectra");
  }
  const std::size_t n = rho.dimension();
  // F(|psi><psi|, sigma) = <psi|sigma|psi> = Tr(rho sigma)
  if (rho.purity() >= 1.0 - kPureTol || sigma.purity() >= 1.0 - kPureTol) {
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) tr += (rho.matrix()(i, j) * sigma.matrix()(j, i)).real();
    }
    return std::clamp(tr, 0.0, 1.0);
  }

  const HermitianMatrix root = matrix_sqrt_psd(rho.matrix());
  const ComplexMatrix inner = root.matrix() * sigma.matrix().matrix() * root.matrix();
  const Eigensystem es = eigh(HermitianMatrix(inner));
  const double top = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  // eigenvalues at the solver's rounding floor carry no information; their
  // square roots would otherwise add O(1e-8) to the trace
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(top, 1e-300);
  double tr = 0.0;
  for (double lambda : es.values) {
    if (lambda < -kPsdClampTol) throw Error(Errc::NotPSD, "negative eigenvalue in fidelity");
    if (lambda > floor) tr += std::sqrt(lambda);
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

double crossing_scan_step(const PureState& s) {
  const double e = mean_energy(s);
  const double de = energy_spread(s);
  double e_max = 0.0;
  const auto w = s.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) e_max = std::max(e_max, s.spectrum()[i]);
  }
  double step = std::numeric_limits<double>::infinity();
  if (de > 0.0) step = std::min(step, 0.01 / de);
  if (e > 0.0) step = std::min(step, 0.01 / e);
  if (e_max > 0.0) step = std::min(step, 0.05 / e_max);
  return step;
}

std::optional<double> time_to_fidelity(const PureState& s, double eps, double t_max) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::OutOfRange, "eps must lie in [0, 1)");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(Errc::OutOfRange, "t_max must be positive");
  if (!(energy_spread(s) > 0.0)) {
    throw Error(Errc::Degenerate, "state with zero energy spread never leaves P = 1");
  }

  const Spectral sp = occupied(s);
  const auto p_of = [&sp](double t) { return survival(sp, t); };
  const auto gap = [&sp, eps](double t) { return survival(sp, t) - eps; };
  const double step = crossing_scan_step(s);

  double t2 = 0.0;
  double p2 = 1.0;
  double t1 = 0.0;
  double p1 = 1.0;
  for (std::size_t i = 1;; ++i) {
    const double t = std::min(static_cast<double>(i) * step, t_max);
    const double p = p_of(t);
    if (p <= eps) {
      if (p == eps) return t;
      return bisect(gap, RootBracket{t1, t, p1 - eps, p - eps});
    }
    // a local minimum of the samples at t1: P may dip to eps between samples
    if (i >= 2 && p1 < p2 && p1 <= p) {
      const Minimum m = golden_section_minimize(p_of, t2, t, 1e-13 * std::max(1.0, t));
      if (m.value < eps) {
        return bisect(gap, RootBracket{t2, m.x, p2 - eps, m.value - eps});
      }
      if (m.value <= eps + kTouchTol) return m.x;
    }
    if (t >= t_max) break;
    t2 = t1;
    p2 = p1;
    t1 = t;
    p1 = p;
  }
  return std::nullopt;
}

double two_level_crossing_time(double xi, double eps) {
  if (!(xi > 0.0 && xi < 1.0)) throw Error(Errc::OutOfRange, "xi must lie in (0, 1)");
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(Errc::OutOfRange, "eps must lie in [0, 1]");
  const double z = xi * xi;
  const double w = 2.0 * z * (1.0 - z);
  const double arg = (eps - 1.0 + w) / w;
  if (arg < -1.0 - 1e-12) {
    throw Error(Errc::Unreachable, "two-level state never decays to eps=" + std::to_string(eps));
  }
  return z * std::acos(std::clamp(arg, -1.0, 1.0));
}

Trajectory survival_trajectory(const PureState& s, double t_max, std::size_t steps) {
  if (steps == 0) throw Error(Errc::OutOfRange, "need at least one step");
  const Spectral sp = occupied(s);
  Trajectory tr;
  tr.times.reserve(steps + 1);
  tr.values.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps);
    tr.times.push_back(t);
    tr.values.push_back(survival(sp, t));
  }
  return tr;
}

Trajectory fidelity_trajectory(const DensityMatrix& rho, double t_max, std::size_t steps) {
  if (steps == 0) throw Error(Errc::OutOfRange, "need at least one step");
  Trajectory tr;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(steps);
    tr.times.push_back(t);
    tr.values.push_back(uhlmann_fidelity(rho, evolve_density(rho, t)));
  }
  return tr;
}

DensityMatrix Purification::reduced_system() const {
  const std::size_t d = system_state.dimension();
  const std::size_t k = ancilla_dimension;
  const auto& chi = joint_pure.amplitudes();
  ComplexMatrix rho(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (std::size_t n = 0; n < k; ++n) acc += chi[i * k + n] * std::conj(chi[j * k + n]);
      rho(i, j) = acc;
    }
  }
  return DensityMatrix(system_state.spectrum(), HermitianMatrix(std::move(rho)));
}

Purification ground_ancilla_purification(std::span<const double> probs,
                                         std::span<const PureState> states,
                                         std::span<const double> phases) {
  Purification p{ensemble_to_density(probs, states), {}, {}, states.size()};
  if (!phases.empty() && phases.size() != states.size()) {
    throw Error(Errc::OutOfRange, "phase count does not match ensemble size");
  }
  p.ancilla_phases.assign(states.size(), 0.0);
  if (!phases.empty()) p.ancilla_phases.assign(phases.begin(), phases.end());

  const EnergySpectrum& sys = p.system_state.spectrum();
  const std::size_t d = sys.size();
  const std::size_t k = states.size();
  std::vector<double> levels(d * k);
  std::vector<cplx> chi(d * k);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t n = 0; n < k; ++n) {
      levels[i * k + n] = sys[i];
      chi[i * k + n] = std::sqrt(probs[n]) * std::polar(1.0, p.ancilla_phases[n]) *
                       states[n].amplitudes()[i];
    }
  }
  p.joint_pure = PureState(EnergySpectrum(std::move(levels)), std::move(chi));
  return p;
}

}  // namespace qsl
