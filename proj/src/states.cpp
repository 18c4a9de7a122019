#include "qsl/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsl/error.hpp"

namespace qsl {

EnergySpectrum::EnergySpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error(Errc::InvalidState, "spectrum has no levels");
  if (levels_.front() != 0.0) throw Error(Errc::InvalidState, "ground level must be exactly 0");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i]) || levels_[i] < 0.0) {
      throw Error(Errc::InvalidState, "level " + std::to_string(i) + " is negative or not finite");
    }
    if (i > 0 && levels_[i] < levels_[i - 1]) {
      throw Error(Errc::InvalidState, "levels must be nondecreasing");
    }
  }
}

EnergySpectrum EnergySpectrum::shift_to_zero_ground(std::vector<double> levels) {
  if (levels.empty()) throw Error(Errc::InvalidState, "spectrum has no levels");
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw Error(Errc::InvalidState, "levels must be nondecreasing");
  }
  const double ground = levels.front();
  for (auto& e : levels) e -= ground;
  return EnergySpectrum(std::move(levels));
}

PureState::PureState(EnergySpectrum spectrum, std::vector<cplx> amplitudes)
    : spectrum_(std::move(spectrum)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != spectrum_.size()) {
    throw Error(Errc::InvalidState, "amplitude count does not match spectrum size");
  }
  double norm2 = 0.0;
  for (const auto& c : amplitudes_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(Errc::InvalidState, "amplitude is not finite");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw Error(Errc::InvalidState, "state is not normalised (norm^2 = " + std::to_string(norm2) + ")");
  }
}

PureState PureState::normalized(EnergySpectrum spectrum, std::vector<cplx> amplitudes) {
  double norm2 = 0.0;
  for (const auto& c : amplitudes) norm2 += std::norm(c);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw Error(Errc::InvalidState, "cannot normalise a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : amplitudes) c *= inv;
  return PureState(std::move(spectrum), std::move(amplitudes));
}

PureState PureState::eigenstate(EnergySpectrum spectrum, std::size_t index) {
  if (index >= spectrum.size()) throw Error(Errc::OutOfRange, "eigenstate index out of range");
  std::vector<cplx> amps(spectrum.size());
  amps[index] = 1.0;
  return PureState(std::move(spectrum), std::move(amps));
}

PureState PureState::from_levels(std::vector<double> levels, std::vector<cplx> amplitudes) {
  if (levels.size() != amplitudes.size()) {
    throw Error(Errc::InvalidState, "amplitude count does not match level count");
  }
  std::vector<std::size_t> order(levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });
  std::vector<double> sorted_levels;
  std::vector<cplx> sorted_amps;
  for (std::size_t i : order) {
    sorted_levels.push_back(levels[i]);
    sorted_amps.push_back(amplitudes[i]);
  }
  return normalized(EnergySpectrum::shift_to_zero_ground(std::move(sorted_levels)),
                    std::move(sorted_amps));
}

std::vector<double> PureState::weights() const {
  std::vector<double> w(amplitudes_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(amplitudes_[i]);
  return w;
}

double mean_energy(const PureState& s) {
  double e = 0.0;
  const auto& levels = s.spectrum().levels();
  for (std::size_t i = 0; i < levels.size(); ++i) e += std::norm(s.amplitudes()[i]) * levels[i];
  return e;
}

double energy_spread(const PureState& s) {
  const double e = mean_energy(s);
  double var = 0.0;
  const auto& levels = s.spectrum().levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double d = levels[i] - e;
    var += std::norm(s.amplitudes()[i]) * d * d;
  }
  return std::sqrt(var);
}

PureState TwoLevelState::state() const {
  if (!(xi >= 0.0 && xi <= 1.0)) throw Error(Errc::OutOfRange, "xi must lie in [0, 1]");
  if (!(e0 > 0.0) || !std::isfinite(e0)) throw Error(Errc::OutOfRange, "E0 must be positive");
  return PureState(EnergySpectrum({0.0, e0}), {std::sqrt(1.0 - xi * xi), xi});
}

namespace {

double diagonal_trace(const HermitianMatrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < m.dimension(); ++i) t += m(i, i).real();
  return t;
}

}  // namespace

DensityMatrix::DensityMatrix(EnergySpectrum spectrum, HermitianMatrix rho)
    : spectrum_(std::move(spectrum)), rho_(std::move(rho)) {
  if (rho_.dimension() != spectrum_.size()) {
    throw Error(Errc::InvalidState, "density matrix dimension does not match spectrum");
  }
  const double tr = diagonal_trace(rho_);
  if (std::abs(tr - 1.0) > kNormTol) {
    throw Error(Errc::InvalidState, "density matrix trace is " + std::to_string(tr));
  }
  const auto es = eigh(rho_);
  if (!es.values.empty() && es.values.front() < -kPsdClampTol) {
    throw Error(Errc::NotPSD, "density matrix has eigenvalue " + std::to_string(es.values.front()));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& s) {
  return DensityMatrix(s.spectrum(), HermitianMatrix(ComplexMatrix::outer(s.amplitudes())));
}

double DensityMatrix::mean_energy() const {
  double e = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) e += spectrum_[i] * rho_(i, i).real();
  return e;
}

double DensityMatrix::energy_spread() const {
  const double e = mean_energy();
  double var = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) {
    const double d = spectrum_[i] - e;
    var += d * d * rho_(i, i).real();
  }
  return std::sqrt(std::max(var, 0.0));
}

double DensityMatrix::purity() const {
  double p = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) {
    for (std::size_t j = 0; j < dimension(); ++j) p += std::norm(rho_(i, j));
  }
  return p;
}

void check_probabilities(std::span<const double> probs) {
  if (probs.empty()) throw Error(Errc::BadProbabilities, "empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw Error(Errc::BadProbabilities, "probabilities must be positive");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTol) {
    throw Error(Errc::BadProbabilities, "probabilities sum to " + std::to_string(sum));
  }
}

DensityMatrix ensemble_to_density(std::span<const double> probs, std::span<const PureState> states) {
  check_probabilities(probs);
  if (probs.size() != states.size()) {
    throw Error(Errc::BadProbabilities, "probability count does not match state count");
  }
  const EnergySpectrum& spectrum = states.front().spectrum();
  ComplexMatrix rho(spectrum.size());
  for (std::size_t n = 0; n < states.size(); ++n) {
    if (!(states[n].spectrum() == spectrum)) {
      throw Error(Errc::SpectrumMismatch, "ensemble members live on different spectra");
    }
    rho += ComplexMatrix::outer(states[n].amplitudes()) * cplx(probs[n]);
  }
  return DensityMatrix(spectrum, HermitianMatrix(std::move(rho)));
}

// ---------------------------------------------------------------------------
// Composite states

namespace {

std::size_t product_dimension(const std::vector<EnergySpectrum>& subsystems) {
  std::size_t dim = 1;
  for (const auto& s : subsystems) {
    if (s.size() == 0) throw Error(Errc::InvalidState, "empty subsystem spectrum");
    if (dim > kMaxJointDimension / s.size()) {
      throw Error(Errc::TooLarge, "joint dimension exceeds " + std::to_string(kMaxJointDimension));
    }
    dim *= s.size();
  }
  return dim;
}

// Level sum for every row-major multi-index.
std::vector<double> product_levels(const std::vector<EnergySpectrum>& subsystems) {
  std::vector<double> levels{0.0};
  for (const auto& s : subsystems) {
    std::vector<double> next;
    next.reserve(levels.size() * s.size());
    for (double base : levels) {
      for (double e : s.levels()) next.push_back(base + e);
    }
    levels = std::move(next);
  }
  return levels;
}

}  // namespace

CompositeState CompositeState::from_joint(std::vector<EnergySpectrum> subsystems,
                                          std::vector<cplx> joint_amplitudes) {
  if (subsystems.empty()) throw Error(Errc::InvalidState, "composite needs at least one subsystem");
  const std::size_t dim = product_dimension(subsystems);
  if (joint_amplitudes.size() != dim) {
    throw Error(Errc::InvalidState, "joint amplitude count does not match product dimension");
  }
  const std::vector<double> raw = product_levels(subsystems);

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

  CompositeState c;
  c.joint_index_.resize(dim);
  std::vector<double> sorted_levels(dim);
  std::vector<cplx> sorted_amps(dim);
  for (std::size_t pos = 0; pos < dim; ++pos) {
    c.joint_index_[order[pos]] = pos;
    sorted_levels[pos] = raw[order[pos]];
    sorted_amps[pos] = joint_amplitudes[order[pos]];
  }
  c.subsystems_ = std::move(subsystems);
  c.joint_ = PureState(EnergySpectrum(std::move(sorted_levels)), std::move(sorted_amps));
  return c;
}

cplx CompositeState::amplitude(std::span<const std::size_t> multi_index) const {
  if (multi_index.size() != subsystems_.size()) {
    throw Error(Errc::OutOfRange, "multi-index length does not match subsystem count");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < subsystems_.size(); ++k) {
    if (multi_index[k] >= subsystems_[k].size()) throw Error(Errc::OutOfRange, "index out of range");
    flat = flat * subsystems_[k].size() + multi_index[k];
  }
  return joint_.amplitudes()[joint_index_[flat]];
}

DensityMatrix CompositeState::reduced_density(std::size_t k) const {
  if (k >= subsystems_.size()) throw Error(Errc::OutOfRange, "subsystem index out of range");
  // flat = (outer * d_k + local) * inner + rest
  std::size_t inner = 1;
  for (std::size_t j = k + 1; j < subsystems_.size(); ++j) inner *= subsystems_[j].size();
  const std::size_t dk = subsystems_[k].size();
  const std::size_t outer = joint_index_.size() / (inner * dk);

  ComplexMatrix rho(dk);
  const auto& amps = joint_.amplitudes();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      for (std::size_t a = 0; a < dk; ++a) {
        const cplx ca = amps[joint_index_[(o * dk + a) * inner + r]];
        if (ca == cplx(0.0)) continue;
        for (std::size_t b = 0; b < dk; ++b) {
          rho(a, b) += ca * std::conj(amps[joint_index_[(o * dk + b) * inner + r]]);
        }
      }
    }
  }
  return DensityMatrix(subsystems_[k], HermitianMatrix(std::move(rho)));
}

CompositeState composite_product(std::span<const PureState> factors) {
  if (factors.empty()) throw Error(Errc::InvalidState, "composite needs at least one factor");
  std::vector<EnergySpectrum> subsystems;
  std::vector<cplx> joint{1.0};
  for (const auto& f : factors) {
    subsystems.push_back(f.spectrum());
    std::vector<cplx> next;
    next.reserve(joint.size() * f.dimension());
    for (const cplx& base : joint) {
      for (const cplx& c : f.amplitudes()) next.push_back(base * c);
    }
    joint = std::move(next);
    if (joint.size() > kMaxJointDimension) {
      throw Error(Errc::TooLarge, "joint dimension exceeds " + std::to_string(kMaxJointDimension));
    }
  }
  // product of unit vectors drifts from unit norm only by rounding
  double norm2 = 0.0;
  for (const auto& c : joint) norm2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : joint) c *= inv;

  CompositeState c = CompositeState::from_joint(std::move(subsystems), std::move(joint));
  c.factors_ = std::vector<PureState>(factors.begin(), factors.end());
  return c;
}

CompositeState entangled_family(double xi, double e0, std::size_t m) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw Error(Errc::OutOfRange, "xi must lie in [0, 1]");
  if (!(e0 > 0.0) || !std::isfinite(e0)) throw Error(Errc::OutOfRange, "E0 must be positive");
  if (m == 0) throw Error(Errc::OutOfRange, "need at least one subsystem");
  std::vector<EnergySpectrum> subsystems(m, EnergySpectrum({0.0, e0}));
  const std::size_t dim = product_dimension(subsystems);
  std::vector<cplx> joint(dim);
  joint.front() = std::sqrt(1.0 - xi * xi);
  joint.back() = xi;
  return CompositeState::from_joint(std::move(subsystems), std::move(joint));
}

}  // namespace qsl
