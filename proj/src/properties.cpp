#include "qsl/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qsl/dynamics.hpp"
#include "qsl/error.hpp"
#include "qsl/random_states.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

const char* to_string(BoundFunction f) noexcept {
  return f == BoundFunction::Alpha ? "alpha" : "beta_sq";
}

double bound_value(BoundFunction f, double eps) {
  if (f == BoundFunction::Alpha) return alpha_reconciled(eps);
  const double b = beta(eps);
  return b * b;
}

double convexity_lambda(BoundFunction f, double eps1, double eps2, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double w1 = c * c;
  const double w2 = s * s;
  const double mix = std::min(eps1 * w1 + eps2 * w2, 1.0);
  return bound_value(f, eps1 * eps1) * w1 + bound_value(f, eps2 * eps2) * w2 - bound_value(f, mix * mix);
}

bool convexity_degenerate(double eps1, double eps2, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return eps1 == eps2 || c * c <= 1e-12 || s * s <= 1e-12;
}

std::vector<SurfaceSample> convexity_surface(BoundFunction f, double eps1, double eps2,
                                             std::span<const double> phis) {
  std::vector<SurfaceSample> out;
  out.reserve(phis.size());
  for (double phi : phis) {
    out.push_back({eps1, phi, convexity_lambda(f, eps1, eps2, phi), convexity_degenerate(eps1, eps2, phi)});
  }
  return out;
}

std::vector<SurfaceSample> convexity_surface_alpha(double eps1, double eps2, std::span<const double> phis) {
  return convexity_surface(BoundFunction::Alpha, eps1, eps2, phis);
}

std::vector<SurfaceSample> convexity_surface_beta(double eps1, double eps2, std::span<const double> phis) {
  return convexity_surface(BoundFunction::BetaSquared, eps1, eps2, phis);
}

std::vector<SurfaceSample> convexity_grid(BoundFunction f, double eps2, std::size_t n) {
  if (n < 2) throw Error(Errc::OutOfRange, "surface resolution must be >= 2");
  const auto eps = linspace(0.0, 1.0, n);
  const auto phis = linspace(0.0, kPi, n);
  std::vector<SurfaceSample> out;
  out.reserve(n * n);
  for (double e1 : eps) {
    auto row = convexity_surface(f, e1, eps2, phis);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

double subadditivity_lambda(BoundFunction f, double eps1, double eps2) {
  return bound_value(f, eps1) + bound_value(f, eps2) - bound_value(f, eps1 * eps2);
}

std::vector<SurfaceSample> subadditivity_surface(std::span<const EpsPair> pairs, BoundFunction f) {
  std::vector<SurfaceSample> out;
  out.reserve(pairs.size());
  for (const EpsPair& p : pairs) {
    out.push_back({p.eps1, p.eps2, subadditivity_lambda(f, p.eps1, p.eps2), p.eps1 == 1.0 || p.eps2 == 1.0});
  }
  return out;
}

std::vector<SurfaceSample> subadditivity_grid(BoundFunction f, std::size_t n) {
  if (n < 2) throw Error(Errc::OutOfRange, "surface resolution must be >= 2");
  const auto eps = linspace(0.0, 1.0, n);
  std::vector<EpsPair> pairs;
  pairs.reserve(n * n);
  for (double a : eps) {
    for (double b : eps) pairs.push_back({a, b});
  }
  return subadditivity_surface(pairs, f);
}

std::vector<TripleCheck> subadditivity_triples(BoundFunction f, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TripleCheck> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    TripleCheck t{};
    for (double& e : t.eps) e = rng.uniform();
    const double inner = t.eps[1] * t.eps[2];
    const double all = t.eps[0] * inner;
    t.lambda = bound_value(f, t.eps[0]) + bound_value(f, t.eps[1]) + bound_value(f, t.eps[2]) -
               bound_value(f, all);
    t.link_inner = subadditivity_lambda(f, t.eps[1], t.eps[2]);
    t.link_outer = bound_value(f, t.eps[0]) + bound_value(f, inner) - bound_value(f, all);
    out.push_back(t);
  }
  return out;
}

SurfaceSummary summarize(std::span<const SurfaceSample> samples) {
  SurfaceSummary s;
  s.samples = samples.size();
  s.min_lambda = std::numeric_limits<double>::infinity();
  s.min_nondegenerate = std::numeric_limits<double>::infinity();
  for (const SurfaceSample& x : samples) {
    s.min_lambda = std::min(s.min_lambda, x.lambda);
    if (x.degenerate) {
      ++s.degenerate;
      s.max_abs_degenerate = std::max(s.max_abs_degenerate, std::abs(x.lambda));
    } else {
      s.min_nondegenerate = std::min(s.min_nondegenerate, x.lambda);
      if (x.lambda <= 1e-12) ++s.nondegenerate_zeros;
    }
  }
  return s;
}

double random_convexity_min(BoundFunction f, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double e1 = rng.uniform();
    const double e2 = rng.uniform();
    const double phi = rng.uniform(0.0, kPi);
    m = std::min(m, convexity_lambda(f, e1, e2, phi));
  }
  return m;
}

double random_subadditivity_min(BoundFunction f, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double e1 = rng.uniform();
    const double e2 = rng.uniform();
    m = std::min(m, subadditivity_lambda(f, e1, e2));
  }
  return m;
}

double survival_derivative(const PureState& s, double t) {
  const auto w = s.weights();
  double d = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    for (std::size_t m = 0; m < w.size(); ++m) {
      const double de = s.spectrum()[n] - s.spectrum()[m];
      d -= w[n] * w[m] * de * std::sin(de * t);
    }
  }
  return d;
}

DerivativeReport derivative_bound_check(const PureState& s, std::span<const double> times) {
  DerivativeReport r;
  r.points = times.size();
  const double de = energy_spread(s);
  r.fd_tolerance = std::max(1e-6, 1e-4 * de);
  r.min_slack = std::numeric_limits<double>::infinity();
  const double h = 1e-5 / std::max(s.spectrum().max_level(), 1e-300);
  for (double t : times) {
    const double p = survival_probability(s, t);
    const double d = survival_derivative(s, t);
    const double slack = 2.0 * de * std::sqrt(std::max(p * (1.0 - p), 0.0)) - std::abs(d);
    r.min_slack = std::min(r.min_slack, slack);
    r.max_abs_slack = std::max(r.max_abs_slack, std::abs(slack));
    // P is even in t, so the central difference is valid at t = 0 as well
    const double fd = (survival_probability(s, t + h) - survival_probability(s, std::abs(t - h))) / (2.0 * h);
    r.max_fd_error = std::max(r.max_fd_error, std::abs(fd - d));
  }
  if (times.empty()) r.min_slack = 0.0;
  r.bound_holds = r.min_slack >= -1e-9;
  r.fd_agrees = r.max_fd_error <= r.fd_tolerance;
  return r;
}

CosineFloorReport cosine_floor_check(const PureState& s, std::size_t points) {
  const double de = energy_spread(s);
  if (!(de > 0.0)) throw Error(Errc::Degenerate, "cos^2 floor is trivial for dE = 0");
  if (points < 2) throw Error(Errc::OutOfRange, "need at least two points");
  CosineFloorReport r;
  r.points = points;
  r.horizon = kPi / (2.0 * de);
  r.min_slack = std::numeric_limits<double>::infinity();
  for (double t : linspace(0.0, r.horizon, points)) {
    const double c = std::cos(de * t);
    const double slack = survival_probability(s, t) - c * c;
    r.min_slack = std::min(r.min_slack, slack);
    r.max_abs_slack = std::max(r.max_abs_slack, std::abs(slack));
  }
  r.holds = r.min_slack >= -1e-9;
  return r;
}

MixtureSaturationReport mixture_saturation_check(std::span<const double> probs,
                                                 std::span<const PureState> states, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::OutOfRange, "eps must lie in [0, 1)");
  const DensityMatrix rho = ensemble_to_density(probs, states);
  MixtureSaturationReport r;
  r.eps = eps;
  r.energy = rho.mean_energy();
  r.spread = rho.energy_spread();
  r.time = qsl_time({eps, r.energy, r.spread});

  double root_sum = 0.0;
  double alpha_sum = 0.0;
  double beta_sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t n = 0; n < states.size(); ++n) {
    const double e = std::isfinite(r.time) ? survival_probability(states[n], r.time) : 1.0;
    r.component_eps.push_back(e);
    root_sum += probs[n] * std::sqrt(e);
    alpha_sum += probs[n] * alpha_reconciled(e);
    beta_sum += probs[n] * bound_value(BoundFunction::BetaSquared, e);
    lo = std::min(lo, std::sqrt(e));
    hi = std::max(hi, e);
    r.max_eps_deviation = std::max(r.max_eps_deviation, std::abs(e - eps));
  }
  r.eps_bar = std::min(root_sum * root_sum, 1.0);
  r.regime = classify_regime({r.eps_bar, r.energy, r.spread});
  r.alpha_residual = alpha_reconciled(r.eps_bar) - alpha_sum;
  r.beta_sq_residual = bound_value(BoundFunction::BetaSquared, r.eps_bar) - beta_sum;
  r.candidate = r.max_eps_deviation <= 1e-9;
  r.jensen_consistent = lo * lo <= r.eps_bar * (1.0 + 1e-12) + 1e-15 && r.eps_bar <= hi * (1.0 + 1e-12) + 1e-15;
  return r;
}

}  // namespace qsl
