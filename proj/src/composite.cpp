#include "qsl/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsl/dynamics.hpp"
#include "qsl/error.hpp"

namespace qsl {

double product_survival(const CompositeState& c, double t) {
  if (!c.is_separable()) throw Error(Errc::NotSeparable, "composite state has no factor list");
  double p = 1.0;
  for (const PureState& f : *c.factors()) p *= survival_probability(f, t);
  return p;
}

RatioPoint ratio_point(double eps, std::size_t m) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(Errc::OutOfRange, "eps must lie in [0, 1]");
  if (m < 2) throw Error(Errc::OutOfRange, "ratio needs at least two subsystems");
  RatioPoint p;
  p.eps = eps;
  if (eps >= 1.0 - 1e-12) return p;

  const double md = static_cast<double>(m);
  const double root = eps == 0.0 ? 0.0 : std::exp(std::log(eps) / md);
  p.ml_branch = md * alpha_reconciled(root) / alpha_reconciled(eps);
  p.heisenberg_branch = std::sqrt(md) * beta(root) / beta(eps);
  if (p.heisenberg_branch <= p.ml_branch) {
    p.r_lower = p.heisenberg_branch;
    p.branch = Regime::Heisenberg;
  } else {
    p.r_lower = p.ml_branch;
    p.branch = Regime::MargolusLevitin;
  }
  return p;
}

double ratio_lower_bound(double eps, std::size_t m) { return ratio_point(eps, m).r_lower; }

RatioCurve ratio_curve(std::size_t m, std::size_t resolution) {
  if (resolution < 2) throw Error(Errc::OutOfRange, "resolution must be >= 2");
  RatioCurve c;
  c.m = m;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double eps = i + 1 == resolution ? 1.0 : static_cast<double>(i) / static_cast<double>(resolution - 1);
    c.points.push_back(ratio_point(eps, m));
  }
  return c;
}

EntangledSpeedupReport entangled_speedup_check(double xi, double e0, std::size_t m) {
  if (!(e0 > 0.0) || !std::isfinite(e0)) throw Error(Errc::OutOfRange, "e0 must be positive");
  if (m < 1) throw Error(Errc::OutOfRange, "need at least one subsystem");
  EntangledSpeedupReport r;
  r.xi = xi;
  r.e0 = e0;
  r.m = m;
  r.touch_eps = touch_epsilon(xi);

  const double md = static_cast<double>(m);
  const CompositeState psi = entangled_family(xi, e0, m);
  r.joint_energy = mean_energy(psi.joint());
  r.joint_spread = energy_spread(psi.joint());
  const DensityMatrix reduced = psi.reduced_density(0);
  r.subsystem_energy = reduced.mean_energy();
  r.subsystem_spread = reduced.energy_spread();

  // joint dynamics is a two-level problem on {0, m e0}: one period suffices
  const double period = 2.0 * std::numbers::pi / (md * e0);
  r.crossing_time = time_to_fidelity(psi.joint(), r.touch_eps, period);
  r.qsl = qsl_time({r.touch_eps, r.joint_energy, r.joint_spread});
  if (r.crossing_time) {
    r.relative_gap = (*r.crossing_time - r.qsl) / r.qsl;
    r.saturates = std::abs(r.relative_gap) <= 1e-6;
  }

  const PureState omega = TwoLevelState{xi, e0}.state();
  const std::vector<PureState> factors(m, omega);
  const CompositeState sep = composite_product(factors);
  r.separable_energy = mean_energy(sep.joint());
  r.separable_spread = energy_spread(sep.joint());
  r.separable_crossing = time_to_fidelity(sep.joint(), r.touch_eps, 2.0 * std::numbers::pi / e0);
  r.ratio_lower = m >= 2 ? ratio_lower_bound(r.touch_eps, m) : 1.0;
  if (r.crossing_time) {
    r.separable_slower = !r.separable_crossing ||
                         *r.separable_crossing >= (r.ratio_lower - 1e-6) * *r.crossing_time;
  }
  return r;
}

SeparableMixtureReport separable_mixture_diagnostic(std::span<const double> probs,
                                                    std::span<const CompositeState> components,
                                                    double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::OutOfRange, "eps must lie in [0, 1)");
  check_probabilities(probs);
  if (probs.size() != components.size()) {
    throw Error(Errc::BadProbabilities, "probability count does not match component count");
  }
  std::vector<PureState> joints;
  for (const CompositeState& c : components) {
    if (!c.is_separable()) throw Error(Errc::NotSeparable, "mixture component is not a product state");
    joints.push_back(c.joint());
  }
  const DensityMatrix rho = ensemble_to_density(probs, joints);

  SeparableMixtureReport rep;
  rep.eps = eps;
  rep.energy = rho.mean_energy();
  rep.spread = rho.energy_spread();
  rep.time = qsl_time({eps, rep.energy, rep.spread});
  rep.regime = classify_regime({eps, rep.energy, rep.spread});
  rep.candidate = true;

  for (std::size_t n = 0; n < components.size(); ++n) {
    MixtureComponentReport cr;
    cr.prob = probs[n];
    double max_spread = 0.0;
    double max_energy = 0.0;
    for (const PureState& f : *components[n].factors()) {
      SubsystemResources s;
      s.energy = mean_energy(f);
      s.spread = energy_spread(f);
      s.rotation = survival_probability(f, rep.time);
      max_spread = std::max(max_spread, s.spread);
      max_energy = std::max(max_energy, s.energy);
      cr.subsystems.push_back(s);
    }
    for (std::size_t k = 1; k < cr.subsystems.size(); ++k) {
      if (cr.subsystems[k].spread > cr.subsystems[cr.dominant].spread) cr.dominant = k;
    }
    double spread2 = 0.0;
    for (std::size_t k = 0; k < cr.subsystems.size(); ++k) {
      if (k == cr.dominant) continue;
      spread2 += cr.subsystems[k].spread * cr.subsystems[k].spread;
      cr.energy_elsewhere += cr.subsystems[k].energy;
    }
    cr.spread_elsewhere = std::sqrt(spread2);
    cr.concentrated = cr.spread_elsewhere <= 1e-12 * std::max(max_spread, 1e-300);
    if (rep.regime == Regime::MargolusLevitin) {
      cr.concentrated = cr.concentrated && cr.energy_elsewhere <= 1e-12 * std::max(max_energy, 1e-300);
    }
    rep.candidate = rep.candidate && cr.concentrated;
    rep.components.push_back(std::move(cr));
  }
  return rep;
}

}  // namespace qsl
