#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qsl/bounds.hpp"
#include "qsl/composite.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/numerics.hpp"
#include "qsl/properties.hpp"
#include "qsl/random_states.hpp"

namespace qsl::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void at_least(SuiteReport& r, std::string name, double value, double threshold) {
  r.checks.push_back({std::move(name), value, threshold, false, value >= threshold});
}

void at_most(SuiteReport& r, std::string name, double value, double threshold) {
  r.checks.push_back({std::move(name), value, threshold, true, value <= threshold});
}

SuiteReport forbidden(std::uint64_t seed) {
  SuiteReport r{"forbidden", {}};
  Rng rng(seed);
  double margin = kInf;
  double violations = 0;
  for (int i = 0; i < 200; ++i) {
    const PureState s = random_pure_state(rng, 8);
    const double e = mean_energy(s);
    const double de = energy_spread(s);
    const double t0 = orthogonality_time(e, de);
    for (int k = 0; k <= 400; ++k) {
      const double t = t0 * k / 400.0;
      const double m = survival_probability(s, t) - forbidden_floor(t, e, de);
      margin = std::min(margin, m);
      if (m < -1e-9) ++violations;
    }
  }
  at_least(r, "min_margin", margin, -1e-9);
  at_most(r, "violations", violations, 0);
  return r;
}

SuiteReport derivative(std::uint64_t seed) {
  SuiteReport r{"derivative", {}};
  Rng rng(seed);
  double slack = kInf;
  double fd_excess = -kInf;
  double floor_slack = kInf;
  for (int i = 0; i < 20; ++i) {
    const PureState s = random_pure_state(rng, random_spectrum(rng, 6, 2.0));
    std::vector<double> times;
    for (int k = 0; k < 100; ++k) times.push_back(rng.uniform(0.0, 20.0));
    const DerivativeReport d = derivative_bound_check(s, times);
    slack = std::min(slack, d.min_slack);
    fd_excess = std::max(fd_excess, d.max_fd_error - d.fd_tolerance);
    floor_slack = std::min(floor_slack, cosine_floor_check(s).min_slack);
  }
  at_least(r, "derivative_min_slack", slack, -1e-9);
  at_most(r, "finite_difference_excess", fd_excess, 0.0);
  at_least(r, "cos2_floor_min_slack", floor_slack, -1e-9);

  const PureState omega = TwoLevelState{std::numbers::sqrt2 / 2.0, 1.0}.state();
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(10.0 * k / 200.0);
  at_most(r, "saturating_derivative_abs_slack", derivative_bound_check(omega, times).max_abs_slack, 1e-9);
  at_most(r, "saturating_cos2_abs_slack", cosine_floor_check(omega).max_abs_slack, 1e-9);
  return r;
}

SuiteReport convexity(std::uint64_t seed) {
  SuiteReport r{"convexity", {}};
  const SurfaceSummary a = summarize(convexity_grid(BoundFunction::Alpha, 0.7, 101));
  const SurfaceSummary b = summarize(convexity_grid(BoundFunction::BetaSquared, 0.7, 101));
  at_least(r, "alpha_min_lambda", a.min_lambda, -1e-4);
  at_most(r, "alpha_degenerate_max_abs", a.max_abs_degenerate, 1e-9);
  at_most(r, "alpha_nondegenerate_zeros", static_cast<double>(a.nondegenerate_zeros), 0);
  at_least(r, "beta_sq_min_lambda", b.min_lambda, -1e-9);
  at_most(r, "beta_sq_degenerate_max_abs", b.max_abs_degenerate, 1e-9);
  at_most(r, "beta_sq_nondegenerate_zeros", static_cast<double>(b.nondegenerate_zeros), 0);
  at_least(r, "beta_sq_random_min", random_convexity_min(BoundFunction::BetaSquared, 1000000, seed), -1e-9);
  at_least(r, "alpha_random_min", random_convexity_min(BoundFunction::Alpha, 20000, derive_seed(seed, 1)), -1e-4);
  return r;
}

SuiteReport subadditivity(std::uint64_t seed) {
  SuiteReport r{"subadditivity", {}};
  for (BoundFunction f : {BoundFunction::Alpha, BoundFunction::BetaSquared}) {
    const std::string tag = to_string(f);
    const double tol = f == BoundFunction::Alpha ? -1e-4 : -1e-9;
    const SurfaceSummary s = summarize(subadditivity_grid(f, 101));
    at_least(r, tag + "_min_lambda", s.min_lambda, tol);
    at_most(r, tag + "_degenerate_max_abs", s.max_abs_degenerate, 1e-9);
    at_most(r, tag + "_nondegenerate_zeros", static_cast<double>(s.nondegenerate_zeros), 0);
    double triple = kInf;
    for (const TripleCheck& t : subadditivity_triples(f, 2000, derive_seed(seed, 2))) {
      triple = std::min({triple, t.lambda, t.link_inner, t.link_outer});
    }
    at_least(r, tag + "_triples_min", triple, tol);
  }
  at_least(r, "beta_sq_random_min",
           random_subadditivity_min(BoundFunction::BetaSquared, 1000000, derive_seed(seed, 3)), -1e-9);
  return r;
}

SuiteReport mixture(std::uint64_t seed) {
  SuiteReport r{"mixture", {}};
  Rng rng(seed);
  double fid_margin = kInf;
  double time_margin = kInf;
  double jensen_bad = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = rng.index(2, 6);
    const std::size_t count = rng.index(1, 4);
    const Ensemble ens = random_ensemble(rng, dim, count);
    const Purification pur = ground_ancilla_purification(ens.probs, ens.states);
    const double t = rng.uniform(0.0, 10.0);
    const double f = uhlmann_fidelity(pur.system_state, evolve_density(pur.system_state, t));
    const double overlap = survival_probability(pur.joint_pure, t);
    fid_margin = std::min(fid_margin, f - overlap);

    const double e = pur.system_state.mean_energy();
    const double de = pur.system_state.energy_spread();
    const double eps = rng.uniform(0.0, 0.9);
    if (de > 0.0) {
      const auto tc = time_to_fidelity(pur.joint_pure, eps, 50.0 * orthogonality_time(e, de));
      if (tc) time_margin = std::min(time_margin, *tc - qsl_time({eps, e, de}));
      if (!mixture_saturation_check(ens.probs, ens.states, eps).jensen_consistent) ++jensen_bad;
    }
  }
  at_least(r, "fidelity_minus_purification_overlap", fid_margin, -1e-9);
  at_least(r, "purified_crossing_minus_qsl", time_margin, -1e-9);
  at_most(r, "jensen_inconsistent", jensen_bad, 0);
  return r;
}

SuiteReport composite(std::uint64_t seed) {
  SuiteReport r{"composite", {}};
  Rng rng(seed);
  double product_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t m = rng.index(1, 4);
    std::vector<PureState> factors;
    for (std::size_t k = 0; k < m; ++k) factors.push_back(random_pure_state(rng, 4));
    const CompositeState c = composite_product(factors);
    const double t = rng.uniform(0.0, 10.0);
    product_err = std::max(product_err, std::abs(product_survival(c, t) - survival_probability(c.joint(), t)));
  }
  at_most(r, "product_law_max_error", product_err, 1e-10);

  double ratio_min = kInf;
  double sqrt_m_err = 0.0;
  for (std::size_t m = 2; m <= 8; ++m) {
    for (int i = 0; i <= 100; ++i) ratio_min = std::min(ratio_min, ratio_lower_bound(i / 100.0, m));
    sqrt_m_err = std::max(sqrt_m_err, std::abs(ratio_lower_bound(0.0, m) - std::sqrt(static_cast<double>(m))));
  }
  at_least(r, "ratio_min", ratio_min, 1.0 - 1e-12);
  at_most(r, "ratio_at_zero_minus_sqrt_m", sqrt_m_err, 1e-9);

  double worst_gap = 0.0;
  double not_slower = 0;
  for (double xi : {0.3, 0.5, std::numbers::sqrt2 / 2.0}) {
    for (std::size_t m : {2, 3, 5}) {
      const EntangledSpeedupReport e = entangled_speedup_check(xi, 1.0, m);
      worst_gap = std::max(worst_gap, e.crossing_time ? std::abs(e.relative_gap) : kInf);
      if (!e.separable_slower) ++not_slower;
    }
  }
  at_most(r, "entangled_max_relative_gap", worst_gap, 1e-6);
  at_most(r, "separable_faster_than_ratio", not_slower, 0);
  return r;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  const auto it = std::find(kSuiteNames.begin(), kSuiteNames.end(), name);
  if (it == kSuiteNames.end()) throw std::invalid_argument("unknown suite: " + name);
  const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(it - kSuiteNames.begin()));
  if (name == "forbidden") return forbidden(s);
  if (name == "derivative") return derivative(s);
  if (name == "convexity") return convexity(s);
  if (name == "subadditivity") return subadditivity(s);
  if (name == "mixture") return mixture(s);
  return composite(s);
}

}  // namespace qsl::cli
