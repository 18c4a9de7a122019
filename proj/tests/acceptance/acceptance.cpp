// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/composite.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/properties.hpp"
#include "qsl/random_states.hpp"

namespace {

using namespace qsl;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeed = 20240601;

// pinned tolerances
constexpr double kAlphaAnchorTol = 1e-3;
constexpr std::size_t kCompatSamples = 25;
constexpr double kTangentTarget = 0.64;
constexpr double kTangentTol = 0.01;
constexpr double kTouchTimeTarget = 0.42;
constexpr double kTouchTimeTol = 0.01;
constexpr double kTouchEps = 0.30;
constexpr double kTouchFloorTol = 1e-2;
constexpr double kAlphaBetaSqGap = 0.05;
constexpr double kPropertyTol = 1e-9;
constexpr double kAlphaSurfaceTol = 1e-4;
constexpr double kDegenerateZeroTol = 1e-9;
constexpr double kSqrtMTol = 1e-9;
constexpr double kRatioSpotTol = 1e-9;
constexpr double kRelativeGapTol = 1e-6;
constexpr double kRatioSlack = 1e-6;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome endpoint_anchors() {
  const AlphaLowerSolver solver;
  const double a0 = alpha_reconciled(0.0);
  const double a0_lower = solver.evaluate(0.0).fit.value_at_zero;
  const bool ok = std::abs(a0 - 1.0) <= kAlphaAnchorTol && std::abs(a0_lower - 1.0) <= kAlphaAnchorTol &&
                  beta(0.0) == 1.0 && alpha_reconciled(1.0) == 0.0 && beta(1.0) == 0.0 &&
                  solver.evaluate(1.0).fit.value_at_zero == 0.0;
  return {ok, fmt("alpha(0)=%.9f alpha_lower(0)=%.9f beta(0)=%.1f", a0, a0_lower, beta(0.0))};
}

Outcome alpha_compatibility() {
  const AlphaLowerSolver solver;
  Rng rng(kSeed);
  std::size_t compatible = 0;
  std::size_t within_bar = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < kCompatSamples; ++i) {
    const double eps = rng.uniform_open() * 0.999;
    const AlphaEstimate est = alpha(eps, solver);
    const double diff = std::abs(est.upper - est.lower.fit.value_at_zero);
    worst = std::max(worst, diff);
    if (est.compatible) ++compatible;
    if (diff <= est.lower.fit.error_bar) ++within_bar;
  }
  std::printf("  info: %zu/%zu differences inside the bare theta-extrapolation error bar\n", within_bar,
              kCompatSamples);
  return {compatible == kCompatSamples,
          fmt("compatible %.0f/%.0f, max |upper-lower|=%.3g", static_cast<double>(compatible),
              static_cast<double>(kCompatSamples), worst)};
}

Outcome tangent_anchor() {
  const double a = tangent_line(kPi / 4).a;
  return {std::abs(a - kTangentTarget) <= kTangentTol, fmt("a(pi/4)=%.6f", a)};
}

Outcome forbidden_touch() {
  const double xi = 0.5;
  const double e = 1.0;
  const double e0 = e / (xi * xi);
  const PureState omega = TwoLevelState{xi, e0}.state();
  const double de = energy_spread(omega);
  const auto t = time_to_fidelity(omega, kTouchEps, 10.0);
  if (!t) return {false, "no crossing"};
  const double normalized = *t / (kPi / (2 * e));
  const double floor = forbidden_floor(*t, e, de);
  const bool ok = std::abs(normalized - kTouchTimeTarget) <= kTouchTimeTol &&
                  std::abs(floor - kTouchEps) <= kTouchFloorTol && std::abs(de - 1.73) < 5e-3;
  return {ok, fmt("dE=%.4f t/(pi/2E)=%.6f floor=%.6f", de, normalized, floor)};
}

Outcome alpha_vs_beta_sq() {
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double eps = i / 1000.0;
    worst = std::max(worst, std::abs(alpha_reconciled(eps) - std::pow(beta(eps), 2)));
  }
  return {worst <= kAlphaBetaSqGap, fmt("max |alpha - beta^2| = %.5f", worst)};
}

Outcome forbidden_region() {
  Rng rng(derive_seed(kSeed, 6));
  double margin = kInf;
  for (int i = 0; i < 200; ++i) {
    const PureState s = random_pure_state(rng, 8);
    const double e = mean_energy(s);
    const double de = energy_spread(s);
    const double t0 = orthogonality_time(e, de);
    for (int k = 0; k <= 2000; ++k) {
      const double t = t0 * k / 2000.0;
      margin = std::min(margin, survival_probability(s, t) - forbidden_floor(t, e, de));
    }
  }
  return {margin >= -kPropertyTol, fmt("min P - floor = %.3g over 200 states", margin)};
}

Outcome derivative_and_floor() {
  Rng rng(derive_seed(kSeed, 7));
  double slack = kInf;
  double floor_slack = kInf;
  bool fd = true;
  for (int i = 0; i < 50; ++i) {
    const PureState s = random_pure_state(rng, random_spectrum(rng, rng.index(2, 8), 2.0));
    std::vector<double> times;
    for (int k = 0; k < 200; ++k) times.push_back(rng.uniform(0.0, 20.0));
    const DerivativeReport d = derivative_bound_check(s, times);
    slack = std::min(slack, d.min_slack);
    fd = fd && d.fd_agrees;
    floor_slack = std::min(floor_slack, cosine_floor_check(s).min_slack);
  }
  const PureState omega = TwoLevelState{std::numbers::sqrt2 / 2, 1.0}.state();
  std::vector<double> times;
  for (int k = 0; k <= 1000; ++k) times.push_back(4 * kPi * k / 1000.0);
  const double sat_d = derivative_bound_check(omega, times).max_abs_slack;
  const double sat_c = cosine_floor_check(omega).max_abs_slack;
  const bool ok = slack >= -kPropertyTol && floor_slack >= -kPropertyTol && fd && sat_d <= kPropertyTol &&
                  sat_c <= kPropertyTol;
  return {ok, fmt("min slack %.3g, cos2 min slack %.3g, saturation max|slack| %.3g",
                  slack, floor_slack, std::max(sat_d, sat_c))};
}

Outcome convexity_subadditivity() {
  bool ok = true;
  double worst_alpha = kInf;
  double worst_beta = kInf;
  double worst_degenerate = 0.0;
  for (BoundFunction f : {BoundFunction::Alpha, BoundFunction::BetaSquared}) {
    const double tol = f == BoundFunction::Alpha ? -kAlphaSurfaceTol : -kPropertyTol;
    for (const SurfaceSummary& s : {summarize(convexity_grid(f, 0.7, 101)), summarize(subadditivity_grid(f, 101))}) {
      ok = ok && s.samples == 101 * 101 && s.min_lambda >= tol && s.nondegenerate_zeros == 0 &&
           s.max_abs_degenerate <= kDegenerateZeroTol;
      (f == BoundFunction::Alpha ? worst_alpha : worst_beta) =
          std::min(f == BoundFunction::Alpha ? worst_alpha : worst_beta, s.min_lambda);
      worst_degenerate = std::max(worst_degenerate, s.max_abs_degenerate);
    }
  }
  return {ok, fmt("min lambda alpha %.3g, beta^2 %.3g, max |lambda| at degeneracies %.3g", worst_alpha,
                  worst_beta, worst_degenerate)};
}

Outcome ratio_curve_m5() {
  const std::size_t m = 5;
  const RatioCurve c = ratio_curve(m, 1001);
  double min_r = kInf;
  for (const RatioPoint& p : c.points) min_r = std::min(min_r, p.r_lower);
  const double at_zero = c.points.front().r_lower;
  double spot = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double eps = 0.05 + 0.1 * i;
    const double root = std::pow(eps, 0.2);
    const double direct = std::min(5 * alpha_reconciled(root) / alpha_reconciled(eps),
                                   std::sqrt(5.0) * beta(root) / beta(eps));
    spot = std::max(spot, std::abs(ratio_lower_bound(eps, m) - direct));
  }
  const bool ok = std::abs(at_zero - std::sqrt(5.0)) <= kSqrtMTol && min_r >= 1.0 - 1e-12 && spot <= kRatioSpotTol;
  return {ok, fmt("r(0)=%.12f min r=%.9f max spot error %.3g", at_zero, min_r, spot)};
}

Outcome mixed_state_bound() {
  Rng rng(derive_seed(kSeed, 10));
  double fid_margin = kInf;
  double time_margin = kInf;
  for (int i = 0; i < 50; ++i) {
    const Ensemble ens = random_ensemble(rng, rng.index(2, 6), rng.index(1, 4));
    const Purification pur = ground_ancilla_purification(ens.probs, ens.states);
    const double t = rng.uniform(0.0, 10.0);
    const double f = uhlmann_fidelity(pur.system_state, evolve_density(pur.system_state, t));
    fid_margin = std::min(fid_margin, f - survival_probability(pur.joint_pure, t));

    const double e = pur.system_state.mean_energy();
    const double de = pur.system_state.energy_spread();
    const double eps = rng.uniform(0.0, 0.9);
    if (de > 0.0) {
      const auto tc = time_to_fidelity(pur.joint_pure, eps, 50.0 * orthogonality_time(e, de));
      if (tc) time_margin = std::min(time_margin, *tc - qsl_time({eps, e, de}));
    }
  }
  return {fid_margin >= -kPropertyTol && time_margin >= -kPropertyTol,
          fmt("min F - overlap %.3g, min crossing - qsl %.3g", fid_margin, time_margin)};
}

Outcome entangled_speedup() {
  bool ok = true;
  double worst_gap = 0.0;
  double worst_margin = kInf;
  for (double xi : {0.3, 0.5, std::numbers::sqrt2 / 2}) {
    for (std::size_t m : {2, 3, 5}) {
      const EntangledSpeedupReport r = entangled_speedup_check(xi, 1.0, m);
      if (!r.crossing_time) {
        ok = false;
        continue;
      }
      worst_gap = std::max(worst_gap, std::abs(r.relative_gap));
      const double sep = r.separable_crossing ? *r.separable_crossing : kInf;
      worst_margin = std::min(worst_margin, sep / *r.crossing_time - (r.ratio_lower - kRatioSlack));
      ok = ok && std::abs(r.relative_gap) <= kRelativeGapTol && r.separable_slower;
    }
  }
  return {ok && worst_margin >= 0.0,
          fmt("max relative gap %.3g, min (t_sep/t_ent - ratio) %.3g", worst_gap, worst_margin)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"endpoint anchors", endpoint_anchors},
      {"alpha lower/upper compatibility", alpha_compatibility},
      {"tangent slope at q=pi/4", tangent_anchor},
      {"two-level trajectory touches the forbidden region", forbidden_touch},
      {"alpha close to beta squared", alpha_vs_beta_sq},
      {"forbidden region never entered", forbidden_region},
      {"derivative bound and cos^2 floor", derivative_and_floor},
      {"convexity and subadditivity surfaces", convexity_subadditivity},
      {"separable slowdown ratio, M=5", ratio_curve_m5},
      {"mixed-state bound via purification", mixed_state_bound},
      {"entangled speedup", entangled_speedup},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.passed ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
