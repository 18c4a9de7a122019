#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qsl/dynamics.hpp"
#include "qsl/properties.hpp"
#include "qsl/random_states.hpp"

using namespace qsl;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("closed-form lambda values for beta squared") {
  // 1/2 - beta(1/4)^2 = 1/2 - 4/9
  CHECK(convexity_lambda(BoundFunction::BetaSquared, 0.0, 1.0, kPi / 4) == doctest::Approx(1.0 / 18).epsilon(1e-12));
  // 2 beta(1/2)^2 - beta(1/4)^2
  CHECK(subadditivity_lambda(BoundFunction::BetaSquared, 0.5, 0.5) == doctest::Approx(1.0 / 18).epsilon(1e-12));
  CHECK(subadditivity_lambda(BoundFunction::Alpha, 1.0, 0.4) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::string(to_string(BoundFunction::Alpha)) == "alpha");
  CHECK(std::string(to_string(BoundFunction::BetaSquared)) == "beta_sq");
}

TEST_CASE("convexity degeneracies") {
  CHECK(convexity_degenerate(0.3, 0.3, 1.0));
  CHECK(convexity_degenerate(0.3, 0.7, 0.0));
  CHECK(convexity_degenerate(0.3, 0.7, kPi / 2));
  CHECK(convexity_degenerate(0.3, 0.7, kPi));
  CHECK_FALSE(convexity_degenerate(0.3, 0.7, 1.0));
  for (BoundFunction f : {BoundFunction::Alpha, BoundFunction::BetaSquared}) {
    CHECK(std::abs(convexity_lambda(f, 0.3, 0.7, 0.0)) < 1e-12);
    CHECK(std::abs(convexity_lambda(f, 0.3, 0.7, kPi / 2)) < 1e-12);
    CHECK(std::abs(convexity_lambda(f, 0.4, 0.4, 0.8)) < 1e-12);
  }
}

TEST_CASE("convexity grid summary") {
  for (BoundFunction f : {BoundFunction::Alpha, BoundFunction::BetaSquared}) {
    const auto g = convexity_grid(f, 0.7, 21);
    CHECK(g.size() == 21 * 21);
    const SurfaceSummary s = summarize(g);
    CHECK(s.samples == g.size());
    CHECK(s.min_lambda >= (f == BoundFunction::Alpha ? -1e-4 : -1e-9));
    CHECK(s.max_abs_degenerate < 1e-9);
    CHECK(s.nondegenerate_zeros == 0);
    CHECK(s.degenerate > 0);
  }
}

TEST_CASE("summarize on hand-built samples") {
  const std::vector<SurfaceSample> s{{0, 0, 0.5, false}, {0, 0, -1e-13, true}, {0, 0, 1e-13, false}, {0, 0, 0.2, false}};
  const SurfaceSummary r = summarize(s);
  CHECK(r.samples == 4);
  CHECK(r.degenerate == 1);
  CHECK(r.min_lambda == -1e-13);
  CHECK(r.max_abs_degenerate == 1e-13);
  CHECK(r.min_nondegenerate == 1e-13);
  CHECK(r.nondegenerate_zeros == 1);
}

TEST_CASE("subadditivity grid and triples") {
  const SurfaceSummary s = summarize(subadditivity_grid(BoundFunction::BetaSquared, 21));
  CHECK(s.min_lambda >= -1e-9);
  CHECK(s.nondegenerate_zeros == 0);
  CHECK(s.degenerate == 2 * 21 - 1);

  const std::vector<EpsPair> pairs{{1.0, 0.3}, {0.3, 0.6}};
  const auto surf = subadditivity_surface(pairs, BoundFunction::Alpha);
  CHECK(surf[0].degenerate);
  CHECK_FALSE(surf[1].degenerate);

  for (const TripleCheck& t : subadditivity_triples(BoundFunction::BetaSquared, 200, 5)) {
    // the three-argument gap telescopes into the two links
    CHECK(std::abs(t.lambda - (t.link_inner + t.link_outer)) < 1e-12);
    CHECK(t.lambda >= -1e-9);
  }
  CHECK(subadditivity_triples(BoundFunction::Alpha, 10, 5)[3].eps[1] ==
        subadditivity_triples(BoundFunction::Alpha, 10, 5)[3].eps[1]);
}

TEST_CASE("random minima are non-negative") {
  CHECK(random_convexity_min(BoundFunction::BetaSquared, 10000, 1) >= -1e-9);
  CHECK(random_subadditivity_min(BoundFunction::BetaSquared, 10000, 1) >= -1e-9);
  CHECK(random_convexity_min(BoundFunction::Alpha, 2000, 1) >= -1e-4);
  CHECK(random_subadditivity_min(BoundFunction::Alpha, 2000, 1) >= -1e-4);
}

TEST_CASE("survival derivative of a two-level state") {
  for (double xi : {0.2, 0.5, 0.9}) {
    const PureState s = TwoLevelState{xi, 1.7}.state();
    const double z = xi * xi;
    for (double t : {0.1, 1.0, 2.5}) {
      // oracle: d/dt [1 - 4z(1-z) sin^2(E0 t / 2)]
      CHECK(survival_derivative(s, t) == doctest::Approx(-2 * z * (1 - z) * 1.7 * std::sin(1.7 * t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("derivative and cosine floor bounds") {
  Rng rng(47);
  for (int i = 0; i < 10; ++i) {
    const PureState s = random_pure_state(rng, random_spectrum(rng, 5, 2.0));
    std::vector<double> times;
    for (int k = 0; k < 50; ++k) times.push_back(rng.uniform(0.0, 10.0));
    const DerivativeReport d = derivative_bound_check(s, times);
    CHECK(d.points == 50);
    CHECK(d.bound_holds);
    CHECK(d.fd_agrees);
    CHECK(cosine_floor_check(s).holds);
  }
  const PureState omega = TwoLevelState{std::numbers::sqrt2 / 2, 1.0}.state();
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.05 * k);
  CHECK(derivative_bound_check(omega, times).max_abs_slack <= 1e-9);
  const CosineFloorReport c = cosine_floor_check(omega);
  CHECK(c.max_abs_slack <= 1e-9);
  CHECK(c.horizon == doctest::Approx(kPi));
  CHECK_ERRC(cosine_floor_check(PureState::eigenstate(EnergySpectrum({0.0, 1.0}), 0)), Errc::Degenerate);
}

TEST_CASE("mixture saturation check") {
  const PureState omega = TwoLevelState{std::numbers::sqrt2 / 2, 1.0}.state();
  const std::vector<double> one{1.0};
  const std::vector<PureState> pure{omega};
  const MixtureSaturationReport r = mixture_saturation_check(one, pure, 0.0);
  CHECK(r.time == doctest::Approx(kPi));
  CHECK(r.component_eps[0] < 1e-12);
  CHECK(r.candidate);
  CHECK(r.jensen_consistent);
  CHECK(std::abs(r.alpha_residual) < 1e-9);

  const std::vector<double> probs{0.5, 0.5};
  const EnergySpectrum sp({0.0, 1.0});
  const std::vector<PureState> mixed{PureState::normalized(sp, {1.0, 1.0}), PureState::normalized(sp, {2.0, 1.0})};
  const MixtureSaturationReport m = mixture_saturation_check(probs, mixed, 0.2);
  CHECK(m.jensen_consistent);
  CHECK_FALSE(m.candidate);
  // convexity in sqrt(eps) pushes both residuals below zero
  CHECK(m.alpha_residual <= 1e-4);
  CHECK(m.beta_sq_residual < 0.0);
  // oracle: (sum p sqrt(eps_n))^2
  const double root = 0.5 * std::sqrt(m.component_eps[0]) + 0.5 * std::sqrt(m.component_eps[1]);
  CHECK(m.eps_bar == doctest::Approx(root * root).epsilon(1e-12));
  CHECK_ERRC(mixture_saturation_check(probs, mixed, 1.0), Errc::OutOfRange);
}
