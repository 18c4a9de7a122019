#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "qsl/numerics.hpp"

using namespace qsl;

TEST_CASE("bisect finds simple roots") {
  const RealFunction lin = [](double x) { return x - 0.5; };
  CHECK(bisect(lin, make_bracket(lin, 0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));

  const RealFunction c = [](double x) { return std::cos(x); };
  CHECK(std::abs(bisect(c, make_bracket(c, 1.0, 2.0)) - std::numbers::pi / 2) < 1e-12);
}

TEST_CASE("bisect on the q = 0 tangency equation matches a dense scan") {
  const RealFunction f = [](double y) { return std::sin(y) - 2 * y / (1 + y * y); };
  const double lo = std::numbers::pi / 2 + 0.1;
  const double hi = std::numbers::pi;
  const double root = bisect(f, make_bracket(f, lo, hi));

  // oracle: first sign change on a 1e6-point grid
  const int n = 1000000;
  double scan = NAN;
  double prev = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double cur = f(x);
    if ((prev > 0) != (cur > 0)) {
      scan = x;
      break;
    }
    prev = cur;
  }
  CHECK(std::abs(root - scan) < (hi - lo) / n);
  CHECK(root == doctest::Approx(2.331).epsilon(1e-3));
  CHECK(2 * root / (1 + root * root) == doctest::Approx(0.7246).epsilon(1e-4));
}

TEST_CASE("bisect errors and determinism") {
  const RealFunction sq = [](double x) { return x * x + 1.0; };
  CHECK_ERRC(make_bracket(sq, -1.0, 1.0), Errc::NoBracket);
  CHECK_ERRC(bisect(sq, RootBracket{-1.0, 1.0, 2.0, 2.0}), Errc::NoBracket);

  const RealFunction pole = [](double x) { return x == 0.0 ? NAN : 1.0 / x; };
  CHECK_ERRC(bisect(pole, RootBracket{-1.0, 1.0, -1.0, 1.0}), Errc::NonFinite);

  const RealFunction f = [](double x) { return std::exp(x) - 3.0; };
  const RootBracket b = make_bracket(f, 0.0, 2.0);
  CHECK(bisect(f, b) == bisect(f, b));
}

TEST_CASE("golden section locates a parabola minimum") {
  const Minimum m = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(m.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("random_grid is reproducible and contained") {
  const RandomGrid g = random_grid(0.0, 1.0, 0.1, 7);
  CHECK(g.points.size() >= 7);
  CHECK(g.points.size() <= 13);
  CHECK(g.points == random_grid(0.0, 1.0, 0.1, 7).points);
  CHECK(g.points != random_grid(0.0, 1.0, 0.1, 8).points);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    CHECK(g.points[i] > 0.0);
    CHECK(g.points[i] < 1.0);
    if (i > 0) CHECK(g.points[i] >= g.points[i - 1]);
  }

  const RandomGrid h = random_grid(0.0, 1.0, 0.5, 3);
  CHECK(h.points.size() >= 1);
  for (double x : h.points) CHECK((x > 0.0 && x < 1.0));

  CHECK_ERRC(random_grid(1.0, 1.0, 0.1, 1), Errc::BadInterval);
  CHECK_ERRC(random_grid(2.0, 1.0, 0.1, 1), Errc::BadInterval);
}

TEST_CASE("random_grid mean gap tracks the target spacing") {
  const RandomGrid g = random_grid(0.0, 2 * std::numbers::pi, 0.01, 1);
  CHECK(g.points.size() == doctest::Approx(628).epsilon(0.01));
  // oracle: average of consecutive differences, computed here
  double sum = 0.0;
  for (std::size_t i = 1; i < g.points.size(); ++i) sum += g.points[i] - g.points[i - 1];
  const double gap = sum / static_cast<double>(g.points.size() - 1);
  CHECK(gap >= 0.008);
  CHECK(gap <= 0.012);
  CHECK(g.mean_gap() == doctest::Approx(gap).epsilon(1e-12));
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("extrapolate_linear on exact and constant data") {
  const std::vector<ExtrapolationSample> line{{0.1, 0.8}, {0.05, 0.9}, {0.025, 0.95}};
  const ExtrapolationResult r = extrapolate_linear(line);
  CHECK(r.value_at_zero == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(r.error_bar < 1e-12);
  CHECK(r.chi_squared < 1e-24);

  const std::vector<ExtrapolationSample> flat{{0.3, 0.7}, {0.2, 0.7}, {0.1, 0.7}};
  const ExtrapolationResult c = extrapolate_linear(flat);
  CHECK(c.value_at_zero == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(std::abs(c.slope) < 1e-12);
}

TEST_CASE("extrapolate_linear matches the 2x2 normal equations") {
  const std::vector<ExtrapolationSample> s{{0.1, 0.95}, {0.05, 0.97}, {0.025, 0.99}};
  // oracle: solve [n sx; sx sxx] [b; m] = [sy; sxy] by Cramer's rule
  double n = 3, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (const auto& p : s) {
    sx += p.spacing;
    sxx += p.spacing * p.spacing;
    sy += p.value;
    sxy += p.spacing * p.value;
  }
  const double det = n * sxx - sx * sx;
  const double b = (sy * sxx - sx * sxy) / det;
  const double m = (n * sxy - sx * sy) / det;
  double chi2 = 0;
  for (const auto& p : s) chi2 += std::pow(p.value - b - m * p.spacing, 2);
  const double se = std::sqrt(chi2 / (n - 2) * sxx / det);

  const ExtrapolationResult r = extrapolate_linear(s);
  CHECK(r.value_at_zero == doctest::Approx(b).epsilon(1e-12));
  CHECK(r.slope == doctest::Approx(m).epsilon(1e-12));
  CHECK(r.chi_squared == doctest::Approx(chi2).epsilon(1e-9));
  CHECK(r.error_bar == doctest::Approx(se).epsilon(1e-9));
  CHECK(r.samples.front().spacing > r.samples.back().spacing);
}

TEST_CASE("extrapolate_linear rejects degenerate designs") {
  const std::vector<ExtrapolationSample> same{{0.1, 1.0}, {0.1, 2.0}, {0.1, 3.0}};
  CHECK_ERRC(extrapolate_linear(same), Errc::DegenerateFit);
  const std::vector<ExtrapolationSample> two{{0.1, 1.0}, {0.05, 2.0}};
  CHECK_ERRC(extrapolate_linear(two), Errc::DegenerateFit);
}

TEST_CASE("intercept weights reproduce the fitted intercept") {
  const std::vector<double> h{0.08, 0.04, 0.02, 0.01};
  const std::vector<double> v{0.51, 0.49, 0.502, 0.5003};
  const auto w = intercept_weights(h);
  double dot = 0.0;
  std::vector<ExtrapolationSample> s;
  for (std::size_t i = 0; i < h.size(); ++i) {
    dot += w[i] * v[i];
    s.push_back({h[i], v[i]});
  }
  CHECK(dot == doctest::Approx(extrapolate_linear(s).value_at_zero).epsilon(1e-12));
}

TEST_CASE("property: exact lines are recovered to 1e-12") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double b = u(rng);
    const double m = u(rng);
    std::vector<ExtrapolationSample> s;
    for (double h = 0.2; h > 0.01; h /= 2) s.push_back({h, b + m * h});
    CHECK(std::abs(extrapolate_linear(s).value_at_zero - b) < 1e-12);
  }
}
