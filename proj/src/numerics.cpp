#include "qsl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qsl/error.hpp"

namespace qsl {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NoBracket: return "NoBracket";
    case Errc::NonFinite: return "NonFinite";
    case Errc::BadInterval: return "BadInterval";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::InvalidState: return "InvalidState";
    case Errc::BadProbabilities: return "BadProbabilities";
    case Errc::SpectrumMismatch: return "SpectrumMismatch";
    case Errc::Degenerate: return "Degenerate";
    case Errc::Unreachable: return "Unreachable";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Incompatible: return "Incompatible";
    case Errc::Undefined: return "Undefined";
    case Errc::NotSeparable: return "NotSeparable";
    case Errc::GridBoundary: return "GridBoundary";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

bool opposite_or_zero(double a, double b) {
  return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0);
}

}  // namespace

RootBracket make_bracket(const RealFunction& f, double lo, double hi) {
  RootBracket b{lo, hi, f(lo), f(hi)};
  if (!opposite_or_zero(b.f_lo, b.f_hi)) {
    throw Error(Errc::NoBracket, "no sign change on [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
  }
  return b;
}

double bisect(const RealFunction& f, const RootBracket& bracket, double tol) {
  if (!(bracket.lo < bracket.hi)) throw Error(Errc::BadInterval, "bracket requires lo < hi");
  if (!(tol > 0.0)) throw Error(Errc::BadInterval, "tolerance must be positive");
  if (std::isnan(bracket.f_lo) || std::isnan(bracket.f_hi) ||
      !opposite_or_zero(bracket.f_lo, bracket.f_hi)) {
    throw Error(Errc::NoBracket, "endpoint values do not change sign");
  }
  if (bracket.f_lo == 0.0) return bracket.lo;
  if (bracket.f_hi == 0.0) return bracket.hi;

  double lo = bracket.lo;
  double hi = bracket.hi;
  const bool lo_negative = bracket.f_lo < 0.0;
  // 2^-200 of any double interval is far below representable spacing
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (!std::isfinite(fm)) {
      throw Error(Errc::NonFinite, "function not finite at x=" + std::to_string(mid));
    }
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

Minimum golden_section_minimize(const RealFunction& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error(Errc::BadInterval, "golden section requires lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 300 && b - a > tol; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  const double fa = f(a);
  const double fb = f(b);
  if (fa < best.value) best = {a, fa};
  if (fb < best.value) best = {b, fb};
  return best;
}

double RandomGrid::mean_gap() const {
  if (points.size() < 2) return 0.0;
  return (points.back() - points.front()) / static_cast<double>(points.size() - 1);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over a mixed input
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomGrid random_grid(double lo, double hi, double spacing, std::uint64_t seed) {
  if (!(lo < hi)) throw Error(Errc::BadInterval, "random grid requires lo < hi");
  const double width = hi - lo;
  if (!(spacing > 0.0) || !(spacing < width)) {
    throw Error(Errc::BadInterval, "random grid spacing must lie in (0, hi - lo)");
  }
  const auto cells = static_cast<long long>(std::llround(width / spacing));
  const auto count = static_cast<std::size_t>(std::max(1LL, cells - 1));

  RandomGrid grid;
  grid.lo = lo;
  grid.hi = hi;
  grid.target_spacing = spacing;
  grid.seed = seed;
  grid.points.reserve(count);

  // mt19937_64 output is fixed by the standard; the uniform mapping below is
  // done by hand so the stream does not depend on the library vendor.
  std::mt19937_64 engine(seed);
  while (grid.points.size() < count) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    const double x = lo + u * width;
    if (x > lo && x < hi) grid.points.push_back(x);
  }
  std::sort(grid.points.begin(), grid.points.end());
  return grid;
}

std::vector<double> intercept_weights(std::span<const double> spacings) {
  const std::size_t n = spacings.size();
  if (n < 3) throw Error(Errc::DegenerateFit, "linear extrapolation needs at least 3 samples");
  double mean = 0.0;
  for (double s : spacings) mean += s;
  mean /= static_cast<double>(n);
  double sxx = 0.0;
  for (double s : spacings) sxx += (s - mean) * (s - mean);
  // intercept = ybar - slope * xbar, slope = sum (x_i - xbar) y_i / sxx
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 1.0 / static_cast<double>(n) - mean * (spacings[i] - mean) / sxx;
  }
  return w;
}

ExtrapolationResult extrapolate_linear(std::span<const ExtrapolationSample> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw Error(Errc::DegenerateFit, "linear extrapolation needs at least 3 samples");
  for (const auto& s : samples) {
    if (!std::isfinite(s.spacing) || !std::isfinite(s.value)) {
      throw Error(Errc::NonFinite, "non-finite extrapolation sample");
    }
  }

  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return a.spacing < b.spacing;
  });
  if (hi->spacing - lo->spacing <= 1e-12 * std::abs(hi->spacing)) {
    throw Error(Errc::DegenerateFit, "all spacings are equal");
  }

  double xbar = 0.0;
  double ybar = 0.0;
  for (const auto& s : samples) {
    xbar += s.spacing;
    ybar += s.value;
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : samples) {
    sxx += (s.spacing - xbar) * (s.spacing - xbar);
    sxy += (s.spacing - xbar) * (s.value - ybar);
  }

  ExtrapolationResult r;
  r.slope = sxy / sxx;
  r.value_at_zero = ybar - r.slope * xbar;
  for (const auto& s : samples) {
    const double resid = s.value - (r.value_at_zero + r.slope * s.spacing);
    r.chi_squared += resid * resid;
  }
  // Var(intercept) = s^2 (1/n + xbar^2 / sxx) with s^2 = chi^2 / (n - 2)
  const double s2 = r.chi_squared / static_cast<double>(n - 2);
  r.error_bar = std::sqrt(s2 * (1.0 / static_cast<double>(n) + xbar * xbar / sxx));

  r.samples.assign(samples.begin(), samples.end());
  std::sort(r.samples.begin(), r.samples.end(),
            [](const ExtrapolationSample& a, const ExtrapolationSample& b) {
              return a.spacing > b.spacing;
            });
  return r;
}

}  // namespace qsl
