#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qsl {

using RealFunction = std::function<double(double)>;

inline constexpr double kDefaultBisectTol = 1e-12;

/// A sign-change interval [lo, hi] for a scalar function.
struct RootBracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Evaluates f at both ends and returns the bracket. Throws NoBracket if the
/// endpoint values have the same strict sign.
RootBracket make_bracket(const RealFunction& f, double lo, double hi);

/// Bisection down to an interval of width `tol`. Returns the midpoint of the
/// final interval, or an endpoint / midpoint at which f is exactly zero.
double bisect(const RealFunction& f, const RootBracket& bracket, double tol = kDefaultBisectTol);

/// Location and value of a local minimum found by golden-section search.
struct Minimum {
  double x;
  double value;
};

Minimum golden_section_minimize(const RealFunction& f, double lo, double hi, double tol = 1e-13);

/// Sorted i.i.d. uniform draws on the open interval (lo, hi).
///
/// The point count is chosen so that the expected distance between
/// neighbouring points (including the gaps to both ends) equals
/// `target_spacing`.
struct RandomGrid {
  std::vector<double> points;
  double lo = 0.0;
  double hi = 0.0;
  double target_spacing = 0.0;
  std::uint64_t seed = 0;

  /// (max - min) / (n - 1); zero for fewer than two points.
  double mean_gap() const;
};

RandomGrid random_grid(double lo, double hi, double spacing, std::uint64_t seed);

/// Derives an independent 64-bit seed from a base seed and a stream index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

struct ExtrapolationSample {
  double spacing;
  double value;
};

/// Least-squares line through (spacing, value) pairs, read off at spacing 0.
struct ExtrapolationResult {
  double value_at_zero = 0.0;
  double error_bar = 0.0;  // standard error of the intercept, unit weights
  double slope = 0.0;
  double chi_squared = 0.0;
  std::vector<ExtrapolationSample> samples;  // sorted by decreasing spacing
};

ExtrapolationResult extrapolate_linear(std::span<const ExtrapolationSample> samples);

/// Intercept weights w such that value_at_zero = sum_i w_i * value_i for the
/// given spacing design. Lets hot loops reuse one fit design.
std::vector<double> intercept_weights(std::span<const double> spacings);

}  // namespace qsl
