#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qsl/numerics.hpp"

namespace qsl {

/// (2/pi) arccos(sqrt(eps)). Throws OutOfRange outside [0, 1].
double beta(double eps);

/// cos^2(pi x / 2), the inverse of beta on [0, 1].
double beta_inverse(double x);

/// Line 1 - a x tangent to cos x + q sin x at x = y.
struct TangentLine {
  double q;
  double a;
  double y;
};

/// Solves the tangency conditions for a(q) by bisection in y.
/// Throws OutOfRange for q < 0 or non-finite q, NoBracket if the tangency
/// equation has no sign change on the search interval.
TangentLine tangent_line(double q);

/// Spacings and seeds of the random grids used by the min-max estimate.
struct AlphaGridSpec {
  /// Outer (theta) spacings, strictly decreasing.
  std::vector<double> theta_spacings{2.0 * std::numbers::pi / 800.0, 2.0 * std::numbers::pi / 1600.0,
                                     2.0 * std::numbers::pi / 3200.0,
                                     2.0 * std::numbers::pi / 6400.0};
  double q_spacing = 0.01;
  std::size_t q_halvings = 4;
  double q_max = 10.0;
  std::uint64_t seed = 1;
};

struct AlphaLowerResult {
  ExtrapolationResult fit;  // outer min, extrapolated in the theta spacing
  double theta_star = 0.0;  // minimising theta on the finest theta grid
  double q_star = 0.0;      // maximising q at theta_star on the finest q grid
  double q_fit_error = 0.0; // error bar of the inner q extrapolation at theta_star
};

/// Numerical lower bound on alpha:
///   min_theta max_{q >= 0} [1 - sqrt(eps)(cos theta - q sin theta)] * 2 / (pi a(q))
/// evaluated on seeded random grids. The inner max is extrapolated to zero
/// q spacing for every theta, the outer min to zero theta spacing.
///
/// The q grids and a(q) values are built once in the constructor and reused
/// for every eps, so one solver can sweep a whole eps range cheaply.
class AlphaLowerSolver {
 public:
  explicit AlphaLowerSolver(AlphaGridSpec spec = {});

  /// Throws OutOfRange outside [0, 1], GridBoundary when the inner maximiser
  /// sits on the largest q of the grid. eps = 1 returns an exact 0.
  AlphaLowerResult evaluate(double eps) const;

  const AlphaGridSpec& spec() const noexcept { return spec_; }

 private:
  struct QLevel {
    double spacing;
    std::vector<double> q;
    std::vector<double> coef;          // 2 / (pi a(q))
    std::vector<std::size_t> lower;    // hull chains of (coef, q*coef)
    std::vector<std::size_t> upper;
  };
  struct ThetaLevel {
    double spacing;
    std::vector<double> theta;
    std::vector<double> cos_theta;
    std::vector<double> sin_theta;
  };

  static double max_on_chain(const QLevel& ql, double a, double b);

  AlphaGridSpec spec_;
  std::vector<QLevel> q_levels_;
  std::vector<double> q_weights_;
  std::vector<ThetaLevel> theta_levels_;
};

/// Upper bound on alpha from the two-level family: the minimum over z = xi^2
/// of (2/pi) z arccos[(eps - 1 + 2z(1-z)) / (2z(1-z))].
double alpha_upper(double eps);

/// The z = xi^2 at which alpha_upper is attained. 1/2 at eps = 0.
double alpha_upper_minimizer(double eps);

struct AlphaEstimate {
  double epsilon = 0.0;
  AlphaLowerResult lower;
  double upper = 0.0;
  double reconciled = 0.0;
  bool compatible = false;
};

/// Runs both estimates. compatible = |upper - lower| <= max(error bar, 1e-3).
AlphaEstimate alpha(double eps, const AlphaLowerSolver& solver);

/// Throws Incompatible unless est.compatible.
void require_compatible(const AlphaEstimate& est);

/// alpha as used by every downstream consumer (the closed-form branch).
double alpha_reconciled(double eps);

/// Tabulation of alpha on a grid uniform in sqrt(eps), used to bracket
/// inverse queries.
class AlphaTable {
 public:
  explicit AlphaTable(std::size_t points = 2048);

  std::size_t size() const noexcept { return eps_.size(); }
  const std::vector<double>& epsilons() const noexcept { return eps_; }
  const std::vector<double>& values() const noexcept { return alpha_; }

  /// eps with alpha(eps) = x, accurate to ~1e-13 in eps.
  double inverse(double x) const;

 private:
  std::vector<double> eps_;
  std::vector<double> alpha_;
};

/// Process-wide table, built on first use.
const AlphaTable& alpha_table();

/// Inverse of the reconciled alpha. Throws OutOfRange outside [0, 1].
double alpha_inverse(double x);

struct QslQuery {
  double epsilon;
  double mean_energy;
  double spread;
};

/// max(alpha(eps) pi / (2E), beta(eps) pi / (2 dE)), hbar = 1. A branch whose
/// resource is zero contributes +inf. Throws Undefined if E = dE = 0 with
/// eps < 1, OutOfRange on invalid inputs.
double qsl_time(const QslQuery& q);

enum class Regime { MargolusLevitin, Heisenberg };

const char* to_string(Regime r) noexcept;

/// MargolusLevitin when dE / E >= beta(eps) / alpha(eps).
Regime classify_regime(const QslQuery& q);

/// max(pi / (2E), pi / (2 dE)): the eps = 0 bound.
double orthogonality_time(double e, double de);

struct FloorParts {
  double alpha_part;  // alpha^{-1}(2 E t / pi), 0 past its range
  double beta_part;   // beta^{-1}(2 dE t / pi), 0 past its range
  double floor;
};

/// Lower envelope of P(t) for a state with energy e and spread de.
/// Throws OutOfRange if t < 0 or t exceeds orthogonality_time(e, de).
FloorParts forbidden_floor_parts(double t, double e, double de);
double forbidden_floor(double t, double e, double de);

/// eps at which the two-level state with amplitude xi touches the alpha
/// boundary, i.e. alpha_upper_minimizer(eps) = xi^2. 0 for xi^2 >= 1/2.
/// Throws OutOfRange for xi outside (0, 1/sqrt(2)].
double touch_epsilon(double xi);

}  // namespace qsl
