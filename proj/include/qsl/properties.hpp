#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/states.hpp"

namespace qsl {

enum class BoundFunction { Alpha, BetaSquared };

const char* to_string(BoundFunction f) noexcept;

/// alpha(eps) or beta(eps)^2.
double bound_value(BoundFunction f, double eps);

struct SurfaceSample {
  double x = 0.0;
  double y = 0.0;
  double lambda = 0.0;
  bool degenerate = false;
};

/// f(e1^2) cos^2(phi) + f(e2^2) sin^2(phi) - f((e1 cos^2 phi + e2 sin^2 phi)^2)
double convexity_lambda(BoundFunction f, double eps1, double eps2, double phi);

/// Equal arguments or a vanishing mixing weight (phi a multiple of pi/2).
bool convexity_degenerate(double eps1, double eps2, double phi);

/// One sample per phi, x = eps1, y = phi.
std::vector<SurfaceSample> convexity_surface(BoundFunction f, double eps1, double eps2,
                                             std::span<const double> phis);
std::vector<SurfaceSample> convexity_surface_alpha(double eps1, double eps2, std::span<const double> phis);
std::vector<SurfaceSample> convexity_surface_beta(double eps1, double eps2, std::span<const double> phis);

/// eps1 on n points of [0, 1], phi on n points of [0, pi], fixed eps2.
std::vector<SurfaceSample> convexity_grid(BoundFunction f, double eps2, std::size_t n);

/// f(e1) + f(e2) - f(e1 e2)
double subadditivity_lambda(BoundFunction f, double eps1, double eps2);

struct EpsPair {
  double eps1;
  double eps2;
};

/// x = eps1, y = eps2; degenerate when either argument is 1.
std::vector<SurfaceSample> subadditivity_surface(std::span<const EpsPair> pairs, BoundFunction f);

/// Both arguments on n points of [0, 1].
std::vector<SurfaceSample> subadditivity_grid(BoundFunction f, std::size_t n);

struct TripleCheck {
  double eps[3];
  double lambda;      // f(e1) + f(e2) + f(e3) - f(e1 e2 e3)
  double link_inner;  // f(e2) + f(e3) - f(e2 e3)
  double link_outer;  // f(e1) + f(e2 e3) - f(e1 e2 e3)
};

/// Three-argument subadditivity on seeded random triples in [0, 1]^3.
std::vector<TripleCheck> subadditivity_triples(BoundFunction f, std::size_t count, std::uint64_t seed);

struct SurfaceSummary {
  std::size_t samples = 0;
  double min_lambda = 0.0;
  std::size_t degenerate = 0;
  double max_abs_degenerate = 0.0;   // largest |lambda| over degenerate samples
  double min_nondegenerate = 0.0;    // smallest lambda over the rest
  std::size_t nondegenerate_zeros = 0;  // non-degenerate samples with lambda <= 1e-12
};

SurfaceSummary summarize(std::span<const SurfaceSample> samples);

/// Smallest convexity and subadditivity lambda over seeded uniform samples.
double random_convexity_min(BoundFunction f, std::size_t count, std::uint64_t seed);
double random_subadditivity_min(BoundFunction f, std::size_t count, std::uint64_t seed);

/// dP/dt = -sum_{n,m} p_n p_m (E_n - E_m) sin((E_n - E_m) t)
double survival_derivative(const PureState& s, double t);

struct DerivativeReport {
  std::size_t points = 0;
  double min_slack = 0.0;      // min of 2 dE sqrt(P(1-P)) - |dP/dt|
  double max_abs_slack = 0.0;
  double max_fd_error = 0.0;   // analytic vs central difference
  double fd_tolerance = 0.0;   // max(1e-6, 1e-4 dE)
  bool bound_holds = false;    // min_slack >= -1e-9
  bool fd_agrees = false;
};

DerivativeReport derivative_bound_check(const PureState& s, std::span<const double> times);

struct CosineFloorReport {
  std::size_t points = 0;
  double horizon = 0.0;  // pi / (2 dE)
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  bool holds = false;  // min_slack >= -1e-9
};

/// P(t) - cos^2(dE t) on `points` equally spaced t in [0, pi / (2 dE)].
/// Throws Degenerate for dE = 0.
CosineFloorReport cosine_floor_check(const PureState& s, std::size_t points = 2001);

struct MixtureSaturationReport {
  double eps = 0.0;
  double energy = 0.0;
  double spread = 0.0;
  double time = 0.0;  // qsl_time(eps, E, dE)
  std::vector<double> component_eps;  // |<phi_n|phi_n(T)>|^2
  double eps_bar = 0.0;                // (sum p_n sqrt(eps_n))^2
  Regime regime = Regime::MargolusLevitin;  // judged at eps_bar
  double alpha_residual = 0.0;     // alpha(eps_bar) - sum p_n alpha(eps_n), >= 0 needed
  double beta_sq_residual = 0.0;   // beta^2(eps_bar) - sum p_n beta^2(eps_n)
  double max_eps_deviation = 0.0;  // max_n |eps_n - eps|
  bool candidate = false;          // every eps_n equals eps within 1e-9
  bool jensen_consistent = false;  // (min sqrt eps_n)^2 <= eps_bar <= max eps_n
};

/// Necessary conditions for a mixture to reach the speed limit.
MixtureSaturationReport mixture_saturation_check(std::span<const double> probs,
                                                 std::span<const PureState> states, double eps);

}  // namespace qsl
