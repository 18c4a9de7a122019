#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qsl/error.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(Errc::OutOfRange, std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

// Regula falsi with the Illinois modification. The bracket must hold a sign
// change; stops once the bracket is narrower than tol.
double illinois(const RealFunction& f, double a, double b, double fa, double fb, double tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
    const double c = (a * fb - b * fa) / (fb - fa);
    const double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc < 0.0) == (fb < 0.0)) {
      fa *= 0.5;
    } else {
      a = b;
      fa = fb;
    }
    b = c;
    fb = fc;
  }
  return 0.5 * (a + b);
}

// Derivative of z * arccos(g(z)), up to a positive factor; negative near
// z_min, positive at z = 1/2.
double stationarity(double z, double eps) {
  const double u = z * (1.0 - z);
  const double g = std::clamp(1.0 - (1.0 - eps) / (2.0 * u), -1.0, 1.0);
  const double den = eps - 1.0 + 4.0 * u;
  if (!(den > 0.0)) return -1e300;
  return std::acos(g) - (1.0 - 2.0 * z) / (1.0 - z) * std::sqrt((1.0 - eps) / den);
}

double two_level_alpha(double z, double eps) {
  const double u = z * (1.0 - z);
  const double g = std::clamp(1.0 - (1.0 - eps) / (2.0 * u), -1.0, 1.0);
  return 2.0 / kPi * z * std::acos(g);
}

// Lower and upper convex hull chains of (x[i], y[i]), both ordered by
// increasing x (Andrew's monotone chain).
struct HullChains {
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
};

HullChains convex_hull(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return x[i] < x[j] || (x[i] == x[j] && y[i] < y[j]);
  });
  const auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (x[a] - x[o]) * (y[b] - y[o]) - (y[a] - y[o]) * (x[b] - x[o]);
  };
  HullChains h;
  for (std::size_t i : idx) {
    while (h.lower.size() >= 2 && cross(h.lower[h.lower.size() - 2], h.lower.back(), i) <= 0.0) h.lower.pop_back();
    h.lower.push_back(i);
  }
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    while (h.upper.size() >= 2 && cross(h.upper[h.upper.size() - 2], h.upper.back(), *it) <= 0.0) h.upper.pop_back();
    h.upper.push_back(*it);
  }
  std::reverse(h.upper.begin(), h.upper.end());
  return h;
}

}  // namespace

double beta(double eps) {
  require_unit_interval(eps, "eps");
  return 2.0 / kPi * std::acos(std::sqrt(eps));
}

double beta_inverse(double x) {
  require_unit_interval(x, "x");
  const double c = std::cos(kPi * x / 2.0);
  return x == 1.0 ? 0.0 : c * c;
}

TangentLine tangent_line(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw Error(Errc::OutOfRange, "q must be finite and >= 0");
  const double q2 = q * q;
  const auto a_of = [q, q2](double y) {
    return (y + std::sqrt(y * y * (1.0 + q2) + q2)) / (1.0 + y * y);
  };
  const RealFunction f = [&](double y) {
    return std::sin(y) - (a_of(y) * (1.0 - q * y) + q) / (1.0 + q2);
  };
  const double lo = q == 0.0 ? kPi / 2.0 : kPi - std::atan(1.0 / q);
  const double hi = q == 0.0 ? kPi : kPi + std::atan(q);

  // the root is expected to be unique; refuse to pick one if it is not
  constexpr int kScan = 32;
  int changes = 0;
  double prev = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double cur = f(lo + (hi - lo) * i / kScan);
    if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) ++changes;
    prev = cur;
  }
  if (changes > 1) {
    throw Error(Errc::NoBracket, "tangency equation has " + std::to_string(changes) +
                                     " sign changes for q=" + std::to_string(q));
  }
  const double y = bisect(f, make_bracket(f, lo, hi));
  return TangentLine{q, a_of(y), y};
}

AlphaLowerSolver::AlphaLowerSolver(AlphaGridSpec spec) : spec_(std::move(spec)) {
  const auto& th = spec_.theta_spacings;
  if (th.size() < 3) throw Error(Errc::DegenerateFit, "need at least three theta spacings");
  for (std::size_t k = 0; k < th.size(); ++k) {
    if (!(th[k] > 0.0 && th[k] < 2.0 * kPi) || (k > 0 && !(th[k] < th[k - 1]))) {
      throw Error(Errc::BadInterval, "theta spacings must be positive and strictly decreasing");
    }
  }
  if (spec_.q_halvings < 2) throw Error(Errc::DegenerateFit, "need at least two q halvings");
  if (!(spec_.q_spacing > 0.0 && spec_.q_spacing < spec_.q_max)) {
    throw Error(Errc::BadInterval, "q spacing must lie in (0, q_max)");
  }

  std::vector<double> q_spacings;
  for (std::size_t j = 0; j <= spec_.q_halvings; ++j) {
    QLevel lvl;
    lvl.spacing = spec_.q_spacing / std::ldexp(1.0, static_cast<int>(j));
    lvl.q = random_grid(0.0, spec_.q_max, lvl.spacing, derive_seed(spec_.seed, j)).points;
    lvl.coef.resize(lvl.q.size());
    std::vector<double> slope(lvl.q.size());
    for (std::size_t i = 0; i < lvl.q.size(); ++i) {
      lvl.coef[i] = 2.0 / (kPi * tangent_line(lvl.q[i]).a);
      slope[i] = lvl.q[i] * lvl.coef[i];
    }
    // max over q of A*coef + B*q*coef is attained on the hull of
    // (coef, q*coef); see max_on_chain
    HullChains h = convex_hull(lvl.coef, slope);
    lvl.lower = std::move(h.lower);
    lvl.upper = std::move(h.upper);
    q_spacings.push_back(lvl.spacing);
    q_levels_.push_back(std::move(lvl));
  }
  q_weights_ = intercept_weights(q_spacings);

  for (std::size_t k = 0; k < th.size(); ++k) {
    ThetaLevel lvl;
    lvl.spacing = th[k];
    lvl.theta = random_grid(0.0, 2.0 * kPi, th[k], derive_seed(spec_.seed, 100 + k)).points;
    for (double t : lvl.theta) {
      lvl.cos_theta.push_back(std::cos(t));
      lvl.sin_theta.push_back(std::sin(t));
    }
    theta_levels_.push_back(std::move(lvl));
  }
}

// With a >= 0 the objective a*x + b*y is unimodal along the upper chain for
// b >= 0 and along the lower chain for b < 0: the edge increments
// a*dx + b*dy change sign at most once, from positive to non-positive.
double AlphaLowerSolver::max_on_chain(const QLevel& ql, double a, double b) {
  const std::vector<std::size_t>& chain = b >= 0.0 ? ql.upper : ql.lower;
  const auto value = [&](std::size_t k) { return (a + b * ql.q[chain[k]]) * ql.coef[chain[k]]; };
  std::size_t lo = 0;
  std::size_t hi = chain.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (value(mid + 1) > value(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  double m = value(lo);
  if (lo > 0) m = std::max(m, value(lo - 1));
  if (lo + 1 < chain.size()) m = std::max(m, value(lo + 1));
  return m;
}

AlphaLowerResult AlphaLowerSolver::evaluate(double eps) const {
  require_unit_interval(eps, "eps");
  AlphaLowerResult out;
  if (eps == 1.0) return out;

  const double se = std::sqrt(eps);
  std::vector<ExtrapolationSample> samples;
  std::size_t finest_arg = 0;
  for (const ThetaLevel& lvl : theta_levels_) {
    double best = kInf;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < lvl.theta.size(); ++i) {
      const double a = 1.0 - se * lvl.cos_theta[i];
      const double b = se * lvl.sin_theta[i];
      double v = 0.0;
      for (std::size_t j = 0; j < q_levels_.size(); ++j) {
        const QLevel& ql = q_levels_[j];
        v += q_weights_[j] * max_on_chain(ql, a, b);
      }
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    samples.push_back({lvl.spacing, best});
    finest_arg = arg;
  }
  out.fit = extrapolate_linear(samples);

  const ThetaLevel& fine = theta_levels_.back();
  out.theta_star = fine.theta[finest_arg];
  const double a = 1.0 - se * fine.cos_theta[finest_arg];
  const double b = se * fine.sin_theta[finest_arg];
  std::vector<ExtrapolationSample> inner;
  for (const QLevel& ql : q_levels_) {
    std::size_t best = 0;
    double m = -kInf;
    for (std::size_t i = 0; i < ql.q.size(); ++i) {
      const double v = (a + b * ql.q[i]) * ql.coef[i];
      if (v > m) {
        m = v;
        best = i;
      }
    }
    if (best + 1 == ql.q.size()) {
      throw Error(Errc::GridBoundary, "inner maximum at the q cutoff " + std::to_string(spec_.q_max) +
                                          " for eps=" + std::to_string(eps));
    }
    inner.push_back({ql.spacing, m});
    out.q_star = ql.q[best];
  }
  out.q_fit_error = extrapolate_linear(inner).error_bar;
  return out;
}

double alpha_upper_minimizer(double eps) {
  require_unit_interval(eps, "eps");
  if (eps == 0.0) return 0.5;
  if (eps == 1.0) return 0.0;
  const double z_min = 0.5 * (1.0 - std::sqrt(eps));
  const RealFunction h = [eps](double z) { return stationarity(z, eps); };
  const double f_hi = h(0.5);
  if (!(f_hi > 0.0)) return 0.5;
  return bisect(h, RootBracket{z_min, 0.5, -1.0, f_hi}, 1e-15);
}

double alpha_upper(double eps) {
  require_unit_interval(eps, "eps");
  if (eps == 0.0) return 1.0;
  if (eps == 1.0) return 0.0;
  return two_level_alpha(alpha_upper_minimizer(eps), eps);
}

AlphaEstimate alpha(double eps, const AlphaLowerSolver& solver) {
  AlphaEstimate est;
  est.epsilon = eps;
  est.lower = solver.evaluate(eps);
  est.upper = alpha_upper(eps);
  est.reconciled = est.upper;
  est.compatible = std::abs(est.upper - est.lower.fit.value_at_zero) <=
                   std::max(est.lower.fit.error_bar, 1e-3);
  return est;
}

void require_compatible(const AlphaEstimate& est) {
  if (!est.compatible) {
    throw Error(Errc::Incompatible,
                "alpha estimates disagree at eps=" + std::to_string(est.epsilon) + ": lower " +
                    std::to_string(est.lower.fit.value_at_zero) + " +- " +
                    std::to_string(est.lower.fit.error_bar) + ", upper " + std::to_string(est.upper));
  }
}

double alpha_reconciled(double eps) { return alpha_upper(eps); }

AlphaTable::AlphaTable(std::size_t points) {
  if (points < 2) throw Error(Errc::OutOfRange, "alpha table needs at least two points");
  eps_.resize(points);
  alpha_.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(points - 1);
    eps_[i] = i + 1 == points ? 1.0 : s * s;
    alpha_[i] = alpha_upper(eps_[i]);
    if (i > 0 && !(alpha_[i] < alpha_[i - 1])) {
      throw Error(Errc::Undefined, "alpha table is not strictly decreasing at eps=" +
                                       std::to_string(eps_[i]));
    }
  }
}

double AlphaTable::inverse(double x) const {
  require_unit_interval(x, "x");
  if (x == 1.0) return 0.0;
  if (x == 0.0) return 1.0;
  // first entry below x; alpha_[0] = 1 > x and alpha_.back() = 0 < x
  const auto it = std::partition_point(alpha_.begin(), alpha_.end(), [x](double v) { return v >= x; });
  const std::size_t k = static_cast<std::size_t>(it - alpha_.begin());
  if (alpha_[k - 1] == x) return eps_[k - 1];
  const RealFunction f = [x](double e) { return alpha_upper(e) - x; };
  return illinois(f, eps_[k - 1], eps_[k], alpha_[k - 1] - x, alpha_[k] - x, 1e-15);
}

const AlphaTable& alpha_table() {
  static const AlphaTable table(2048);
  return table;
}

double alpha_inverse(double x) { return alpha_table().inverse(x); }

namespace {

void check_query(const QslQuery& q) {
  require_unit_interval(q.epsilon, "eps");
  if (!(q.mean_energy >= 0.0) || !std::isfinite(q.mean_energy) || !(q.spread >= 0.0) ||
      !std::isfinite(q.spread)) {
    throw Error(Errc::OutOfRange, "energy and spread must be finite and non-negative");
  }
}

}  // namespace

double qsl_time(const QslQuery& q) {
  check_query(q);
  if (q.epsilon == 1.0) return 0.0;
  if (q.mean_energy == 0.0 && q.spread == 0.0) {
    throw Error(Errc::Undefined, "speed limit undefined for E = dE = 0");
  }
  const double ml = q.mean_energy > 0.0 ? alpha_reconciled(q.epsilon) * kPi / (2.0 * q.mean_energy) : kInf;
  const double mt = q.spread > 0.0 ? beta(q.epsilon) * kPi / (2.0 * q.spread) : kInf;
  return std::max(ml, mt);
}

const char* to_string(Regime r) noexcept {
  return r == Regime::MargolusLevitin ? "ML" : "Heisenberg";
}

Regime classify_regime(const QslQuery& q) {
  check_query(q);
  if (q.mean_energy == 0.0 && q.spread == 0.0) {
    throw Error(Errc::Undefined, "regime undefined for E = dE = 0");
  }
  // dE / E >= beta / alpha, cross-multiplied so that E = 0 or alpha = 0 is safe
  return alpha_reconciled(q.epsilon) * q.spread >= beta(q.epsilon) * q.mean_energy
             ? Regime::MargolusLevitin
             : Regime::Heisenberg;
}

double orthogonality_time(double e, double de) {
  if (!(e >= 0.0) || !(de >= 0.0)) throw Error(Errc::OutOfRange, "energy and spread must be >= 0");
  const double ml = e > 0.0 ? kPi / (2.0 * e) : kInf;
  const double mt = de > 0.0 ? kPi / (2.0 * de) : kInf;
  return std::max(ml, mt);
}

FloorParts forbidden_floor_parts(double t, double e, double de) {
  const double t0 = orthogonality_time(e, de);
  if (!(t >= 0.0) || t > t0 * (1.0 + 1e-12)) {
    throw Error(Errc::OutOfRange, "t=" + std::to_string(t) + " outside [0, " + std::to_string(t0) + "]");
  }
  const double xa = 2.0 * e * t / kPi;
  const double xb = 2.0 * de * t / kPi;
  FloorParts p{};
  p.alpha_part = xa >= 1.0 ? 0.0 : alpha_inverse(xa);
  p.beta_part = xb >= 1.0 ? 0.0 : beta_inverse(xb);
  p.floor = std::max(p.alpha_part, p.beta_part);
  return p;
}

double forbidden_floor(double t, double e, double de) { return forbidden_floor_parts(t, e, de).floor; }

double touch_epsilon(double xi) {
  if (!(xi > 0.0) || xi > std::numbers::sqrt2 / 2.0 + 1e-12) {
    throw Error(Errc::OutOfRange, "xi must lie in (0, 1/sqrt(2)]");
  }
  const double z = xi * xi;
  if (z >= 0.5) return 0.0;
  const RealFunction f = [z](double e) { return alpha_upper_minimizer(e) - z; };
  return bisect(f, make_bracket(f, 0.0, 1.0 - 1e-12), 1e-14);
}

}  // namespace qsl
