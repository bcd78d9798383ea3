#include "cfrac/rescaling.hpp"

#include <cmath>
// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "cfrac/errors.hpp"
#include "cfrac/quadrature.hpp"

namespace cfrac {

namespace {

constexpr int kMaxBracketDoublings = 64;
constexpr std::size_t kInverseTableSteps = 8192;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Piecewise-linear fallback for tables too short for PCHIP.
double lerp_table(const std::vector<double>& x, const std::vector<double>& y, double t) {
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t hi = static_cast<std::size_t>(std::distance(x.begin(), it));
  const std::size_t i = std::clamp<std::size_t>(hi, 1, x.size() - 1);
  const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

// t(tau) for scales without a closed-form inverse, tabulated once by RK4 on
// dt/dtau = phi(t) and interpolated with cubic Hermite using those slopes.
class InverseTable {
 public:
  InverseTable(const TimeScale& scale, FractionalOrder order, double tau_max) {
    // Raises RangeError up front when tau_max is out of reach.
    (void)t_of_tau(scale, tau_max, order);
    const double span = tau_max * 1.01;
    const double h = span / static_cast<double>(kInverseTableSteps);
    std::vector<double> tau(kInverseTableSteps + 1);
    std::vector<double> t(kInverseTableSteps + 1);
    std::vector<double> slope(kInverseTableSteps + 1);
    auto f = [&](double x) { return scale.phi(x, order); };
    t[0] = 0.0;
    slope[0] = f(0.0);
    for (std::size_t k = 0; k < kInverseTableSteps; ++k) {
      tau[k] = static_cast<double>(k) * h;
      const double k1 = slope[k];
      const double k2 = f(t[k] + 0.5 * h * k1);
      const double k3 = f(t[k] + 0.5 * h * k2);
      const double k4 = f(t[k] + h * k3);
      t[k + 1] = t[k] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      slope[k + 1] = f(t[k + 1]);
    }
    tau[kInverseTableSteps] = span;
    hi_ = span;
    spline_ = std::make_shared<const Hermite>(std::move(tau), std::move(t), std::move(slope));
  }

  double operator()(double tau) const {
    if (tau <= 0.0) return 0.0;
    return (*spline_)(std::min(tau, hi_));
  }

 private:
  using Hermite = boost::math::interpolators::cubic_hermite<std::vector<double>>;
  std::shared_ptr<const Hermite> spline_;
  double hi_ = 0.0;
};

}  // namespace

TimeScale::TimeScale(std::string name, Fn phi, ClosedForms closed, std::vector<double> breakpoints)
    : name_(std::move(name)),
      phi_(std::move(phi)),
      closed_(std::move(closed)),
      breakpoints_(std::move(breakpoints)) {
  if (!phi_) throw InputError("time scale needs a phi function");
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

TimeScale TimeScale::constant(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("constant time scale needs sigma > 0, got " + num(sigma));
  }
  return TimeScale(
      "constant", [sigma](double, double) { return sigma; },
      ClosedForms{[sigma](double t, double) { return t / sigma; },
                  [sigma](double tau, double) { return sigma * tau; },
                  [](double, double) { return 0.0; }});
}

TimeScale TimeScale::rc_exponential(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("rc-exponential time scale needs gamma > 0, got " + num(gamma));
  }
  auto phi = [gamma](double t, double alpha) {
    return std::exp(-(1.0 - alpha) * gamma * t) / gamma;
  };
  ClosedForms closed{
      [gamma](double t, double alpha) {
        const double beta = 1.0 - alpha;
        return beta == 0.0 ? gamma * t : std::expm1(beta * gamma * t) / beta;
      },
      [gamma](double tau, double alpha) {
        const double beta = 1.0 - alpha;
        return beta == 0.0 ? tau / gamma : std::log1p(beta * tau) / (beta * gamma);
      },
      [gamma, phi](double t, double alpha) { return -(1.0 - alpha) * gamma * phi(t, alpha); },
  };
  return TimeScale("rc-exponential", phi, std::move(closed));
}

TimeScale TimeScale::tabulated(std::vector<double> t, std::vector<double> phi) {
  if (t.size() != phi.size() || t.size() < 2) {
    throw InputError("tabulated time scale needs at least two (t, phi) rows");
  }
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k]) || !std::isfinite(phi[k])) {
      throw InputError("tabulated time scale has a non-finite entry at row " +
                       std::to_string(k + 1));
    }
    if (!(phi[k] > 0.0)) {
      throw DomainError("tabulated phi must be positive, row " + std::to_string(k + 1));
    }
    if (k > 0 && !(t[k] > t[k - 1])) {
      throw InputError("tabulated time scale needs strictly increasing t, row " +
                       std::to_string(k + 1));
    }
  }
  const double lo = t.front();
  const double hi = t.back();
  std::vector<double> knots = t;
  const double phi_lo = phi.front();
  const double phi_hi = phi.back();

  if (t.size() < 4) {
    auto xs = std::make_shared<const std::vector<double>>(std::move(t));
    auto ys = std::make_shared<const std::vector<double>>(std::move(phi));
    auto value = [xs, ys, lo, hi, phi_lo, phi_hi](double s, double) {
      if (s <= lo) return phi_lo;
      if (s >= hi) return phi_hi;
      return lerp_table(*xs, *ys, s);
    };
    return TimeScale("tabulated", value, {}, std::move(knots));
  }

  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  auto spline = std::make_shared<const Pchip>(std::move(t), std::move(phi));
  auto value = [spline, lo, hi, phi_lo, phi_hi](double s, double) {
    if (s <= lo) return phi_lo;
    if (s >= hi) return phi_hi;
    return (*spline)(s);
  };
  auto slope = [spline, lo, hi](double s, double) {
    if (s <= lo || s >= hi) return 0.0;
    return spline->prime(s);
  };
  return TimeScale("tabulated", value, ClosedForms{{}, {}, slope}, std::move(knots));
}

double TimeScale::phi(double t, FractionalOrder order) const {
  const double v = phi_(t, order.value());
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("time scale '" + name_ + "' has phi = " + num(v) + " <= 0 at t = " +
                      num(t));
  }
  return v;
}

std::optional<double> TimeScale::dphi_dt(double t, FractionalOrder order) const {
  if (!closed_.dphi_dt) return std::nullopt;
  return closed_.dphi_dt(t, order.value());
}

namespace {

// int_a^b ds / phi, one quadrature per smooth piece.
double inverse_phi_integral(const TimeScale& scale, double a, double b, FractionalOrder order) {
  const auto integrand = [&](double s) { return 1.0 / scale.phi(s, order); };
  const auto& knots = scale.breakpoints();
  double sum = 0.0;
  double from = a;
  for (auto it = std::upper_bound(knots.begin(), knots.end(), a); it != knots.end() && *it < b;
       ++it) {
    sum += quad::integrate(integrand, from, *it);
    from = *it;
  }
  return sum + quad::integrate(integrand, from, b);
}

}  // namespace

double tau_of_t_quadrature(const TimeScale& scale, double t, FractionalOrder order) {
  if (t < 0.0) throw DomainError("tau_of_t: t must be nonnegative, got " + num(t));
  return inverse_phi_integral(scale, 0.0, t, order);
}

double tau_of_t(const TimeScale& scale, double t, FractionalOrder order) {
  if (t < 0.0) throw DomainError("tau_of_t: t must be nonnegative, got " + num(t));
  if (scale.has_closed_tau()) return scale.closed_forms().tau_of_t(t, order.value());
  return tau_of_t_quadrature(scale, t, order);
}

double t_of_tau(const TimeScale& scale, double tau, FractionalOrder order) {
  if (tau < 0.0) throw DomainError("t_of_tau: tau must be nonnegative, got " + num(tau));
  if (tau == 0.0) return 0.0;
  if (scale.has_closed_inverse()) return scale.closed_forms().t_of_tau(tau, order.value());

  // Grow [0, hi] geometrically until it brackets tau. tau(t) is strictly
  // increasing, so a stalled increase means a finite supremum.
  double lo = 0.0;
  double hi = 1.0;
  double tau_hi = tau_of_t(scale, hi, order);
  int doublings = 0;
  while (tau_hi < tau) {
    if (doublings++ == kMaxBracketDoublings) {
      throw RangeError("tau = " + num(tau) + " exceeds the reachable range of time scale '" +
                           scale.name() + "' (supremum about " + num(tau_hi) + ")",
                       tau_hi);
    }
    lo = hi;
    hi *= 2.0;
    const double next = tau_of_t(scale, hi, order);
    if (!(next > tau_hi * (1.0 + 1e-14)) && next < tau) {
      throw RangeError("tau = " + num(tau) + " exceeds the supremum " + num(next) +
                           " of time scale '" + scale.name() + "'",
                       next);
    }
    tau_hi = next;
  }

  auto residual = [&](double t) { return tau_of_t(scale, t, order) - tau; };
  boost::math::tools::eps_tolerance<double> tol(48);
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, residual(lo),
                                                        tau_hi - tau, tol, max_iter);
  return 0.5 * (a + b);
}

std::vector<double> t_of_tau_sorted(const TimeScale& scale, std::span<const double> taus,
                                    FractionalOrder order) {
  std::vector<double> out;
  out.reserve(taus.size());
  double t_prev = 0.0;
  double tau_prev = 0.0;
  for (const double tau : taus) {
    if (!(tau >= tau_prev)) {
      throw DomainError("t_of_tau_sorted: tau values must be nonnegative and nondecreasing");
    }
    if (tau == tau_prev || scale.has_closed_inverse()) {
      out.push_back(tau == tau_prev ? t_prev : t_of_tau(scale, tau, order));
      t_prev = out.back();
      tau_prev = tau;
      continue;
    }
    const auto gain = [&](double t) { return inverse_phi_integral(scale, t_prev, t, order); };
    const double need = tau - tau_prev;
    double lo = t_prev;
    double hi = t_prev + need * scale.phi(t_prev, order);
    double reached = gain(hi);
    int doublings = 0;
    while (reached < need) {
      const double width = hi - t_prev;
      lo = hi;
      hi = t_prev + 2.0 * width;
      const double next = gain(hi);
      if (doublings++ == kMaxBracketDoublings || !(next > reached * (1.0 + 1e-14))) {
        throw RangeError("tau = " + num(tau) + " exceeds the reachable range of time scale '" +
                             scale.name() + "' (supremum about " + num(tau_prev + next) + ")",
                         tau_prev + next);
      }
      reached = next;
    }
    auto residual = [&](double t) { return gain(t) - need; };
    boost::math::tools::eps_tolerance<double> tol(48);
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, residual(lo),
                                                          reached - need, tol, max_iter);
    out.push_back(0.5 * (a + b));
    t_prev = out.back();
    tau_prev = tau;
  }
  return out;
}

double classical_solution(const ClassicalLinearODE& ode, double t) {
  if (ode.P == 0.0) return ode.x0 + ode.Q * t;
  const double e = std::expm1(-ode.P * t);
  return ode.x0 * (1.0 + e) - (ode.Q / ode.P) * e;
}

LinearFDEProblem rescale_problem(const ClassicalLinearODE& ode, const TimeScale& scale,
                                 FractionalOrder order, double tau_max) {
  if (!std::isfinite(ode.P) || !std::isfinite(ode.Q) || !std::isfinite(ode.x0)) {
    throw InputError("classical ODE coefficients must be finite");
  }
  auto sc = std::make_shared<const TimeScale>(scale);
  const double p = ode.P;
  const double q = ode.Q;

  std::function<double(double)> t_at;
  if (scale.has_closed_inverse()) {
    t_at = [sc, order](double tau) { return t_of_tau(*sc, tau, order); };
  } else {
    t_at = InverseTable(scale, order, tau_max);
  }

  LinearFDEProblem out;
  out.P = [sc, p, order, t_at](double tau) { return p * sc->phi(t_at(tau), order); };
  out.Q = [sc, q, order, t_at](double tau) { return q * sc->phi(t_at(tau), order); };
  if (scale.closed_forms().dphi_dt) {
    // d/dtau phi(t(tau)) = phi'(t) dt/dtau = phi'(t) phi(t)
    auto dphi_dtau = [sc, order, t_at](double tau) {
      const double t = t_at(tau);
      return *sc->dphi_dt(t, order) * sc->phi(t, order);
    };
    out.dP = [dphi_dtau, p](double tau) { return p * dphi_dtau(tau); };
    out.dQ = [dphi_dtau, q](double tau) { return q * dphi_dtau(tau); };
  }
  out.alpha = order;
  out.x0 = ode.x0;
  out.tau_max = tau_max;
  return out;
}

std::vector<DimExpr> rescaled_equation_term_dims() {
  const DimExpr x = DimExpr::dimensionless();
  const DimExpr p = DimExpr::seconds(-1);
  const DimExpr q = x - DimExpr::seconds(1);
  const DimExpr phi = DimExpr::seconds(1);
  return {dim_of_operator(OperatorKind::caputo_fabrizio) + x, p + phi + x, q + phi};
}

double check_alpha_one_reduction(const ClassicalLinearODE& ode, const TimeScale& scale,
                                 const UniformGrid& t_grid) {
  if (t_grid.t0() < 0.0) throw DomainError("check_alpha_one_reduction: grid starts below 0");
  const FractionalOrder classical{1.0};
  const double tau_max = tau_of_t(scale, t_grid.back(), classical);
  const auto solution = solve_closed_form(rescale_problem(ode, scale, classical, tau_max));
  std::vector<double> taus(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    taus[k] = tau_of_t(scale, t_grid.node(k), classical);
  }
  const auto x = solution.evaluate_sorted(taus);
  double worst = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    worst = std::max(worst, std::abs(x[k] - classical_solution(ode, t_grid.node(k))));
  }
  return worst;
}

}  // namespace cfrac
