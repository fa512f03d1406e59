#include "brown/circular_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brown/error.hpp"

namespace brown::circular {

using measures::PositiveLaw;

namespace {

numerics::QuadOptions flow_quad() {
  numerics::QuadOptions o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-13;
  o.max_depth = 18;
  return o;
}

bool is_zero_model(const OperatorModel& a) { return std::holds_alternative<measures::Zero>(a); }

// Offset used to read the determinant on sigma(X0) by continuity.
constexpr double kClosureOffset = 1e-9;

}  // namespace

CircularFlowProblem::CircularFlowProblem(OperatorModel x0, double t) : x0_(std::move(x0)), t_(t) {
  measures::validate(x0_);
  if (!(t_ > 0)) throw DomainError("circular variance t must be positive");
}

double CircularFlowProblem::t_lambda(cplx l) const {
  const double inv = measures::norm_inverse_l2_sq(x0_, l);
  return std::isfinite(inv) ? 1.0 / inv : 0.0;
}

double v_sq_2x2(const TwoByTwo& a, cplx l, double s) {
  const auto q = measures::two_by_two_modulus(a, l);
  // Only the "+" branch of the quadratic is nonnegative. For s < T the
  // rationalised form (T s - 2D) / (sqrt(s^2 + R) + T - s) avoids cancellation.
  const double root = std::sqrt(s * s + q.R);
  const double v2 = s >= q.T ? 0.5 * (s - q.T + root) : (q.T * s - 2 * q.D) / (root + q.T - s);
  return std::max(0.0, v2);
}

double CircularFlowProblem::v_sq(cplx l, double s, VRoute route) const {
  if (!(s > 0)) throw DomainError("v(s) needs s > 0");
  const double tl = t_lambda(l);
  if (s <= tl) return 0.0;
  if (route == VRoute::Auto) {
    if (const auto* m = std::get_if<TwoByTwo>(&x0_)) return v_sq_2x2(*m, l, s);
    if (is_zero_model(x0_)) return std::max(0.0, s - std::norm(l));
    if (const auto* sc = std::get_if<measures::Semicircular>(&x0_)) return elliptic_v_sq(sc->variance, l, s);
  }
  // v^2 = inf{w >= 0 : tau((X + w)^{-1}) <= 1/s}; the resolvent decreases in w
  // and resolvent(w) <= 1/w, so the root lies in (0, s].
  const PositiveLaw x = PositiveLaw::modulus_squared(x0_, l);
  numerics::SolveOptions opt;
  opt.rel_tol = 1e-15;
  const auto r = numerics::solve_monotone_log([&](double w) { return x.resolvent(w); }, 1.0 / s, s * 1e-30, s, opt);
  if (!r) return 0.0;
  return r->x;
}

double v_of_s(const CircularFlowProblem& p, cplx l, double s, VRoute route) { return std::sqrt(p.v_sq(l, s, route)); }

bool spectrum_test_circular(const OperatorModel& x0, double t, cplx l) {
  if (measures::in_spectrum_of(x0, l)) return true;
  return t * measures::norm_inverse_l2_sq(x0, l) >= 1.0;
}

double log_fk_flow(const CircularFlowProblem& p, cplx l, VRoute route) {
  if (measures::in_spectrum_of(p.x0(), l, 0.0))
    throw DomainError("log_fk_flow: base-point determinant undefined by this route");
  const double base = measures::log_det(p.x0(), l);
  const double tl = p.t_lambda(l);
  if (p.t() <= tl) return base;
  const double I = numerics::integrate_adaptive(
      [&](double s) { return p.v_sq(l, s, route) / (s * s); }, tl, p.t(), flow_quad());
  return base + 0.5 * I;
}

double log_fk_flow_2x2_closed(const TwoByTwo& a, double t, cplx l) {
  const auto q = measures::two_by_two_modulus(a, l);
  const double N2 = 0.5 * q.T;
  if (q.D > t * N2) return 0.5 * std::log(std::sqrt(q.D));
  const double Q = std::sqrt(t * t + q.R);
  return 0.25 * std::log(t) + N2 / (2 * t) + 0.25 * std::log(t + Q) - Q / (4 * t) - 0.25 * std::log(2.0) - 0.25;
}

double log_fk_circular(double t, cplx l) {
  const double r2 = std::norm(l);
  if (r2 >= t) return 0.5 * std::log(r2);
  return 0.5 * (std::log(t) + r2 / t - 1.0);
}

double density_2x2_circular(const TwoByTwo& a, double t, cplx l) {
  const auto q = measures::two_by_two_modulus(a, l);
  if (q.D > t * 0.5 * q.T) return 0.0;
  const double Q = std::sqrt(t * t + q.R);
  const double tq = t + Q;
  double p = 1.0 / (M_PI * t) - q.ddR / (4 * M_PI * t * tq);
  if (q.R > 0 || std::norm(q.dR) > 0) p += std::norm(q.dR) / (8 * M_PI * t * Q * tq * tq);
  return numerics::clip_density(p);
}

double density_symmetry_circular(double t, cplx l) {
  const double x = l.real();
  const cplx l2m1 = l * l - 1.0;
  if (std::norm(l2m1) > t * (std::norm(l) + 1.0)) return 0.0;
  const double u = 16 * x * x / (t * t);
  if (u < 1e-8) {
    // t/sqrt(t^2+16x^2) - 1 = -u/2 + 3u^2/8 - ...
    return 1.0 / (M_PI * t) + (-0.5 + 0.375 * u) * 16.0 / (8 * M_PI * t * t);
  }
  return 1.0 / (M_PI * t) + (1.0 / (8 * M_PI * x * x)) * std::expm1(-0.5 * std::log1p(u));
}

double nilpotent_circular_radius(double t) {
  if (!(t > 0)) throw DomainError("t must be positive");
  return std::sqrt(t / 2 + std::sqrt(t * t / 4 + t / 2));
}

double density_nilpotent_circular(double t, cplx l) {
  const double r2 = std::norm(l);
  if (2 * r2 * r2 > t * (1 + 2 * r2)) return 0.0;
  const double R = 1 + 4 * r2;
  const double Q = std::sqrt(t * t + R);
  return (1 - 2 * r2 / (R * Q) + (t - Q) / (R * R)) / (M_PI * t);
}

double density_flow_laplacian(const CircularFlowProblem& p, cplx l, double h) {
  return numerics::laplacian_2d([&](cplx z) { return log_fk_flow(p, z); }, l, h) / (2 * M_PI);
}

Ellipse elliptic_spectrum(double alpha, double beta) {
  if (!(alpha > 0 && beta > 0)) throw DomainError("elliptic law needs alpha, beta > 0");
  const double s = std::sqrt(alpha + beta);
  return Ellipse{2 * alpha / s, 2 * beta / s};
}

double elliptic_density(double alpha, double beta, cplx l) {
  const auto e = elliptic_spectrum(alpha, beta);
  if (!e.contains(l)) return 0.0;
  return (1.0 / alpha + 1.0 / beta) / (4 * M_PI);
}

double elliptic_v_sq(double gamma, cplx l, double s) {
  const double xi = l.real(), eta = l.imag();
  const double v2 = s * s * (1.0 / (s + gamma) - xi * xi / ((s + 2 * gamma) * (s + 2 * gamma))) - eta * eta;
  return std::max(0.0, v2);
}

cplx r_transform_abs_sq_semicircle(double gamma, cplx l, cplx z) {
  const double xi = l.real(), eta = l.imag();
  const cplx d = 1.0 - 2.0 * gamma * z;
  return gamma * z / (1.0 - gamma * z) + xi * xi * z / (d * d) + eta * eta * z;
}

double elliptic_log_det_flow(double alpha, double beta, cplx l) {
  if (!(alpha > 0 && beta > 0)) throw DomainError("elliptic law needs alpha, beta > 0");
  if (alpha < beta) {
    // S_a + i S_b = i (S_b - i S_a) and -S_a ~ S_a.
    return elliptic_log_det_flow(beta, alpha, cplx(0, -1) * l);
  }
  const double gamma = alpha - beta;
  const double t = 2 * beta;
  if (gamma == 0.0) return log_fk_circular(t, l);
  const CircularFlowProblem p(measures::Semicircular{gamma}, t);
  return log_fk_flow(p, l, VRoute::Auto);
}

double elliptic_density_flow_laplacian(double alpha, double beta, cplx l, double h) {
  return numerics::laplacian_2d([&](cplx z) { return elliptic_log_det_flow(alpha, beta, z); }, l, h) / (2 * M_PI);
}

numerics::Cell evaluate_cell(const CircularFlowProblem& p, cplx l) {
  numerics::Cell c;
  const auto& x0 = p.x0();
  const double t = p.t();
  c.in_spectrum = spectrum_test_circular(x0, t, l);
  const bool on_base = measures::in_spectrum_of(x0, l);
  if (c.in_spectrum && on_base) c.flags |= numerics::flags::closure;

  if (const auto* m = std::get_if<TwoByTwo>(&x0)) {
    c.density = c.in_spectrum ? density_2x2_circular(*m, t, l) : 0.0;
    c.log_delta = log_fk_flow_2x2_closed(*m, t, l);
    return c;
  }
  if (is_zero_model(x0)) {
    c.density = c.in_spectrum ? 1.0 / (M_PI * t) : 0.0;
    c.log_delta = log_fk_circular(t, l);
    return c;
  }
  const cplx lq = on_base ? l + cplx(0, kClosureOffset) : l;
  if (const auto* sc = std::get_if<measures::Semicircular>(&x0)) {
    const double alpha = sc->variance + t / 2, beta = t / 2;
    c.density = elliptic_density(alpha, beta, l);
    c.in_spectrum = c.in_spectrum || c.density > 0;
    c.log_delta = log_fk_flow(p, lq);
    if (on_base) c.flags |= numerics::flags::continuity;
    return c;
  }
  c.log_delta = log_fk_flow(p, lq);
  if (c.in_spectrum) {
    c.density = numerics::clip_density(density_flow_laplacian(p, lq), &c.flags);
    if (on_base) c.flags |= numerics::flags::continuity;
  }
  return c;
}

numerics::DensityGridResult density_grid(const CircularFlowProblem& p, const numerics::GridSpec& grid, unsigned threads) {
  return numerics::grid_sweep([&](cplx l) { return evaluate_cell(p, l); }, grid, threads);
}

numerics::DensityGridResult elliptic_grid(double alpha, double beta, const numerics::GridSpec& grid, unsigned threads) {
  const auto e = elliptic_spectrum(alpha, beta);
  return numerics::grid_sweep(
      [&](cplx l) {
        numerics::Cell c;
        c.density = elliptic_density(alpha, beta, l);
        c.in_spectrum = e.contains(l);
        const double g = std::abs(alpha - beta);
        const cplx lr = alpha >= beta ? l : cplx(0, -1) * l;
        const bool on_segment = g > 0 && std::abs(lr.imag()) == 0.0 && std::abs(lr.real()) <= 2 * std::sqrt(g);
        if (on_segment) c.flags |= numerics::flags::closure | numerics::flags::continuity;
        c.log_delta = elliptic_log_det_flow(alpha, beta, on_segment ? l + cplx(kClosureOffset, kClosureOffset) : l);
        return c;
      },
      grid, threads);
}

}  // namespace brown::circular
