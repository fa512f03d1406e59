#include "brown/haar_sum.hpp"

#include <algorithm>
#include <cmath>

#include "brown/error.hpp"

namespace brown::haar {

using measures::FiniteNormal;
using measures::PositiveLaw;

namespace {

constexpr double kContinuityStep = 1e-4;
constexpr double kFdStep = 1e-5;

// Atoms of a when a is a finite normal model.
bool finite_atoms(const OperatorModel& a, std::vector<cplx>& pos, std::vector<double>& w) {
  if (const auto* f = std::get_if<FiniteNormal>(&a)) {
    pos = f->atoms;
    w = f->weights;
    return true;
  }
  if (std::holds_alternative<measures::Zero>(a)) {
    pos = {0.0};
    w = {1.0};
    return true;
  }
  if (std::holds_alternative<TwoByTwo>(a) || std::holds_alternative<measures::Semicircular>(a)) return false;
  const auto law = *measures::spectral_measure(a);
  if (const auto* at = std::get_if<measures::Atomic>(&law)) {
    pos = at->positions;
    w = at->weights;
    return true;
  }
  return false;
}

}  // namespace

HaarSumProblem::HaarSumProblem(OperatorModel a) : a_(std::move(a)) {
  measures::validate(a_);
  scalar_ = measures::scalar_value(a_);
}

PositiveLaw HaarSumProblem::modulus_law(cplx l) const { return PositiveLaw::modulus_squared(a_, l); }

double HaarSumProblem::f(double v, cplx l) const {
  if (const auto* m = std::get_if<TwoByTwo>(&a_)) {
    const auto q = measures::two_by_two_modulus(*m, l);
    return 0.5 * (2.0 + v * q.T) / (1.0 + v * q.T + v * v * q.D);
  }
  return modulus_law(l).f(v);
}

double HaarSumProblem::f2(double v, cplx l) const {
  if (const auto* m = std::get_if<TwoByTwo>(&a_)) {
    const auto q = measures::two_by_two_modulus(*m, l);
    const double P = 1.0 + v * q.T + v * v * q.D;
    return 0.5 * (2.0 + 2.0 * v * q.T + v * v * (q.T * q.T - 2.0 * q.D)) / (P * P);
  }
  return modulus_law(l).f2(v);
}

double HaarSumProblem::df_dv(double v, cplx l) const {
  if (!(v > 0)) throw DomainError("df_dv needs v > 0");
  return -(f(v, l) - f2(v, l)) / v;
}

cplx HaarSumProblem::df_dlambda(double v, cplx l) const {
  if (const auto* m = std::get_if<TwoByTwo>(&a_)) {
    const auto q = measures::two_by_two_modulus(*m, l);
    const double P = 1.0 + v * q.T + v * v * q.D;
    return 0.5 * (v * q.dT * P - (2.0 + v * q.T) * (v * q.dT + v * v * q.dD)) / (P * P);
  }
  std::vector<cplx> pos;
  std::vector<double> w;
  if (finite_atoms(a_, pos, w)) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const double mu = std::norm(l - pos[i]);
      const double d = 1.0 + v * mu;
      s -= w[i] * v * std::conj(l - pos[i]) / (d * d);
    }
    return s;
  }
  return numerics::wirtinger_d([&](cplx z) { return f(v, z); }, l, kFdStep);
}

bool spectrum_test(const OperatorModel& a, cplx l) {
  const double inv = measures::norm_inverse_l2_sq(a, l);
  const double n2 = measures::norm_l2_sq(a, l);
  // The spectrum is closed; the slack keeps boundary points such as the
  // centre of u_n + u (where both norms equal 1) from rounding out.
  constexpr double kSlack = 1e-12;
  return inv >= 1.0 - kSlack && n2 >= 1.0 - kSlack;
}

std::optional<rdiag::VSolveResult> solve_v(const HaarSumProblem& p, cplx l) {
  return rdiag::solve_g(p.modulus_law(l), 1.0);
}

double log_fk_determinant(const HaarSumProblem& p, cplx l) {
  return rdiag::log_abs_uh_minus_z(p.modulus_law(l), 1.0);
}

namespace {

double density_at_regular(const HaarSumProblem& p, cplx l) {
  const auto sol = solve_v(p, l);
  if (!sol) return 0.0;
  const double v = sol->v;
  const double f = p.f(v, l);
  const double f2 = p.f2(v, l);
  const cplx df = p.df_dlambda(v, l);
  // f + (1+v) df/dv = tau((1 - X)/(1 + vX)^2) = ((1+v) f2 - f) / v.
  const double D = ((1.0 + v) * f2 - f) / v;
  if (D == 0.0) throw ValidationError("density_general: singular denominator");
  return ((1.0 + v) * std::norm(df) / (v * D) + v * f2) / M_PI;
}

bool degenerate_at(const HaarSumProblem& p, cplx l) { return p.modulus_law(l).dirac_value().has_value(); }

// On the line mu+ = mu- the closed form is 0/0; average the neighbours.
double non_normal_2x2(const TwoByTwo& m, cplx l, std::uint32_t* cell_flags) {
  try {
    return numerics::clip_density(density_2x2_closed(m, l), cell_flags);
  } catch (const DomainError&) {
    if (cell_flags) *cell_flags |= numerics::flags::degenerate | numerics::flags::continuity;
  }
  double sum = 0.0;
  int n = 0;
  const cplx dirs[4] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};
  for (const cplx d : dirs) {
    const cplx z = l + kContinuityStep * d;
    if (!spectrum_2x2(m, z)) continue;
    try {
      sum += density_2x2_closed(m, z);
      ++n;
    } catch (const DomainError&) {
    }
  }
  return n ? numerics::clip_density(sum / n, cell_flags) : 0.0;
}

}  // namespace

double density_general(const HaarSumProblem& p, cplx l, std::uint32_t* cell_flags) {
  if (p.scalar()) return 0.0;  // singular measure on a circle
  if (!spectrum_test(p.model(), l)) return 0.0;
  // The v-formula differentiates under an integral over the spectral law of
  // a, so it needs a normal. Non-normal 2x2 models use the closed form.
  if (const auto* m = std::get_if<TwoByTwo>(&p.model()); m && !m->normal()) return non_normal_2x2(*m, l, cell_flags);
  if (degenerate_at(p, l)) {
    if (cell_flags) *cell_flags |= numerics::flags::degenerate | numerics::flags::continuity;
    double sum = 0.0;
    int n = 0;
    const cplx dirs[4] = {1.0, -1.0, cplx(0, 1), cplx(0, -1)};
    for (const cplx d : dirs) {
      const cplx z = l + kContinuityStep * d;
      if (!spectrum_test(p.model(), z) || degenerate_at(p, z)) continue;
      sum += density_at_regular(p, z);
      ++n;
    }
    return n ? numerics::clip_density(sum / n, cell_flags) : 0.0;
  }
  return numerics::clip_density(density_at_regular(p, l), cell_flags);
}

bool spectrum_2x2(const TwoByTwo& a, cplx l) {
  const auto q = measures::two_by_two_modulus(a, l);
  // 1/mu+ + 1/mu- = T/D >= 2 and mu+ + mu- = T >= 2.
  return q.T >= 2.0 && (q.D == 0.0 || q.T >= 2.0 * q.D);
}

double density_2x2_closed(const TwoByTwo& a, cplx l) {
  if (!spectrum_2x2(a, l)) return 0.0;
  const auto q = measures::two_by_two_modulus(a, l);
  const double S = std::sqrt(q.R);
  if (S < 1e-12 * std::max(1.0, q.T)) throw DomainError("density_2x2_closed: mu+ = mu- (singular line)");
  const cplx dS = q.dR / (2.0 * S);
  const double ddS = q.ddR / (2.0 * S) - std::norm(q.dR) / (4.0 * S * S * S);
  const double mp = q.mu_plus, mm = q.mu_minus;
  const cplx dmp = 0.5 * (q.dT + dS), dmm = 0.5 * (q.dT - dS);
  const double ddmp = 0.5 * (q.ddT + ddS), ddmm = 0.5 * (q.ddT - ddS);
  const double val = ddS / S - std::norm(dS / S) +
                     0.5 * (ddmp / (1.0 - mp) + ddmm / (1.0 - mm) + std::norm(dmp / (1.0 - mp)) +
                            std::norm(dmm / (1.0 - mm)));
  return val / M_PI;
}

double density_2x2_trace_det(const TwoByTwo& a, cplx l) {
  if (!spectrum_2x2(a, l)) return 0.0;
  const auto q = measures::two_by_two_modulus(a, l);
  const double N = 0.5 * q.T;             // ||l - a||_2^2
  const double D = q.D;                   // det|l - a|^2
  const cplx tau = l - 0.5 * a.trace();   // tau(l - a)
  const cplx pbar = std::conj(q.p);       // det(lbar - a*)
  const cplx taub = std::conj(tau);
  const double E1 = N * N - D;
  const double E2 = 1.0 - 2.0 * N + D;
  const double B = (N - std::norm(tau)) / E1 - 2.0 * std::norm(N * taub - pbar * tau) / (E1 * E1) -
                   (2.0 * std::norm(tau) - 1.0) / E2 + 2.0 * std::norm(taub - tau * pbar) / (E2 * E2);
  return B / M_PI;
}

double density_bernoulli(cplx alpha, cplx beta, cplx l) {
  const double ma = std::norm(l - alpha), mb = std::norm(l - beta);
  const double d = ma - mb;
  return -std::norm(beta - alpha) / (M_PI * d * d) +
         (1.0 / (2.0 * M_PI)) * (1.0 / ((1.0 - ma) * (1.0 - ma)) + 1.0 / ((1.0 - mb) * (1.0 - mb)));
}

double density_nilpotent(double t, cplx l) {
  const double r2 = std::norm(l);
  const auto ann = nilpotent_spectrum(t);
  if (r2 < ann.inner_sq || r2 > ann.outer_sq) return 0.0;
  const double a = 4.0 * r2 + t * t;
  const double b = (1.0 - r2) * (1.0 - r2) - t * t;
  return (2.0 * t * t / (a * a) + ((1.0 - r2) * (1.0 - r2) - (1.0 - 2.0 * r2) * t * t) / (b * b)) / M_PI;
}

Annulus nilpotent_spectrum(double t) {
  if (!(t > 0)) throw DomainError("nilpotent_spectrum: t must be positive");
  Annulus a;
  a.inner_sq = std::max(0.0, 1.0 - t * t / 2.0);
  a.outer_sq = std::sqrt(t * t / 2.0 + 0.25) + 0.5;
  return a;
}

double f_selfadjoint_via_cauchy(const SpectralMeasure& m, double v, cplx l) {
  if (!(v > 0)) throw DomainError("f needs v > 0");
  const double eta = l.imag();
  const double root = std::sqrt(v * v * eta * eta + v);
  const cplx z0(l.real(), root / v);
  return -measures::cauchy_transform(m, z0).imag() / root;
}

double f_unitary_via_cauchy(const SpectralMeasure& m, double v, cplx l) {
  if (!(v > 0)) throw DomainError("f needs v > 0");
  if (l == 0.0) return 1.0 / (1.0 + v);
  const double r = std::abs(l);
  const double disc = std::sqrt((1.0 + v * (r + 1) * (r + 1)) * (1.0 + v * (r - 1) * (r - 1)));
  const double A = 1.0 + v * (r * r + 1.0);
  const cplx zp = (A + disc) / (2.0 * v * std::conj(l));
  const cplx zm = (A - disc) / (2.0 * v * std::conj(l));
  return ((zp * measures::cauchy_transform(m, zp) - zm * measures::cauchy_transform(m, zm)) / disc).real();
}

double f_poisson(double q, double v, cplx l) {
  if (!(v > 0)) throw DomainError("f needs v > 0");
  if (l == 0.0) return 1.0 / (1.0 + v);
  const double r = std::abs(l);
  const double disc = std::sqrt((1.0 + v * (r + 1) * (r + 1)) * (1.0 + v * (r - 1) * (r - 1)));
  if (q == 0.0) return 1.0 / disc;
  const double A = 1.0 + v * (r * r + 1.0);
  const cplx zp = (A + disc) / (2.0 * v * std::conj(l));
  const cplx zm = (A - disc) / (2.0 * v * std::conj(l));
  return ((q * zm - zp / q) / ((zp - q) * (zm - 1.0 / q)) / disc).real();
}

numerics::Cell evaluate_cell(const HaarSumProblem& p, cplx l) {
  numerics::Cell c;
  c.in_spectrum = !p.scalar() && spectrum_test(p.model(), l);
  if (c.in_spectrum && measures::in_spectrum_of(p.model(), l)) c.flags |= numerics::flags::closure;
  c.density = c.in_spectrum ? density_general(p, l, &c.flags) : 0.0;
  c.log_delta = log_fk_determinant(p, l);
  return c;
}

void add_singular_circle(numerics::DensityGridResult& res, cplx centre, double radius) {
  const auto& g = res.grid;
  const std::size_t m = 4000 * std::size_t(std::max(g.re_steps, g.im_steps));
  std::vector<double> mass(res.cells.size(), 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx z = centre + std::polar(radius, 2.0 * M_PI * (double(k) + 0.5) / double(m));
    if (auto cell = g.cell_of(z)) mass[std::size_t(cell->second) * g.re_steps + cell->first] += 1.0 / double(m);
  }
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] == 0.0) continue;
    auto& c = res.cells[i];
    c.density += mass[i] / g.cell_area();
    c.in_spectrum = true;
    c.flags |= numerics::flags::singular;
  }
  res.mark_boundary();
  res.update_mass();
}

numerics::DensityGridResult density_grid(const HaarSumProblem& p, const numerics::GridSpec& grid, unsigned threads) {
  auto res = numerics::grid_sweep([&](cplx l) { return evaluate_cell(p, l); }, grid, threads);
  if (const auto c = p.scalar()) add_singular_circle(res, *c, 1.0);
  return res;
}

}  // namespace brown::haar
