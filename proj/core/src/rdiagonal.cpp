#include "brown/rdiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brown/error.hpp"
#include "brown/numerics.hpp"

namespace brown::rdiag {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::optional<VSolveResult> solve_g(const PositiveLaw& x, double target) {
  if (!(target > 0)) return std::nullopt;
  const double hi_val = x.mean();
  const double inv = x.inverse_mean();
  const double lo_val = std::isfinite(inv) ? 1.0 / inv : 0.0;
  if (!(target < hi_val && target > lo_val)) return std::nullopt;
  if (x.dirac_value()) return std::nullopt;

  // g decreases from tau(X) at v -> 0 to 1/tau(X^{-1}) at v -> inf; bracket in log v.
  auto g = [&](double v) { return x.g(v); };
  double lo = 1.0, hi = 1.0;
  while (g(lo) < target && lo > 1e-300) lo *= 1e-3;
  while (g(hi) > target && hi < 1e300) hi *= 1e3;
  if (!(g(lo) >= target && g(hi) <= target)) return std::nullopt;
  numerics::SolveOptions opt;
  opt.rel_tol = 1e-15;
  auto r = numerics::solve_monotone_log(g, target, lo, hi, opt);
  if (!r) return std::nullopt;
  VSolveResult out;
  out.v = r->x;
  out.f_value = x.f(out.v);
  // (1 + v target) f - 1 = v f (target - g); for target 1 this is (1+v) f - 1.
  out.residual = std::abs(g(out.v) - target) * out.v * out.f_value;
  return out;
}

HStats HStats::of(const PositiveLaw& h2) {
  HStats s;
  s.norm_l2 = std::sqrt(h2.mean());
  const double inv = h2.inverse_mean();
  s.inv_norm_l2 = std::isfinite(inv) ? std::sqrt(inv) : kInf;
  return s;
}

RadialCDF radial_cdf(const PositiveLaw& h2) {
  if (h2.dirac_value()) throw DomainError("degenerate R-diagonal: h is a multiple of the identity");
  RadialCDF out;
  const HStats s = HStats::of(h2);
  out.outer_radius = s.norm_l2;
  out.inner_radius = std::isfinite(s.inv_norm_l2) ? 1.0 / s.inv_norm_l2 : 0.0;
  out.atom_at_zero = h2.atom_at_zero();
  const double inner = out.inner_radius, outer = out.outer_radius, atom = out.atom_at_zero;
  out.F = [h2, inner, outer, atom](double r) {
    if (r < 0) throw DomainError("radius must be nonnegative");
    if (r <= inner) return atom;
    if (r >= outer) return 1.0;
    const auto sol = solve_g(h2, r * r);
    if (!sol) {
      // Only reachable at the ends of the annulus through rounding.
      return (r - inner) < (outer - r) ? atom : 1.0;
    }
    return sol->f_value;
  };
  return out;
}

double radial_cdf(const PositiveLaw& h2, double r) { return radial_cdf(h2).F(r); }

double spectral_radius_product(double a2norm, double b2norm) {
  if (a2norm < 0 || b2norm < 0) throw DomainError("2-norms are nonnegative");
  if (a2norm == 0 || b2norm == 0) return 0.0;
  return a2norm * b2norm;
}

bool rdiag_spectrum_test(const HStats& h, double inv_norm_l2, double norm_l2) {
  // lambda - a - uh = (lambda - a)(1 - (lambda - a)^{-1} uh) is invertible when
  // the R-diagonal factor has spectral radius < 1; likewise for
  // uh (1 - h^{-1} u* (lambda - a)) when h is invertible.
  if (std::isfinite(inv_norm_l2) && spectral_radius_product(h.norm_l2, inv_norm_l2) < 1.0) return false;
  if (std::isfinite(h.inv_norm_l2) && spectral_radius_product(h.inv_norm_l2, norm_l2) < 1.0) return false;
  return true;
}

double fk_determinant_lemma(const PositiveLaw& h2, cplx z) {
  const double z2 = std::norm(z);
  const auto sol = solve_g(h2, z2);
  if (!sol) throw DomainError("fk_determinant_lemma: |z| outside annulus");
  const double v = sol->v;
  return 0.5 * h2.log_shift(v) + 0.5 * std::log(z2 / (1.0 + v * z2));
}

double log_abs_uh_minus_z(const PositiveLaw& h2, cplx z) {
  const double z2 = std::norm(z);
  if (const auto c2 = h2.dirac_value()) {
    // uh = c u with u Haar: log Delta(cu - z) = max(log c, log|z|).
    return 0.5 * std::log(std::max(*c2, z2));
  }
  const double outer2 = h2.mean();
  const double inv = h2.inverse_mean();
  const double inner2 = std::isfinite(inv) ? 1.0 / inv : 0.0;
  if (z2 >= outer2) return 0.5 * std::log(z2);
  if (z2 <= inner2) return 0.5 * h2.log_mean();
  return fk_determinant_lemma(h2, z);
}

double log_abs_uh_minus_one(const RadialCDF& F) {
  const double m = std::max(1.0, F.inner_radius);
  if (F.outer_radius <= m) return F.outer_radius <= 1.0 ? 0.0 : std::log(m);
  numerics::QuadOptions o;
  o.abs_tol = 1e-12;
  o.rel_tol = 1e-13;
  const double I = numerics::integrate_adaptive([&](double rho) { return (1.0 - F.F(rho)) / rho; }, m, F.outer_radius, o);
  return I + std::log(m);
}

TruncatedSeries determining_series_from_s(const TruncatedSeries& s) {
  const int n = s.order() + 2;
  TruncatedSeries zz(n);  // z (1 + z)
  zz[1] = 1.0;
  zz[2] = 1.0;
  TruncatedSeries padded(n);
  for (int k = 0; k <= s.order(); ++k) padded[k] = s[k];
  TruncatedSeries inner = (zz * padded).truncated(s.order() + 1);
  return inner.revert();
}

TruncatedSeries s_from_determining_series(const TruncatedSeries& f) {
  const TruncatedSeries inv = f.revert();  // z (1 + z) S(z)
  TruncatedSeries one_plus_z(inv.order());
  one_plus_z[0] = 1.0;
  one_plus_z[1] = 1.0;
  return (inv.divide_by_z() * one_plus_z.truncated(inv.order() - 1).reciprocal());
}

TruncatedSeries combine_determining_series(const TruncatedSeries& fa, const TruncatedSeries& fb) {
  if (fa.order() != fb.order()) throw DomainError("determining series must share the truncation order");
  return fa + fb;
}

}  // namespace brown::rdiag
