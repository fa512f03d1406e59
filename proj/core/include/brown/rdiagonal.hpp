#pragma once

#include <functional>
#include <optional>

#include "brown/positive_law.hpp"
#include "brown/series.hpp"

namespace brown::rdiag {

using measures::PositiveLaw;

// Unique v > 0 with g(v) = target, where g(v) = (1 - f(v)) / (v f(v)).
struct VSolveResult {
  double v = 0.0;
  double f_value = 0.0;
  double residual = 0.0;  // |g(v) - target| scaled back to |(1+v) f - 1| when target = 1
};

// Solve g(v) = target. nullopt when target is outside the open range
// (1/tau(X^{-1}), tau(X)) of g.
std::optional<VSolveResult> solve_g(const PositiveLaw& x, double target);

// Radial distribution F(r) = mu_{uh}(B(0, r)) of the Brown measure of uh.
struct RadialCDF {
  double inner_radius = 0.0;  // ||h^{-1}||_2^{-1}, 0 if h is not invertible
  double outer_radius = 0.0;  // ||h||_2
  double atom_at_zero = 0.0;  // mu_h({0})
  std::function<double(double)> F;
  double operator()(double r) const { return F(r); }
};

// Throws DomainError("degenerate R-diagonal") for a Dirac law of h^2.
RadialCDF radial_cdf(const PositiveLaw& h2);
double radial_cdf(const PositiveLaw& h2, double r);

double spectral_radius_product(double a2norm, double b2norm);

struct HStats {
  double norm_l2 = 0.0;      // ||h||_2
  double inv_norm_l2 = 0.0;  // ||h^{-1}||_2, +inf when h is not invertible
  static HStats of(const PositiveLaw& h2);
};

// True iff lambda - a - uh is not invertible, given ||(l-a)^{-1}||_2 and
// ||l - a||_2. Equality cases count as spectrum (closure).
bool rdiag_spectrum_test(const HStats& h, double inv_norm_l2, double norm_l2);

// log Delta(uh - z) for z in the open annulus of the Brown support.
double fk_determinant_lemma(const PositiveLaw& h2, cplx z);
// log Delta(uh - z) for every z: the annulus formula inside, log|z| or
// tau(log h) outside, and max(0, log|z|)-type values for Dirac laws.
double log_abs_uh_minus_z(const PositiveLaw& h2, cplx z);

// tau(log|uh - 1|) from the radial distribution.
double log_abs_uh_minus_one(const RadialCDF& F);

// Determining series: f_x is the compositional inverse of z(1+z) S_{x*x}(z).
TruncatedSeries determining_series_from_s(const TruncatedSeries& s_xx);
TruncatedSeries s_from_determining_series(const TruncatedSeries& f);
TruncatedSeries combine_determining_series(const TruncatedSeries& fa, const TruncatedSeries& fb);

}  // namespace brown::rdiag
