#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "brown/series.hpp"

namespace brown::measures {

enum class Domain { Real, Circle, Plane };

// Finitely many atoms. For Domain::Circle the positions lie on |z| = 1.
struct Atomic {
  std::vector<cplx> positions;
  std::vector<double> weights;
  Domain domain = Domain::Real;
};
// Density sqrt(4 var - x^2) / (2 pi var) on [-2 sqrt(var), 2 sqrt(var)].
struct Semicircle {
  double variance = 1.0;
};
// Density 1 / (pi sqrt(4 - x^2)) on [-2, 2]; the law of u2 + v2.
struct Arcsine {};
// Law of |C_t|: density sqrt(4t - x^2) / (pi t) on [0, 2 sqrt(t)].
struct QuarterCircle {
  double scale = 1.0;
};
// Unit-circle law with density (1 - q^2) / (2 pi |1 - q e^{i theta}|^2) in theta.
// q = 0 is the Haar (uniform) law.
struct PoissonKernel {
  double q = 0.0;
};
// Samples, e.g. Monte-Carlo output. Only moments are defined for it.
struct Empirical {
  std::vector<cplx> samples;
  Domain domain = Domain::Plane;
};

using SpectralMeasure = std::variant<Atomic, Semicircle, Arcsine, QuarterCircle, PoissonKernel, Empirical>;

struct SupportBounds {
  Domain domain = Domain::Real;
  double lo = 0.0;  // real interval for Domain::Real
  double hi = 0.0;
};

Atomic dirac(cplx c, Domain d = Domain::Real);
Atomic atoms_real(std::vector<double> positions, std::vector<double> weights);
Atomic symmetric_bernoulli();       // (delta_{-1} + delta_{1}) / 2
Atomic roots_of_unity(int n);       // uniform on the n-th roots of unity

void validate(const SpectralMeasure& m);
Domain domain_of(const SpectralMeasure& m);
SupportBounds support_bounds(const SpectralMeasure& m);
bool on_support(const SpectralMeasure& m, cplx z, double tol = 1e-14);

// Lebesgue density on the real line (Real domain laws) or in theta for
// PoissonKernel; throws for atomic and empirical laws.
double density(const SpectralMeasure& m, double x);

cplx cauchy_transform(const SpectralMeasure& m, cplx zeta);
cplx cauchy_derivative(const SpectralMeasure& m, cplx zeta);
// Logarithmic potential: integral of log|z - t| dm(t).
double log_potential(const SpectralMeasure& m, cplx z);

cplx moment(const SpectralMeasure& m, int k);
TruncatedSeries moment_series(const SpectralMeasure& m, int order = TruncatedSeries::default_order);
// Moment series psi(z) = sum_{n>=1} m_n z^n from explicit moments m_1..m_N.
TruncatedSeries series_from_moments(const std::vector<cplx>& moments);

// R with K(z) = (1 + R(z)) / z where K inverts G, so R = c1 z + c2 z^2 + ...
// with free cumulants c_n. Computed from moments by series reversion.
TruncatedSeries r_transform(const SpectralMeasure& m, int order = TruncatedSeries::default_order);
TruncatedSeries r_transform_from_moments(const TruncatedSeries& psi);
// S(z) = (1 + z)/z * chi(z) with chi the inverse of psi; needs a nonzero mean.
TruncatedSeries s_transform(const SpectralMeasure& m, int order = TruncatedSeries::default_order);
TruncatedSeries s_transform_from_moments(const TruncatedSeries& psi);

// ---------------------------------------------------------------------------
// Operator models

struct TwoByTwo {
  cplx a11, a12, a21, a22;

  static TwoByTwo diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }
  static TwoByTwo nilpotent(double t) { return {0.0, t, 0.0, 0.0}; }
  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }
  std::array<cplx, 2> eigenvalues() const;
  double frobenius_sq() const { return std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22); }
  // a a* = a* a up to rounding.
  bool normal() const {
    const double tol = 1e-13 * std::max(1.0, frobenius_sq());
    const cplx off = a11 * std::conj(a21) + a12 * std::conj(a22) - std::conj(a11) * a12 - std::conj(a21) * a22;
    return std::abs(std::norm(a12) - std::norm(a21)) <= tol && std::abs(off) <= tol;
  }
};

// Trace/determinant data of |lambda - a|^2 for a 2x2 matrix, with
// Wirtinger derivatives in lambda.
struct TwoByTwoModulus {
  double T = 0;    // Tr|l-a|^2 = mu_+ + mu_-
  double D = 0;    // det|l-a|^2 = mu_+ mu_-
  double R = 0;    // T^2 - 4D = (mu_+ - mu_-)^2
  cplx p = 0;      // det(l - a)
  cplx dp = 0;     // p'(l) = 2l - tr a
  cplx dT = 0;     // d T / d lambda
  cplx dD = 0;     // d D / d lambda
  cplx dR = 0;
  double ddT = 2;  // d dbar T
  double ddD = 0;
  double ddR = 0;
  double mu_plus = 0, mu_minus = 0;
};
TwoByTwoModulus two_by_two_modulus(const TwoByTwo& a, cplx lambda);

struct NormalSelfAdjoint {
  SpectralMeasure law;
};
struct NormalUnitary {
  SpectralMeasure law;
};
struct FiniteNormal {
  std::vector<cplx> atoms;
  std::vector<double> weights;
};
struct Semicircular {
  double variance = 1.0;
};
struct Zero {};

using OperatorModel = std::variant<TwoByTwo, NormalSelfAdjoint, NormalUnitary, FiniteNormal, Semicircular, Zero>;

void validate(const OperatorModel& a);
// lambda in sigma(a).
bool in_spectrum_of(const OperatorModel& a, cplx lambda, double tol = 1e-12);
// a = c 1 for some scalar c.
std::optional<cplx> scalar_value(const OperatorModel& a);
// Spectral measure of a normal model (throws for TwoByTwo non-normal input).
std::optional<SpectralMeasure> spectral_measure(const OperatorModel& a);
bool is_self_adjoint_measure(const OperatorModel& a);

// Cauchy transform of the law of |lambda - a|^2 at zeta.
cplx cauchy_of_abs_squared(const OperatorModel& a, cplx lambda, cplx zeta);
// ||(lambda - a)^{-1}||_2^2; +infinity when lambda - a is not invertible in L2.
double norm_inverse_l2_sq(const OperatorModel& a, cplx lambda);
// ||lambda - a||_2^2.
double norm_l2_sq(const OperatorModel& a, cplx lambda);
// log Delta(lambda - a) = tau(log|lambda - a|); -infinity at atoms.
double log_det(const OperatorModel& a, cplx lambda);

}  // namespace brown::measures
