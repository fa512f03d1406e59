#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brown/numerics.hpp"

namespace brown::examples {

// Spectrum of alpha u2 + beta v2 with u2, v2 free symmetries of trace zero:
// the curves s -> +-sqrt(alpha^2 + beta^2 + alpha beta s), s in [-2, 2].
struct CrossSpectrum {
  cplx alpha = 1.0;
  cplx beta = 0.0;

  // Point on the curve with parameter s in [-2, 2] and sign +1 / -1.
  cplx point(double s, int sign) const;
  bool degenerate() const { return alpha == 0.0 || beta == 0.0; }
  // n samples per sign, both signs; two atoms repeated for degenerate input.
  std::vector<cplx> sample(int n) const;
  // Distance from z to the curve, by a dense parameter scan refined locally.
  double distance(cplx z) const;
};

CrossSpectrum symmetry_sum_spectrum(cplx alpha, cplx beta);

// alpha = 1, beta = i: density of the Brown measure along each leg
// t -> (1 +- i) t / sqrt2, |t| < sqrt2.
double symmetry_sum_brown_density(double t);
inline constexpr double kCrossLegEnd = 1.4142135623730951;
// The four legs (1+i)/sqrt2 * [0, sqrt2), (1+i)/sqrt2 * (-sqrt2, 0], and the
// same for (1-i)/sqrt2.
std::array<cplx, 4> cross_leg_directions();
// Integral of fn against the Brown measure restricted to leg k (0..3).
cplx integrate_on_leg(int k, const std::function<cplx(cplx)>& fn);
// Sum over the four legs.
cplx integrate_on_legs(const std::function<cplx(cplx)>& fn);

// Push-forward of the arcsine law under s -> +-sqrt(alpha^2+beta^2+alpha beta s),
// half the mass on each sign. Density per unit s on one branch.
double pushforward_leg_density(double s);

struct LegRow {
  double t = 0.0;
  cplx z;
  double density = 0.0;
};
// Rows for the leg CSV. For alpha = 1, beta = i the parameter is the leg
// coordinate t and the density is the exact leg density ("exact"); otherwise
// the parameter is s and the density is the push-forward ("extrapolated").
struct LegTable {
  std::string label;
  std::vector<LegRow> rows;
};
LegTable cross_leg_table(cplx alpha, cplx beta, int samples_per_branch);
std::string leg_csv(const LegTable& t);

// Convex hull of finitely many points.
class ConvexHull {
 public:
  explicit ConvexHull(std::vector<cplx> points);
  const std::vector<cplx>& vertices() const { return v_; }
  bool contains(cplx z, double tol = 1e-12) const;

 private:
  std::vector<cplx> v_;  // counter-clockwise, no collinear vertices
};

// Eigenvalue candidates rho +- |rho| for U2 + A with A unitary and
// <Ax, x> = rho on an eigenvector x.
std::array<cplx, 2> u2_plus_unitary_enclosure(cplx rho);
// Exact test: lambda = rho +- |rho| for some rho in the hull.
bool in_unitary_enclosure(const ConvexHull& hull, cplx lambda, double tol = 1e-9);
// Dense sweep of rho over the hull (barycentric grid over a fan
// triangulation, deduplicated on a 1e-6 lattice).
std::vector<cplx> unitary_enclosure_region(const ConvexHull& hull, int resolution = 200);

// Skew case B* = -B: Im lambda = <Bx,x>_im, (Re lambda)^2 = 1 - |Bx|^2 + b_mean^2.
std::optional<std::array<cplx, 2>> u2_plus_skew_enclosure(double b_mean, double b_norm_sq);

std::string region_csv(const std::vector<cplx>& pts);

}  // namespace brown::examples
