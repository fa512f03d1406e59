#pragma once

#include "brown/measures.hpp"
#include "brown/numerics.hpp"
#include "brown/positive_law.hpp"

namespace brown::circular {

using measures::OperatorModel;
using measures::TwoByTwo;

enum class VRoute {
  Auto,       // closed forms where available (0, 2x2, semicircular), else bisection
  Bisection,  // always solve tau((X + v^2)^{-1}) = 1/s by bisection
};

// X_t = X0 + C_t with C_t circular of variance t, free from X0.
class CircularFlowProblem {
 public:
  CircularFlowProblem(OperatorModel x0, double t);

  const OperatorModel& x0() const { return x0_; }
  double t() const { return t_; }

  // t_lambda = ||(lambda - X0)^{-1}||_2^{-2}; 0 for lambda in sigma(X0).
  double t_lambda(cplx lambda) const;
  // v(s)^2, zero for s <= t_lambda.
  double v_sq(cplx lambda, double s, VRoute route = VRoute::Auto) const;

 private:
  OperatorModel x0_;
  double t_;
};

double v_of_s(const CircularFlowProblem& p, cplx lambda, double s, VRoute route = VRoute::Auto);
double v_sq_2x2(const TwoByTwo& a, cplx lambda, double s);

bool spectrum_test_circular(const OperatorModel& x0, double t, cplx lambda);

// log Delta(lambda - X0) + (1/2) int_{t_lambda}^t v(s)^2 / s^2 ds.
// Throws DomainError for lambda in sigma(X0).
double log_fk_flow(const CircularFlowProblem& p, cplx lambda, VRoute route = VRoute::Auto);
// Closed form of the same quantity for a 2x2 matrix (also valid on sigma(a)).
double log_fk_flow_2x2_closed(const TwoByTwo& a, double t, cplx lambda);
// Circular-law determinant for X0 = 0.
double log_fk_circular(double t, cplx lambda);

double density_2x2_circular(const TwoByTwo& a, double t, cplx lambda);
// a = diag(1, -1): density depends on Re(lambda) only.
double density_symmetry_circular(double t, cplx lambda);
// a = [[0, 1], [0, 0]].
double density_nilpotent_circular(double t, cplx lambda);
// Radius of sigma(a + C_t) for a = [[0, 1], [0, 0]].
double nilpotent_circular_radius(double t);

// Brown density by (1/2pi) times the numerical Laplacian of log_fk_flow.
double density_flow_laplacian(const CircularFlowProblem& p, cplx lambda, double h = 1e-3);

struct Ellipse {
  double semi_re = 0.0;
  double semi_im = 0.0;
  bool contains(cplx z) const {
    const double x = z.real() / semi_re, y = z.imag() / semi_im;
    return x * x + y * y <= 1.0;
  }
};

// Spectrum of S_alpha + i S_beta.
Ellipse elliptic_spectrum(double alpha, double beta);
double elliptic_density(double alpha, double beta, cplx lambda);
// v(s)^2 for X0 = S_gamma from the R-transform of |lambda - S_gamma|^2.
double elliptic_v_sq(double gamma, cplx lambda, double s);
// Determinant of lambda - (S_alpha + i S_beta) by the v-flow; throws for
// lambda on sigma(S_gamma) (after the rotation used when alpha < beta).
double elliptic_log_det_flow(double alpha, double beta, cplx lambda);
double elliptic_density_flow_laplacian(double alpha, double beta, cplx lambda, double h = 1e-3);
cplx r_transform_abs_sq_semicircle(double gamma, cplx lambda, cplx z);
// xi -> 1/xi + gamma xi.
inline cplx zhukowski(double gamma, cplx xi) { return 1.0 / xi + gamma * xi; }

numerics::Cell evaluate_cell(const CircularFlowProblem& p, cplx lambda);
numerics::DensityGridResult density_grid(const CircularFlowProblem& p, const numerics::GridSpec& grid,
                                         unsigned threads = 0);
numerics::DensityGridResult elliptic_grid(double alpha, double beta, const numerics::GridSpec& grid,
                                          unsigned threads = 0);

}  // namespace brown::circular
