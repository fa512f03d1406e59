#pragma once

#include <optional>

#include "brown/measures.hpp"
#include "brown/numerics.hpp"
#include "brown/positive_law.hpp"
#include "brown/rdiagonal.hpp"

namespace brown::haar {

using measures::OperatorModel;
using measures::SpectralMeasure;
using measures::TwoByTwo;

// a + u with u Haar unitary free from a. Holds f(v, l) = tau((1 + v|a - l|^2)^{-1})
// and its derivatives: closed forms for finite and 2x2 models, central
// differences (step 1e-5) for models with a continuous law.
class HaarSumProblem {
 public:
  explicit HaarSumProblem(OperatorModel a);

  const OperatorModel& model() const { return a_; }
  measures::PositiveLaw modulus_law(cplx lambda) const;

  double f(double v, cplx lambda) const;
  double df_dv(double v, cplx lambda) const;
  cplx df_dlambda(double v, cplx lambda) const;
  // tau((1 + v|a - l|^2)^{-2}) = f + v df/dv.
  double f2(double v, cplx lambda) const;

  // a = c 1: the Brown measure of a + u is uniform on |l - c| = 1.
  std::optional<cplx> scalar() const { return scalar_; }

 private:
  OperatorModel a_;
  std::optional<cplx> scalar_;
};

bool spectrum_test(const OperatorModel& a, cplx lambda);

// Unique v > 0 with (1 + v) f(v, l) = 1; nullopt outside the support.
std::optional<rdiag::VSolveResult> solve_v(const HaarSumProblem& p, cplx lambda);

// log Delta(lambda - a - u), valid on the whole plane.
double log_fk_determinant(const HaarSumProblem& p, cplx lambda);

// Brown density of a + u at lambda. Points where |l - a| has a Dirac law
// get the average over nearby non-degenerate points inside the spectrum.
double density_general(const HaarSumProblem& p, cplx lambda, std::uint32_t* cell_flags = nullptr);

// 2x2 closed forms: eigenvalue form and trace/determinant form.
double density_2x2_closed(const TwoByTwo& a, cplx lambda);
double density_2x2_trace_det(const TwoByTwo& a, cplx lambda);
bool spectrum_2x2(const TwoByTwo& a, cplx lambda);
// a = diag(alpha, beta).
double density_bernoulli(cplx alpha, cplx beta, cplx lambda);
// a = [[0, t], [0, 0]].
double density_nilpotent(double t, cplx lambda);

struct Annulus {
  double inner_sq = 0.0;
  double outer_sq = 0.0;
  double inner() const { return std::sqrt(inner_sq); }
  double outer() const { return std::sqrt(outer_sq); }
  bool full_disk() const { return inner_sq == 0.0; }
};
Annulus nilpotent_spectrum(double t);

// f(v, lambda) from the Cauchy transform of a self-adjoint a.
double f_selfadjoint_via_cauchy(const SpectralMeasure& m, double v, cplx lambda);
// f(v, lambda) from the Cauchy transform of a unitary a.
double f_unitary_via_cauchy(const SpectralMeasure& m, double v, cplx lambda);
// Poisson-kernel specialisation of the unitary formula.
double f_poisson(double q, double v, cplx lambda);

numerics::Cell evaluate_cell(const HaarSumProblem& p, cplx lambda);
numerics::DensityGridResult density_grid(const HaarSumProblem& p, const numerics::GridSpec& grid,
                                         unsigned threads = 0);

// Spread the uniform law on the circle |l - c| = r over grid cells
// (cell-averaged density).
void add_singular_circle(numerics::DensityGridResult& res, cplx centre, double radius);

}  // namespace brown::haar
