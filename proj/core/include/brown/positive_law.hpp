#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "brown/measures.hpp"

namespace brown::measures {

// A probability law on [0, inf), standing for h^2 of an R-diagonal element
// uh or for |lambda - a|^2. The functionals below are all of the form
// tau(phi(X)) and are evaluated exactly for finite laws and through Cauchy
// transforms or quadrature otherwise.
class PositiveLaw {
 public:
  struct Finite {
    std::vector<double> values;
    std::vector<double> weights;
  };
  // Law of |C_t|^2 (free Poisson with rate 1, scaled by t).
  struct FreePoisson {
    double t = 1.0;
  };
  // Law of |lambda - a|^2 for a normal model with a continuous law.
  struct Modulus {
    OperatorModel a;
    cplx lambda;
  };

  static PositiveLaw finite(std::vector<double> values, std::vector<double> weights);
  static PositiveLaw free_poisson(double t);
  // |lambda - a|^2; finite models give Finite laws.
  static PositiveLaw modulus_squared(const OperatorModel& a, cplx lambda);
  // Law of h^2 for a law of h >= 0 (atomic or quarter-circle).
  static PositiveLaw square_of(const SpectralMeasure& h);

  // tau((w + X)^{-1}) for w > 0.
  double resolvent(double w) const;
  // f(v) = tau((1 + vX)^{-1}); f(0) = 1.
  double f(double v) const;
  // tau((1 + vX)^{-2}).
  double f2(double v) const;
  // d f / d v = -(f - f2) / v.
  double df_dv(double v) const;
  // g(v) = (1 - f) / (v f), strictly decreasing from tau(X) to 1/tau(X^{-1}).
  double g(double v) const;

  double mean() const;           // tau(X)
  double inverse_mean() const;   // tau(X^{-1}), +inf when not integrable
  double log_shift(double v) const;  // tau(log(1 + vX))
  double log_mean() const;       // tau(log X), may be -inf
  double atom_at_zero() const;
  std::optional<double> dirac_value() const;

  const Finite* finite_data() const { return std::get_if<Finite>(&repr_); }
  const std::variant<Finite, FreePoisson, Modulus>& repr() const { return repr_; }

 private:
  explicit PositiveLaw(std::variant<Finite, FreePoisson, Modulus> r) : repr_(std::move(r)) {}
  std::variant<Finite, FreePoisson, Modulus> repr_;
};

}  // namespace brown::measures
