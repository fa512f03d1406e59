#include "brown/positive_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "brown/error.hpp"
#include "brown/numerics.hpp"

namespace brown::measures {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Free Poisson integrals with x = 4t sin^2(theta): the law becomes
// (4/pi) cos^2(theta) d theta on [0, pi/2].
double free_poisson_integral(double t, const std::function<double(double)>& fn) {
  numerics::QuadOptions o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-12;
  return numerics::integrate_adaptive(
      [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        return (4.0 / M_PI) * c * c * fn(4.0 * t * s * s);
      },
      0.0, M_PI / 2, o);
}

double fp_resolvent(double t, double w) {
  const double s = std::sqrt(w * (w + 4 * t));
  // (s - w) / (2 t w) = 2 / (s + w) without cancellation.
  return 2.0 / (s + w);
}

// tau((w + X)^{-2}) = -d/dw resolvent.
double fp_resolvent_sq(double t, double w) {
  const double s = std::sqrt(w * (w + 4 * t));
  const double ds = (w + 2 * t) / s;
  const double r = 2.0 / (s + w);
  return r * r * (ds + 1.0) / 2.0;
}

double modulus_log_moment(const PositiveLaw::Modulus& m, double w) {
  // tau(log(w + |lambda - t|^2)) via log potentials.
  const SpectralMeasure law = *spectral_measure(m.a);
  const cplx l = m.lambda;
  if (is_self_adjoint_measure(m.a)) {
    const double c = std::sqrt(w + l.imag() * l.imag());
    return 2.0 * log_potential(law, cplx(l.real(), c));
  }
  const double l2 = std::norm(l);
  const double A = w + l2 + 1.0;
  const double disc = std::sqrt((w + (std::abs(l) - 1) * (std::abs(l) - 1)) * (w + (std::abs(l) + 1) * (std::abs(l) + 1)));
  const cplx zp = (A + disc) / (2.0 * std::conj(l));
  const cplx zm = (A - disc) / (2.0 * std::conj(l));
  return std::log(std::abs(l)) + log_potential(law, zp) + log_potential(law, zm);
}

double modulus_resolvent(const PositiveLaw::Modulus& m, double w) {
  return -cauchy_of_abs_squared(m.a, m.lambda, cplx(-w, 0.0)).real();
}

}  // namespace

PositiveLaw PositiveLaw::finite(std::vector<double> values, std::vector<double> weights) {
  if (values.size() != weights.size() || values.empty()) throw DomainError("finite law: bad sizes");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0)) throw DomainError("finite positive law: negative value");
    if (!(weights[i] >= 0)) throw DomainError("finite positive law: negative weight");
    s += weights[i];
  }
  if (std::abs(s - 1.0) > 1e-12) throw DomainError("finite positive law: weights do not sum to 1");
  // Merge coincident values so Dirac detection is exact.
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return values[i] < values[j]; });
  Finite f;
  for (auto i : idx) {
    if (weights[i] == 0) continue;
    if (!f.values.empty() && std::abs(values[i] - f.values.back()) <= 1e-14 * std::max(1.0, values[i])) {
      f.weights.back() += weights[i];
    } else {
      f.values.push_back(values[i]);
      f.weights.push_back(weights[i]);
    }
  }
  return PositiveLaw(std::move(f));
}

PositiveLaw PositiveLaw::free_poisson(double t) {
  if (!(t > 0)) throw DomainError("free Poisson law needs t > 0");
  return PositiveLaw(FreePoisson{t});
}

PositiveLaw PositiveLaw::modulus_squared(const OperatorModel& a, cplx l) {
  validate(a);
  if (const auto* m = std::get_if<TwoByTwo>(&a)) {
    const auto mod = two_by_two_modulus(*m, l);
    return finite({mod.mu_plus, mod.mu_minus}, {0.5, 0.5});
  }
  if (std::holds_alternative<Zero>(a)) return finite({std::norm(l)}, {1.0});
  if (const auto* f = std::get_if<FiniteNormal>(&a)) {
    std::vector<double> v;
    for (const auto& x : f->atoms) v.push_back(std::norm(l - x));
    return finite(v, f->weights);
  }
  const SpectralMeasure law = *spectral_measure(a);
  if (const auto* at = std::get_if<Atomic>(&law)) {
    std::vector<double> v;
    for (const auto& x : at->positions) v.push_back(std::norm(l - x));
    return finite(v, at->weights);
  }
  if (!is_self_adjoint_measure(a) && l == 0.0) return finite({1.0}, {1.0});
  return PositiveLaw(Modulus{a, l});
}

PositiveLaw PositiveLaw::square_of(const SpectralMeasure& h) {
  validate(h);
  if (const auto* q = std::get_if<QuarterCircle>(&h)) return free_poisson(q->scale);
  if (const auto* at = std::get_if<Atomic>(&h)) {
    std::vector<double> v;
    for (const auto& p : at->positions) {
      if (at->domain != Domain::Real || p.real() < 0) throw DomainError("square_of: law of h must live on [0, inf)");
      v.push_back(p.real() * p.real());
    }
    return finite(v, at->weights);
  }
  throw DomainError("square_of: supported for atomic and quarter-circle laws");
}

double PositiveLaw::resolvent(double w) const {
  if (!(w > 0)) throw DomainError("resolvent needs w > 0");
  return std::visit(overloaded{
                        [&](const Finite& f) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < f.values.size(); ++i) s += f.weights[i] / (w + f.values[i]);
                          return s;
                        },
                        [&](const FreePoisson& p) { return fp_resolvent(p.t, w); },
                        [&](const Modulus& m) { return modulus_resolvent(m, w); },
                    },
                    repr_);
}

double PositiveLaw::f(double v) const {
  if (v < 0) throw DomainError("f(v) needs v >= 0");
  if (v == 0) return 1.0;
  return std::visit(overloaded{
                        [&](const Finite& fl) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < fl.values.size(); ++i) s += fl.weights[i] / (1.0 + v * fl.values[i]);
                          return s;
                        },
                        [&](const auto&) {
                          const double w = 1.0 / v;
                          return w * resolvent(w);
                        },
                    },
                    repr_);
}

double PositiveLaw::f2(double v) const {
  if (v < 0) throw DomainError("f2(v) needs v >= 0");
  if (v == 0) return 1.0;
  return std::visit(overloaded{
                        [&](const Finite& fl) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < fl.values.size(); ++i) {
                            const double d = 1.0 + v * fl.values[i];
                            s += fl.weights[i] / (d * d);
                          }
                          return s;
                        },
                        [&](const FreePoisson& p) {
                          const double w = 1.0 / v;
                          return w * w * fp_resolvent_sq(p.t, w);
                        },
                        [&](const Modulus&) {
                          // f2 = f + v f'(v); central difference with a relative step.
                          const double h = 1e-5 * v;
                          const double d = (f(v + h) - f(v - h)) / (2 * h);
                          return f(v) + v * d;
                        },
                    },
                    repr_);
}

double PositiveLaw::df_dv(double v) const {
  if (!(v > 0)) throw DomainError("df_dv needs v > 0");
  return -(f(v) - f2(v)) / v;
}

double PositiveLaw::g(double v) const {
  if (!(v > 0)) throw DomainError("g(v) needs v > 0");
  if (const auto* fl = std::get_if<Finite>(&repr_)) {
    // (1 - f)/v = tau(X / (1 + vX)) avoids cancellation for small v.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < fl->values.size(); ++i) {
      const double d = 1.0 + v * fl->values[i];
      num += fl->weights[i] * fl->values[i] / d;
      den += fl->weights[i] / d;
    }
    return num / den;
  }
  const double fv = f(v);
  return (1.0 - fv) / (v * fv);
}

double PositiveLaw::mean() const {
  return std::visit(overloaded{
                        [](const Finite& f) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < f.values.size(); ++i) s += f.weights[i] * f.values[i];
                          return s;
                        },
                        [](const FreePoisson& p) { return p.t; },
                        [](const Modulus& m) { return norm_l2_sq(m.a, m.lambda); },
                    },
                    repr_);
}

double PositiveLaw::inverse_mean() const {
  return std::visit(overloaded{
                        [](const Finite& f) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < f.values.size(); ++i) {
                            if (f.values[i] == 0.0) return kInf;
                            s += f.weights[i] / f.values[i];
                          }
                          return s;
                        },
                        [](const FreePoisson&) { return kInf; },
                        [](const Modulus& m) { return norm_inverse_l2_sq(m.a, m.lambda); },
                    },
                    repr_);
}

double PositiveLaw::log_shift(double v) const {
  if (v < 0) throw DomainError("log_shift needs v >= 0");
  if (v == 0) return 0.0;
  return std::visit(overloaded{
                        [&](const Finite& f) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < f.values.size(); ++i) s += f.weights[i] * std::log1p(v * f.values[i]);
                          return s;
                        },
                        [&](const FreePoisson& p) {
                          return free_poisson_integral(p.t, [&](double x) { return std::log1p(v * x); });
                        },
                        [&](const Modulus& m) { return modulus_log_moment(m, 1.0 / v) + std::log(v); },
                    },
                    repr_);
}

double PositiveLaw::log_mean() const {
  return std::visit(overloaded{
                        [](const Finite& f) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < f.values.size(); ++i) {
                            if (f.values[i] == 0.0) return -kInf;
                            s += f.weights[i] * std::log(f.values[i]);
                          }
                          return s;
                        },
                        [](const FreePoisson& p) { return std::log(p.t) - 1.0; },
                        [](const Modulus& m) { return 2.0 * log_det(m.a, m.lambda); },
                    },
                    repr_);
}

double PositiveLaw::atom_at_zero() const {
  if (const auto* f = std::get_if<Finite>(&repr_)) {
    for (std::size_t i = 0; i < f->values.size(); ++i)
      if (f->values[i] == 0.0) return f->weights[i];
  }
  return 0.0;
}

std::optional<double> PositiveLaw::dirac_value() const {
  if (const auto* f = std::get_if<Finite>(&repr_))
    if (f->values.size() == 1) return f->values.front();
  return std::nullopt;
}

}  // namespace brown::measures
