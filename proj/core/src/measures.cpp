#include "brown/measures.hpp"

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

// sqrt(z - r) sqrt(z + r): cut on [-r, r], asymptotic to z.
cplx sqrt_pair(cplx z, double r) { return std::sqrt(z - r) * std::sqrt(z + r); }

double catalan(int n) {
  double c = 1.0;
  for (int k = 0; k < n; ++k) c = c * 2.0 * (2.0 * k + 1.0) / (k + 2.0);
  return c;
}

double central_binomial(int n) {  // C(2n, n)
  double c = 1.0;
  for (int k = 1; k <= n; ++k) c = c * (n + k) / k;
  return c;
}

numerics::QuadOptions quad_tight() {
  numerics::QuadOptions o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-12;
  return o;
}

// Quarter-circle integrals use x = 2 sqrt(t) sin(phi); the law becomes
// (4/pi) cos^2(phi) dphi on [0, pi/2].
template <class F>
auto quarter_integral(double t, F&& fn) {
  const double s = 2.0 * std::sqrt(t);
  using R = decltype(fn(0.0));
  if constexpr (std::is_same_v<R, cplx>) {
    return numerics::integrate_adaptive_complex(
        [&](double phi) { const double c = std::cos(phi); return (4.0 / M_PI) * c * c * fn(s * std::sin(phi)); },
        0.0, M_PI / 2, quad_tight());
  } else {
    return numerics::integrate_adaptive(
        [&](double phi) { const double c = std::cos(phi); return (4.0 / M_PI) * c * c * fn(s * std::sin(phi)); },
        0.0, M_PI / 2, quad_tight());
  }
}

void check_weights(const std::vector<double>& w, std::size_t n) {
  if (w.size() != n) throw DomainError("atoms and weights differ in length");
  if (n == 0) throw DomainError("empty atomic law");
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0)) throw DomainError("negative weight");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw DomainError("weights do not sum to 1");
}

bool near_atom(const std::vector<cplx>& pos, cplx z, double tol) {
  for (const auto& p : pos)
    if (std::abs(z - p) <= tol * (1.0 + std::abs(p))) return true;
  return false;
}

}  // namespace

Atomic dirac(cplx c, Domain d) { return Atomic{{c}, {1.0}, d}; }

Atomic atoms_real(std::vector<double> positions, std::vector<double> weights) {
  Atomic a;
  for (double p : positions) a.positions.emplace_back(p, 0.0);
  a.weights = std::move(weights);
  a.domain = Domain::Real;
  return a;
}

Atomic symmetric_bernoulli() { return atoms_real({-1.0, 1.0}, {0.5, 0.5}); }

Atomic roots_of_unity(int n) {
  if (n < 1) throw DomainError("roots_of_unity: n >= 1");
  Atomic a;
  a.domain = Domain::Circle;
  for (int k = 0; k < n; ++k) {
    a.positions.push_back(std::polar(1.0, 2.0 * M_PI * k / n));
    a.weights.push_back(1.0 / n);
  }
  // Exact values for the real/imaginary axes keep symmetric models symmetric.
  for (auto& p : a.positions) {
    if (std::abs(p.imag()) < 1e-15) p.imag(0.0);
    if (std::abs(p.real()) < 1e-15) p.real(0.0);
  }
  return a;
}

void validate(const SpectralMeasure& m) {
  std::visit(overloaded{
                 [](const Atomic& a) {
                   check_weights(a.weights, a.positions.size());
                   for (const auto& p : a.positions) {
                     if (a.domain == Domain::Real && p.imag() != 0.0)
                       throw DomainError("real atomic law with complex atom");
                     if (a.domain == Domain::Circle && std::abs(std::abs(p) - 1.0) > 1e-12)
                       throw DomainError("circle atomic law with atom off the unit circle");
                   }
                 },
                 [](const Semicircle& s) {
                   if (!(s.variance > 0)) throw DomainError("semicircle variance must be positive");
                 },
                 [](const Arcsine&) {},
                 [](const QuarterCircle& q) {
                   if (!(q.scale > 0)) throw DomainError("quarter-circle scale must be positive");
                 },
                 [](const PoissonKernel& p) {
                   if (!(p.q > -1 && p.q < 1)) throw DomainError("Poisson kernel needs q in (-1, 1)");
                 },
                 [](const Empirical& e) {
                   if (e.samples.empty()) throw DomainError("empty empirical law");
                 },
             },
             m);
}

Domain domain_of(const SpectralMeasure& m) {
  return std::visit(overloaded{
                        [](const Atomic& a) { return a.domain; },
                        [](const PoissonKernel&) { return Domain::Circle; },
                        [](const Empirical& e) { return e.domain; },
                        [](const auto&) { return Domain::Real; },
                    },
                    m);
}

SupportBounds support_bounds(const SpectralMeasure& m) {
  return std::visit(overloaded{
                        [](const Atomic& a) {
                          SupportBounds b{a.domain, 0, 0};
                          if (a.domain == Domain::Real) {
                            b.lo = kInf;
                            b.hi = -kInf;
                            for (const auto& p : a.positions) {
                              b.lo = std::min(b.lo, p.real());
                              b.hi = std::max(b.hi, p.real());
                            }
                          }
                          return b;
                        },
                        [](const Semicircle& s) {
                          const double r = 2 * std::sqrt(s.variance);
                          return SupportBounds{Domain::Real, -r, r};
                        },
                        [](const Arcsine&) { return SupportBounds{Domain::Real, -2, 2}; },
                        [](const QuarterCircle& q) {
                          return SupportBounds{Domain::Real, 0, 2 * std::sqrt(q.scale)};
                        },
                        [](const PoissonKernel&) { return SupportBounds{Domain::Circle, 0, 0}; },
                        [](const Empirical& e) {
                          SupportBounds b{e.domain, 0, 0};
                          if (e.domain == Domain::Real) {
                            b.lo = kInf;
                            b.hi = -kInf;
                            for (const auto& p : e.samples) {
                              b.lo = std::min(b.lo, p.real());
                              b.hi = std::max(b.hi, p.real());
                            }
                          }
                          return b;
                        },
                    },
                    m);
}

bool on_support(const SpectralMeasure& m, cplx z, double tol) {
  return std::visit(overloaded{
                        [&](const Atomic& a) { return near_atom(a.positions, z, tol); },
                        [&](const Empirical& e) { return near_atom(e.samples, z, tol); },
                        [&](const PoissonKernel&) { return std::abs(std::abs(z) - 1.0) <= tol; },
                        [&](const auto&) {
                          const auto b = support_bounds(m);
                          return std::abs(z.imag()) <= tol && z.real() >= b.lo - tol && z.real() <= b.hi + tol;
                        },
                    },
                    m);
}

double density(const SpectralMeasure& m, double x) {
  return std::visit(overloaded{
                        [&](const Semicircle& s) {
                          const double r2 = 4 * s.variance - x * x;
                          return r2 > 0 ? std::sqrt(r2) / (2 * M_PI * s.variance) : 0.0;
                        },
                        [&](const Arcsine&) {
                          const double r2 = 4 - x * x;
                          return r2 > 0 ? 1.0 / (M_PI * std::sqrt(r2)) : 0.0;
                        },
                        [&](const QuarterCircle& q) {
                          const double r2 = 4 * q.scale - x * x;
                          return (x >= 0 && r2 > 0) ? std::sqrt(r2) / (M_PI * q.scale) : 0.0;
                        },
                        [&](const PoissonKernel& p) {
                          return (1 - p.q * p.q) / (2 * M_PI * std::norm(1.0 - p.q * std::polar(1.0, x)));
                        },
                        [](const auto&) -> double { throw DomainError("law has no Lebesgue density"); },
                    },
                    m);
}

cplx cauchy_transform(const SpectralMeasure& m, cplx z) {
  if (std::holds_alternative<Empirical>(m)) throw DomainError("Cauchy transform is not defined for empirical laws");
  if (on_support(m, z, 0.0)) throw DomainError("on-support evaluation of the Cauchy transform");
  return std::visit(overloaded{
                        [&](const Atomic& a) {
                          cplx g = 0.0;
                          for (std::size_t i = 0; i < a.positions.size(); ++i) g += a.weights[i] / (z - a.positions[i]);
                          return g;
                        },
                        [&](const Semicircle& s) {
                          // (z - w) / (2 var) written without cancellation.
                          const cplx w = sqrt_pair(z, 2 * std::sqrt(s.variance));
                          return cplx(2.0) / (z + w);
                        },
                        [&](const Arcsine&) { return 1.0 / sqrt_pair(z, 2.0); },
                        [&](const QuarterCircle& q) {
                          return quarter_integral(q.scale, [&](double x) { return 1.0 / (z - x); });
                        },
                        [&](const PoissonKernel& p) {
                          if (std::abs(z) > 1) return 1.0 / (z - p.q);
                          return -p.q / (1.0 - p.q * z);
                        },
                        [](const Empirical&) -> cplx { throw DomainError("unreachable"); },
                    },
                    m);
}

cplx cauchy_derivative(const SpectralMeasure& m, cplx z) {
  if (std::holds_alternative<Empirical>(m)) throw DomainError("Cauchy transform is not defined for empirical laws");
  if (on_support(m, z, 0.0)) throw DomainError("on-support evaluation of the Cauchy transform");
  return std::visit(overloaded{
                        [&](const Atomic& a) {
                          cplx g = 0.0;
                          for (std::size_t i = 0; i < a.positions.size(); ++i) {
                            const cplx d = z - a.positions[i];
                            g -= a.weights[i] / (d * d);
                          }
                          return g;
                        },
                        [&](const Semicircle& s) {
                          const cplx w = sqrt_pair(z, 2 * std::sqrt(s.variance));
                          return -(cplx(2.0) / (z + w)) / w;
                        },
                        [&](const Arcsine&) {
                          const cplx w = sqrt_pair(z, 2.0);
                          return -z / (w * w * w);
                        },
                        [&](const QuarterCircle& q) {
                          return quarter_integral(q.scale, [&](double x) { return -1.0 / ((z - x) * (z - x)); });
                        },
                        [&](const PoissonKernel& p) {
                          if (std::abs(z) > 1) return -1.0 / ((z - p.q) * (z - p.q));
                          const cplx d = 1.0 - p.q * z;
                          return -p.q * p.q / (d * d);
                        },
                        [](const Empirical&) -> cplx { throw DomainError("unreachable"); },
                    },
                    m);
}

double log_potential(const SpectralMeasure& m, cplx z) {
  return std::visit(overloaded{
                        [&](const Atomic& a) {
                          double u = 0.0;
                          for (std::size_t i = 0; i < a.positions.size(); ++i)
                            u += a.weights[i] * std::log(std::abs(z - a.positions[i]));
                          return u;
                        },
                        [&](const Semicircle& s) {
                          const double sg = std::sqrt(s.variance);
                          const cplx x = z / sg;
                          const cplx w = sqrt_pair(x, 2.0);
                          // x^2/4 - x w/4 = x / (x + w).
                          const cplx val = x / (x + w) + std::log((x + w) / 2.0);
                          return std::log(sg) + val.real() - 0.5;
                        },
                        [&](const Arcsine&) { return std::log(std::abs((z + sqrt_pair(z, 2.0)) / 2.0)); },
                        [&](const QuarterCircle& q) {
                          return quarter_integral(q.scale, [&](double x) { return std::log(std::abs(z - x)); });
                        },
                        [&](const PoissonKernel& p) {
                          if (std::abs(z) >= 1) return std::log(std::abs(z - p.q));
                          return std::log(std::abs(1.0 - p.q * z));
                        },
                        [](const Empirical&) -> double {
                          throw DomainError("log potential is not defined for empirical laws");
                        },
                    },
                    m);
}

cplx moment(const SpectralMeasure& m, int k) {
  if (k < 0) throw DomainError("moment order must be >= 0");
  if (k == 0) return 1.0;
  return std::visit(overloaded{
                        [&](const Atomic& a) {
                          cplx s = 0.0;
                          for (std::size_t i = 0; i < a.positions.size(); ++i) s += a.weights[i] * std::pow(a.positions[i], k);
                          return s;
                        },
                        [&](const Semicircle& s) {
                          return cplx(k % 2 ? 0.0 : std::pow(s.variance, k / 2) * catalan(k / 2));
                        },
                        [&](const Arcsine&) { return cplx(k % 2 ? 0.0 : central_binomial(k / 2)); },
                        [&](const QuarterCircle& q) {
                          if (k % 2 == 0) return cplx(std::pow(q.scale, k / 2) * catalan(k / 2));
                          return cplx(quarter_integral(q.scale, [&](double x) { return std::pow(x, k); }));
                        },
                        [&](const PoissonKernel& p) { return cplx(std::pow(p.q, k)); },
                        [&](const Empirical& e) {
                          cplx s = 0.0;
                          for (const auto& x : e.samples) s += std::pow(x, k);
                          return s / double(e.samples.size());
                        },
                    },
                    m);
}

TruncatedSeries moment_series(const SpectralMeasure& m, int order) {
  if (order < 1) throw DomainError("moment_series: order must be >= 1");
  validate(m);
  TruncatedSeries s(order);
  for (int k = 1; k <= order; ++k) s[k] = moment(m, k);
  return s;
}

TruncatedSeries series_from_moments(const std::vector<cplx>& moments) {
  TruncatedSeries s(static_cast<int>(moments.size()));
  for (std::size_t k = 0; k < moments.size(); ++k) s[int(k) + 1] = moments[k];
  return s;
}

TruncatedSeries r_transform_from_moments(const TruncatedSeries& psi) {
  if (std::abs(psi[0]) > 0) throw DomainError("moment series must start at z^1");
  const int n = psi.order();
  // G(1/w) = w (1 + psi(w)) =: g(w), and K(z) = 1 / g^{-1}(z).
  const TruncatedSeries g = (TruncatedSeries::constant(1.0, n) + psi).multiply_by_z();
  const TruncatedSeries ginv = g.revert();
  TruncatedSeries r = ginv.divide_by_z().reciprocal() - TruncatedSeries::constant(1.0, n);
  r[0] = 0.0;
  return r;
}

TruncatedSeries s_transform_from_moments(const TruncatedSeries& psi) {
  if (std::abs(psi[1]) == 0.0) throw DomainError("S-transform needs a nonzero first moment");
  const int n = psi.order() - 1;
  const TruncatedSeries chi = psi.revert();
  TruncatedSeries one_plus_z = TruncatedSeries::identity(n);
  one_plus_z[0] = 1.0;
  return (chi.divide_by_z() * one_plus_z).truncated(n);
}

TruncatedSeries r_transform(const SpectralMeasure& m, int order) {
  if (std::holds_alternative<Empirical>(m)) throw DomainError("R-transform is not defined for empirical laws");
  return r_transform_from_moments(moment_series(m, order));
}

TruncatedSeries s_transform(const SpectralMeasure& m, int order) {
  if (std::holds_alternative<Empirical>(m)) throw DomainError("S-transform is not defined for empirical laws");
  return s_transform_from_moments(moment_series(m, order + 1));
}

// ---------------------------------------------------------------------------

std::array<cplx, 2> TwoByTwo::eigenvalues() const {
  const cplx tr = trace();
  const cplx disc = std::sqrt(tr * tr - 4.0 * det());
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

TwoByTwoModulus two_by_two_modulus(const TwoByTwo& a, cplx l) {
  TwoByTwoModulus m;
  const TwoByTwo d{l - a.a11, -a.a12, -a.a21, l - a.a22};
  m.T = d.frobenius_sq();
  m.p = d.det();
  m.D = std::norm(m.p);
  m.R = std::max(0.0, m.T * m.T - 4 * m.D);
  m.dp = 2.0 * l - a.trace();
  m.dT = 2.0 * std::conj(l) - std::conj(a.trace());
  m.dD = m.dp * std::conj(m.p);
  m.dR = 2.0 * m.T * m.dT - 4.0 * m.dD;
  m.ddT = 2.0;
  m.ddD = std::norm(m.dp);
  m.ddR = 2.0 * std::norm(m.dT) + 2.0 * m.T * m.ddT - 4.0 * m.ddD;
  m.mu_plus = 0.5 * (m.T + std::sqrt(m.R));
  m.mu_minus = m.mu_plus > 0 ? m.D / m.mu_plus : 0.0;
  return m;
}

void validate(const OperatorModel& a) {
  std::visit(overloaded{
                 [](const TwoByTwo&) {},
                 [](const NormalSelfAdjoint& n) {
                   validate(n.law);
                   if (domain_of(n.law) != Domain::Real) throw DomainError("self-adjoint model needs a law on R");
                   if (std::holds_alternative<Empirical>(n.law)) throw DomainError("empirical law cannot define a model");
                 },
                 [](const NormalUnitary& n) {
                   validate(n.law);
                   if (domain_of(n.law) != Domain::Circle) throw DomainError("unitary model needs a law on the circle");
                 },
                 [](const FiniteNormal& f) { check_weights(f.weights, f.atoms.size()); },
                 [](const Semicircular& s) {
                   if (!(s.variance > 0)) throw DomainError("semicircular variance must be positive");
                 },
                 [](const Zero&) {},
             },
             a);
}

std::optional<SpectralMeasure> spectral_measure(const OperatorModel& a) {
  return std::visit(overloaded{
                        [](const TwoByTwo&) -> std::optional<SpectralMeasure> { return std::nullopt; },
                        [](const NormalSelfAdjoint& n) -> std::optional<SpectralMeasure> { return n.law; },
                        [](const NormalUnitary& n) -> std::optional<SpectralMeasure> { return n.law; },
                        [](const FiniteNormal& f) -> std::optional<SpectralMeasure> {
                          return Atomic{f.atoms, f.weights, Domain::Plane};
                        },
                        [](const Semicircular& s) -> std::optional<SpectralMeasure> { return Semicircle{s.variance}; },
                        [](const Zero&) -> std::optional<SpectralMeasure> { return dirac(0.0); },
                    },
                    a);
}

bool is_self_adjoint_measure(const OperatorModel& a) {
  return std::holds_alternative<NormalSelfAdjoint>(a) || std::holds_alternative<Semicircular>(a);
}

bool in_spectrum_of(const OperatorModel& a, cplx l, double tol) {
  return std::visit(overloaded{
                        [&](const TwoByTwo& m) {
                          for (const auto& e : m.eigenvalues())
                            if (std::abs(l - e) <= tol * (1 + std::abs(e))) return true;
                          return false;
                        },
                        [&](const FiniteNormal& f) { return near_atom(f.atoms, l, tol); },
                        [&](const Zero&) { return std::abs(l) <= tol; },
                        [&](const auto&) { return on_support(*spectral_measure(a), l, tol); },
                    },
                    a);
}

std::optional<cplx> scalar_value(const OperatorModel& a) {
  return std::visit(overloaded{
                        [](const TwoByTwo& m) -> std::optional<cplx> {
                          if (m.a12 == 0.0 && m.a21 == 0.0 && m.a11 == m.a22) return m.a11;
                          return std::nullopt;
                        },
                        [](const FiniteNormal& f) -> std::optional<cplx> {
                          for (const auto& x : f.atoms)
                            if (x != f.atoms.front()) return std::nullopt;
                          return f.atoms.front();
                        },
                        [](const Zero&) -> std::optional<cplx> { return cplx(0.0); },
                        [](const Semicircular&) -> std::optional<cplx> { return std::nullopt; },
                        [](const auto& n) -> std::optional<cplx> {
                          if (const auto* at = std::get_if<Atomic>(&n.law)) {
                            for (const auto& x : at->positions)
                              if (x != at->positions.front()) return std::nullopt;
                            return at->positions.front();
                          }
                          return std::nullopt;
                        },
                    },
                    a);
}

cplx cauchy_of_abs_squared(const OperatorModel& a, cplx l, cplx zeta) {
  validate(a);
  auto atom_sum = [&](const std::vector<cplx>& pos, const std::vector<double>& w) {
    cplx g = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const cplx d = zeta - std::norm(l - pos[i]);
      if (d == 0.0) throw DomainError("on-support evaluation of the Cauchy transform");
      g += w[i] / d;
    }
    return g;
  };
  if (const auto* m = std::get_if<TwoByTwo>(&a)) {
    const auto mod = two_by_two_modulus(*m, l);
    const cplx d1 = zeta - mod.mu_plus, d2 = zeta - mod.mu_minus;
    if (d1 == 0.0 || d2 == 0.0) throw DomainError("on-support evaluation of the Cauchy transform");
    return 0.5 / d1 + 0.5 / d2;
  }
  if (std::holds_alternative<Zero>(a)) return atom_sum({0.0}, {1.0});
  if (const auto* f = std::get_if<FiniteNormal>(&a)) return atom_sum(f->atoms, f->weights);
  const SpectralMeasure law = *spectral_measure(a);
  if (const auto* at = std::get_if<Atomic>(&law)) return atom_sum(at->positions, at->weights);

  if (is_self_adjoint_measure(a)) {
    const double xi = l.real(), eta = l.imag();
    const cplx c = std::sqrt(eta * eta - zeta);
    if (std::abs(c) < 1e-7) {
      // x+ and x- merge at Re(lambda): the difference quotient becomes G'.
      return cauchy_derivative(law, cplx(xi, 0) + c);
    }
    const cplx xp = xi + cplx(0, 1) * c, xm = xi - cplx(0, 1) * c;
    return (cauchy_transform(law, xp) - cauchy_transform(law, xm)) / (xp - xm);
  }

  // Unitary with a continuous law on the circle.
  if (std::abs(l) == 0.0) return 1.0 / (zeta - 1.0);
  const cplx w = -zeta;
  const double l2 = std::norm(l);
  const cplx A = w + l2 + 1.0;
  const cplx disc = std::sqrt(A * A - 4.0 * l2);
  if (std::abs(disc) < 1e-12) throw DomainError("on-support evaluation of the Cauchy transform");
  const cplx zp = (A + disc) / (2.0 * std::conj(l));
  const cplx zm = (A - disc) / (2.0 * std::conj(l));
  const cplx res = (zp * cauchy_transform(law, zp) - zm * cauchy_transform(law, zm)) / disc;
  return -res;
}

double norm_inverse_l2_sq(const OperatorModel& a, cplx l) {
  validate(a);
  auto atom_sum = [&](const std::vector<cplx>& pos, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const double d = std::norm(l - pos[i]);
      if (w[i] > 0 && d == 0.0) return kInf;
      s += w[i] / d;
    }
    return s;
  };
  if (const auto* m = std::get_if<TwoByTwo>(&a)) {
    const auto mod = two_by_two_modulus(*m, l);
    if (mod.D == 0.0) return kInf;
    return 0.5 * mod.T / mod.D;
  }
  if (std::holds_alternative<Zero>(a)) return atom_sum({0.0}, {1.0});
  if (const auto* f = std::get_if<FiniteNormal>(&a)) return atom_sum(f->atoms, f->weights);
  const SpectralMeasure law = *spectral_measure(a);
  if (const auto* at = std::get_if<Atomic>(&law)) return atom_sum(at->positions, at->weights);

  if (is_self_adjoint_measure(a)) {
    const auto b = support_bounds(law);
    const double xi = l.real(), eta = l.imag();
    const bool over_support = xi >= b.lo && xi <= b.hi;
    if (eta == 0.0 && over_support) return kInf;
    if (std::abs(eta) < 1e-7 * (1 + std::abs(l)) && !over_support) {
      return -cauchy_derivative(law, cplx(xi, 0)).real();
    }
    return -cauchy_transform(law, l).imag() / eta;
  }

  // Unitary case: 1/|l - w|^2 = (2 Re(l/(l - w)) - 1) / (|l|^2 - 1).
  const double r2 = std::norm(l);
  if (const auto* p = std::get_if<PoissonKernel>(&law)) {
    const double q = p->q;
    if (r2 == 1.0) return kInf;
    if (r2 > 1.0) return (r2 - q * q) / ((r2 - 1.0) * std::norm(l - q));
    return (1.0 - q * q * r2) / ((1.0 - r2) * std::norm(1.0 - q * l));
  }
  if (r2 == 1.0) return kInf;
  return (2.0 * (l * cauchy_transform(law, l)).real() - 1.0) / (r2 - 1.0);
}

double norm_l2_sq(const OperatorModel& a, cplx l) {
  validate(a);
  if (const auto* m = std::get_if<TwoByTwo>(&a)) return 0.5 * two_by_two_modulus(*m, l).T;
  if (std::holds_alternative<Zero>(a)) return std::norm(l);
  if (const auto* f = std::get_if<FiniteNormal>(&a)) {
    double s = 0.0;
    for (std::size_t i = 0; i < f->atoms.size(); ++i) s += f->weights[i] * std::norm(l - f->atoms[i]);
    return s;
  }
  const SpectralMeasure law = *spectral_measure(a);
  const cplx m1 = moment(law, 1);
  const double m2 = is_self_adjoint_measure(a) ? moment(law, 2).real() : 1.0;
  return std::norm(l) - 2.0 * (std::conj(l) * m1).real() + m2;
}

double log_det(const OperatorModel& a, cplx l) {
  validate(a);
  if (const auto* m = std::get_if<TwoByTwo>(&a)) {
    const cplx d = two_by_two_modulus(*m, l).p;
    return 0.5 * std::log(std::abs(d));
  }
  if (std::holds_alternative<Zero>(a)) return std::log(std::abs(l));
  return log_potential(*spectral_measure(a), l);
}

}  // namespace brown::measures
