#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "brown/error.hpp"
#include "brown/measures.hpp"
#include "oracles.hpp"

using namespace brown;
using namespace brown::measures;

namespace {

// integral of phi against a law with a density on [lo, hi], x = mid + half sin(th).
cplx integrate_law(const SpectralMeasure& m, double lo, double hi, const std::function<cplx(double)>& phi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  auto part = [&](bool im) {
    return oracle::simpson(
        [&](double th) {
          const double x = mid + half * std::sin(th);
          const cplx v = phi(x) * density(m, x) * half * std::cos(th);
          return im ? v.imag() : v.real();
        },
        -M_PI / 2, M_PI / 2, 40000);
  };
  return {part(false), part(true)};
}

// The arcsine law under x = 2 sin(th) is d th / pi, with no endpoint singularity left.
cplx integrate_arcsine(const std::function<cplx(double)>& phi) {
  auto part = [&](bool im) {
    return oracle::simpson(
        [&](double th) {
          const cplx v = phi(2 * std::sin(th)) / M_PI;
          return im ? v.imag() : v.real();
        },
        -M_PI / 2, M_PI / 2, 40000);
  };
  return {part(false), part(true)};
}

Eigen::Matrix2cd mat(const TwoByTwo& a) {
  Eigen::Matrix2cd m;
  m << a.a11, a.a12, a.a21, a.a22;
  return m;
}

}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("validation rejects malformed laws") {
    CHECK_THROWS_AS(validate(SpectralMeasure{atoms_real({1, 2}, {0.5, 0.6})}), DomainError);
    CHECK_THROWS_AS(validate(SpectralMeasure{atoms_real({1, 2}, {1.5, -0.5})}), DomainError);
    CHECK_THROWS_AS(validate(SpectralMeasure{Semicircle{0.0}}), DomainError);
    CHECK_THROWS_AS(validate(SpectralMeasure{PoissonKernel{1.0}}), DomainError);
    CHECK_THROWS_AS(validate(SpectralMeasure{Atomic{{cplx(0, 1)}, {1.0}, Domain::Real}}), DomainError);
    CHECK_NOTHROW(validate(SpectralMeasure{roots_of_unity(5)}));
  }

  TEST_CASE("closed-form moments") {
    for (int k = 0; k <= 10; ++k) {
      const double semi = (k % 2) ? 0.0 : std::pow(2.0, k / 2) * oracle::catalan(k / 2);
      CHECK(std::abs(moment(Semicircle{2.0}, k) - semi) < 1e-9 * (1 + semi));
      const double arc = (k % 2) ? 0.0 : oracle::binomial(k, k / 2);
      CHECK(std::abs(moment(Arcsine{}, k) - arc) < 1e-9 * (1 + arc));
      CHECK(std::abs(moment(PoissonKernel{0.3}, k) - std::pow(0.3, k)) < 1e-14);
      CHECK(std::abs(moment(roots_of_unity(3), k) - ((k % 3) ? 0.0 : 1.0)) < 1e-14);
    }
  }

  TEST_CASE("quarter-circle moments match quadrature of the density") {
    const SpectralMeasure q = QuarterCircle{1.5};
    for (int k = 0; k <= 6; ++k) {
      const cplx ref = integrate_law(q, 0, 2 * std::sqrt(1.5), [k](double x) { return std::pow(x, k); });
      CHECK(std::abs(moment(q, k) - ref) < 1e-7 * (1 + std::abs(ref)));
    }
  }

  TEST_CASE("Cauchy transforms match quadrature off the support") {
    for (cplx z : {cplx(0.3, 0.5), cplx(-2.5, 0.1), cplx(3.0, 0.0), cplx(0.0, -1.0)}) {
      const SpectralMeasure semi = Semicircle{1.0};
      const cplx g = integrate_law(semi, -2, 2, [z](double x) { return 1.0 / (z - x); });
      CHECK(std::abs(cauchy_transform(semi, z) - g) < 1e-8);
      const SpectralMeasure arc = Arcsine{};
      const cplx ga = integrate_arcsine([z](double x) { return 1.0 / (z - x); });
      CHECK(std::abs(cauchy_transform(arc, z) - ga) < 1e-8);
      const SpectralMeasure qc = QuarterCircle{1.0};
      const cplx gq = integrate_law(qc, 0, 2, [z](double x) { return 1.0 / (z - x); });
      CHECK(std::abs(cauchy_transform(qc, z) - gq) < 1e-8);
    }
  }

  TEST_CASE("Cauchy transform of the Poisson kernel law") {
    const double q = 0.4;
    for (cplx z : {cplx(0.2, 0.1), cplx(1.5, -0.3)}) {
      const double re = oracle::simpson(
          [&](double th) {
            const cplx e = std::polar(1.0, th);
            return ((1 - q * q) / (2 * M_PI * std::norm(1.0 - q * e)) / (z - e)).real();
          },
          0, 2 * M_PI);
      const double im = oracle::simpson(
          [&](double th) {
            const cplx e = std::polar(1.0, th);
            return ((1 - q * q) / (2 * M_PI * std::norm(1.0 - q * e)) / (z - e)).imag();
          },
          0, 2 * M_PI);
      CHECK(std::abs(cauchy_transform(PoissonKernel{q}, z) - cplx(re, im)) < 1e-9);
    }
  }

  TEST_CASE("on-support Cauchy evaluation is an error") {
    CHECK_THROWS_AS(cauchy_transform(Semicircle{1.0}, 0.5), DomainError);
    CHECK_THROWS_AS(cauchy_transform(symmetric_bernoulli(), 1.0), DomainError);
    CHECK_THROWS_AS(cauchy_transform(Empirical{{0.0}}, 3.0), DomainError);
  }

  TEST_CASE("log potential matches quadrature") {
    for (cplx z : {cplx(0.3, 0.5), cplx(2.5, 0.0), cplx(0.0, 1.5)}) {
      const SpectralMeasure semi = Semicircle{0.75};
      const double r = 2 * std::sqrt(0.75);
      const cplx ref = integrate_law(semi, -r, r, [z](double x) { return std::log(std::abs(z - x)); });
      CHECK(std::abs(log_potential(semi, z) - ref.real()) < 1e-7);
      const cplx ra = integrate_arcsine([z](double x) { return std::log(std::abs(z - x)); });
      CHECK(std::abs(log_potential(Arcsine{}, z) - ra.real()) < 1e-8);
    }
  }

  TEST_CASE("R-transform coefficients are free cumulants") {
    const auto semi = r_transform(Semicircle{1.5}, 8);
    CHECK(std::abs(semi[2] - 1.5) < 1e-12);
    for (int k : {1, 3, 4, 5, 6, 7, 8}) CHECK(std::abs(semi[k]) < 1e-10);
    const auto d = r_transform(dirac(2.0), 8);
    CHECK(std::abs(d[1] - 2.0) < 1e-12);
    std::vector<cplx> m;
    for (int k = 0; k <= 8; ++k) m.push_back(moment(Arcsine{}, k));
    const auto kappa = oracle::free_cumulants(m);
    const auto r = r_transform(Arcsine{}, 8);
    CHECK(oracle::max_diff(r.coefficients(), kappa, 8) < 1e-10);
  }

  TEST_CASE("property: R(zS(z)) = z for laws with nonzero mean") {
    for (double shift : {0.5, 1.0, 2.5}) {
      const Atomic law = atoms_real({shift, shift + 1, shift + 3}, {0.2, 0.5, 0.3});
      const auto R = r_transform(law, 8);
      const auto S = s_transform(law, 8);
      TruncatedSeries zS = S.multiply_by_z().truncated(8);
      CHECK(R.compose(zS).max_abs_diff(TruncatedSeries::identity(8)) < 1e-10);
    }
    CHECK_THROWS_AS(s_transform(Semicircle{1.0}, 6), DomainError);
    const auto Sd = s_transform(dirac(4.0), 6);
    CHECK(std::abs(Sd[0] - 0.25) < 1e-14);
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(Sd[k]) < 1e-12);
  }

  TEST_CASE("2x2 modulus data against direct matrix algebra") {
    const TwoByTwo a{cplx(0.3, 0.1), cplx(1.2, -0.4), cplx(0.0, 0.5), cplx(-0.7, 0.2)};
    for (cplx l : {cplx(0.1, 0.2), cplx(-1.0, 0.5), cplx(2.0, -1.0)}) {
      const auto q = two_by_two_modulus(a, l);
      const Eigen::Matrix2cd B = l * Eigen::Matrix2cd::Identity() - mat(a);
      const Eigen::Matrix2cd P = B.adjoint() * B;
      CHECK(q.T == doctest::Approx(P.trace().real()).epsilon(1e-13));
      CHECK(q.D == doctest::Approx(std::abs(P.determinant())).epsilon(1e-12));
      CHECK(q.mu_plus + q.mu_minus == doctest::Approx(q.T).epsilon(1e-12));
      CHECK(std::abs(q.p - B.determinant()) < 1e-13);
      // Wirtinger derivatives by central differences.
      auto T = [&](cplx z) { return two_by_two_modulus(a, z).T; };
      auto D = [&](cplx z) { return two_by_two_modulus(a, z).D; };
      const double h = 1e-6;
      auto dz = [&](auto f) {
        return 0.5 * cplx((f(l + h) - f(l - h)) / (2 * h), -(f(l + cplx(0, h)) - f(l - cplx(0, h))) / (2 * h));
      };
      CHECK(std::abs(dz(T) - q.dT) < 1e-7);
      CHECK(std::abs(dz(D) - q.dD) < 1e-6);
      const double inv = norm_inverse_l2_sq(a, l);
      CHECK(inv == doctest::Approx(0.5 * (B.inverse().adjoint() * B.inverse()).trace().real()).epsilon(1e-12));
      CHECK(log_det(a, l) == doctest::Approx(0.5 * std::log(std::abs(B.determinant()))).epsilon(1e-12));
    }
  }

  TEST_CASE("norm of the inverse for continuous laws") {
    const OperatorModel semi = NormalSelfAdjoint{Semicircle{1.0}};
    for (cplx l : {cplx(0.0, 0.5), cplx(2.5, 0.0), cplx(1.0, 0.3)}) {
      const cplx ref = integrate_law(Semicircle{1.0}, -2, 2, [l](double x) { return 1.0 / std::norm(l - x); });
      CHECK(norm_inverse_l2_sq(semi, l) == doctest::Approx(ref.real()).epsilon(1e-7));
    }
    CHECK(std::isinf(norm_inverse_l2_sq(semi, 0.5)));
    const double q = 0.5;
    const OperatorModel pk = NormalUnitary{PoissonKernel{q}};
    for (cplx l : {cplx(0.3, 0.2), cplx(1.4, 0.7)}) {
      const double ref = oracle::simpson(
          [&](double th) {
            const cplx e = std::polar(1.0, th);
            return (1 - q * q) / (2 * M_PI * std::norm(1.0 - q * e)) / std::norm(l - e);
          },
          0, 2 * M_PI);
      CHECK(norm_inverse_l2_sq(pk, l) == doctest::Approx(ref).epsilon(1e-9));
    }
  }

  TEST_CASE("Cauchy transform of |lambda - a|^2 matches quadrature") {
    const cplx l(0.4, 0.3), zeta(-0.5, 0.2);
    const OperatorModel semi = NormalSelfAdjoint{Semicircle{1.0}};
    const cplx ref = integrate_law(Semicircle{1.0}, -2, 2, [&](double x) { return 1.0 / (zeta - std::norm(l - x)); });
    CHECK(std::abs(cauchy_of_abs_squared(semi, l, zeta) - ref) < 1e-8);
    const OperatorModel unif = NormalUnitary{PoissonKernel{0.0}};
    const cplx ru = [&] {
      const auto f = [&](double th, bool im) {
        const cplx v = 1.0 / (zeta - std::norm(l - std::polar(1.0, th))) / (2 * M_PI);
        return im ? v.imag() : v.real();
      };
      return cplx(oracle::simpson([&](double th) { return f(th, false); }, 0, 2 * M_PI),
                  oracle::simpson([&](double th) { return f(th, true); }, 0, 2 * M_PI));
    }();
    CHECK(std::abs(cauchy_of_abs_squared(unif, l, zeta) - ru) < 1e-9);
  }

  TEST_CASE("spectrum membership and scalars") {
    CHECK(in_spectrum_of(OperatorModel{TwoByTwo::diag(1.0, -1.0)}, 1.0));
    CHECK_FALSE(in_spectrum_of(OperatorModel{TwoByTwo::diag(1.0, -1.0)}, 0.0));
    CHECK(in_spectrum_of(OperatorModel{NormalUnitary{PoissonKernel{0.2}}}, std::polar(1.0, 0.7)));
    CHECK(in_spectrum_of(OperatorModel{Semicircular{1.0}}, 1.9));
    CHECK(scalar_value(OperatorModel{Zero{}}) == cplx(0.0));
    CHECK(scalar_value(OperatorModel{FiniteNormal{{cplx(2, 1)}, {1.0}}}) == cplx(2, 1));
    CHECK_FALSE(scalar_value(OperatorModel{TwoByTwo::nilpotent(1.0)}));
  }
}
