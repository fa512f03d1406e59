#include <doctest.h>

#include <cmath>

#include "brown/error.hpp"
#include "brown/positive_law.hpp"
#include "oracles.hpp"

using namespace brown;
using namespace brown::measures;

namespace {

// Marchenko-Pastur law of |C_t|^2 on [0, 4t], x = 2t(1 - cos th).
double mp_integral(double t, const std::function<double(double)>& phi) {
  return oracle::simpson(
      [&](double th) {
        const double x = 2 * t * (1 - std::cos(th));
        // density sqrt(x(4t - x)) / (2 pi t x) times dx = 2t sin th dth is (1 + cos th) / pi
        return phi(x) * (1 + std::cos(th)) / M_PI;
      },
      0.0, M_PI, 40000);
}

}  // namespace

TEST_SUITE("positive_law") {
  TEST_CASE("finite law functionals are direct sums") {
    const auto X = PositiveLaw::finite({0.5, 2.0, 4.0}, {0.25, 0.5, 0.25});
    const double v = 0.7;
    double f = 0, f2 = 0, ls = 0;
    for (auto [x, w] : {std::pair{0.5, 0.25}, {2.0, 0.5}, {4.0, 0.25}}) {
      f += w / (1 + v * x);
      f2 += w / ((1 + v * x) * (1 + v * x));
      ls += w * std::log1p(v * x);
    }
    CHECK(X.f(v) == doctest::Approx(f).epsilon(1e-15));
    CHECK(X.f2(v) == doctest::Approx(f2).epsilon(1e-15));
    CHECK(X.log_shift(v) == doctest::Approx(ls).epsilon(1e-14));
    CHECK(X.g(v) == doctest::Approx((1 - f) / (v * f)).epsilon(1e-13));
    CHECK(X.df_dv(v) == doctest::Approx(-(f - f2) / v).epsilon(1e-12));
    CHECK(X.mean() == doctest::Approx(2.125));
    CHECK(X.inverse_mean() == doctest::Approx(0.25 / 0.5 + 0.25 + 0.25 / 4));
    CHECK(X.resolvent(0.3) == doctest::Approx(0.25 / 0.8 + 0.5 / 2.3 + 0.25 / 4.3));
  }

  TEST_CASE("invalid laws and arguments") {
    CHECK_THROWS_AS(PositiveLaw::finite({-1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(PositiveLaw::finite({1.0, 2.0}, {0.5, 0.2}), DomainError);
    CHECK_THROWS_AS(PositiveLaw::free_poisson(0.0), DomainError);
    CHECK_THROWS_AS(PositiveLaw::finite({1.0}, {1.0}).f(-1.0), DomainError);
  }

  TEST_CASE("property: g decreases from tau(X) to 1/tau(X^-1)") {
    const auto X = PositiveLaw::finite({0.1, 1.0, 3.0, 7.0}, {0.1, 0.2, 0.3, 0.4});
    double prev = X.mean() + 1e-12;
    for (double lv = -12; lv <= 12; lv += 0.5) {
      const double g = X.g(std::exp(lv));
      CHECK(g < prev);
      CHECK(g > 1.0 / X.inverse_mean() - 1e-12);
      prev = g;
    }
    CHECK(X.g(1e-10) == doctest::Approx(X.mean()).epsilon(1e-8));
    CHECK(X.g(1e12) == doctest::Approx(1.0 / X.inverse_mean()).epsilon(1e-8));
  }

  TEST_CASE("free Poisson law against Marchenko-Pastur quadrature") {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto X = PositiveLaw::free_poisson(t);
      for (double w : {0.1, 1.0, 5.0}) CHECK(X.resolvent(w) == doctest::Approx(mp_integral(t, [w](double x) { return 1 / (w + x); })).epsilon(1e-6));
      for (double v : {0.2, 3.0})
        CHECK(X.log_shift(v) == doctest::Approx(mp_integral(t, [v](double x) { return std::log1p(v * x); })).epsilon(1e-6));
      CHECK(X.mean() == doctest::Approx(t));
      CHECK(X.log_mean() == doctest::Approx(std::log(t) - 1).epsilon(1e-12));
      CHECK(std::isinf(X.inverse_mean()));
      CHECK(X.f2(0.8) == doctest::Approx(mp_integral(t, [](double x) { return 1 / std::pow(1 + 0.8 * x, 2); })).epsilon(1e-6));
    }
  }

  TEST_CASE("modulus laws") {
    const auto q = PositiveLaw::modulus_squared(TwoByTwo::nilpotent(1.0), cplx(0.3, 0.2));
    REQUIRE(q.finite_data());
    const double r2 = std::norm(cplx(0.3, 0.2));
    // |l - n|^2 has eigenvalues with sum 2 r^2 + 1 and product r^4.
    double s = 0, p = 1;
    for (double x : q.finite_data()->values) {
      s += x;
      p *= x;
    }
    CHECK(s == doctest::Approx(2 * r2 + 1));
    CHECK(p == doctest::Approx(r2 * r2));

    const cplx l(0.4, 0.5);
    const auto m = PositiveLaw::modulus_squared(NormalSelfAdjoint{Semicircle{1.0}}, l);
    const double v = 1.3;
    const double ref = oracle::simpson(
        [&](double th) {
          const double x = 2 * std::sin(th);
          const double dens = std::sqrt(std::max(0.0, 4 - x * x)) / (2 * M_PI);
          return dens / (1 + v * std::norm(l - x)) * 2 * std::cos(th);
        },
        -M_PI / 2, M_PI / 2);
    CHECK(m.f(v) == doctest::Approx(ref).epsilon(1e-8));
    CHECK(m.dirac_value() == std::nullopt);
    CHECK(PositiveLaw::modulus_squared(NormalUnitary{PoissonKernel{0.3}}, 0.0).dirac_value() == doctest::Approx(1.0));
  }

  TEST_CASE("square_of maps |C_t| to the free Poisson law") {
    const auto X = PositiveLaw::square_of(QuarterCircle{2.0});
    CHECK(X.mean() == doctest::Approx(2.0));
    const auto Y = PositiveLaw::square_of(atoms_real({1.0, 3.0}, {0.5, 0.5}));
    CHECK(Y.mean() == doctest::Approx(5.0));
    CHECK_THROWS_AS(PositiveLaw::square_of(Semicircle{1.0}), DomainError);
  }
}
