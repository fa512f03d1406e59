#include <doctest.h>

#include <cmath>

#include "brown/error.hpp"
#include "brown/numerics.hpp"
#include "oracles.hpp"

using namespace brown;
using namespace brown::numerics;

TEST_SUITE("numerics") {
  TEST_CASE("solve_monotone finds roots of monotone functions") {
    auto r = solve_monotone([](double x) { return x * x; }, 4.0, 0.0, 10.0);
    REQUIRE(r);
    CHECK(r->x == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r->residual <= 1e-13 * 4);
    CHECK(r->iterations <= 200);

    auto d = solve_monotone([](double x) { return 1.0 / (1.0 + x); }, 0.5, 0.0, 10.0);
    REQUIRE(d);
    CHECK(d->x == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("solve_monotone signals a target outside the range") {
    CHECK_FALSE(solve_monotone([](double x) { return x * x; }, 200.0, 0.0, 10.0));
    CHECK_FALSE(solve_monotone([](double x) { return x; }, -1.0, 0.0, 10.0));
  }

  TEST_CASE("solve_monotone grows the bracket on request") {
    SolveOptions o;
    o.grow = true;
    auto r = solve_monotone([](double x) { return std::log(x); }, 20.0, 1.0, 2.0, o);
    REQUIRE(r);
    CHECK(r->x == doctest::Approx(std::exp(20.0)).epsilon(1e-12));
  }

  TEST_CASE("solve_monotone_log handles roots over many decades") {
    for (double root : {1e-12, 1e-3, 1.0, 1e5, 1e15}) {
      auto r = solve_monotone_log([](double x) { return std::cbrt(x); }, std::cbrt(root), 1e-20, 1e20);
      REQUIRE(r);
      CHECK(std::abs(r->x / root - 1) < 1e-9);
    }
  }

  TEST_CASE("property: bisection oracle agrees with the solver on random cubics") {
    for (int k = 1; k <= 20; ++k) {
      const double a = 0.1 * k, b = 1.0 / k;
      auto f = [&](double x) { return a * x * x * x + b * x; };
      const double target = 0.7 * k;
      auto r = solve_monotone(f, target, 0.0, 50.0);
      REQUIRE(r);
      const double ref = oracle::bisect([&](double x) { return f(x) - target; }, 0.0, 50.0);
      CHECK(r->x == doctest::Approx(ref).epsilon(1e-12));
    }
  }

  TEST_CASE("integrate_adaptive on polynomials, logs and singular endpoints") {
    CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-14) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    const double v = integrate_adaptive([](double r) { return (1 - r * r / 4) / r; }, 1.0, 2.0, 1e-13);
    CHECK(std::abs(v - (std::log(2.0) - 0.375)) < 1e-13);
    QuadOptions o;
    o.endpoints = Endpoints::SqrtSingular;
    const double mass = integrate_adaptive([](double x) { return 1.0 / (M_PI * std::sqrt(4 - x * x)); }, -2.0, 2.0, o);
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }

  TEST_CASE("integrate_adaptive matches Simpson on smooth integrands") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
    CHECK(std::abs(integrate_adaptive(f, 0.0, 4.0, 1e-12) - oracle::simpson(f, 0.0, 4.0)) < 1e-10);
  }

  TEST_CASE("integrate_adaptive_complex splits real and imaginary parts") {
    const cplx v = integrate_adaptive_complex([](double x) { return cplx(x, x * x); }, 0.0, 1.0);
    CHECK(v.real() == doctest::Approx(0.5));
    CHECK(v.imag() == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("laplacian_2d on test fields") {
    CHECK(laplacian_2d([](cplx z) { return std::norm(z); }, cplx(0.3, -0.2)) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(std::abs(laplacian_2d([](cplx z) { return (z * z).real(); }, cplx(0.5, 0.7))) < 1e-6);
    CHECK(std::abs(laplacian_2d([](cplx z) { return std::log(std::abs(z)); }, cplx(1, 1), 1e-3)) < 1e-6);
    CHECK_THROWS_AS(laplacian_2d([](cplx) { return 0.0; }, 0.0, 0.0), DomainError);
  }

  TEST_CASE("property: laplacian of harmonic polynomials vanishes within 10 h^2") {
    const double h = 1e-3;
    for (int k = 1; k <= 6; ++k) {
      auto f = [k](cplx z) { return std::pow(z, k).real() + std::pow(z, k).imag(); };
      const double lap = laplacian_2d(f, cplx(0.4, 0.3), h, false);
      CHECK(std::abs(lap) <= 10 * h * h * std::pow(2.0, k));
    }
  }

  TEST_CASE("wirtinger derivative of |z|^2 is conj(z)") {
    const cplx z(0.3, -0.8);
    const cplx d = wirtinger_d([](cplx w) { return std::norm(w); }, z);
    CHECK(std::abs(d - std::conj(z)) < 1e-9);
  }

  TEST_CASE("GridSpec geometry") {
    const GridSpec g = GridSpec::square(1.0, 4);
    CHECK(g.dx() == doctest::Approx(0.5));
    CHECK(g.centre(0, 0) == cplx(-0.75, -0.75));
    auto c = g.cell_of(cplx(0.1, -0.9));
    REQUIRE(c);
    CHECK(c->first == 2);
    CHECK(c->second == 0);
    CHECK_FALSE(g.cell_of(cplx(1.5, 0)));
    GridSpec bad = g;
    bad.re_steps = 1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = g;
    bad.laplacian_step = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
  }

  TEST_CASE("grid_sweep mass diagnostics") {
    auto disk = [](double r, double d) {
      return [r, d](cplx z) {
        Cell c;
        c.in_spectrum = std::abs(z) <= r;
        c.density = c.in_spectrum ? d : 0.0;
        return c;
      };
    };
    auto res = grid_sweep(disk(1.0, 1.0 / M_PI), GridSpec::square(1.2, 200), 1);
    CHECK(res.total_mass == doctest::Approx(1.0).epsilon(0.01));
    auto circ = grid_sweep(disk(1.0, 1.0 / M_PI), GridSpec::square(1.2, 400), 2);
    CHECK(circ.total_mass >= 0.98);
    CHECK(circ.total_mass <= 1.02);
    auto empty = grid_sweep([](cplx) { return Cell{}; }, GridSpec::square(1.0, 10), 1);
    CHECK(empty.total_mass == 0.0);
    CHECK(empty.count_in_spectrum() == 0);
  }

  TEST_CASE("grid_sweep output does not depend on the thread count") {
    auto f = [](cplx z) {
      Cell c;
      c.density = std::exp(-std::norm(z));
      c.in_spectrum = std::abs(z) < 0.8;
      c.log_delta = std::log(1 + std::norm(z));
      return c;
    };
    const auto g = GridSpec::square(1.0, 37);
    const std::string a = grid_csv(grid_sweep(f, g, 1));
    CHECK(a == grid_csv(grid_sweep(f, g, 3)));
    CHECK(a == grid_csv(grid_sweep(f, g, 8)));
    CHECK(a.rfind("re,im,density,in_spectrum,log_delta\n", 0) == 0);
  }

  TEST_CASE("mark_boundary flags mask transitions") {
    auto res = grid_sweep(
        [](cplx z) {
          Cell c;
          c.in_spectrum = z.real() < 0;
          return c;
        },
        GridSpec::square(1.0, 8), 1);
    for (int iy = 0; iy < 8; ++iy)
      for (int ix = 0; ix < 8; ++ix) {
        const bool edge = ix == 3 || ix == 4;
        CHECK(bool(res.at(ix, iy).flags & flags::boundary) == edge);
      }
  }

  TEST_CASE("parallel_for covers every index once and forwards exceptions") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
      if (i == 7) throw DomainError("boom");
    }));
  }

  TEST_CASE("clip_density") {
    std::uint32_t f = 0;
    CHECK(clip_density(0.5, &f) == 0.5);
    CHECK(f == 0);
    CHECK(clip_density(-1e-10, &f) == 0.0);
    CHECK((f & flags::clipped));
    CHECK_THROWS_AS(clip_density(-1e-3), ValidationError);
    CHECK_THROWS_AS(clip_density(NAN), ValidationError);
  }
}
