#include <doctest.h>

#include <utility>

#include <cmath>

#include "brown/error.hpp"
#include "brown/series.hpp"
#include "oracles.hpp"

using namespace brown;

namespace {
oracle::Series coeffs(const TruncatedSeries& s) { return s.coefficients(); }
}  // namespace

TEST_SUITE("series") {
  TEST_CASE("arithmetic truncates at the smaller order") {
    TruncatedSeries a{1.0, 2.0, 3.0};
    TruncatedSeries b{0.0, 1.0};
    const auto c = a * b;
    CHECK(c.order() == 1);
    CHECK(c[1] == cplx(1.0));
    CHECK((a + a)[2] == cplx(6.0));
    CHECK((a - a).max_abs_diff(TruncatedSeries(2)) == 0.0);
    CHECK(a.evaluate(0.5) == cplx(1 + 1 + 0.75));
    CHECK(std::as_const(a)[7] == cplx(0.0));
  }

  TEST_CASE("reciprocal of 1 - z is the geometric series") {
    TruncatedSeries s(10);
    s[0] = 1.0;
    s[1] = -1.0;
    const auto r = s.reciprocal();
    for (int k = 0; k <= 10; ++k) CHECK(std::abs(r[k] - 1.0) < 1e-15);
    CHECK_THROWS_AS((TruncatedSeries{0.0, 1.0}.reciprocal()), DomainError);
  }

  TEST_CASE("reversion of z + z^2 gives Catalan numbers with signs") {
    TruncatedSeries g(12);
    g[1] = 1.0;
    g[2] = 1.0;
    const auto h = g.revert();
    for (int k = 1; k <= 12; ++k) CHECK(std::abs(h[k] - std::pow(-1.0, k - 1) * oracle::catalan(k - 1)) < 1e-9);
    CHECK_THROWS_AS((TruncatedSeries{1.0, 1.0}.revert()), DomainError);
  }

  TEST_CASE("property: revert matches the fixed-point oracle and composes to identity") {
    for (int seed = 1; seed <= 10; ++seed) {
      TruncatedSeries g(10);
      for (int k = 1; k <= 10; ++k) g[k] = cplx(std::sin(seed * k), std::cos(seed + k)) / double(k);
      g[1] = cplx(1.0 + 0.1 * seed, 0.2);
      const auto h = g.revert();
      CHECK(oracle::max_diff(coeffs(h), oracle::revert(coeffs(g)), 10) < 1e-9);
      const auto id = g.compose(h);
      CHECK(id.max_abs_diff(TruncatedSeries::identity(10)) < 1e-10);
    }
  }

  TEST_CASE("compose, derivative and shifts") {
    TruncatedSeries outer{1.0, 1.0, 1.0};
    TruncatedSeries inner{0.0, 2.0};
    const auto c = outer.compose(inner);
    CHECK(c[0] == cplx(1.0));
    CHECK(c[1] == cplx(2.0));
    CHECK(inner.multiply_by_z()[2] == cplx(2.0));
    CHECK(inner.divide_by_z()[0] == cplx(2.0));
    CHECK(outer.derivative()[1] == cplx(2.0));
    CHECK_THROWS_AS(outer.compose(outer), DomainError);
  }
}
