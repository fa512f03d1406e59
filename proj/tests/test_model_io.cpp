#include <doctest.h>

#include "brown/error.hpp"
#include "brown/model_io.hpp"

using namespace brown;
using namespace brown::measures;
using namespace brown::io;

TEST_SUITE("model_io") {
  TEST_CASE("measure round trips") {
    const std::vector<SpectralMeasure> ms = {
        atoms_real({-1.0, 2.0}, {0.25, 0.75}), roots_of_unity(3), Semicircle{0.5}, Arcsine{}, QuarterCircle{2.0},
        PoissonKernel{0.7}, Empirical{{cplx(1, 2), cplx(-0.5, 0)}, Domain::Plane}};
    for (const auto& m : ms) {
      const std::string j = to_json(m);
      CHECK(to_json(parse_measure(j)) == j);
    }
  }

  TEST_CASE("model round trips") {
    const std::vector<OperatorModel> as = {TwoByTwo{1.0, cplx(0, 2), 0.0, -1.0},
                                           NormalSelfAdjoint{Arcsine{}},
                                           NormalUnitary{PoissonKernel{0.4}},
                                           FiniteNormal{{1.0, cplx(0, 1)}, {0.5, 0.5}},
                                           Semicircular{2.0},
                                           Zero{}};
    for (const auto& a : as) {
      const std::string j = to_json(a);
      CHECK(to_json(parse_model(j)) == j);
    }
    const auto m = parse_model(R"({"variant":"two_by_two","entries":[[0,1],[[0,0],0]]})");
    const auto* t = std::get_if<TwoByTwo>(&m);
    REQUIRE(t);
    CHECK(t->a12 == cplx(1, 0));
  }

  TEST_CASE("model files") {
    const auto f = parse_model_file(R"({"perturbation":"circular","t":0.5,"element":{"variant":"zero"}})");
    CHECK(f.perturbation == Perturbation::Circular);
    CHECK(f.t == 0.5);
    CHECK(std::holds_alternative<Zero>(f.element));
    CHECK(to_json(parse_model_file(to_json(f))) == to_json(f));
    const auto h = parse_model_file(R"({"perturbation":"haar","element":{"variant":"semicircular","variance":1}})");
    CHECK(h.perturbation == Perturbation::Haar);
  }

  TEST_CASE("malformed input is a validation error") {
    const char* bad[] = {
        "not json",
        R"({"positions":[1]})",
        R"({"variant":"atomic","positions":[1,2],"weights":[0.5]})",
        R"({"variant":"atomic","positions":[1],"weights":[1],"domain":3})",
        R"({"variant":"atomic","positions":[1],"weights":[1],"domain":"torus"})",
        R"({"variant":"semicircle","variance":-1})",
        R"({"variant":"semicircle","variance":"x"})",
        R"({"variant":"wigner"})",
        R"({"variant":"poisson_kernel","q":1.5})",
    };
    for (const char* j : bad) CHECK_THROWS_AS(parse_measure(j), ValidationError);
    CHECK_THROWS_AS(parse_model(R"({"variant":"two_by_two","entries":[[1,2,3],[0,0]]})"), ValidationError);
    CHECK_THROWS_AS(parse_model(R"({"variant":"finite_normal","atoms":[1],"weights":[2]})"), ValidationError);
    CHECK_THROWS_AS(parse_model(R"({"variant":"two_by_two","entries":[[[1],0],[0,0]]})"), ValidationError);
    CHECK_THROWS_AS(parse_model_file(R"({"perturbation":"gaussian","element":{"variant":"zero"}})"), ValidationError);
    CHECK_THROWS_AS(parse_model_file(R"({"perturbation":"circular","t":0,"element":{"variant":"zero"}})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_model_file(R"({"perturbation":"haar"})"), ValidationError);
    CHECK_THROWS_WITH(parse_measure("[]"), doctest::Contains("model json"));
  }
}
