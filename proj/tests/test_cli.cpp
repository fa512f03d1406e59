#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brownlab/cli.hpp"
#include "brownlab/presets.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run brownlab_run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int code = brownlab::run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("brownlab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    std::vector<double> r;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(brownlab_run({}).code == brownlab::kExitUsage);
    CHECK(brownlab_run({"frobnicate"}).code == brownlab::kExitUsage);
    CHECK(brownlab_run({"density", "--grid", "-3"}).code == brownlab::kExitUsage);
    const auto d = scratch("usage");
    CHECK(brownlab_run({"density", "--preset", "no-such", "--out", d.string()}).code == brownlab::kExitUsage);
    CHECK(brownlab_run({"density", "--out", d.string()}).code == brownlab::kExitUsage);
    CHECK(brownlab_run({"density", "--preset", "cross-u2v2", "--out", d.string()}).code == brownlab::kExitUsage);
    CHECK(brownlab_run({"density", "--preset", "elliptic", "--alpha", "-1", "--out", d.string()}).code ==
          brownlab::kExitUsage);
    CHECK(brownlab_run({"density", "--model", (d / "missing.json").string(), "--out", d.string()}).code ==
          brownlab::kExitUsage);
    CHECK(brownlab_run({"--help"}).code == brownlab::kExitOk);
  }

  TEST_CASE("every preset produces density or example output") {
    for (const auto& name : brownlab::preset_names()) {
      const auto d = scratch("preset");
      const bool examples = name == "cross-u2v2" || name == "enclosure-u2u3";
      const auto r = brownlab_run({examples ? "examples" : "density", "--preset", name, "--grid", "40", "--out",
                                   d.string(), "--threads", "2"});
      CHECK_MESSAGE(r.code == 0, name << ": " << r.err);
      const json m = json::parse(slurp(d / "manifest.json"));
      for (const char* key : {"config", "mass", "runtime_ms", "warnings", "outputs"}) CHECK(m.contains(key));
      CHECK(m["outputs"].size() >= 1);
    }
  }

  TEST_CASE("elliptic density is constant inside") {
    const auto d = scratch("elliptic");
    const auto r = brownlab_run(
        {"density", "--preset", "elliptic", "--alpha", "1", "--beta", "0.25", "--grid", "80", "--out", d.string()});
    REQUIRE(r.code == 0);
    const double expect = 5 / (4 * M_PI);
    int interior = 0, off = 0;
    for (const auto& row : csv_rows(d / "density.csv")) {
      REQUIRE(row.size() == 5);
      const double x = row[0] / 1.788854, y = row[1] / 0.447214;
      if (x * x + y * y < 0.8) {
        ++interior;
        if (std::abs(row[2] - expect) > 1e-6) ++off;
      }
    }
    CHECK(interior > 100);
    CHECK(off == 0);
  }

  TEST_CASE("u2 + haar spectrum polylines follow the lemniscate") {
    const auto d = scratch("spectrum");
    const auto r = brownlab_run({"spectrum", "--preset", "u2+haar", "--grid", "200", "--out", d.string()});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(d / "spectrum.csv");
    REQUIRE(rows.size() > 50);
    double worst = 0;
    for (const auto& row : rows) {
      const std::complex<double> l(row[1], row[2]);
      // Distance proxy: the defining function divided by its gradient scale.
      const double g = std::norm(l) + 1 - std::norm(l * l - 1.0);
      worst = std::max(worst, std::abs(g) / (2 + 4 * std::abs(l) * std::abs(l)));
    }
    CHECK(worst < 0.05);
  }

  TEST_CASE("seeded runs are byte-identical") {
    const auto a = scratch("mc_a"), b = scratch("mc_b");
    const std::vector<std::string> base = {"mc", "--preset", "u2+haar", "--n", "20", "--samples", "5", "--seed", "9",
                                           "--grid", "60"};
    auto args_a = base, args_b = base;
    args_a.insert(args_a.end(), {"--out", a.string(), "--threads", "1"});
    args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "3"});
    REQUIRE(brownlab_run(args_a).code == 0);
    REQUIRE(brownlab_run(args_b).code == 0);
    CHECK(slurp(a / "cloud.csv") == slurp(b / "cloud.csv"));
    CHECK(csv_rows(a / "cloud.csv").size() == 100);
    json ma = json::parse(slurp(a / "manifest.json")), mb = json::parse(slurp(b / "manifest.json"));
    ma.erase("runtime_ms");
    mb.erase("runtime_ms");
    ma["config"].erase("threads");
    mb["config"].erase("threads");
    CHECK(ma.dump() == mb.dump());
  }

  TEST_CASE("model files drive the pipelines") {
    const auto d = scratch("model");
    fs::create_directories(d);
    {
      std::ofstream f(d / "m.json");
      f << R"({"perturbation":"circular","t":1.0,"element":{"variant":"zero"}})";
    }
    const auto r = brownlab_run({"density", "--model", (d / "m.json").string(), "--grid", "60", "--out", d.string()});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(d / "density.csv");
    for (const auto& row : rows)
      if (row[0] * row[0] + row[1] * row[1] < 0.8) CHECK(row[2] == doctest::Approx(1 / M_PI).epsilon(1e-9));
    {
      std::ofstream f(d / "bad.json");
      f << R"({"perturbation":"haar","element":{"variant":"atomic"}})";
    }
    CHECK(brownlab_run({"density", "--model", (d / "bad.json").string(), "--out", d.string()}).code ==
          brownlab::kExitUsage);
  }

  TEST_CASE("transforms table") {
    const auto d = scratch("transforms");
    const auto r = brownlab_run({"transforms", "--law", "semicircle", "--order", "6", "--out", d.string()});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(d / "transforms.csv");
    REQUIRE(rows.size() >= 6);
    // Semicircle: R = z^2 and the S-transform is undefined (zero mean).
    for (const auto& row : rows) {
      const int k = int(row[0]);
      CHECK(row[3] == doctest::Approx(k == 2 ? 1.0 : 0.0));
    }
    CHECK(brownlab_run({"transforms", "--law", "cauchy", "--out", d.string()}).code == brownlab::kExitUsage);
  }

  TEST_CASE("complex parameters") {
    using brownlab::parse_complex;
    CHECK(parse_complex("1") == std::complex<double>(1, 0));
    CHECK(parse_complex("i") == std::complex<double>(0, 1));
    CHECK(parse_complex("-i") == std::complex<double>(0, -1));
    CHECK(parse_complex("0.5+2i") == std::complex<double>(0.5, 2));
    CHECK(parse_complex("1e-3-4i") == std::complex<double>(1e-3, -4));
    CHECK_THROWS(parse_complex("two"));
  }
}
