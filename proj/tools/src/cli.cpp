#include "brownlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "brown/circular_sum.hpp"
#include "brown/error.hpp"
#include "brown/examples_misc.hpp"
#include "brown/haar_sum.hpp"
#include "brown/measures.hpp"
#include "brown/model_io.hpp"
#include "brown/rmt_lab.hpp"
#include "brownlab/contour.hpp"
#include "brownlab/presets.hpp"

namespace brownlab {

namespace fs = std::filesystem;
namespace num = brown::numerics;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string subcommand;
  std::string preset;
  std::string model_file;
  std::optional<int> grid;
  std::string re_spec, im_spec;
  Params params;
  int n = 150;
  int samples = 200;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::string out = ".";
  // transforms
  std::string law;
  int order = 8;
};

struct Outcome {
  json manifest_extra = json::object();
  std::optional<double> mass;
  std::vector<std::string> warnings;
  std::vector<std::string> outputs;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write " + p.string());
  f << text;
}

std::string read_file(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot read " + p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void parse_axis(const std::string& spec, double& lo, double& hi, int& steps) {
  std::istringstream is(spec);
  std::string a, b, c;
  if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c) || c.find(':') != std::string::npos)
    throw UsageError("axis spec must be a:b:n, got '" + spec + "'");
  try {
    std::size_t pa = 0, pb = 0, pc = 0;
    lo = std::stod(a, &pa);
    hi = std::stod(b, &pb);
    steps = std::stoi(c, &pc);
    if (pa != a.size() || pb != b.size() || pc != c.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("axis spec must be a:b:n, got '" + spec + "'");
  }
}

num::GridSpec make_grid(const RunConfig& c, double half_width, int default_steps) {
  num::GridSpec g = num::GridSpec::square(half_width, c.grid.value_or(default_steps));
  if (!c.re_spec.empty()) parse_axis(c.re_spec, g.re_min, g.re_max, g.re_steps);
  if (!c.im_spec.empty()) parse_axis(c.im_spec, g.im_min, g.im_max, g.im_steps);
  try {
    g.validate();
  } catch (const brown::DomainError& e) {
    throw UsageError(e.what());
  }
  return g;
}

json grid_json(const num::GridSpec& g) {
  return json{{"re", {g.re_min, g.re_max, g.re_steps}}, {"im", {g.im_min, g.im_max, g.im_steps}},
              {"laplacian_step", g.laplacian_step}};
}

Resolved resolve(const RunConfig& c) {
  if (c.preset.empty() == c.model_file.empty()) throw UsageError("give exactly one of --preset or --model");
  if (!c.preset.empty()) return resolve_preset(c.preset, c.params);
  brown::io::ModelFile f;
  try {
    f = brown::io::parse_model_file(read_file(c.model_file));
  } catch (const brown::ValidationError& e) {
    throw UsageError(e.what());
  }
  return resolve_model_file(f, c.params);
}

void flag_warnings(const num::DensityGridResult& r, std::vector<std::string>& w) {
  struct F {
    std::uint32_t bit;
    const char* what;
  };
  const F fs[] = {{num::flags::closure, "cells kept in the spectrum by closure"},
                  {num::flags::boundary, "cells on the support boundary"},
                  {num::flags::degenerate, "cells at degenerate points"},
                  {num::flags::singular, "cells carrying a singular (circle) law"},
                  {num::flags::continuity, "cells whose value is taken by continuity"},
                  {num::flags::clipped, "cells with small negative density clipped to zero"}};
  for (const auto& f : fs) {
    std::size_t k = 0;
    for (const auto& cell : r.cells) k += (cell.flags & f.bit) ? 1 : 0;
    if (k) w.push_back(std::to_string(k) + " " + f.what);
  }
}

// Spectrum mask without densities.
num::DensityGridResult spectrum_mask(const Resolved& r, const num::GridSpec& g, unsigned threads) {
  std::function<bool(cplx)> in;
  switch (r.pipeline) {
    case Pipeline::Haar: in = [&](cplx l) { return brown::haar::spectrum_test(r.model, l); }; break;
    case Pipeline::Circular:
      in = [&](cplx l) { return brown::circular::spectrum_test_circular(r.model, r.t, l); };
      break;
    case Pipeline::Elliptic: {
      const auto e = brown::circular::elliptic_spectrum(r.alpha.real(), r.beta.real());
      in = [e](cplx l) { return e.contains(l); };
      break;
    }
    default: throw UsageError("no spectrum mask for this preset");
  }
  return num::grid_sweep(
      [&](cplx l) {
        num::Cell c;
        c.in_spectrum = in(l);
        c.log_delta = 0.0;
        return c;
      },
      g, threads);
}

Outcome run_examples(const RunConfig& c, const Resolved& r, const fs::path& out) {
  Outcome o;
  if (r.pipeline == Pipeline::Cross) {
    const auto table = brown::examples::cross_leg_table(r.alpha, r.beta, c.grid.value_or(400));
    write_file(out / "legs.csv", brown::examples::leg_csv(table));
    o.outputs.push_back("legs.csv");
    o.manifest_extra["label"] = table.label;
    if (table.label == "extrapolated")
      o.warnings.push_back("leg density for general alpha, beta is the push-forward construction (extrapolated)");
    if (r.alpha == 1.0 && r.beta == cplx(0, 1)) {
      double mass = 0;
      for (int k = 0; k < 4; ++k) mass += brown::examples::integrate_on_leg(k, [](cplx) { return cplx(1); }).real();
      o.mass = mass;
    }
    return o;
  }
  if (r.pipeline == Pipeline::Enclosure) {
    const brown::examples::ConvexHull hull(r.hull);
    const auto pts = brown::examples::unitary_enclosure_region(hull, c.grid.value_or(200));
    write_file(out / "region.csv", brown::examples::region_csv(pts));
    o.outputs.push_back("region.csv");
    o.manifest_extra["label"] = "enclosure";
    o.manifest_extra["points"] = pts.size();
    return o;
  }
  throw UsageError("examples needs --preset cross-u2v2 or enclosure-u2u3");
}

Outcome run_density(const RunConfig& c, const Resolved& r, const fs::path& out) {
  if (r.pipeline == Pipeline::Cross || r.pipeline == Pipeline::Enclosure)
    throw UsageError("density is not defined on a grid for this preset; use 'examples'");
  Outcome o;
  const auto g = make_grid(c, r.half_width, 200);
  num::DensityGridResult res;
  if (r.pipeline == Pipeline::Haar) {
    const brown::haar::HaarSumProblem p(r.model);
    res = brown::haar::density_grid(p, g, c.threads);
  } else if (r.pipeline == Pipeline::Circular) {
    const brown::circular::CircularFlowProblem p(r.model, r.t);
    res = brown::circular::density_grid(p, g, c.threads);
  } else {
    res = brown::circular::elliptic_grid(r.alpha.real(), r.beta.real(), g, c.threads);
  }
  write_file(out / "density.csv", num::grid_csv(res));
  o.outputs.push_back("density.csv");
  o.mass = res.total_mass;
  o.manifest_extra["grid"] = grid_json(g);
  o.manifest_extra["cells_in_spectrum"] = res.count_in_spectrum();
  if (std::abs(res.total_mass - 1.0) > 0.02) o.warnings.push_back("grid mass outside 1 +- 0.02");
  flag_warnings(res, o.warnings);
  return o;
}

Outcome run_spectrum(const RunConfig& c, const Resolved& r, const fs::path& out) {
  Outcome o;
  if (r.pipeline == Pipeline::Cross) {
    const auto cs = brown::examples::symmetry_sum_spectrum(r.alpha, r.beta);
    std::vector<Polyline> lines(2);
    const int n = c.grid.value_or(400);
    const auto pts = cs.sample(n);
    lines[0].points.assign(pts.begin(), pts.begin() + n);
    lines[1].points.assign(pts.begin() + n, pts.end());
    write_file(out / "spectrum.csv", polyline_csv(lines));
    o.outputs.push_back("spectrum.csv");
    return o;
  }
  if (r.pipeline == Pipeline::Enclosure) return run_examples(c, r, out);
  const auto g = make_grid(c, r.half_width, 400);
  const auto mask = spectrum_mask(r, g, c.threads);
  const auto lines = mask_contours(mask);
  write_file(out / "spectrum.csv", polyline_csv(lines));
  o.outputs.push_back("spectrum.csv");
  o.manifest_extra["grid"] = grid_json(g);
  o.manifest_extra["polylines"] = lines.size();
  if (mask.count_in_spectrum() == 0) o.warnings.push_back("spectrum mask is empty at this resolution");
  return o;
}

Outcome run_mc(const RunConfig& c, const Resolved& r, const fs::path& out) {
  if (!r.ensemble) throw UsageError("no matrix model for this input");
  if (c.n < 1 || c.samples < 1) throw UsageError("--n and --samples must be positive");
  Outcome o;
  const auto spec = r.ensemble(c.n);
  const auto cloud = brown::rmt::generate_cloud(*spec, c.samples, c.seed, c.threads);
  write_file(out / "cloud.csv", brown::rmt::cloud_csv(cloud));
  o.outputs.push_back("cloud.csv");
  json d{{"ensemble", cloud.ensemble}, {"eigenvalues", cloud.values.size()}};
  if (r.pipeline == Pipeline::Enclosure) {
    const brown::examples::ConvexHull hull(r.hull);
    d["label"] = "enclosure";
    d["inside_fraction"] = brown::rmt::fraction_where(
        cloud.values, [&](cplx z) { return brown::examples::in_unitary_enclosure(hull, z, 1e-6); });
  } else if (r.pipeline == Pipeline::Cross) {
    const auto cs = brown::examples::symmetry_sum_spectrum(r.alpha, r.beta);
    d["mean_distance_to_spectrum"] = [&] {
      double s = 0;
      for (cplx z : cloud.values) s += cs.distance(z);
      return s / double(cloud.values.size());
    }();
  } else if (!brown::measures::scalar_value(r.model) || r.pipeline != Pipeline::Haar) {
    const auto g = make_grid(c, r.half_width, 400);
    const auto mask = spectrum_mask(r, g, c.threads);
    const auto rep = brown::rmt::compare_cloud_to_density(cloud, mask);
    d["inside_fraction"] = rep.inside_fraction;
    d["outside_window"] = rep.outside_window;
    if (r.pipeline == Pipeline::Circular && std::holds_alternative<brown::measures::Zero>(r.model)) {
      const double t = r.t;
      d["radial_ks"] = brown::rmt::radial_ks(cloud.values, [t](double x) { return std::min(1.0, x * x / t); });
    }
  }
  o.manifest_extra["comparison"] = d;
  return o;
}

brown::measures::SpectralMeasure law_by_name(const RunConfig& c) {
  namespace m = brown::measures;
  if (!c.model_file.empty()) {
    try {
      return brown::io::parse_measure(read_file(c.model_file));
    } catch (const brown::ValidationError& e) {
      throw UsageError(e.what());
    }
  }
  const double t = c.params.t.value_or(1.0);
  if (c.law == "semicircle") return m::Semicircle{t};
  if (c.law == "arcsine") return m::Arcsine{};
  if (c.law == "bernoulli") return m::symmetric_bernoulli();
  if (c.law == "poisson") return m::PoissonKernel{c.params.q.value_or(0.5)};
  if (c.law == "quarter-circle") return m::QuarterCircle{t};
  if (c.law == "dirac") return m::dirac(t);
  throw UsageError("unknown --law '" + c.law + "' (semicircle, arcsine, bernoulli, poisson, quarter-circle, dirac)");
}

Outcome run_transforms(const RunConfig& c, const fs::path& out) {
  if (c.order < 1 || c.order > 40) throw UsageError("--order must lie in 1..40");
  Outcome o;
  const auto law = law_by_name(c);
  brown::measures::validate(law);
  const auto mom = brown::measures::moment_series(law, c.order + 1);
  const auto R = brown::measures::r_transform(law, c.order);
  std::optional<brown::TruncatedSeries> S;
  try {
    S = brown::measures::s_transform(law, c.order);
  } catch (const brown::DomainError& e) {
    o.warnings.push_back(std::string("S-transform undefined: ") + e.what());
  }
  std::ostringstream os;
  os << "k,moment_re,moment_im,r_re,r_im,s_re,s_im\n";
  char buf[256];
  for (int k = 0; k <= c.order; ++k) {
    const cplx s = S ? (*S)[std::size_t(k)] : cplx(NAN, NAN);
    std::snprintf(buf, sizeof buf, "%d,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n", k, mom[std::size_t(k)].real(),
                  mom[std::size_t(k)].imag(), R[std::size_t(k)].real(), R[std::size_t(k)].imag(), s.real(), s.imag());
    os << buf;
  }
  write_file(out / "transforms.csv", os.str());
  o.outputs.push_back("transforms.csv");
  return o;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--preset", c.preset, "Named preset");
  sub->add_option("--model", c.model_file, "Model file (JSON)");
  sub->add_option("--grid", c.grid, "Grid steps per axis")->check(CLI::PositiveNumber);
  sub->add_option("--re", c.re_spec, "Real axis a:b:n");
  sub->add_option("--im", c.im_spec, "Imaginary axis a:b:n");
  sub->add_option("--t", c.params.t, "Variance / nilpotent entry");
  sub->add_option("--alpha", c.params.alpha, "alpha (complex for cross-u2v2)");
  sub->add_option("--beta", c.params.beta, "beta (complex for cross-u2v2)");
  sub->add_option("--q", c.params.q, "Poisson kernel parameter");
  sub->add_option("--n", c.n, "Matrix size");
  sub->add_option("--samples", c.samples, "Number of matrices");
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  sub->add_option("--out", c.out, "Output directory");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Brown measures of free sums: grids, spectra, Monte-Carlo and transforms", "brownlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"density", "Brown density on a grid (density.csv)"},
                      {"spectrum", "Spectrum boundary polylines (spectrum.csv)"},
                      {"mc", "Random-matrix eigenvalue cloud (cloud.csv)"},
                      {"transforms", "Moments, R- and S-transform coefficients (transforms.csv)"},
                      {"examples", "Cross-sum legs and enclosure regions"}};
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, c);
    if (std::string(s.name) == "transforms") {
      sub->add_option("--law", c.law, "semicircle, arcsine, bernoulli, poisson, quarter-circle, dirac");
      sub->add_option("--order", c.order, "Truncation order");
    }
    sub->callback([&c, name = std::string(s.name)] { c.subcommand = name; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  json config{{"subcommand", c.subcommand}, {"version", kVersion}, {"threads", c.threads}};
  try {
    const fs::path outdir(c.out);
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw UsageError("cannot create " + outdir.string());
    if (c.subcommand == "transforms") {
      config["law"] = c.model_file.empty() ? c.law : c.model_file;
      config["order"] = c.order;
      o = run_transforms(c, outdir);
    } else {
      const Resolved r = resolve(c);
      config["preset"] = c.preset.empty() ? json(nullptr) : json(c.preset);
      config["model"] = c.model_file.empty() ? json(nullptr) : json(brown::io::to_json(r.model));
      config["t"] = r.t;
      config["alpha"] = {r.alpha.real(), r.alpha.imag()};
      config["beta"] = {r.beta.real(), r.beta.imag()};
      config["q"] = r.q;
      if (c.subcommand == "mc") {
        config["n"] = c.n;
        config["samples"] = c.samples;
        config["seed"] = c.seed;
        o = run_mc(c, r, outdir);
      } else if (c.subcommand == "density") {
        o = run_density(c, r, outdir);
      } else if (c.subcommand == "spectrum") {
        o = run_spectrum(c, r, outdir);
      } else {
        o = run_examples(c, r, outdir);
      }
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json manifest{{"config", config},
                  {"mass", o.mass ? json(*o.mass) : json(nullptr)},
                  {"runtime_ms", ms},
                  {"warnings", o.warnings},
                  {"outputs", o.outputs}};
    for (auto& [k, v] : o.manifest_extra.items()) manifest[k] = v;
    write_file(outdir / "manifest.json", manifest.dump(2) + "\n");
    for (const auto& f : o.outputs) out << (outdir / f).string() << "\n";
    return kExitOk;
  } catch (const UsageError& e) {
    err << "brownlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const brown::DomainError& e) {
    err << "brownlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const brown::ValidationError& e) {
    err << "brownlab: numerical validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const brown::ConvergenceError& e) {
    err << "brownlab: numerical validation failed: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace brownlab
