#include "brown/model_io.hpp"

#include <json.hpp>

#include "brown/error.hpp"

namespace brown::io {

using nlohmann::json;
using namespace measures;

namespace {

template <class... F>
struct overload : F... {
  using F::operator()...;
};
template <class... F>
overload(F...) -> overload<F...>;

[[noreturn]] void bad(const std::string& what) { throw ValidationError("model json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double num(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

cplx cnum(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  bad("complex number must be a number or [re, im]");
}

json cjson(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

std::vector<cplx> clist(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const auto& e : j) out.push_back(cnum(e));
  return out;
}

std::vector<double> dlist(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(num(e, what));
  return out;
}

Domain domain_from(const std::string& s) {
  if (s == "real") return Domain::Real;
  if (s == "circle") return Domain::Circle;
  if (s == "plane") return Domain::Plane;
  bad("unknown domain '" + s + "'");
}

const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Real: return "real";
    case Domain::Circle: return "circle";
    case Domain::Plane: return "plane";
  }
  return "real";
}

Domain domain_field(const json& j, Domain fallback) {
  if (!j.contains("domain")) return fallback;
  if (!j.at("domain").is_string()) bad("'domain' must be a string");
  return domain_from(j.at("domain").get<std::string>());
}

std::string variant_of(const json& j) {
  const auto& v = field(j, "variant");
  if (!v.is_string()) bad("'variant' must be a string");
  return v.get<std::string>();
}

SpectralMeasure measure_from(const json& j) {
  const std::string v = variant_of(j);
  SpectralMeasure m;
  if (v == "atomic") {
    Atomic a;
    a.positions = clist(field(j, "positions"), "positions");
    a.weights = dlist(field(j, "weights"), "weights");
    a.domain = domain_field(j, Domain::Real);
    m = a;
  } else if (v == "semicircle") {
    m = Semicircle{num(field(j, "variance"), "variance")};
  } else if (v == "arcsine") {
    m = Arcsine{};
  } else if (v == "quarter_circle") {
    m = QuarterCircle{num(field(j, "scale"), "scale")};
  } else if (v == "poisson_kernel") {
    m = PoissonKernel{num(field(j, "q"), "q")};
  } else if (v == "empirical") {
    Empirical e;
    e.samples = clist(field(j, "samples"), "samples");
    e.domain = domain_field(j, Domain::Plane);
    m = e;
  } else {
    bad("unknown measure variant '" + v + "'");
  }
  try {
    validate(m);
  } catch (const std::exception& e) {
    bad(e.what());
  }
  return m;
}

json measure_json(const SpectralMeasure& m) {
  return std::visit(overload{
                        [](const Atomic& a) {
                          json p = json::array();
                          for (cplx z : a.positions) p.push_back(cjson(z));
                          return json{{"variant", "atomic"}, {"positions", p}, {"weights", a.weights},
                                      {"domain", domain_name(a.domain)}};
                        },
                        [](const Semicircle& s) { return json{{"variant", "semicircle"}, {"variance", s.variance}}; },
                        [](const Arcsine&) { return json{{"variant", "arcsine"}}; },
                        [](const QuarterCircle& q) { return json{{"variant", "quarter_circle"}, {"scale", q.scale}}; },
                        [](const PoissonKernel& p) { return json{{"variant", "poisson_kernel"}, {"q", p.q}}; },
                        [](const Empirical& e) {
                          json s = json::array();
                          for (cplx z : e.samples) s.push_back(cjson(z));
                          return json{{"variant", "empirical"}, {"samples", s}, {"domain", domain_name(e.domain)}};
                        },
                    },
                    m);
}

OperatorModel model_from(const json& j) {
  const std::string v = variant_of(j);
  OperatorModel a;
  if (v == "two_by_two") {
    const auto& e = field(j, "entries");
    if (!e.is_array() || e.size() != 2 || !e[0].is_array() || !e[1].is_array() || e[0].size() != 2 || e[1].size() != 2)
      bad("entries must be a 2x2 array");
    a = TwoByTwo{cnum(e[0][0]), cnum(e[0][1]), cnum(e[1][0]), cnum(e[1][1])};
  } else if (v == "self_adjoint") {
    a = NormalSelfAdjoint{measure_from(field(j, "law"))};
  } else if (v == "unitary") {
    a = NormalUnitary{measure_from(field(j, "law"))};
  } else if (v == "finite_normal") {
    a = FiniteNormal{clist(field(j, "atoms"), "atoms"), dlist(field(j, "weights"), "weights")};
  } else if (v == "semicircular") {
    a = Semicircular{num(field(j, "variance"), "variance")};
  } else if (v == "zero") {
    a = Zero{};
  } else {
    bad("unknown model variant '" + v + "'");
  }
  try {
    validate(a);
  } catch (const std::exception& e) {
    bad(e.what());
  }
  return a;
}

json model_json(const OperatorModel& a) {
  return std::visit(
      overload{
          [](const TwoByTwo& m) {
            return json{{"variant", "two_by_two"},
                        {"entries", json::array({json::array({cjson(m.a11), cjson(m.a12)}),
                                                 json::array({cjson(m.a21), cjson(m.a22)})})}};
          },
          [](const NormalSelfAdjoint& m) { return json{{"variant", "self_adjoint"}, {"law", measure_json(m.law)}}; },
          [](const NormalUnitary& m) { return json{{"variant", "unitary"}, {"law", measure_json(m.law)}}; },
          [](const FiniteNormal& m) {
            json p = json::array();
            for (cplx z : m.atoms) p.push_back(cjson(z));
            return json{{"variant", "finite_normal"}, {"atoms", p}, {"weights", m.weights}};
          },
          [](const Semicircular& s) { return json{{"variant", "semicircular"}, {"variance", s.variance}}; },
          [](const Zero&) { return json{{"variant", "zero"}}; },
      },
      a);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

SpectralMeasure parse_measure(const std::string& text) { return measure_from(parse_text(text)); }
OperatorModel parse_model(const std::string& text) { return model_from(parse_text(text)); }
std::string to_json(const SpectralMeasure& m) { return measure_json(m).dump(); }
std::string to_json(const OperatorModel& a) { return model_json(a).dump(); }

ModelFile parse_model_file(const std::string& text) {
  const json j = parse_text(text);
  ModelFile f;
  const auto& p = field(j, "perturbation");
  if (!p.is_string()) bad("'perturbation' must be a string");
  const std::string ps = p.get<std::string>();
  if (ps == "haar")
    f.perturbation = Perturbation::Haar;
  else if (ps == "circular")
    f.perturbation = Perturbation::Circular;
  else
    bad("unknown perturbation '" + ps + "'");
  if (j.contains("t")) f.t = num(j.at("t"), "t");
  if (f.perturbation == Perturbation::Circular && !(f.t > 0)) bad("t must be positive");
  f.element = model_from(field(j, "element"));
  return f;
}

std::string to_json(const ModelFile& f) {
  json j{{"perturbation", f.perturbation == Perturbation::Haar ? "haar" : "circular"},
         {"t", f.t},
         {"element", model_json(f.element)}};
  return j.dump();
}

}  // namespace brown::io
