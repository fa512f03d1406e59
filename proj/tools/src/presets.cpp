#include "brownlab/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "brown/circular_sum.hpp"
#include "brown/error.hpp"
#include "brown/haar_sum.hpp"
#include "brownlab/cli.hpp"

namespace brownlab {

namespace m = brown::measures;
namespace ens = brown::rmt::ensembles;
using brown::rmt::EnsemblePtr;

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ') s += c;
  if (s.empty()) throw UsageError("empty complex number");
  auto to_d = [&](const std::string& x) {
    char* end = nullptr;
    const double v = std::strtod(x.c_str(), &end);
    if (end == x.c_str() || *end != '\0') throw UsageError("bad complex number '" + raw + "'");
    return v;
  };
  if (s.back() != 'i') return to_d(s);
  s.pop_back();
  auto coef = [&](const std::string& x) {
    if (x.empty() || x == "+") return 1.0;
    if (x == "-") return -1.0;
    return to_d(x);
  };
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, coef(s)};
  return {to_d(s.substr(0, split)), coef(s.substr(split))};
}

namespace {

double real_param(const std::optional<std::string>& s, double def, const char* name) {
  if (!s) return def;
  const cplx z = parse_complex(*s);
  if (z.imag() != 0.0) throw UsageError(std::string("--") + name + " must be real for this preset");
  return z.real();
}

void require_positive(double x, const char* name) {
  if (!(x > 0)) throw UsageError(std::string(name) + " must be positive");
}

// Upper bound on the operator norm of a model.
double norm_bound(const m::OperatorModel& a) {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, m::TwoByTwo>) {
          return std::sqrt(x.frobenius_sq());
        } else if constexpr (std::is_same_v<T, m::FiniteNormal>) {
          double r = 0;
          for (cplx z : x.atoms) r = std::max(r, std::abs(z));
          return r;
        } else if constexpr (std::is_same_v<T, m::NormalSelfAdjoint>) {
          const auto b = m::support_bounds(x.law);
          return std::max(std::abs(b.lo), std::abs(b.hi));
        } else if constexpr (std::is_same_v<T, m::NormalUnitary>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, m::Semicircular>) {
          return 2 * std::sqrt(x.variance);
        } else {
          return 0.0;
        }
      },
      a);
}

// Multiplicities summing to n, by largest remainder.
std::vector<int> multiplicities(const std::vector<double>& w, int n) {
  std::vector<int> k(w.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int used = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = w[i] * n;
    k[i] = int(std::floor(x));
    used += k[i];
    rem.emplace_back(x - k[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first; });
  for (std::size_t j = 0; used < n; ++j, ++used) ++k[rem[j % rem.size()].second];
  return k;
}

EnsemblePtr atoms_ensemble(const std::vector<cplx>& atoms, const std::vector<double>& w, int n) {
  std::vector<cplx> d;
  const auto k = multiplicities(w, n);
  for (std::size_t i = 0; i < atoms.size(); ++i) d.insert(d.end(), std::size_t(k[i]), atoms[i]);
  return ens::diagonal(std::move(d));
}

EnsemblePtr law_ensemble(const m::SpectralMeasure& law, int n) {
  if (const auto* a = std::get_if<m::Atomic>(&law)) return atoms_ensemble(a->positions, a->weights, n);
  if (const auto* s = std::get_if<m::Semicircle>(&law)) return ens::elliptic(n, s->variance, 0.0);
  if (std::holds_alternative<m::Arcsine>(law)) {
    std::vector<cplx> d;
    for (int k = 0; k < n; ++k) d.emplace_back(2 * std::sin(M_PI * ((k + 0.5) / n - 0.5)), 0.0);
    return ens::diagonal(std::move(d));
  }
  if (const auto* p = std::get_if<m::PoissonKernel>(&law)) return ens::poisson(n, p->q);
  throw UsageError("no matrix model for this law");
}

EnsemblePtr model_ensemble(const m::OperatorModel& a, int n) {
  return std::visit(
      [n](const auto& x) -> EnsemblePtr {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, m::TwoByTwo>) {
          if (n % 2) throw UsageError("2x2 model needs even --n");
          brown::rmt::Matrix M = brown::rmt::Matrix::Zero(n, n);
          for (int b = 0; b < n; b += 2) {
            M(b, b) = x.a11;
            M(b, b + 1) = x.a12;
            M(b + 1, b) = x.a21;
            M(b + 1, b + 1) = x.a22;
          }
          return ens::fixed(std::move(M));
        } else if constexpr (std::is_same_v<T, m::FiniteNormal>) {
          return atoms_ensemble(x.atoms, x.weights, n);
        } else if constexpr (std::is_same_v<T, m::NormalSelfAdjoint> || std::is_same_v<T, m::NormalUnitary>) {
          return law_ensemble(x.law, n);
        } else if constexpr (std::is_same_v<T, m::Semicircular>) {
          return ens::elliptic(n, x.variance, 0.0);
        } else {
          return ens::diagonal(std::vector<cplx>(std::size_t(n), 0.0));
        }
      },
      a);
}

// Wraps builder errors from invalid sizes as usage errors.
std::function<EnsemblePtr(int)> guarded(std::function<EnsemblePtr(int)> f) {
  return [f](int n) {
    try {
      return f(n);
    } catch (const brown::ValidationError& e) {
      throw UsageError(e.what());
    }
  };
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"u2+haar",           "u3+haar",           "arcsine+haar", "poisson-q+haar", "nilpotent+haar",
          "symmetry+circular", "nilpotent+circular", "elliptic",     "ginibre",        "cross-u2v2",
          "enclosure-u2u3"};
}

Resolved resolve_preset(const std::string& name, const Params& p) {
  Resolved r;
  r.name = name;
  const double t = p.t.value_or(1.0);
  if (name == "u2+haar") {
    r.model = m::TwoByTwo::diag(1.0, -1.0);
    r.half_width = 2.2;
    r.ensemble = [](int n) { return ens::sum(ens::symmetry(n), ens::haar(n)); };
  } else if (name == "u3+haar") {
    const auto u3 = m::roots_of_unity(3);
    r.model = m::FiniteNormal{u3.positions, u3.weights};
    r.half_width = 2.2;
    r.ensemble = [](int n) { return ens::sum(ens::permutation(n, 3), ens::haar(n)); };
  } else if (name == "arcsine+haar") {
    r.model = m::NormalSelfAdjoint{m::Arcsine{}};
    r.half_width = 3.2;
    r.ensemble = [](int n) { return ens::sum(ens::sum(ens::symmetry(n), ens::conjugated(ens::symmetry(n))), ens::haar(n)); };
  } else if (name == "poisson-q+haar") {
    r.q = p.q.value_or(0.5);
    if (!(r.q >= 0 && r.q < 1)) throw UsageError("--q must lie in [0, 1)");
    r.model = m::NormalUnitary{m::PoissonKernel{r.q}};
    r.half_width = 2.2;
    const double q = r.q;
    r.ensemble = [q](int n) { return ens::sum(ens::poisson(n, q), ens::haar(n)); };
  } else if (name == "nilpotent+haar") {
    require_positive(t, "--t");
    r.t = t;
    r.model = m::TwoByTwo::nilpotent(t);
    r.half_width = 1.15 * brown::haar::nilpotent_spectrum(t).outer() + 0.1;
    r.ensemble = [t](int n) { return ens::sum(ens::nilpotent_blocks(n, t), ens::haar(n)); };
  } else if (name == "symmetry+circular") {
    require_positive(t, "--t");
    r.pipeline = Pipeline::Circular;
    r.t = t;
    r.model = m::TwoByTwo::diag(1.0, -1.0);
    // Widest on the real axis: (x^2 - 1)^2 = t (x^2 + 1).
    r.half_width = 1.1 * std::sqrt(0.5 * (2 + t + std::sqrt(t * t + 8 * t))) + 0.1;
    r.ensemble = [t](int n) { return ens::sum(ens::symmetry(n), ens::ginibre(n, t)); };
  } else if (name == "nilpotent+circular") {
    require_positive(t, "--t");
    r.pipeline = Pipeline::Circular;
    r.t = t;
    r.model = m::TwoByTwo::nilpotent(1.0);
    r.half_width = 1.15 * brown::circular::nilpotent_circular_radius(t) + 0.1;
    r.ensemble = [t](int n) { return ens::sum(ens::nilpotent_blocks(n, 1.0), ens::ginibre(n, t)); };
  } else if (name == "elliptic") {
    r.pipeline = Pipeline::Elliptic;
    const double a = real_param(p.alpha, 1.0, "alpha"), b = real_param(p.beta, 0.25, "beta");
    require_positive(a, "--alpha");
    require_positive(b, "--beta");
    r.alpha = a;
    r.beta = b;
    const auto e = brown::circular::elliptic_spectrum(a, b);
    r.half_width = 1.15 * std::max(e.semi_re, e.semi_im);
    r.ensemble = [a, b](int n) { return ens::elliptic(n, a, b); };
  } else if (name == "ginibre") {
    require_positive(t, "--t");
    r.pipeline = Pipeline::Circular;
    r.t = t;
    r.model = m::Zero{};
    r.half_width = 1.2 * std::sqrt(t);
    r.ensemble = [t](int n) { return ens::ginibre(n, t); };
  } else if (name == "cross-u2v2") {
    r.pipeline = Pipeline::Cross;
    r.alpha = p.alpha ? parse_complex(*p.alpha) : cplx(1.0);
    r.beta = p.beta ? parse_complex(*p.beta) : cplx(0, 1);
    if (r.alpha == 0.0 && r.beta == 0.0) throw UsageError("alpha and beta both zero");
    r.half_width = 1.1 * (std::abs(r.alpha) + std::abs(r.beta));
    const cplx a = r.alpha, b = r.beta;
    r.ensemble = [a, b](int n) {
      return ens::sum(ens::scaled(a, ens::symmetry(n)), ens::scaled(b, ens::conjugated(ens::symmetry(n))));
    };
  } else if (name == "enclosure-u2u3") {
    r.pipeline = Pipeline::Enclosure;
    r.hull = m::roots_of_unity(3).positions;
    r.half_width = 2.2;
    r.ensemble = [](int n) { return ens::sum(ens::symmetry(n), ens::conjugated(ens::permutation(n, 3))); };
  } else {
    std::string known;
    for (const auto& s : preset_names()) known += " " + s;
    throw UsageError("unknown preset '" + name + "'; known:" + known);
  }
  r.ensemble = guarded(r.ensemble);
  return r;
}

Resolved resolve_model_file(const brown::io::ModelFile& f, const Params& p) {
  Resolved r;
  r.name = "model";
  r.model = f.element;
  const double nb = norm_bound(f.element);
  const auto model = f.element;
  if (f.perturbation == brown::io::Perturbation::Haar) {
    r.pipeline = Pipeline::Haar;
    r.half_width = 1.1 * (nb + 1.0);
    r.ensemble = [model](int n) { return ens::sum(model_ensemble(model, n), ens::haar(n)); };
  } else {
    r.pipeline = Pipeline::Circular;
    r.t = p.t.value_or(f.t);
    require_positive(r.t, "t");
    r.half_width = 1.05 * (nb + 2 * std::sqrt(r.t));
    const double t = r.t;
    r.ensemble = [model, t](int n) { return ens::sum(model_ensemble(model, n), ens::ginibre(n, t)); };
  }
  r.ensemble = guarded(r.ensemble);
  return r;
}

}  // namespace brownlab
