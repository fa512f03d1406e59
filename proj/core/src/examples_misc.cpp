#include "brown/examples_misc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "brown/error.hpp"

namespace brown::examples {

cplx CrossSpectrum::point(double s, int sign) const {
  const cplx r = std::sqrt(alpha * alpha + beta * beta + alpha * beta * s);
  return sign >= 0 ? r : -r;
}

std::vector<cplx> CrossSpectrum::sample(int n) const {
  if (n < 2) throw ValidationError("need at least 2 samples per branch");
  std::vector<cplx> out;
  out.reserve(2 * std::size_t(n));
  for (int sign : {1, -1})
    for (int k = 0; k < n; ++k) out.push_back(point(-2.0 + 4.0 * k / (n - 1), sign));
  return out;
}

double CrossSpectrum::distance(cplx z) const {
  const int n = 4001;
  double best = std::numeric_limits<double>::infinity();
  double best_s = 0;
  int best_sign = 1;
  for (int sign : {1, -1})
    for (int k = 0; k < n; ++k) {
      const double s = -2.0 + 4.0 * k / (n - 1);
      const double d = std::abs(point(s, sign) - z);
      if (d < best) best = d, best_s = s, best_sign = sign;
    }
  // Golden-section refinement around the best sample.
  double lo = std::max(-2.0, best_s - 4.0 / (n - 1)), hi = std::min(2.0, best_s + 4.0 / (n - 1));
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  for (int it = 0; it < 80; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (std::abs(point(a, best_sign) - z) < std::abs(point(b, best_sign) - z))
      hi = b;
    else
      lo = a;
  }
  return std::min(best, std::abs(point(0.5 * (lo + hi), best_sign) - z));
}

CrossSpectrum symmetry_sum_spectrum(cplx alpha, cplx beta) {
  if (alpha == 0.0 && beta == 0.0) throw DomainError("alpha and beta both zero");
  return CrossSpectrum{alpha, beta};
}

double symmetry_sum_brown_density(double t) {
  const double a = std::abs(t);
  if (a >= kCrossLegEnd) return 0.0;
  return a / (M_PI * std::sqrt(4.0 - t * t * t * t));
}

std::array<cplx, 4> cross_leg_directions() {
  const double r = 1.0 / std::sqrt(2.0);
  return {cplx(r, r), cplx(-r, -r), cplx(r, -r), cplx(-r, r)};
}

cplx integrate_on_leg(int k, const std::function<cplx(cplx)>& fn) {
  if (k < 0 || k > 3) throw ValidationError("leg index must be 0..3");
  const cplx dir = cross_leg_directions()[std::size_t(k)];
  // t = sqrt2 sin(theta) removes the edge singularity: dt / sqrt(4 - t^4)
  // = dtheta / sqrt(2 + t^2).
  numerics::QuadOptions o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-14;
  return numerics::integrate_adaptive_complex(
      [&](double th) {
        const double t = kCrossLegEnd * std::sin(th);
        return t / (M_PI * std::sqrt(2.0 + t * t)) * fn(dir * t);
      },
      0.0, M_PI / 2, o);
}

cplx integrate_on_legs(const std::function<cplx(cplx)>& fn) {
  cplx s = 0;
  for (int k = 0; k < 4; ++k) s += integrate_on_leg(k, fn);
  return s;
}

double pushforward_leg_density(double s) {
  if (std::abs(s) >= 2.0) return 0.0;
  return 0.5 / (M_PI * std::sqrt(4.0 - s * s));
}

LegTable cross_leg_table(cplx alpha, cplx beta, int n) {
  if (n < 2) throw ValidationError("need at least 2 samples per branch");
  LegTable out;
  if (alpha == 1.0 && beta == cplx(0, 1)) {
    out.label = "exact";
    const double r = 1.0 / std::sqrt(2.0);
    for (cplx dir : {cplx(r, r), cplx(r, -r)})
      for (int k = 0; k < n; ++k) {
        // Open interval (-sqrt2, sqrt2), cell-centred.
        const double t = kCrossLegEnd * (-1.0 + (2.0 * k + 1.0) / n);
        out.rows.push_back({t, dir * t, symmetry_sum_brown_density(t)});
      }
    return out;
  }
  out.label = "extrapolated";
  const auto cs = symmetry_sum_spectrum(alpha, beta);
  for (int sign : {1, -1})
    for (int k = 0; k < n; ++k) {
      const double s = 2.0 * (-1.0 + (2.0 * k + 1.0) / n);
      out.rows.push_back({s, cs.point(s, sign), pushforward_leg_density(s)});
    }
  return out;
}

std::string leg_csv(const LegTable& t) {
  std::ostringstream os;
  os << "t,re,im,density\n";
  char buf[128];
  for (const auto& r : t.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", r.t, r.z.real(), r.z.imag(), r.density);
    os << buf;
  }
  return os.str();
}

namespace {

double cross(cplx o, cplx a, cplx b) { return (a - o).real() * (b - o).imag() - (a - o).imag() * (b - o).real(); }

double segment_distance(cplx a, cplx b, cplx z) {
  const cplx d = b - a;
  const double L = std::norm(d);
  if (L == 0) return std::abs(z - a);
  const double u = std::clamp(((z - a) * std::conj(d)).real() / L, 0.0, 1.0);
  return std::abs(z - (a + u * d));
}

}  // namespace

ConvexHull::ConvexHull(std::vector<cplx> p) {
  if (p.empty()) throw ValidationError("convex hull of no points");
  std::sort(p.begin(), p.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  p.erase(std::unique(p.begin(), p.end(), [](cplx a, cplx b) { return std::abs(a - b) < 1e-14; }), p.end());
  if (p.size() < 3) {
    v_ = p;
    return;
  }
  std::vector<cplx> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 1e-15) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 1e-15) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  v_ = h;
}

bool ConvexHull::contains(cplx z, double tol) const {
  if (v_.size() == 1) return std::abs(z - v_[0]) <= tol;
  if (v_.size() == 2) return segment_distance(v_[0], v_[1], z) <= tol;
  bool inside = true;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (cross(v_[i], v_[(i + 1) % v_.size()], z) < 0) inside = false;
  if (inside) return true;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (segment_distance(v_[i], v_[(i + 1) % v_.size()], z) <= tol) return true;
  return false;
}

std::array<cplx, 2> u2_plus_unitary_enclosure(cplx rho) {
  if (std::abs(rho) > 1.0 + 1e-12) throw DomainError("rho must lie in the closed unit disk");
  const double r = std::abs(rho);
  return {rho + r, rho - r};
}

bool in_unitary_enclosure(const ConvexHull& hull, cplx l, double tol) {
  // lambda = rho + e|rho| (e = +-1) forces |lambda|^2 = 2 e |rho| Re(lambda),
  // so rho = lambda - |lambda|^2 / (2 Re lambda); Re lambda = 0 only for lambda = 0,
  // reached from any real rho.
  if (std::abs(l) <= tol) {
    for (std::size_t i = 0; i < hull.vertices().size(); ++i) {
      const auto& v = hull.vertices();
      const cplx a = v[i], b = v[(i + 1) % v.size()];
      if (std::abs(a.imag()) <= tol) return true;
      if ((a.imag() > 0) != (b.imag() > 0)) return true;
    }
    return false;
  }
  if (std::abs(l.real()) <= tol * tol) return false;
  const cplx rho = l - std::norm(l) / (2.0 * l.real());
  return hull.contains(rho, tol);
}

std::vector<cplx> unitary_enclosure_region(const ConvexHull& hull, int n) {
  if (n < 1) throw ValidationError("resolution must be positive");
  const auto& v = hull.vertices();
  std::vector<cplx> rhos;
  if (v.size() <= 2) {
    const cplx a = v.front(), b = v.back();
    for (int i = 0; i <= n * n; ++i) rhos.push_back(a + (b - a) * (double(i) / (n * n)));
  } else {
    for (std::size_t k = 1; k + 1 < v.size(); ++k)
      for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
          const double u = double(i) / n, w = double(j) / n;
          rhos.push_back(v[0] * (1 - u - w) + v[k] * u + v[k + 1] * w);
        }
  }
  std::set<std::pair<long long, long long>> seen;
  std::vector<cplx> out;
  for (cplx rho : rhos) {
    if (std::abs(rho) > 1.0) rho /= std::abs(rho);
    for (cplx l : u2_plus_unitary_enclosure(rho)) {
      const auto key = std::make_pair(std::llround(l.real() * 1e6), std::llround(l.imag() * 1e6));
      if (seen.insert(key).second) out.push_back(l);
    }
  }
  return out;
}

std::optional<std::array<cplx, 2>> u2_plus_skew_enclosure(double b_mean, double b_norm_sq) {
  if (b_mean * b_mean > b_norm_sq * (1 + 1e-12) + 1e-15)
    throw DomainError("b_mean^2 must not exceed b_norm_sq");
  const double rad = 1.0 - b_norm_sq + b_mean * b_mean;
  if (rad < 0) return std::nullopt;
  const double x = std::sqrt(rad);
  return std::array<cplx, 2>{cplx(x, b_mean), cplx(-x, b_mean)};
}

std::string region_csv(const std::vector<cplx>& pts) {
  std::ostringstream os;
  os << "re,im\n";
  char buf[96];
  for (cplx z : pts) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", z.real(), z.imag());
    os << buf;
  }
  return os.str();
}

}  // namespace brown::examples
