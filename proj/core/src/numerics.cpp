#include "brown/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "brown/error.hpp"

namespace brown::numerics {

namespace {

std::optional<RootResult> solve_bracketed(const std::function<double(double)>& fn, double target,
                                          double lo, double hi, const SolveOptions& opt) {
  const double scale = std::max(1.0, std::abs(target));
  const double tol = opt.rel_tol * scale;
  auto h = [&](double x) { return fn(x) - target; };

  double flo = h(lo);
  double fhi = h(hi);
  if (std::isnan(flo) || std::isnan(fhi)) return std::nullopt;
  if (opt.grow) {
    const double width0 = hi - lo;
    double width = width0;
    while (flo * fhi > 0 && std::abs(fhi) > tol && lo + width < opt.grow_limit) {
      width *= opt.grow_factor;
      hi = lo + width;
      fhi = h(hi);
      if (std::isnan(fhi)) return std::nullopt;
    }
  }
  if (std::abs(flo) <= tol && std::abs(flo) <= std::abs(fhi)) return RootResult{lo, std::abs(flo), 0};
  if (std::abs(fhi) <= tol) return RootResult{hi, std::abs(fhi), 0};
  if (flo * fhi > 0) return std::nullopt;

  boost::uintmax_t iters = static_cast<boost::uintmax_t>(opt.max_iter);
  auto stop = [&](double a, double b) {
    return std::abs(b - a) <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  };
  std::pair<double, double> br;
  try {
    br = boost::math::tools::toms748_solve(h, lo, hi, flo, fhi, stop, iters);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("solve_monotone: ") + e.what());
  }
  const double ra = std::abs(h(br.first));
  const double rb = std::abs(h(br.second));
  RootResult r;
  r.iterations = static_cast<int>(iters);
  if (ra <= rb) {
    r.x = br.first;
    r.residual = ra;
  } else {
    r.x = br.second;
    r.residual = rb;
  }
  return r;
}

}  // namespace

std::optional<RootResult> solve_monotone(const std::function<double(double)>& fn, double target,
                                         double lo, double hi, const SolveOptions& opt) {
  if (!(lo <= hi)) throw DomainError("solve_monotone: empty bracket");
  return solve_bracketed(fn, target, lo, hi, opt);
}

std::optional<RootResult> solve_monotone_log(const std::function<double(double)>& fn,
                                             double target, double lo, double hi,
                                             const SolveOptions& opt) {
  if (!(lo > 0 && lo <= hi)) throw DomainError("solve_monotone_log: bracket must be positive");
  auto g = [&](double u) { return fn(std::exp(u)); };
  SolveOptions o = opt;
  o.grow = false;
  double ulo = std::log(lo);
  double uhi = std::log(hi);
  if (opt.grow) {
    // Grow geometrically in x, i.e. additively in log x.
    const double flo = g(ulo) - target;
    double fhi = g(uhi) - target;
    const double step = std::log(opt.grow_factor);
    const double ulim = std::log(opt.grow_limit);
    while (flo * fhi > 0 && uhi < ulim) {
      uhi += step;
      fhi = g(uhi) - target;
    }
  }
  auto r = solve_bracketed(g, target, ulo, uhi, o);
  if (r) r->x = std::exp(r->x);
  return r;
}

namespace {

struct Piece {
  double a, b, value, err, l1;
  unsigned depth;
  bool operator<(const Piece& o) const { return err < o.err; }
};

// One GK15 panel. Boost reports the panel error in [-1, 1] units, so it is
// rescaled by the half-width here.
Piece gk_panel(const std::function<double(double)>& f, double a, double b, unsigned depth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0, l1 = 0.0;
  const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err * std::abs(b - a) / 2, l1, depth};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          const QuadOptions& opt) {
  if (a == b) return 0.0;
  // Tolerances near machine precision only make the bisection stall.
  const double rel = std::max(opt.rel_tol, 20 * std::numeric_limits<double>::epsilon());
  const unsigned depth = std::min(opt.max_depth, 40u);
  constexpr std::size_t kMaxPanels = 20000;
  std::function<double(double)> g = fn;
  double lo = a, hi = b;
  if (opt.endpoints == Endpoints::SqrtSingular) {
    const double m = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    g = [&fn, m, hw](double th) { return fn(m + hw * std::sin(th)) * hw * std::cos(th); };
    lo = -M_PI / 2;
    hi = M_PI / 2;
  }
  // Global adaptive bisection: always split the panel with the largest error.
  std::priority_queue<Piece> open;
  std::vector<Piece> done;
  open.push(gk_panel(g, lo, hi, 0));
  double value = open.top().value, err = open.top().err, l1 = open.top().l1;
  auto target = [&] { return std::max(opt.abs_tol, rel * std::abs(value)); };
  while (!open.empty() && err > target() && open.size() + done.size() < kMaxPanels) {
    const Piece p = open.top();
    open.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (p.depth >= depth || !(mid > p.a && mid < p.b)) {
      done.push_back(p);
      continue;
    }
    const Piece left = gk_panel(g, p.a, mid, p.depth + 1), right = gk_panel(g, mid, p.b, p.depth + 1);
    value += left.value + right.value - p.value;
    err += left.err + right.err - p.err;
    l1 += left.l1 + right.l1 - p.l1;
    open.push(left);
    open.push(right);
  }
  if (!std::isfinite(value)) throw ConvergenceError("integrate_adaptive: non-finite integral");
  // Re-sum to drop the drift of the running updates.
  value = err = 0.0;
  for (; !open.empty(); open.pop()) done.push_back(open.top());
  l1 = 0.0;
  for (const auto& p : done) {
    value += p.value;
    err += p.err;
    l1 += p.l1;
  }
  // Panels that hit the depth limit (integrable singularities) get a
  // thousandfold slack before the result counts as failed.
  const double bound = 1e3 * std::max({opt.abs_tol, rel * std::abs(value), rel * l1});
  if (err > bound) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "integrate_adaptive: tolerance not reached on [%.6g, %.6g] (error %.3e > %.3e)", a,
                  b, err, bound);
    throw ConvergenceError(msg);
  }
  return value;
}

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b, double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  return integrate_adaptive(fn, a, b, o);
}

cplx integrate_adaptive_complex(const std::function<cplx(double)>& fn, double a, double b,
                                const QuadOptions& opt) {
  const double re = integrate_adaptive([&](double x) { return fn(x).real(); }, a, b, opt);
  const double im = integrate_adaptive([&](double x) { return fn(x).imag(); }, a, b, opt);
  return {re, im};
}

namespace {
double five_point(const std::function<double(cplx)>& f, cplx z, double h) {
  const double c = f(z);
  return (f(z + h) + f(z - h) + f(z + cplx(0, h)) + f(z - cplx(0, h)) - 4 * c) / (h * h);
}
}  // namespace

double laplacian_2d(const std::function<double(cplx)>& field, cplx lambda, double h, bool richardson) {
  if (!(h > 0)) throw DomainError("laplacian_2d: step must be positive");
  const double l1 = five_point(field, lambda, h);
  if (!richardson) return l1;
  const double l2 = five_point(field, lambda, h / 2);
  return (4 * l2 - l1) / 3;
}

cplx wirtinger_d(const std::function<double(cplx)>& field, cplx lambda, double h) {
  const double dx = (field(lambda + h) - field(lambda - h)) / (2 * h);
  const double dy = (field(lambda + cplx(0, h)) - field(lambda - cplx(0, h))) / (2 * h);
  return 0.5 * cplx(dx, -dy);
}

void GridSpec::validate() const {
  if (re_steps < 2 || im_steps < 2) throw DomainError("grid: steps must be >= 2");
  if (!(re_max > re_min) || !(im_max > im_min)) throw DomainError("grid: empty window");
  if (!(laplacian_step > 0)) throw DomainError("grid: laplacian step must be positive");
}

std::optional<std::pair<int, int>> GridSpec::cell_of(cplx z) const {
  const double fx = (z.real() - re_min) / dx();
  const double fy = (z.imag() - im_min) / dy();
  if (!(fx >= 0 && fy >= 0 && fx < re_steps && fy < im_steps)) return std::nullopt;
  return std::make_pair(static_cast<int>(fx), static_cast<int>(fy));
}

GridSpec GridSpec::square(double half_width, int steps) {
  GridSpec g;
  g.re_min = g.im_min = -half_width;
  g.re_max = g.im_max = half_width;
  g.re_steps = g.im_steps = steps;
  return g;
}

void DensityGridResult::update_mass() {
  double m = 0.0;
  for (const auto& c : cells) m += c.density;
  total_mass = m * grid.cell_area();
}

void DensityGridResult::mark_boundary() {
  const int nx = grid.re_steps;
  const int ny = grid.im_steps;
  std::vector<char> mask(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) mask[i] = cells[i].in_spectrum;
  auto m = [&](int x, int y) { return mask[std::size_t(y) * nx + x]; };
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      const char c = m(x, y);
      bool edge = (x > 0 && m(x - 1, y) != c) || (x + 1 < nx && m(x + 1, y) != c) ||
                  (y > 0 && m(x, y - 1) != c) || (y + 1 < ny && m(x, y + 1) != c);
      if (edge) at(x, y).flags |= flags::boundary;
    }
  }
}

std::size_t DensityGridResult::count_in_spectrum() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return c.in_spectrum; }));
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  // Strided static partition: no shared counters, and the output of each
  // index is independent of the schedule.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

DensityGridResult grid_sweep(const CellEvaluator& eval, const GridSpec& grid, unsigned threads) {
  grid.validate();
  DensityGridResult out;
  out.grid = grid;
  out.cells.resize(grid.size());
  const int nx = grid.re_steps;
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const int ix = static_cast<int>(i % nx);
    const int iy = static_cast<int>(i / nx);
    out.cells[i] = eval(grid.centre(ix, iy));
  });
  out.mark_boundary();
  out.update_mass();
  return out;
}

std::string grid_csv(const DensityGridResult& r) {
  std::string s = "re,im,density,in_spectrum,log_delta\n";
  s.reserve(r.cells.size() * 64);
  char buf[160];
  for (int iy = 0; iy < r.grid.im_steps; ++iy) {
    for (int ix = 0; ix < r.grid.re_steps; ++ix) {
      const cplx z = r.grid.centre(ix, iy);
      const Cell& c = r.at(ix, iy);
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d,%.12g\n", z.real(), z.imag(), c.density,
                    c.in_spectrum ? 1 : 0, c.log_delta);
      s += buf;
    }
  }
  return s;
}

void write_grid_csv(const DensityGridResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << grid_csv(result);
}

double clip_density(double p, std::uint32_t* cell_flags, double tol) {
  if (std::isnan(p)) throw ValidationError("density is NaN");
  if (p >= 0) return p;
  if (p > -tol) {
    if (cell_flags) *cell_flags |= flags::clipped;
    return 0.0;
  }
  throw ValidationError("negative density " + std::to_string(p));
}

}  // namespace brown::numerics
