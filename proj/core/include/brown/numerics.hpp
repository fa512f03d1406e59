#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace brown {

using cplx = std::complex<double>;

namespace numerics {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // |fn(x) - target|
  int iterations = 0;
};

struct SolveOptions {
  double rel_tol = 1e-13;   // residual bound relative to max(1, |target|)
  int max_iter = 200;
  // When set, the upper end of the bracket is multiplied by `grow_factor`
  // until it brackets the target or exceeds `grow_limit`.
  bool grow = false;
  double grow_factor = 4.0;
  double grow_limit = 1e30;
};

// Root of a monotone function on [lo, hi]. Returns nullopt when the target is
// not between the endpoint values (after optional bracket growth).
std::optional<RootResult> solve_monotone(const std::function<double(double)>& fn,
                                         double target, double lo, double hi,
                                         const SolveOptions& opt = {});

// Same as solve_monotone but works on log(x) for x in [lo, hi], lo > 0.
// Suited to roots spread over many orders of magnitude.
std::optional<RootResult> solve_monotone_log(const std::function<double(double)>& fn,
                                             double target, double lo, double hi,
                                             const SolveOptions& opt = {});

enum class Endpoints { Smooth, SqrtSingular };

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
  Endpoints endpoints = Endpoints::Smooth;
};

// Globally adaptive Gauss-Kronrod (7/15) integral of fn over [a, b]. With
// Endpoints::SqrtSingular the substitution x = m + h sin(theta) removes
// inverse-square-root endpoint behaviour before integrating.
double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          const QuadOptions& opt = {});
double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          double tol);
cplx integrate_adaptive_complex(const std::function<cplx(double)>& fn, double a, double b,
                                const QuadOptions& opt = {});

// Five-point Laplacian at lambda with step h. With `richardson`,
// returns (4 L(h/2) - L(h)) / 3.
double laplacian_2d(const std::function<double(cplx)>& field, cplx lambda, double h = 1e-3,
                    bool richardson = true);

// d/d(lambda) = (d/dx - i d/dy)/2 by central differences.
cplx wirtinger_d(const std::function<double(cplx)>& field, cplx lambda, double h = 1e-5);

struct GridSpec {
  double re_min = -1.0, re_max = 1.0;
  int re_steps = 2;
  double im_min = -1.0, im_max = 1.0;
  int im_steps = 2;
  double laplacian_step = 1e-3;

  void validate() const;
  double dx() const { return (re_max - re_min) / re_steps; }
  double dy() const { return (im_max - im_min) / im_steps; }
  double cell_area() const { return dx() * dy(); }
  std::size_t size() const { return std::size_t(re_steps) * std::size_t(im_steps); }
  // Cell centres; row-major with the imaginary index outer.
  cplx centre(int ix, int iy) const {
    return {re_min + (ix + 0.5) * dx(), im_min + (iy + 0.5) * dy()};
  }
  std::optional<std::pair<int, int>> cell_of(cplx z) const;

  static GridSpec square(double half_width, int steps);
};

namespace flags {
inline constexpr std::uint32_t closure = 1u << 0;      // lambda in sigma(a), kept by closure
inline constexpr std::uint32_t boundary = 1u << 1;     // 4-neighbourhood crosses the support edge
inline constexpr std::uint32_t degenerate = 1u << 2;   // |lambda - a| is a Dirac law
inline constexpr std::uint32_t singular = 1u << 3;     // cell carries part of a singular measure
inline constexpr std::uint32_t continuity = 1u << 4;   // density taken from neighbouring points
inline constexpr std::uint32_t clipped = 1u << 5;      // tiny negative density clipped to 0
}  // namespace flags

struct Cell {
  double density = 0.0;
  bool in_spectrum = false;
  double log_delta = 0.0;
  std::uint32_t flags = 0;
};

struct DensityGridResult {
  GridSpec grid;
  std::vector<Cell> cells;  // grid.size() entries, row-major
  double total_mass = 0.0;

  const Cell& at(int ix, int iy) const { return cells[std::size_t(iy) * grid.re_steps + ix]; }
  Cell& at(int ix, int iy) { return cells[std::size_t(iy) * grid.re_steps + ix]; }
  // Recompute total_mass by the midpoint rule.
  void update_mass();
  // Set the boundary flag on cells whose 4-neighbours disagree on in_spectrum.
  void mark_boundary();
  std::size_t count_in_spectrum() const;
};

using CellEvaluator = std::function<Cell(cplx)>;

// Evaluate every cell centre. Work is split across `threads` workers
// (0 = hardware concurrency); each cell is written by index, so the result
// does not depend on the thread count.
DensityGridResult grid_sweep(const CellEvaluator& eval, const GridSpec& grid, unsigned threads = 0);

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// Writes `re,im,density,in_spectrum,log_delta` rows with %.12g formatting.
void write_grid_csv(const DensityGridResult& result, const std::string& path);
std::string grid_csv(const DensityGridResult& result);

// Clip densities in (-tol, 0) to zero, throw ValidationError below -tol.
double clip_density(double p, std::uint32_t* cell_flags = nullptr, double tol = 1e-8);

}  // namespace numerics
}  // namespace brown
