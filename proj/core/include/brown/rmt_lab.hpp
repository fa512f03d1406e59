#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "brown/numerics.hpp"

namespace brown::rmt {

using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

struct EnsembleSpec;
using EnsemblePtr = std::shared_ptr<const EnsembleSpec>;

struct HaarUnitary {
  int n = 1;
};
// iid complex Gaussian entries with E|x_ij|^2 = variance / n.
struct Ginibre {
  int n = 1;
  double variance = 1.0;
};
// H1 + i H2 with independent GUE matrices of semicircle variances alpha, beta.
struct EllipticGaussian {
  int n = 1;
  double alpha = 1.0;
  double beta = 1.0;
};
// diag(+1, ..., +1, -1, ..., -1), trace zero.
struct FixedSymmetry {
  int n = 2;
};
// Block permutation made of n/k cycles of length k.
struct PermutationPower {
  int n = 1;
  int k = 1;
};
// Diagonal unitary with deterministic quantiles of the Poisson kernel law.
struct PoissonUnitary {
  int n = 1;
  double q = 0.0;
};
// Block diagonal with n/2 copies of [[0, t], [0, 0]].
struct NilpotentBlocks {
  int n = 2;
  double t = 1.0;
};
// Single n x n Jordan shift.
struct Shift {
  int n = 1;
};
struct Diagonal {
  std::vector<cplx> values;
};
// A fixed matrix, the same in every sample.
struct FixedMatrix {
  std::shared_ptr<const Matrix> m;
};
// V M V* with V Haar, drawn per sample.
struct Conjugated {
  EnsemblePtr inner;
};
struct Sum {
  EnsemblePtr a, b;
};
struct Scaled {
  cplx c = 1.0;
  EnsemblePtr inner;
};

struct EnsembleSpec {
  std::variant<HaarUnitary, Ginibre, EllipticGaussian, FixedSymmetry, PermutationPower, PoissonUnitary,
               NilpotentBlocks, Shift, Diagonal, FixedMatrix, Conjugated, Sum, Scaled>
      kind;

  int dim() const;
  void validate() const;
  std::string describe() const;
};

namespace ensembles {
EnsemblePtr haar(int n);
EnsemblePtr ginibre(int n, double variance);
EnsemblePtr elliptic(int n, double alpha, double beta);
EnsemblePtr symmetry(int n);
EnsemblePtr permutation(int n, int k);
EnsemblePtr poisson(int n, double q);
EnsemblePtr nilpotent_blocks(int n, double t);
EnsemblePtr shift(int n);
EnsemblePtr diagonal(std::vector<cplx> values);
EnsemblePtr fixed(Matrix m);
EnsemblePtr conjugated(EnsemblePtr inner);
EnsemblePtr sum(EnsemblePtr a, EnsemblePtr b);
EnsemblePtr scaled(cplx c, EnsemblePtr inner);
}  // namespace ensembles

// Seed of the stream for sample index i.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

// QR of a complex Gaussian matrix with the phases of diag(R) divided out.
Matrix sample_haar_unitary(int n, Rng& rng);
Matrix sample_model(const EnsembleSpec& spec, Rng& rng);

// All eigenvalues; checks ||Av - lv|| <= 1e-8 ||A|| on a few pairs and
// throws ConvergenceError with the matrix otherwise.
std::vector<cplx> eigenvalues(const Matrix& m);

struct EigenvalueCloud {
  std::string ensemble;
  int n = 0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<cplx> values;  // sample-major, n values per sample
  int sample_of(std::size_t k) const { return int(k / std::size_t(n)); }
};

EigenvalueCloud generate_cloud(const EnsembleSpec& spec, int samples, std::uint64_t seed, unsigned threads = 0);
std::string cloud_csv(const EigenvalueCloud& c);

struct CloudReport {
  std::size_t total = 0;
  std::size_t inside = 0;          // in the mask dilated by one cell
  std::size_t outside_window = 0;  // outside the grid window
  double inside_fraction = 0.0;
  std::optional<double> radial_ks;
};

// Inside fraction against the grid mask dilated by one cell and, when
// radial is set, the KS distance between the empirical law of |lambda| and
// the radial distribution of grid mass.
CloudReport compare_cloud_to_density(const EigenvalueCloud& cloud, const numerics::DensityGridResult& grid,
                                     bool radial = false);
// KS distance between the empirical law of |lambda| and a radial CDF.
double radial_ks(const std::vector<cplx>& values, const std::function<double(double)>& cdf);
// Fraction of values satisfying pred.
double fraction_where(const std::vector<cplx>& values, const std::function<bool(cplx)>& pred);

}  // namespace brown::rmt
