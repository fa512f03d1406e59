#include "brown/rmt_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "brown/error.hpp"

namespace brown::rmt {

namespace {

template <class... F>
struct overload : F... {
  using F::operator()...;
};
template <class... F>
overload(F...) -> overload<F...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("ensemble: " + what);
}

Matrix gaussian(int n, double entry_var, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(entry_var / 2.0));
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

// GUE with E|h_ij|^2 = var / n, i.e. semicircle of variance var in the limit.
Matrix gue(int n, double var, Rng& rng) {
  const Matrix g = gaussian(n, var / n, rng);
  return (g + g.adjoint()) / std::sqrt(2.0);
}

}  // namespace

int EnsembleSpec::dim() const {
  return std::visit(overload{
                        [](const Diagonal& d) { return int(d.values.size()); },
                        [](const FixedMatrix& f) { return int(f.m->rows()); },
                        [](const Conjugated& c) { return c.inner->dim(); },
                        [](const Sum& s) { return s.a->dim(); },
                        [](const Scaled& s) { return s.inner->dim(); },
                        [](const auto& k) { return k.n; },
                    },
                    kind);
}

void EnsembleSpec::validate() const {
  std::visit(overload{
                 [](const Diagonal& d) { require(!d.values.empty(), "empty diagonal"); },
                 [](const FixedMatrix& f) {
                   require(f.m && f.m->rows() >= 1 && f.m->rows() == f.m->cols(), "fixed matrix must be square");
                   require(f.m->allFinite(), "fixed matrix has non-finite entries");
                 },
                 [](const Conjugated& c) {
                   require(bool(c.inner), "missing inner ensemble");
                   c.inner->validate();
                 },
                 [](const Sum& s) {
                   require(s.a && s.b, "missing summand");
                   s.a->validate();
                   s.b->validate();
                   require(s.a->dim() == s.b->dim(), "summand sizes differ");
                 },
                 [](const Scaled& s) {
                   require(bool(s.inner), "missing inner ensemble");
                   s.inner->validate();
                 },
                 [](const Ginibre& g) {
                   require(g.n >= 1, "n >= 1");
                   require(g.variance > 0, "variance > 0");
                 },
                 [](const EllipticGaussian& e) {
                   require(e.n >= 1, "n >= 1");
                   require(e.alpha >= 0 && e.beta >= 0 && e.alpha + e.beta > 0, "alpha, beta >= 0");
                 },
                 [](const FixedSymmetry& f) { require(f.n >= 2 && f.n % 2 == 0, "trace-zero symmetry needs even n"); },
                 [](const PermutationPower& p) {
                   require(p.n >= 1 && p.k >= 1 && p.n % p.k == 0, "permutation power needs k | n");
                 },
                 [](const PoissonUnitary& p) {
                   require(p.n >= 1, "n >= 1");
                   require(p.q >= 0 && p.q < 1, "0 <= q < 1");
                 },
                 [](const NilpotentBlocks& b) { require(b.n >= 2 && b.n % 2 == 0, "nilpotent blocks need even n"); },
                 [](const auto& k) { require(k.n >= 1, "n >= 1"); },
             },
             kind);
}

std::string EnsembleSpec::describe() const {
  char buf[128];
  return std::visit(
      overload{
          [&](const HaarUnitary& k) { return "haar(" + std::to_string(k.n) + ")"; },
          [&](const Ginibre& k) {
            std::snprintf(buf, sizeof buf, "ginibre(%d,%g)", k.n, k.variance);
            return std::string(buf);
          },
          [&](const EllipticGaussian& k) {
            std::snprintf(buf, sizeof buf, "elliptic(%d,%g,%g)", k.n, k.alpha, k.beta);
            return std::string(buf);
          },
          [&](const FixedSymmetry& k) { return "symmetry(" + std::to_string(k.n) + ")"; },
          [&](const PermutationPower& k) { return "permutation(" + std::to_string(k.n) + "," + std::to_string(k.k) + ")"; },
          [&](const PoissonUnitary& k) {
            std::snprintf(buf, sizeof buf, "poisson(%d,%g)", k.n, k.q);
            return std::string(buf);
          },
          [&](const NilpotentBlocks& k) {
            std::snprintf(buf, sizeof buf, "nilpotent_blocks(%d,%g)", k.n, k.t);
            return std::string(buf);
          },
          [&](const Shift& k) { return "shift(" + std::to_string(k.n) + ")"; },
          [&](const Diagonal& k) { return "diagonal(" + std::to_string(k.values.size()) + ")"; },
          [&](const FixedMatrix& k) { return "fixed(" + std::to_string(k.m->rows()) + ")"; },
          [&](const Conjugated& k) { return "conjugated(" + k.inner->describe() + ")"; },
          [&](const Sum& k) { return "sum(" + k.a->describe() + "," + k.b->describe() + ")"; },
          [&](const Scaled& k) {
            std::snprintf(buf, sizeof buf, "scaled(%g%+gi,", k.c.real(), k.c.imag());
            return std::string(buf) + k.inner->describe() + ")";
          },
      },
      kind);
}

namespace ensembles {
namespace {
EnsemblePtr make(auto k) {
  auto p = std::make_shared<EnsembleSpec>(EnsembleSpec{k});
  p->validate();
  return p;
}
}  // namespace
EnsemblePtr haar(int n) { return make(HaarUnitary{n}); }
EnsemblePtr ginibre(int n, double v) { return make(Ginibre{n, v}); }
EnsemblePtr elliptic(int n, double a, double b) { return make(EllipticGaussian{n, a, b}); }
EnsemblePtr symmetry(int n) { return make(FixedSymmetry{n}); }
EnsemblePtr permutation(int n, int k) { return make(PermutationPower{n, k}); }
EnsemblePtr poisson(int n, double q) { return make(PoissonUnitary{n, q}); }
EnsemblePtr nilpotent_blocks(int n, double t) { return make(NilpotentBlocks{n, t}); }
EnsemblePtr shift(int n) { return make(Shift{n}); }
EnsemblePtr diagonal(std::vector<cplx> v) { return make(Diagonal{std::move(v)}); }
EnsemblePtr fixed(Matrix m) { return make(FixedMatrix{std::make_shared<const Matrix>(std::move(m))}); }
EnsemblePtr conjugated(EnsemblePtr inner) { return make(Conjugated{std::move(inner)}); }
EnsemblePtr sum(EnsemblePtr a, EnsemblePtr b) { return make(Sum{std::move(a), std::move(b)}); }
EnsemblePtr scaled(cplx c, EnsemblePtr inner) { return make(Scaled{c, std::move(inner)}); }
}  // namespace ensembles

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 applied to seed and index.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

Matrix sample_haar_unitary(int n, Rng& rng) {
  if (n < 1) throw ValidationError("haar unitary needs n >= 1");
  const Matrix g = gaussian(n, 1.0, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : cplx(1.0);
  }
  return q;
}

Matrix sample_model(const EnsembleSpec& spec, Rng& rng) {
  return std::visit(
      overload{
          [&](const HaarUnitary& k) -> Matrix { return sample_haar_unitary(k.n, rng); },
          [&](const Ginibre& k) -> Matrix { return gaussian(k.n, k.variance / k.n, rng); },
          [&](const EllipticGaussian& k) -> Matrix {
            const Matrix h1 = gue(k.n, k.alpha, rng);
            const Matrix h2 = gue(k.n, k.beta, rng);
            return h1 + cplx(0, 1) * h2;
          },
          [&](const FixedSymmetry& k) -> Matrix {
            Matrix m = Matrix::Zero(k.n, k.n);
            for (int i = 0; i < k.n; ++i) m(i, i) = i < k.n / 2 ? 1.0 : -1.0;
            return m;
          },
          [&](const PermutationPower& k) -> Matrix {
            Matrix m = Matrix::Zero(k.n, k.n);
            for (int b = 0; b < k.n; b += k.k)
              for (int i = 0; i < k.k; ++i) m(b + (i + 1) % k.k, b + i) = 1.0;
            return m;
          },
          [&](const PoissonUnitary& k) -> Matrix {
            Matrix m = Matrix::Zero(k.n, k.n);
            for (int i = 0; i < k.n; ++i) {
              const cplx w = std::polar(1.0, 2 * M_PI * (i + 0.5) / k.n);
              m(i, i) = (w + k.q) / (1.0 + k.q * w);
            }
            return m;
          },
          [&](const NilpotentBlocks& k) -> Matrix {
            Matrix m = Matrix::Zero(k.n, k.n);
            for (int b = 0; b < k.n; b += 2) m(b, b + 1) = k.t;
            return m;
          },
          [&](const Shift& k) -> Matrix {
            Matrix m = Matrix::Zero(k.n, k.n);
            for (int i = 0; i + 1 < k.n; ++i) m(i, i + 1) = 1.0;
            return m;
          },
          [&](const Diagonal& k) -> Matrix {
            const int n = int(k.values.size());
            Matrix m = Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i) m(i, i) = k.values[std::size_t(i)];
            return m;
          },
          [&](const FixedMatrix& k) -> Matrix { return *k.m; },
          [&](const Conjugated& k) -> Matrix {
            const Matrix inner = sample_model(*k.inner, rng);
            const Matrix v = sample_haar_unitary(int(inner.rows()), rng);
            return v * inner * v.adjoint();
          },
          [&](const Sum& k) -> Matrix {
            Matrix a = sample_model(*k.a, rng);
            a += sample_model(*k.b, rng);
            return a;
          },
          [&](const Scaled& k) -> Matrix { return k.c * sample_model(*k.inner, rng); },
      },
      spec.kind);
}

std::vector<cplx> eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("eigenvalues: matrix not square");
  if (!m.allFinite()) throw ValidationError("eigenvalues: non-finite entries");
  const Eigen::Index n = m.rows();
  if (n == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> es(m, true);
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "eigenvalues: " << why << "\n" << m;
    throw ConvergenceError(os.str());
  };
  if (es.info() != Eigen::Success) fail("QR iteration did not converge");
  const double scale = std::max(m.norm(), 1e-300);
  for (Eigen::Index k : {Eigen::Index(0), n / 2, n - 1}) {
    const auto v = es.eigenvectors().col(k);
    const double res = (m * v - es.eigenvalues()(k) * v).norm() / std::max(v.norm(), 1e-300);
    if (!(res <= 1e-8 * scale)) fail("eigenpair residual " + std::to_string(res));
  }
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) out[std::size_t(k)] = es.eigenvalues()(k);
  return out;
}

EigenvalueCloud generate_cloud(const EnsembleSpec& spec, int samples, std::uint64_t seed, unsigned threads) {
  spec.validate();
  if (samples < 1) throw ValidationError("sample count must be positive");
  EigenvalueCloud c;
  c.ensemble = spec.describe();
  c.n = spec.dim();
  c.sample_count = samples;
  c.seed = seed;
  c.values.resize(std::size_t(samples) * std::size_t(c.n));
  numerics::parallel_for(std::size_t(samples), threads, [&](std::size_t i) {
    Rng rng(stream_seed(seed, i));
    const auto ev = eigenvalues(sample_model(spec, rng));
    std::copy(ev.begin(), ev.end(), c.values.begin() + std::ptrdiff_t(i * std::size_t(c.n)));
  });
  return c;
}

std::string cloud_csv(const EigenvalueCloud& c) {
  std::ostringstream os;
  os << "sample_index,re,im\n";
  char buf[96];
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", c.sample_of(k), c.values[k].real(), c.values[k].imag());
    os << buf;
  }
  return os.str();
}

double radial_ks(const std::vector<cplx>& values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw ValidationError("radial_ks: empty sample");
  std::vector<double> r(values.size());
  std::transform(values.begin(), values.end(), r.begin(), [](cplx z) { return std::abs(z); });
  std::sort(r.begin(), r.end());
  const double n = double(r.size());
  double d = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double F = cdf(r[i]);
    d = std::max({d, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
  }
  return d;
}

double fraction_where(const std::vector<cplx>& values, const std::function<bool(cplx)>& pred) {
  if (values.empty()) return 0.0;
  std::size_t k = 0;
  for (cplx z : values) k += pred(z) ? 1 : 0;
  return double(k) / double(values.size());
}

CloudReport compare_cloud_to_density(const EigenvalueCloud& cloud, const numerics::DensityGridResult& res, bool radial) {
  CloudReport rep;
  rep.total = cloud.values.size();
  const auto& g = res.grid;
  for (cplx z : cloud.values) {
    const auto cell = g.cell_of(z);
    if (!cell) {
      ++rep.outside_window;
      continue;
    }
    bool hit = false;
    for (int dy = -1; dy <= 1 && !hit; ++dy)
      for (int dx = -1; dx <= 1 && !hit; ++dx) {
        const int ix = cell->first + dx, iy = cell->second + dy;
        if (ix < 0 || iy < 0 || ix >= g.re_steps || iy >= g.im_steps) continue;
        hit = res.at(ix, iy).in_spectrum;
      }
    rep.inside += hit ? 1 : 0;
  }
  rep.inside_fraction = rep.total ? double(rep.inside) / double(rep.total) : 0.0;
  if (radial) {
    // Radial distribution of grid mass, normalised to a CDF.
    std::vector<std::pair<double, double>> rm;
    rm.reserve(res.cells.size());
    for (int iy = 0; iy < g.im_steps; ++iy)
      for (int ix = 0; ix < g.re_steps; ++ix) {
        const double m = res.at(ix, iy).density * g.cell_area();
        if (m > 0) rm.emplace_back(std::abs(g.centre(ix, iy)), m);
      }
    std::sort(rm.begin(), rm.end());
    std::vector<double> radii(rm.size()), cum(rm.size());
    double acc = 0;
    for (std::size_t i = 0; i < rm.size(); ++i) {
      acc += rm[i].second;
      radii[i] = rm[i].first;
      cum[i] = acc;
    }
    if (acc > 0) {
      for (double& c : cum) c /= acc;
      rep.radial_ks = radial_ks(cloud.values, [&](double r) {
        const auto it = std::upper_bound(radii.begin(), radii.end(), r);
        return it == radii.begin() ? 0.0 : cum[std::size_t(it - radii.begin()) - 1];
      });
    }
  }
  return rep;
}

}  // namespace brown::rmt
