#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double bisect(const std::function<double(double)>& f, double lo, double hi, int iters) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double catalan(int n) { return binomial(2 * n, n) / (n + 1); }

Series mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series compose(const Series& outer, const Series& inner) {
  const std::size_t n = inner.size();
  Series acc(n, 0.0), pw(n, 0.0);
  pw[0] = 1.0;
  for (std::size_t k = 0; k < outer.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += outer[k] * pw[i];
    pw = mul(pw, inner);
  }
  return acc;
}

Series revert(const Series& g) {
  const std::size_t n = g.size();
  if (n < 2 || g[0] != 0.0 || g[1] == 0.0) throw std::invalid_argument("revert needs g0 = 0, g1 != 0");
  Series h(n, 0.0);
  h[1] = 1.0 / g[1];
  // Each sweep fixes one more coefficient.
  for (std::size_t it = 0; it < n + 2; ++it) {
    Series rest = g;
    rest[1] = 0.0;
    const Series gh = compose(rest, h);
    Series next(n, 0.0);
    next[1] = 1.0 / g[1];
    for (std::size_t i = 2; i < n; ++i) next[i] = -gh[i] / g[1];
    h = next;
  }
  return h;
}

double max_diff(const Series& a, const Series& b, std::size_t upto) {
  double d = 0;
  for (std::size_t i = 0; i <= upto; ++i) {
    const cplx x = i < a.size() ? a[i] : 0.0, y = i < b.size() ? b[i] : 0.0;
    d = std::max(d, std::abs(x - y));
  }
  return d;
}

Series psi_from_moments(const std::vector<cplx>& m) {
  Series s(m.begin(), m.end());
  s[0] = 0.0;
  return s;
}

Series free_cumulants(const std::vector<cplx>& m) {
  // m_n = sum_{s=1}^{n} kappa_s sum_{i_1+..+i_s = n-s} m_{i_1} .. m_{i_s}
  // The recursion cancels heavily, so it runs in long double.
  using lc = std::complex<long double>;
  const std::size_t n = m.size() - 1;
  std::vector<lc> M(m.begin(), m.end()), k(n + 1, 0.0L);
  // P[s][j] = coefficient of z^j in M(z)^s, M = sum m_i z^i (m_0 = 1).
  std::vector<std::vector<lc>> P(n + 1, std::vector<lc>(n + 1, 0.0L));
  P[0][0] = 1.0L;
  for (std::size_t s = 1; s <= n; ++s)
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) P[s][i + j] += P[s - 1][i] * M[j];
  for (std::size_t q = 1; q <= n; ++q) {
    lc acc = 0.0L;
    for (std::size_t s = 1; s < q; ++s) acc += k[s] * P[s][q - s];
    k[q] = M[q] - acc;  // P[q][0] = 1
  }
  Series out(n + 1);
  for (std::size_t q = 0; q <= n; ++q) out[q] = cplx(double(k[q].real()), double(k[q].imag()));
  return out;
}

std::vector<cplx> atom_moments(const std::vector<cplx>& x, const std::vector<double>& w, int n) {
  std::vector<cplx> m(std::size_t(n) + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    cplx p = 1.0;
    for (int k = 0; k <= n; ++k) {
      m[std::size_t(k)] += w[i] * p;
      p *= x[i];
    }
  }
  return m;
}

double haar_log_det_finite(const std::vector<cplx>& a, const std::vector<double>& w, cplx l) {
  // With X = |l - a|^2: outside the Brown support the determinant is
  // max(tau(log X)/2, 0) type values; inside, solve (1+v) f(v) = 1.
  double mean = 0, inv = 0, logm = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = std::norm(l - a[i]);
    mean += w[i] * x;
    inv += w[i] / x;
    logm += w[i] * std::log(x);
  }
  if (mean <= 1.0) return 0.0;           // |l - a|_2 <= 1: log Delta = log 1
  if (inv <= 1.0) return 0.5 * logm;     // ||(l - a)^{-1}||_2 <= 1
  // ((1 + v) f - 1) / v = tau((1 - X) / (1 + v X)), free of the cancellation at small v.
  auto h = [&](double lv) {
    const double v = std::exp(lv);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double x = std::norm(l - a[i]);
      s += w[i] * (1 - x) / (1 + v * x);
    }
    return s;
  };
  const double v = std::exp(bisect(h, -60, 60, 300));
  double lg = 0;
  for (std::size_t i = 0; i < a.size(); ++i) lg += w[i] * std::log1p(v * std::norm(l - a[i]));
  return 0.5 * lg + 0.5 * std::log(1.0 / (1.0 + v));
}

double haar_density_finite(const std::vector<cplx>& a, const std::vector<double>& w, cplx l) {
  const double h = 2e-3;
  auto L = [&](cplx z) { return haar_log_det_finite(a, w, z); };
  auto lap = [&](double s) {
    return (L(l + s) + L(l - s) + L(l + cplx(0, s)) + L(l - cplx(0, s)) - 4 * L(l)) / (s * s);
  };
  return (4 * lap(h / 2) - lap(h)) / 3 / (2 * M_PI);
}

}  // namespace oracle
