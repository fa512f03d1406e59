#include "brown/series.hpp"

#include <algorithm>
#include <cmath>

#include "brown/error.hpp"

namespace brown {

TruncatedSeries::TruncatedSeries(int order) {
  if (order < 0) throw DomainError("series order must be >= 0");
  c_.assign(std::size_t(order) + 1, cplx{});
}

TruncatedSeries::TruncatedSeries(std::initializer_list<cplx> coeffs) : c_(coeffs) {
  if (c_.empty()) c_.push_back(0.0);
}

TruncatedSeries::TruncatedSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
}

TruncatedSeries TruncatedSeries::identity(int order) {
  TruncatedSeries s(order);
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

TruncatedSeries TruncatedSeries::constant(cplx c, int order) {
  TruncatedSeries s(order);
  s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::truncated(int n) const {
  TruncatedSeries s(n);
  for (int k = 0; k <= std::min(n, order()); ++k) s.c_[k] = c_[k];
  return s;
}

cplx TruncatedSeries::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (int k = order(); k >= 0; --k) acc = acc * z + c_[k];
  return acc;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  const int n = std::min(order(), o.order());
  TruncatedSeries s(n);
  for (int k = 0; k <= n; ++k) s.c_[k] = c_[k] + o.c_[k];
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries s(*this);
  for (auto& c : s.c_) c = -c;
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  const int n = std::min(order(), o.order());
  TruncatedSeries s(n);
  for (int i = 0; i <= n; ++i) {
    if (c_[i] == cplx{}) continue;
    for (int j = 0; i + j <= n; ++j) s.c_[i + j] += c_[i] * o.c_[j];
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator*(cplx x) const {
  TruncatedSeries s(*this);
  for (auto& c : s.c_) c *= x;
  return s;
}

TruncatedSeries TruncatedSeries::reciprocal() const {
  if (c_[0] == cplx{}) throw DomainError("series reciprocal: zero constant term");
  const int n = order();
  TruncatedSeries r(n);
  r.c_[0] = 1.0 / c_[0];
  for (int k = 1; k <= n; ++k) {
    cplx acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc / c_[0];
  }
  return r;
}

TruncatedSeries TruncatedSeries::divide_by_z() const {
  if (std::abs(c_[0]) > 0) throw DomainError("series divide_by_z: nonzero constant term");
  if (order() == 0) return TruncatedSeries(0);
  return TruncatedSeries(std::vector<cplx>(c_.begin() + 1, c_.end()));
}

TruncatedSeries TruncatedSeries::multiply_by_z() const {
  std::vector<cplx> c(c_.size() + 1);
  std::copy(c_.begin(), c_.end(), c.begin() + 1);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  if (std::abs(inner.c_[0]) > 0) throw DomainError("series compose: inner series has c0 != 0");
  const int n = std::min(order(), inner.order());
  const TruncatedSeries in = inner.truncated(n);
  TruncatedSeries acc = TruncatedSeries::constant(c_[n], n);
  for (int k = n - 1; k >= 0; --k) acc = acc * in + TruncatedSeries::constant(c_[k], n);
  return acc;
}

TruncatedSeries TruncatedSeries::derivative() const {
  const int n = std::max(order() - 1, 0);
  TruncatedSeries d(n);
  for (int k = 1; k <= order(); ++k) d.c_[k - 1] = double(k) * c_[k];
  return d;
}

TruncatedSeries TruncatedSeries::revert() const {
  if (std::abs(c_[0]) > 0) throw DomainError("series reversion requires c0 = 0");
  if (order() < 1 || c_[1] == cplx{}) throw DomainError("series reversion requires c1 != 0");
  const int n = order();
  // Newton iteration g <- g - (f(g) - z) / f'(g), doubling the number of
  // correct coefficients per step.
  TruncatedSeries g(n);
  g.c_[1] = 1.0 / c_[1];
  const TruncatedSeries df = derivative();
  for (int prec = 2; prec < 2 * n; prec *= 2) {
    const int m = std::min(prec, n);
    const TruncatedSeries gm = g.truncated(m);
    const TruncatedSeries fm = truncated(m);
    TruncatedSeries resid = fm.compose(gm) - TruncatedSeries::identity(m);
    // f'(g) has order m-1 from df; pad so the reciprocal has order m.
    TruncatedSeries dfg = df.truncated(m).compose(gm);
    TruncatedSeries step = resid * dfg.reciprocal();
    g = (gm - step).truncated(n);
    if (m == n) break;
  }
  // One extra correction sweep removes residual round-off in high
  // coefficients.
  {
    TruncatedSeries resid = compose(g) - TruncatedSeries::identity(n);
    TruncatedSeries step = resid * df.truncated(n).compose(g).reciprocal();
    g = g - step;
  }
  return g;
}

double TruncatedSeries::max_abs_diff(const TruncatedSeries& o) const {
  const int n = std::max(order(), o.order());
  double m = 0.0;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs((*this)[k] - o[k]));
  return m;
}

}  // namespace brown
