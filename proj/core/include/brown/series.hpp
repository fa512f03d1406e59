#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace brown {

using cplx = std::complex<double>;

// Formal power series c0 + c1 z + ... + cN z^N. All arithmetic truncates
// at the smaller order of the operands.
class TruncatedSeries {
 public:
  static constexpr int default_order = 16;

  explicit TruncatedSeries(int order = default_order);
  TruncatedSeries(std::initializer_list<cplx> coeffs);
  explicit TruncatedSeries(std::vector<cplx> coeffs);

  static TruncatedSeries identity(int order);  // z
  static TruncatedSeries constant(cplx c, int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](int k) const { return k <= order() ? c_[k] : cplx{}; }
  cplx& operator[](int k) { return c_.at(k); }
  const std::vector<cplx>& coefficients() const { return c_; }

  TruncatedSeries truncated(int order) const;
  cplx evaluate(cplx z) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(cplx s) const;

  // 1/s; requires c0 != 0.
  TruncatedSeries reciprocal() const;
  // s / z; requires c0 == 0. The order drops by one.
  TruncatedSeries divide_by_z() const;
  // z * s; the order rises by one.
  TruncatedSeries multiply_by_z() const;
  // s(inner(z)); requires inner[0] == 0.
  TruncatedSeries compose(const TruncatedSeries& inner) const;
  // Compositional inverse; requires c0 == 0, c1 != 0.
  TruncatedSeries revert() const;
  TruncatedSeries derivative() const;

  double max_abs_diff(const TruncatedSeries& o) const;

 private:
  std::vector<cplx> c_;
};

}  // namespace brown
