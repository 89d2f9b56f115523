#pragma once

// Internal: pivoted complex elimination with per-row scaling.  Rows of the
// characteristic matrices mix O(1) and O(exp|zeta|) entries, so the
// determinant is carried as mantissa * exp(log_scale).

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace smallball::detail {

using cplx = std::complex<double>;

struct ScaledValue {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  double log_abs() const {
    double a = std::abs(mantissa);
    return a == 0.0 ? -std::numeric_limits<double>::infinity()
                    : std::log(a) + log_scale;
  }
};

// LU factorization (row major, n x n) with partial pivoting after row
// max-normalization.  det() reports the determinant of the original matrix.
class ScaledLu {
 public:
  ScaledLu(std::vector<cplx> a, int n) : lu_(std::move(a)), n_(n), piv_(n) {
    factor();
  }

  const ScaledValue& det() const { return det_; }
  bool singular() const { return singular_; }

  // trace(M^{-1} B), valid when the factorization is nonsingular.
  cplx inverse_trace_product(const std::vector<cplx>& b) const;

 private:
  void factor();

  std::vector<cplx> lu_;
  int n_;
  std::vector<int> piv_;
  std::vector<double> row_scale_;  // 1 / row max-norm
  ScaledValue det_;
  bool singular_ = false;
};

inline void ScaledLu::factor() {
  const int n = n_;
  row_scale_.assign(n, 1.0);
  cplx mant(1.0, 0.0);
  double logs = 0.0;

  for (int i = 0; i < n; ++i) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) m = std::max(m, std::abs(lu_[i * n + j]));
    if (m == 0.0) {
      det_ = {cplx(0.0, 0.0), 0.0};
      singular_ = true;
      return;
    }
    row_scale_[i] = 1.0 / m;
    for (int j = 0; j < n; ++j) lu_[i * n + j] *= row_scale_[i];
    logs += std::log(m);
  }

  for (int col = 0; col < n; ++col) {
    int p = col;
    double best = std::abs(lu_[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(lu_[r * n + col]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    piv_[col] = p;
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(lu_[col * n + j], lu_[p * n + j]);
      mant = -mant;
    }
    cplx pivot = lu_[col * n + col];
    if (pivot == cplx(0.0, 0.0)) {
      det_ = {cplx(0.0, 0.0), logs};
      singular_ = true;
      return;
    }
    mant *= pivot;
    double am = std::abs(mant);
    if (am > 1e100 || am < 1e-100) {
      logs += std::log(am);
      mant /= am;
    }
    cplx ip = 1.0 / pivot;
    for (int r = col + 1; r < n; ++r) {
      cplx f = lu_[r * n + col] * ip;
      lu_[r * n + col] = f;
      if (f == cplx(0.0, 0.0)) continue;
      for (int j = col + 1; j < n; ++j) lu_[r * n + j] -= f * lu_[col * n + j];
    }
  }
  det_ = {mant, logs};
}

inline cplx ScaledLu::inverse_trace_product(const std::vector<cplx>& b) const {
  const int n = n_;
  cplx trace(0.0, 0.0);
  std::vector<cplx> y(n);
  for (int j = 0; j < n; ++j) {
    // column j of B, row-normalized in the original ordering, then permuted
    // by the recorded pivot sequence
    for (int i = 0; i < n; ++i) y[i] = b[i * n + j] * row_scale_[i];
    for (int col = 0; col < n; ++col)
      if (piv_[col] != col) std::swap(y[col], y[piv_[col]]);
    for (int col = 0; col < n; ++col)
      for (int r = col + 1; r < n; ++r) y[r] -= lu_[r * n + col] * y[col];
    for (int col = n - 1; col >= 0; --col) {
      for (int r = col + 1; r < n; ++r) y[col] -= lu_[col * n + r] * y[r];
      y[col] /= lu_[col * n + col];
    }
    trace += y[j];
  }
  return trace;
}

}  // namespace smallball::detail
