#include "smallball/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <lapacke.h>

namespace smallball {

namespace {

void check_symmetric(const KernelGrid& g) {
  const int n = g.size();
  if ((int)g.weights.size() != n || (int)g.values.size() != n * n)
    throw std::invalid_argument("kernel grid: inconsistent sizes");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.at(i, j) != g.at(j, i))
        throw std::invalid_argument("kernel grid: matrix is not symmetric");
}

KernelGrid like(const KernelGrid& g) {
  KernelGrid out;
  out.nodes = g.nodes;
  out.weights = g.weights;
  out.values.assign(g.values.size(), 0.0);
  return out;
}

}  // namespace

KernelGrid uniform_grid(int n, const std::function<double(double, double)>& g) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need n >= 2");
  KernelGrid out;
  out.nodes.resize(n);
  out.weights.resize(n);
  out.values.resize(static_cast<size_t>(n) * n);
  const double h = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    out.nodes[i] = i * h;
    out.weights[i] = (i == 0 || i == n - 1) ? h / 2.0 : h;
  }
  for (int i = 0; i < n; ++i) {
    out.values[static_cast<size_t>(i) * n + i] = g(out.nodes[i], out.nodes[i]);
    for (int j = i + 1; j < n; ++j) {
      double v = g(out.nodes[i], out.nodes[j]);
      out.values[static_cast<size_t>(i) * n + j] = v;
      out.values[static_cast<size_t>(j) * n + i] = v;
    }
  }
  return out;
}

KernelGrid integrate_kernel(const KernelGrid& g) {
  check_symmetric(g);
  const int n = g.size();
  const double h = 1.0 / (n - 1);
  KernelGrid out = like(g);
  // cumulative trapezoid along rows, then along columns
  std::vector<double> tmp(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    tmp[j] = 0.0;
    for (int i = 1; i < n; ++i) {
      acc += 0.5 * h * (g.at(i - 1, j) + g.at(i, j));
      tmp[static_cast<size_t>(i) * n + j] = acc;
    }
  }
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    out.values[static_cast<size_t>(i) * n] = 0.0;
    for (int j = 1; j < n; ++j) {
      acc += 0.5 * h * (tmp[static_cast<size_t>(i) * n + j - 1] + tmp[static_cast<size_t>(i) * n + j]);
      out.values[static_cast<size_t>(i) * n + j] = acc;
    }
  }
  // enforce exact symmetry against roundoff drift
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (out.at(i, j) + out.at(j, i));
      out.values[static_cast<size_t>(i) * n + j] = v;
      out.values[static_cast<size_t>(j) * n + i] = v;
    }
  return out;
}

KernelGrid integrate_kernel_from(const KernelGrid& g, int beta) {
  if (beta == 0) return integrate_kernel(g);
  if (beta != 1) throw std::invalid_argument("integrate_kernel_from: beta must be 0 or 1");
  const int n = g.size();
  KernelGrid rev = like(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rev.values[static_cast<size_t>(i) * n + j] = g.at(n - 1 - i, n - 1 - j);
  KernelGrid integ = integrate_kernel(rev);
  KernelGrid out = like(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.values[static_cast<size_t>(i) * n + j] = integ.at(n - 1 - i, n - 1 - j);
  return out;
}

KernelGrid center_kernel(const KernelGrid& g) {
  check_symmetric(g);
  const int n = g.size();
  std::vector<double> rowint(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += g.weights[j] * g.at(i, j);
    rowint[i] = acc;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += g.weights[i] * rowint[i];
  KernelGrid out = like(g);
  // grouped so the expression is symmetric in (i, j) even in floating point
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.values[static_cast<size_t>(i) * n + j] =
          g.at(i, j) - (rowint[i] + rowint[j]) + total;
  return out;
}

std::vector<double> nystrom_eigenvalues(const KernelGrid& g, int n_eigen) {
  check_symmetric(g);
  const int n = g.size();
  if (n < 8 * n_eigen)
    throw std::invalid_argument("nystrom_eigenvalues: grid must be at least 8x the eigenvalue count");
  std::vector<double> a(static_cast<size_t>(n) * n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(g.weights[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] = sw[i] * sw[j] * g.at(i, j);

  std::vector<double> w(n);
  int m = 0;
  std::vector<lapack_int> isuppz(2 * std::max(1, n_eigen));
  double zdummy = 0.0;
  lapack_int info = LAPACKE_dsyevr(LAPACK_ROW_MAJOR, 'N', 'I', 'U', n, a.data(), n,
                                   0.0, 0.0, n - n_eigen + 1, n, 0.0, &m, w.data(),
                                   &zdummy, 1, isuppz.data());
  if (info != 0) throw std::runtime_error("nystrom_eigenvalues: eigensolver failed");
  std::vector<double> out(w.begin(), w.begin() + m);
  std::reverse(out.begin(), out.end());
  return out;
}

KernelGrid covariance_grid(const ProcessSpec& spec, int n) {
  KernelGrid g;
  switch (spec.family) {
    case Family::slepian:
    case Family::slepian_integrated: {
      const double c = spec.c;
      g = uniform_grid(n, [c](double t, double s) { return c - std::abs(t - s); });
      break;
    }
    case Family::bridge_centered_tower:
    case Family::bridge_tower_integrated:
      g = uniform_grid(n, [](double t, double s) { return std::min(t, s) - t * s; });
      break;
    case Family::wiener_centered_tower:
    case Family::wiener_tower_integrated:
      g = uniform_grid(n, [](double t, double s) { return std::min(t, s); });
      break;
  }
  for (int i = 0; i < spec.l; ++i) g = integrate_kernel(center_kernel(g));
  if (spec.family == Family::bridge_centered_tower) g = center_kernel(g);
  for (int j = 0; j < spec.m; ++j) g = integrate_kernel_from(g, spec.beta[j]);
  return g;
}

}  // namespace smallball
