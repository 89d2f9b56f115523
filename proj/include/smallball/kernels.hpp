#pragma once

#include <functional>
#include <vector>

#include "smallball/catalog.hpp"

namespace smallball {

/// Symmetric covariance kernel sampled on a uniform trapezoid grid over [0,1].
struct KernelGrid {
  std::vector<double> nodes;    // n points including both endpoints
  std::vector<double> weights;  // trapezoid weights, sum 1
  std::vector<double> values;   // n*n, row major, symmetric

  int size() const { return static_cast<int>(nodes.size()); }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * nodes.size() + j]; }
};

KernelGrid uniform_grid(int n, const std::function<double(double, double)>& g);

/// Integrated kernel int_0^t int_0^s G(x,y) dx dy by cumulative quadrature.
KernelGrid integrate_kernel(const KernelGrid& g);

/// Integration from endpoint beta (0 or 1); beta = 1 is the time reversal of
/// the beta = 0 case on this symmetric grid.
KernelGrid integrate_kernel_from(const KernelGrid& g, int beta);

/// Centered kernel G - g(t) - g(s) + gbar; its rows integrate to zero.
KernelGrid center_kernel(const KernelGrid& g);

/// Largest n eigenvalues (descending) of the weighted kernel operator via the
/// symmetrized Nystrom matrix sqrt(w_i) G(t_i,t_j) sqrt(w_j).
std::vector<double> nystrom_eigenvalues(const KernelGrid& g, int n);

/// Covariance kernel of a catalog process on an n-point grid, built by the
/// family recursion (integrations and centerings of c-|t-s| or min(t,s)).
KernelGrid covariance_grid(const ProcessSpec& spec, int n);

}  // namespace smallball
