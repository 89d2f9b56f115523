#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smallball/catalog.hpp"
#include "smallball/kernels.hpp"
#include "smallball/spectral.hpp"

using namespace smallball;
using std::numbers::pi;

namespace {
double kmin(double t, double s) { return std::min(t, s); }
double kbridge(double t, double s) { return std::min(t, s) - t * s; }
}  // namespace

TEST_CASE("grid weights sum to one") {
  KernelGrid g = uniform_grid(501, kmin);
  double sum = 0.0;
  for (double w : g.weights) sum += w;
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("integrated kernel values at the far corner") {
  const int n = 801;
  KernelGrid ones = uniform_grid(n, [](double, double) { return 1.0; });
  KernelGrid i1 = integrate_kernel(ones);
  CHECK(i1.at(n - 1, n - 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(i1.at(n / 2, n - 1) == doctest::Approx(0.5).epsilon(1e-6));

  KernelGrid iw = integrate_kernel(uniform_grid(n, kmin));
  CHECK(iw.at(n - 1, n - 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));

  KernelGrid ib = integrate_kernel(uniform_grid(n, kbridge));
  CHECK(ib.at(n - 1, n - 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-5));
}

TEST_CASE("integration from the right endpoint is the time reversal") {
  const int n = 401;
  KernelGrid g = uniform_grid(n, [](double t, double s) { return 1.0 - std::abs(t - s); });
  KernelGrid a = integrate_kernel_from(g, 1);
  // symmetric base kernel: integrating from 1 equals reversing, integrating, reversing
  KernelGrid b = integrate_kernel(g);
  CHECK(a.at(0, 0) == doctest::Approx(b.at(n - 1, n - 1)).epsilon(1e-12));
  CHECK(a.at(n - 1, n - 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("centering") {
  const int n = 401;
  KernelGrid constk = uniform_grid(n, [](double, double) { return 3.7; });
  KernelGrid c = center_kernel(constk);
  for (int i : {0, n / 3, n - 1}) CHECK(std::abs(c.at(i, i)) < 1e-12);

  KernelGrid cw = center_kernel(uniform_grid(n, kmin));
  // g(t) = t - t^2/2, gbar = 1/3: centered kernel at the origin is 1/3
  CHECK(cw.at(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-5));

  // all row integrals vanish
  for (int i : {0, 17, n / 2, n - 1}) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += cw.weights[j] * cw.at(i, j);
    CHECK(std::abs(acc) < 1e-12);
  }
}

TEST_CASE("nystrom eigenvalues of the classical kernels") {
  const int n = 400;
  auto top = nystrom_eigenvalues(uniform_grid(n, kmin), 3);
  CHECK(top[0] == doctest::Approx(std::pow(pi / 2, -2)).epsilon(1e-5));
  CHECK(top[1] == doctest::Approx(std::pow(3 * pi / 2, -2)).epsilon(1e-5));

  auto topb = nystrom_eigenvalues(uniform_grid(n, kbridge), 2);
  CHECK(topb[0] == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-5));

  // 1-|t-s|: the smallest characteristic root sits near 1.7207, before the
  // root at pi; 2/pi^2 is therefore the *second* eigenvalue
  auto tops = nystrom_eigenvalues(uniform_grid(n, [](double t, double s) {
                                    return 1.0 - std::abs(t - s);
                                  }),
                                  2);
  CHECK(tops[0] == doctest::Approx(0.675516943439).epsilon(1e-5));
  CHECK(tops[1] == doctest::Approx(2.0 / (pi * pi)).epsilon(1e-5));
}

TEST_CASE("nystrom rejects undersized grids and asymmetric input") {
  KernelGrid g = uniform_grid(64, kmin);
  CHECK_THROWS(nystrom_eigenvalues(g, 10));
  g.values[5] += 1.0;  // break symmetry
  CHECK_THROWS(nystrom_eigenvalues(g, 2));
}

TEST_CASE("covariance recursion matches characteristic spectra at modest grids") {
  struct Case {
    std::string id;
    CatalogParams params;
  };
  const std::vector<Case> cases = {
      {"slepian", {1.0, {}, {}, {}}},
      {"bridge-c", {{}, 0, {}, {}}},
      {"bridge-c-int", {{}, 1, 0, {}}},
      {"wiener-c", {{}, 1, {}, {}}},
      {"slepian-int", {0.5, {}, 1, std::vector<int>{1}}},
  };
  for (const auto& c : cases) {
    ProcessSpec spec = catalog_process(c.id, c.params);
    KernelGrid g = covariance_grid(spec, 600);
    auto nys = nystrom_eigenvalues(g, 5);
    SpectrumResult s = positive_roots(char_function(spec), 5);
    for (int k = 0; k < 5; ++k)
      CHECK(nys[k] * s.mu[k] == doctest::Approx(1.0).epsilon(2e-4));
  }
}
