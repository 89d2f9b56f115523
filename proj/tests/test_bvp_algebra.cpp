#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "smallball/bvp_algebra.hpp"
#include "smallball/catalog.hpp"

using namespace smallball;
using std::numbers::pi;

namespace {

BvpSpec periodic_order1() {
  return catalog_process("bridge-c", {{}, 0, {}, {}}).bvp;
}

BvpSpec dirichlet_neumann() {
  BvpSpec spec;
  spec.ell = 1;
  spec.conditions = {{1, 0.0, 1.0, {}, {}}, {0, 1.0, 0.0, {}, {}}};  // u'(1)=0, u(0)=0
  return spec;
}

double mod2pi_dist(double x) { return std::abs(std::remainder(x, 2.0 * pi)); }

}  // namespace

TEST_CASE("theta coefficients of the periodic second-order problem") {
  // hand expansion gives (2, -4, 2) up to the overall sign fixed by the row
  // ordering; catalog rows are sorted by descending order, which flips it
  ThetaQuadratic q = theta_coefficients(periodic_order1());
  const std::complex<double> s = q.theta1 / 2.0;
  CHECK(std::abs(std::abs(s) - 1.0) < 1e-12);
  CHECK(std::abs(q.theta1 - s * 2.0) < 1e-12);
  CHECK(std::abs(q.theta0 - s * (-4.0)) < 1e-12);
  CHECK(std::abs(q.theta_minus1 - s * 2.0) < 1e-12);
  CHECK(std::abs(q.theta1.imag()) < 1e-12);

  // theta1 = -w1^kappa * theta_minus1 with kappa = 1, w1 = -1
  std::complex<double> w1 = std::polar(1.0, pi / 1);
  CHECK(std::abs(q.theta1 + w1 * q.theta_minus1) < 1e-12);
}

TEST_CASE("irregular systems are rejected") {
  BvpSpec spec;
  spec.ell = 1;
  spec.conditions = {{1, 1.0, 0.0, {}, {}}, {0, 1.0, 0.0, {}, {}}};  // all gamma = 0
  CHECK_THROWS_AS(theta_coefficients(spec), IrregularBvpError);
}

TEST_CASE("phase pairs") {
  PhasePair doubled = rho_pair({{2, 0}, {-4, 0}, {2, 0}});
  CHECK(doubled.rho_prime == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(doubled.rho_second == doctest::Approx(0.0).epsilon(1e-12));

  PhasePair quarter = rho_pair({{1, 0}, {0, 0}, {1, 0}});
  CHECK(quarter.rho_prime == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(quarter.rho_second == doctest::Approx(-pi / 2).epsilon(1e-12));

  // separated case: phases congruent mod 2pi to {-pi/2, -3pi/2}; the
  // rho_prime >= rho_second ordering puts the -3pi/2 representative first
  PhasePair dn = rho_pair(theta_coefficients(dirichlet_neumann()));
  CHECK(mod2pi_dist(dn.rho_prime - (-3 * pi / 2)) < 1e-12);
  CHECK(mod2pi_dist(dn.rho_second - (-pi / 2)) < 1e-12);
}

TEST_CASE("rho sum identity on cited problems") {
  CHECK(verify_rho_sum(periodic_order1()) < 1e-12);
  CHECK(verify_rho_sum(dirichlet_neumann()) < 1e-12);
  CHECK(verify_rho_sum(catalog_process("wiener-c", {{}, 1, {}, {}}).bvp) < 1e-12);
}

TEST_CASE("rho sum and determinant identity on random regular problems") {
  RandomBvp gen(1234);
  for (int ell = 1; ell <= 3; ++ell) {
    std::complex<double> w1 = std::polar(1.0, pi / ell);
    for (int i = 0; i < 100; ++i) {
      BvpSpec spec = gen.next(ell);
      CHECK(verify_rho_sum(spec) < 1e-8);
      ThetaQuadratic q = theta_coefficients(spec);
      long kappa = normalized_kappa(spec);
      double rel = std::abs(q.theta1 + std::pow(w1, double(kappa)) * q.theta_minus1) /
                   std::max(std::abs(q.theta1), std::abs(q.theta_minus1));
      CHECK(rel < 1e-10);
    }
  }
}

TEST_CASE("phases are invariant under row rescaling") {
  RandomBvp gen(99);
  for (int i = 0; i < 20; ++i) {
    BvpSpec spec = gen.next(2);
    PhasePair base = rho_pair(theta_coefficients(spec));
    BvpSpec scaled = spec;
    double factors[4] = {3.5, -0.25, 7.0, -1.0};
    for (size_t nu = 0; nu < scaled.conditions.size(); ++nu) {
      scaled.conditions[nu].alpha *= factors[nu % 4];
      scaled.conditions[nu].gamma *= factors[nu % 4];
    }
    PhasePair other = rho_pair(theta_coefficients(scaled));
    CHECK(mod2pi_dist(base.rho_prime - other.rho_prime) < 1e-9);
    CHECK(mod2pi_dist(base.rho_second - other.rho_second) < 1e-9);
  }
}

TEST_CASE("generator is reproducible from the seed") {
  RandomBvp a(7), b(7);
  for (int i = 0; i < 5; ++i) {
    BvpSpec x = a.next(2), y = b.next(2);
    REQUIRE(x.conditions.size() == y.conditions.size());
    for (size_t j = 0; j < x.conditions.size(); ++j) {
      CHECK(x.conditions[j].k == y.conditions[j].k);
      CHECK(x.conditions[j].alpha == y.conditions[j].alpha);
      CHECK(x.conditions[j].gamma == y.conditions[j].gamma);
    }
  }
}
