#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "smallball/bvp_algebra.hpp"
#include "smallball/catalog.hpp"
#include "smallball/spectral.hpp"

using namespace smallball;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

ProcessSpec proc(const std::string& id, CatalogParams p) { return catalog_process(id, p); }

struct Lcg {
  std::uint64_t s = 88172645463325252ull;
  double operator()() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  }
};

}  // namespace

namespace {

// |det(z)| relative to the nearby off-root scale
double rel_det(const CharFunction& f, double z) {
  const double at = f.det(cplx(z, 0.0)).log_abs();
  const double ref = std::max(f.det(cplx(z + 0.4, 0.0)).log_abs(),
                              f.det(cplx(z - 0.4, 0.0)).log_abs());
  return std::exp(at - ref);
}

}  // namespace

TEST_CASE("scalar slepian determinant vanishes at odd multiples of pi") {
  // c = 1/2: the reduction of the determinant is proportional to 2 + 2 cos
  CharFunction f = char_function(proc("slepian", {0.5, {}, {}, {}}));
  for (int n = 1; n <= 6; ++n) {
    const double z = (2 * n - 1) * pi;
    CHECK(rel_det(f, z) < 1e-12);
    CHECK(std::abs(f.det(cplx(z + 0.3, 0.0)).log_abs()) < 20.0);  // off-root is O(1)
  }
  // odd-pi roots persist for every c (the sine term vanishes there)
  for (double c : {1.0, 2.0, 5.0}) {
    CharFunction fc = char_function(proc("slepian", {c, {}, {}, {}}));
    for (int n = 1; n <= 4; ++n) CHECK(rel_det(fc, (2 * n - 1) * pi) < 1e-10);
  }
}

TEST_CASE("bridge determinant vanishes exactly at pi n") {
  CharFunction f = char_function(proc("bridge-c-int", {{}, 0, 0, {}}));
  for (int n = 1; n <= 8; ++n) CHECK(rel_det(f, pi * n) < 1e-12);
}

TEST_CASE("real reduction is genuinely real on the real axis") {
  RandomBvp gen(5);
  std::vector<BvpSpec> specs = {proc("slepian", {1.5, {}, {}, {}}).bvp,
                                proc("wiener-c", {{}, 2, {}, {}}).bvp,
                                proc("bridge-c-int", {{}, 1, 1, std::vector<int>{1}}).bvp,
                                gen.next(2), gen.next(3)};
  for (const auto& spec : specs) {
    CharFunction f{spec};
    long kappa = normalized_kappa(spec);
    cplx align = std::pow(cplx(0.0, 1.0), -double(kappa + 1));
    for (double z = 0.7; z < 40.0; z += 3.1) {
      ScaledDet d = f.det(cplx(z, 0.0));
      cplx aligned = align * d.mantissa;
      CHECK(std::abs(aligned.imag()) < 1e-9 * std::abs(aligned));
    }
  }
}

TEST_CASE("rotation symmetry |det(zeta)| = |det(w1 zeta)|") {
  RandomBvp gen(17);
  std::vector<BvpSpec> specs = {proc("slepian-int", {1.0, {}, 2, std::vector<int>{0, 1}}).bvp,
                                proc("wiener-c", {{}, 1, {}, {}}).bvp, gen.next(2)};
  Lcg rng;
  for (const auto& spec : specs) {
    CharFunction f{spec};
    cplx w1 = std::polar(1.0, pi / spec.ell);
    for (int i = 0; i < 100; ++i) {
      cplx zeta = std::polar(0.5 + 25.0 * rng(), 2.0 * pi * rng());
      double la = f.det(zeta).log_abs();
      double lb = f.det(w1 * zeta).log_abs();
      CHECK(std::abs(la - lb) < 1e-8 * std::max(1.0, std::abs(la)));
    }
  }
}

TEST_CASE("slepian c=1/2 roots are double at odd pi") {
  CharFunction f = char_function(proc("slepian", {0.5, {}, {}, {}}));
  SpectrumResult s = positive_roots(f, 8);
  REQUIRE(s.roots.size() == 4);
  for (size_t i = 0; i < s.roots.size(); ++i) {
    CHECK(s.roots[i].multiplicity == 2);
    CHECK(std::abs(s.roots[i].r - (2.0 * (i + 1) - 1.0) * pi) < 1e-10);
  }
  CHECK(s.mu[0] == doctest::Approx(pi * pi / 2).epsilon(1e-12));
  CHECK(s.mu[1] == doctest::Approx(pi * pi / 2).epsilon(1e-12));
}

TEST_CASE("bridge and wiener eigenvalues match the classical spectra") {
  SpectrumResult b = positive_roots(char_function(proc("bridge-c-int", {{}, 0, 0, {}})), 50);
  for (int n = 1; n <= 50; ++n)
    CHECK(b.mu[n - 1] == doctest::Approx(std::pow(pi * n, 2)).epsilon(1e-12));
  CHECK(b.lambda[0] == doctest::Approx(0.1013211836).epsilon(1e-9));

  SpectrumResult w = positive_roots(char_function(proc("wiener-c", {{}, 0, {}, {}})), 50);
  for (int n = 1; n <= 50; ++n)
    CHECK(w.mu[n - 1] == doctest::Approx(std::pow(pi * (n - 0.5), 2)).epsilon(1e-12));
}

TEST_CASE("centered bridge tower spectrum is double at 2 pi n") {
  SpectrumResult s = positive_roots(char_function(proc("bridge-c", {{}, 1, {}, {}})), 8);
  REQUIRE(s.roots.size() == 4);
  for (size_t i = 0; i < s.roots.size(); ++i) {
    CHECK(s.roots[i].multiplicity == 2);
    CHECK(std::abs(s.roots[i].r - 2.0 * pi * (i + 1)) < 1e-9);
    CHECK(s.mu[2 * i] == doctest::Approx(std::pow(2.0 * pi * (i + 1), 4)).epsilon(1e-10));
  }
}

TEST_CASE("nonzero spectra of the bridge tower and the centered wiener top coincide") {
  for (int l = 1; l <= 2; ++l) {
    SpectrumResult a = positive_roots(CharFunction(proc("bridge-c-int", {{}, l, 0, {}}).bvp), 10);
    SpectrumResult b = positive_roots(CharFunction(wiener_centered_top(l)), 10);
    for (int n = 0; n < 10; ++n)
      CHECK(a.mu[n] == doctest::Approx(b.mu[n]).epsilon(1e-8));
  }
}

TEST_CASE("root counting follows the two-subsequence prediction") {
  std::vector<ProcessSpec> procs = {proc("slepian", {1.0, {}, {}, {}}),
                                    proc("wiener-c", {{}, 1, {}, {}}),
                                    proc("bridge-c-int", {{}, 1, 0, {}}),
                                    proc("slepian-int", {0.5, {}, 1, std::vector<int>{0}})};
  for (const auto& p : procs) {
    CharFunction f = char_function(p);
    SpectrumResult s = positive_roots(f, 80);
    for (double r_max : {20.0, 50.0, 100.0}) {
      long counted = 0;
      for (const auto& root : s.roots)
        if (root.r <= r_max) counted += root.multiplicity;
      long predicted = predicted_count(f, r_max);
      CHECK(std::abs(counted - predicted) <= 2);
    }
  }
}

TEST_CASE("tail ladder continues the spectrum and reports the junction error") {
  // bridge: the ladder is exact
  SpectrumResult b = positive_roots(char_function(proc("bridge-c-int", {{}, 0, 0, {}})), 60);
  PhasePair ph = rho_pair(theta_coefficients(proc("bridge-c-int", {{}, 0, 0, {}}).bvp));
  TailLadder lad = tail_ladder(b, ph);
  CHECK(lad.junction_error < 1e-12);
  for (long t = 0; t < 6; ++t)
    CHECK(lad.root_at(t) == doctest::Approx(pi * (61 + t)).epsilon(1e-12));

  // slepian c=1/2: double roots, ladder values repeat
  SpectrumResult s = positive_roots(char_function(proc("slepian", {0.5, {}, {}, {}})), 60);
  PhasePair ph2 = rho_pair(theta_coefficients(proc("slepian", {0.5, {}, {}, {}}).bvp));
  TailLadder lad2 = tail_ladder(s, ph2);
  CHECK(lad2.junction_error < 1e-12);
  CHECK(lad2.root_at(0) == doctest::Approx(61 * pi).epsilon(1e-12));
  CHECK(lad2.root_at(1) == doctest::Approx(61 * pi).epsilon(1e-12));
  CHECK(lad2.root_at(2) == doctest::Approx(63 * pi).epsilon(1e-12));
}

TEST_CASE("odd eigenvalue cut keeps the ladder consistent") {
  // cutting mid-pair: the next ladder slot must be the second copy
  SpectrumResult s = positive_roots(char_function(proc("slepian", {0.5, {}, {}, {}})), 61);
  PhasePair ph = rho_pair(theta_coefficients(proc("slepian", {0.5, {}, {}, {}}).bvp));
  CHECK(s.count == 61);
  TailLadder lad = tail_ladder(s, ph);
  CHECK(lad.root_at(0) == doctest::Approx(61 * pi).epsilon(1e-12));
  CHECK(lad.root_at(1) == doctest::Approx(63 * pi).epsilon(1e-12));
}
