#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smallball/asymptotics.hpp"
#include "smallball/catalog.hpp"
#include "smallball/constants.hpp"
#include "smallball/spectral.hpp"

using namespace smallball;
using std::numbers::pi;

namespace {
ProcessSpec proc(const std::string& id, CatalogParams p) { return catalog_process(id, p); }

void check_law(const SmallBallLaw& law, double K, double a, double d, double E, double tol) {
  CHECK(law.K == doctest::Approx(K).epsilon(tol));
  CHECK(law.a == doctest::Approx(a).epsilon(tol));
  CHECK(law.d == doctest::Approx(d).epsilon(tol));
  CHECK(law.E == doctest::Approx(E).epsilon(tol));
}
}  // namespace

TEST_CASE("general law on the classical second-order processes") {
  check_law(general_law(1, 0, 1.0, 1.0), std::sqrt(8.0 / pi), 0.0, 2.0, 0.125, 1e-13);
  check_law(general_law(1, 1, 1.0, 1.0), 4.0 / std::sqrt(pi), 1.0, 2.0, 0.125, 1e-13);
  check_law(general_law(1, 1, std::sqrt(2.0), std::sqrt(2.0)), 4.0 / std::sqrt(pi), 1.0, 2.0,
            0.25, 1e-13);
  CHECK_THROWS(general_law(1, 2, std::sqrt(2.0), 1.0));  // kappa = 2 ell^2
}

TEST_CASE("closed laws: cited constants") {
  check_law(closed_law(proc("slepian", {0.5, {}, {}, {}})), 4.0 / std::sqrt(pi), 1.0, 2.0, 0.25,
            1e-13);
  for (double c : {1.0, 1.7, 3.0})
    check_law(closed_law(proc("slepian", {c, {}, {}, {}})),
              4.0 * std::sqrt(2.0 / (pi * (2.0 * c - 1.0))), 2.0, 2.0, 0.25, 1e-13);
  check_law(closed_law(proc("bridge-c", {{}, 0, {}, {}})), std::sqrt(2.0 / pi), -1.0, 2.0, 0.125,
            1e-13);
  // centered tower prefactor: sqrt((2l+2)/(2l+1)) / sqrt(pi)
  for (int l = 0; l <= 3; ++l)
    CHECK(closed_law(proc("bridge-c", {{}, l, {}, {}})).K ==
          doctest::Approx(std::sqrt((2.0 * l + 2.0) / (2.0 * l + 1.0)) / std::sqrt(pi))
              .epsilon(1e-12));
}

TEST_CASE("wiener tower l=2 prefactor coefficient is 3 sqrt(6)") {
  const ProcessSpec w2 = proc("wiener-c", {{}, 2, {}, {}});
  const SmallBallLaw law = closed_law(w2);
  const int ell = 3;
  const double dfrak = (2.0 * ell - 1.0) / (2.0 * ell * std::sin(pi / (2.0 * ell)));
  const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
  const double coeff = law.K * std::sqrt(pi * dfrak) / std::pow(scale2, 0.5 * (-3.0) / 5.0);
  CHECK(coeff == doctest::Approx(3.0 * std::sqrt(6.0)).epsilon(1e-12));
  CHECK(law.a == doctest::Approx(-3.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("closed law equals theorem assembly wherever both exist") {
  std::vector<ProcessSpec> procs = {
      proc("slepian", {0.5, {}, {}, {}}),
      proc("slepian-int", {0.5, {}, 2, std::vector<int>{1, 0}}),
      proc("slepian-int", {2.0, {}, 1, std::vector<int>{1}}),
      proc("bridge-c-int", {{}, 3, 0, {}}),
      proc("bridge-c-int", {{}, 1, 2, std::vector<int>{0, 1}}),
      proc("wiener-c", {{}, 0, {}, {}}),
      proc("wiener-c", {{}, 3, {}, {}}),
      proc("wiener-c-int", {{}, 2, 1, std::vector<int>{1}}),
  };
  for (const auto& p : procs) {
    const SmallBallLaw cl = closed_law(p);
    const SmallBallLaw as = assembled_law(p, distortion_closed_form(p).value);
    CHECK(std::abs(cl.K / as.K - 1.0) < 1e-9);
    CHECK(std::abs(cl.a - as.a) < 1e-9);
    CHECK(std::abs(cl.d - as.d) < 1e-9);
    CHECK(std::abs(cl.E / as.E - 1.0) < 1e-9);
  }
}

TEST_CASE("combining two scaled wiener halves reconstructs the slepian law") {
  const SmallBallLaw wiener = general_law(1, 1, 1.0, 1.0);
  const SmallBallLaw half = scale_variable(to_squared(wiener), 0.5);
  CHECK(half.a == doctest::Approx(0.5));
  CHECK(half.d == doctest::Approx(1.0));
  CHECK(std::pow(half.E, 0.5) == doctest::Approx(0.25).epsilon(1e-13));  // D = 1/4
  const SmallBallLaw sum = combine_laws(half, half);
  CHECK(sum.K == doctest::Approx(4.0 / std::sqrt(pi)).epsilon(1e-13));
  CHECK(sum.a == doctest::Approx(0.5));
  CHECK(std::pow(sum.E, 0.5) == doctest::Approx(0.5).epsilon(1e-13));  // D doubles
  check_law(to_norm(sum), 4.0 / std::sqrt(pi), 1.0, 2.0, 0.25, 1e-12);
}

TEST_CASE("combine_laws symmetric formula and properties") {
  const SmallBallLaw v{1.3, 0.7, 1.5, std::pow(0.4, 2.5), SmallBallLaw::Variable::squared_r};
  const SmallBallLaw sum = combine_laws(v, v);
  const double d = 1.5, a = 0.7, D = 0.4, K = 1.3;
  CHECK(sum.a == doctest::Approx(2 * a - d / 2).epsilon(1e-14));
  CHECK(sum.E == doctest::Approx(std::pow(2 * D, d + 1)).epsilon(1e-13));
  const double expectK = K * K * std::sqrt(2 * pi * d / (d + 1)) * std::pow(D, 2 * a + 1) /
                         std::pow(2 * D, 2 * a - d / 2 + 0.5);
  CHECK(sum.K == doctest::Approx(expectK).epsilon(1e-13));

  // commutativity and exact D-additivity
  const SmallBallLaw w{0.8, -0.3, 1.5, std::pow(0.9, 2.5), SmallBallLaw::Variable::squared_r};
  const SmallBallLaw vw = combine_laws(v, w), wv = combine_laws(w, v);
  CHECK(vw.K == doctest::Approx(wv.K).epsilon(1e-14));
  CHECK(vw.E == doctest::Approx(wv.E).epsilon(1e-14));
  CHECK(std::pow(vw.E, 1.0 / (d + 1.0)) == doctest::Approx(0.4 + 0.9).epsilon(1e-13));

  CHECK_THROWS(combine_laws(v, SmallBallLaw{1, 0, 2.0, 1, SmallBallLaw::Variable::squared_r}));
  CHECK_THROWS(combine_laws(v, to_norm(w)));
}

TEST_CASE("two quarters of a squared bridge recombine to the centered bridge law") {
  const SmallBallLaw bridge = general_law(1, 0, 1.0, 1.0);
  const SmallBallLaw quarter = scale_variable(to_squared(bridge), 0.25);
  const SmallBallLaw sum = to_norm(combine_laws(quarter, quarter));
  check_law(sum, std::sqrt(2.0 / pi), -1.0, 2.0, 0.125, 1e-12);
}

TEST_CASE("variable conversion round trip") {
  const SmallBallLaw law = closed_law(proc("wiener-c", {{}, 2, {}, {}}));
  const SmallBallLaw back = to_norm(to_squared(law));
  CHECK(back.K == law.K);
  CHECK(back.a == law.a);
  CHECK(back.d == law.d);
  CHECK(back.E == law.E);
}

TEST_CASE("comparison ratio") {
  std::vector<double> a(200), b(200);
  for (int n = 0; n < 200; ++n) a[n] = b[n] = std::pow(pi * (n + 1), 2);
  CHECK(comparison_ratio(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  a[0] *= 4.0;
  CHECK(comparison_ratio(a, b) == doctest::Approx(2.0).epsilon(1e-14));

  // diverging sequences are rejected
  std::vector<double> c = b;
  for (int n = 0; n < 200; ++n) c[n] *= (1.0 + 0.5 / std::sqrt(n + 1.0));
  CHECK_THROWS(comparison_ratio(c, b));
}

TEST_CASE("slepian comparison against the conventional process") {
  const SpectrumResult s2 = positive_roots(char_function(proc("slepian", {2.0, {}, {}, {}})), 2000);
  const SpectrumResult s1 = positive_roots(char_function(proc("slepian", {1.0, {}, {}, {}})), 2000);
  const double ratio = comparison_ratio(s2.mu, s1.mu);
  CHECK(ratio == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-3));
}

TEST_CASE("beta pattern ranking") {
  // m = 1: both patterns tie
  const auto r1 = rank_beta_patterns(Family::slepian_integrated, 0, 1, 1.0);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].group == 0);
  CHECK(r1[1].group == 0);

  // m = 2: extremal groups are {00, 11} and {01, 10}
  const auto r2 = rank_beta_patterns(Family::slepian_integrated, 0, 2, 1.0);
  REQUIRE(r2.size() == 4);
  CHECK(r2[0].group == 0);
  CHECK(r2[1].group == 0);
  CHECK(r2[2].group == 1);
  CHECK(r2[3].group == 1);
  CHECK(((r2[0].beta == std::vector<int>{0, 0}) || (r2[0].beta == std::vector<int>{1, 1})));
  CHECK(((r2[3].beta == std::vector<int>{0, 1}) || (r2[3].beta == std::vector<int>{1, 0})));

  // bridge tower l=1, m=2: computed ordering exists and is descending
  const auto rb = rank_beta_patterns(Family::bridge_tower_integrated, 1, 2, 1.0);
  REQUIRE(rb.size() == 4);
  for (size_t i = 1; i < rb.size(); ++i) CHECK(rb[i - 1].K >= rb[i].K);
}
