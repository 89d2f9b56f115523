#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "smallball/catalog.hpp"

using namespace smallball;

namespace {
ProcessSpec make(const std::string& id, CatalogParams p) { return catalog_process(id, p); }
}  // namespace

TEST_CASE("slepian base entries") {
  ProcessSpec s1 = make("slepian", {1.0, {}, {}, {}});
  CHECK(s1.ell == 1);
  CHECK(s1.kappa == 2);
  CHECK(s1.theta_ell == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(s1.zero_mode);
  REQUIRE(s1.bvp.conditions.size() == 2);
  // both conditions have order 1; the coupling one carries lower-order terms
  CHECK(s1.bvp.conditions[0].k == 1);
  CHECK(s1.bvp.conditions[1].k == 1);
  bool has_lower = s1.bvp.conditions[0].has_lower_terms() || s1.bvp.conditions[1].has_lower_terms();
  CHECK(has_lower);

  ProcessSpec s12 = make("slepian", {0.5, {}, {}, {}});
  CHECK(s12.kappa == 1);
  CHECK(s12.bvp.conditions[1].k == 0);
  CHECK_FALSE(s12.bvp.conditions[1].has_lower_terms());
}

TEST_CASE("wiener tower l=1 is the fourth-order pinned problem") {
  ProcessSpec w1 = make("wiener-c", {{}, 1, {}, {}});
  CHECK(w1.ell == 2);
  CHECK(w1.kappa == 4);
  CHECK(w1.theta_ell == 1.0);
  std::multiset<int> orders;
  for (const auto& bc : w1.bvp.conditions) orders.insert(bc.k);
  CHECK(orders == std::multiset<int>{0, 0, 2, 2});
}

TEST_CASE("centered bridge l=0 is the periodic problem with a zero mode") {
  ProcessSpec b = make("bridge-c", {{}, 0, {}, {}});
  CHECK(b.ell == 1);
  CHECK(b.kappa == 1);
  CHECK(b.zero_mode);
  REQUIRE(b.bvp.conditions.size() == 2);
  CHECK(b.bvp.conditions[0].k == 1);
  CHECK(b.bvp.conditions[0].alpha == 1.0);
  CHECK(b.bvp.conditions[0].gamma == -1.0);
}

TEST_CASE("beta order mapping") {
  BetaOrders s = beta_orders(2, {0, 1}, BetaOrderFamily::slepian);
  CHECK(s.k == std::vector<int>{1, 5});
  CHECK(s.k_prime == std::vector<int>{4, 0});

  BetaOrders b = beta_orders(1, {1}, BetaOrderFamily::bridge);
  CHECK(b.k == std::vector<int>{5});
  CHECK(b.k_prime == std::vector<int>{0});

  BetaOrders w = beta_orders(1, {0}, BetaOrderFamily::wiener2);
  CHECK(w.k == std::vector<int>{0});
  CHECK(w.k_prime == std::vector<int>{7});

  CHECK_THROWS_AS(beta_orders(0, {}, BetaOrderFamily::slepian), std::invalid_argument);
  CHECK_THROWS_AS(beta_orders(2, {0}, BetaOrderFamily::slepian), std::invalid_argument);
}

TEST_CASE("normalized kappa on cited problems") {
  CHECK(normalized_kappa(make("bridge-c", {{}, 0, {}, {}}).bvp) == 1);
  CHECK(normalized_kappa(make("wiener-c", {{}, 1, {}, {}}).bvp) == 4);
  CHECK(normalized_kappa(make("bridge-c-int", {{}, 1, 0, {}}).bvp) == 3);
}

TEST_CASE("kappa matches the family formulas") {
  for (int m = 1; m <= 4; ++m) {
    for (long mask = 0; mask < (1L << m); ++mask) {
      std::vector<int> beta(m);
      for (int j = 0; j < m; ++j) beta[j] = (mask >> j) & 1;
      CHECK(make("slepian-int", {0.5, {}, m, beta}).kappa == (2L * m + 1) * (m + 1));
      CHECK(make("slepian-int", {1.5, {}, m, beta}).kappa == (2L * m + 1) * (m + 1) + 1);
    }
  }
  for (int l = 0; l <= 3; ++l)
    for (int m = 0; m <= 3; ++m) {
      std::vector<int> beta(m, 1);
      long base = (2L * m + 2 * l + 1) * (m + l + 1);
      CHECK(make("bridge-c-int", {{}, l, m, beta}).kappa == base - (2 * l + 1));
      if (l >= 1) CHECK(make("wiener-c-int", {{}, l, m, beta}).kappa == base - 2 * l);
    }
  // plain wiener also satisfies the tower formula at l = 0
  CHECK(make("wiener-c", {{}, 0, {}, {}}).kappa == 1);
}

TEST_CASE("beta orders merged with fixed conditions reproduce the problem orders") {
  auto order_multiset = [](const BvpSpec& bvp) {
    std::multiset<int> out;
    for (const auto& bc : bvp.conditions) out.insert(bc.k);
    return out;
  };
  const int m = 2;
  const std::vector<int> beta = {1, 0};

  std::multiset<int> expect;
  BetaOrders ords = beta_orders_gap(m, beta, 2 * 1 + 1);  // bridge tower l=1
  for (int v : ords.k) expect.insert(v);
  for (int v : ords.k_prime) expect.insert(v);
  expect.insert(m);
  expect.insert(m);
  for (int j = 1; j <= 2; ++j) expect.insert(m + j);
  CHECK(order_multiset(make("bridge-c-int", {{}, 1, m, beta}).bvp) == expect);
}

TEST_CASE("flip-and-reverse keeps kappa (time reversal)") {
  for (int m = 1; m <= 4; ++m) {
    for (long mask = 0; mask < (1L << m); ++mask) {
      std::vector<int> beta(m), flipped(m);
      for (int j = 0; j < m; ++j) beta[j] = (mask >> j) & 1;
      for (int j = 0; j < m; ++j) flipped[j] = 1 - beta[m - 1 - j];
      CHECK(make("slepian-int", {1.0, {}, m, beta}).kappa ==
            make("slepian-int", {1.0, {}, m, flipped}).kappa);
      CHECK(make("wiener-c-int", {{}, 2, m, beta}).kappa ==
            make("wiener-c-int", {{}, 2, m, flipped}).kappa);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make("slepian", {0.4, {}, {}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(make("slepian-int", {1.0, {}, 2, std::vector<int>{0}}), std::invalid_argument);
  CHECK_THROWS_AS(make("nosuch", {}), std::invalid_argument);
  CHECK_THROWS_AS(make("wiener-c-int", {{}, 0, 1, std::vector<int>{0}}), std::invalid_argument);
  CHECK_THROWS_AS(make("slepian-int", {1.0, {}, 0, std::vector<int>{}}), std::invalid_argument);
}

TEST_CASE("normalized form is enforced") {
  BvpSpec bad;
  bad.ell = 1;
  bad.conditions = {{0, 1.0, 0.0, {}, {}}, {1, 0.0, 1.0, {}, {}}};  // ascending orders
  CHECK_THROWS_AS(normalized_kappa(bad), std::invalid_argument);

  BvpSpec bad2;
  bad2.ell = 2;
  bad2.conditions = {{1, 1.0, 0.0, {}, {}},
                     {1, 0.0, 1.0, {}, {}},
                     {1, 1.0, 1.0, {}, {}},
                     {0, 1.0, 0.0, {}, {}}};  // order 1 three times
  CHECK_THROWS_AS(normalized_kappa(bad2), std::invalid_argument);
}

TEST_CASE("centered wiener top") {
  BvpSpec top = wiener_centered_top(1);
  CHECK(top.ell == 2);
  CHECK(top.zero_mode);
  std::multiset<int> orders;
  for (const auto& bc : top.conditions) orders.insert(bc.k);
  CHECK(orders == std::multiset<int>{0, 2, 2, 3});
}
