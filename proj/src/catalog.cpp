#include "smallball/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace smallball {

bool BoundaryCondition::has_lower_terms() const {
  auto nonzero = [](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
  };
  return nonzero(alpha_lower) || nonzero(gamma_lower);
}

namespace {

BoundaryCondition endpoint0(int k) { return {k, 1.0, 0.0, {}, {}}; }
BoundaryCondition endpoint1(int k) { return {k, 0.0, 1.0, {}, {}}; }
BoundaryCondition periodic(int k) { return {k, 1.0, -1.0, {}, {}}; }
BoundaryCondition symmetric_sum(int k) { return {k, 1.0, 1.0, {}, {}}; }

void sort_normalized(BvpSpec& spec) {
  std::stable_sort(spec.conditions.begin(), spec.conditions.end(),
                   [](const BoundaryCondition& a, const BoundaryCondition& b) {
                     return a.k > b.k;
                   });
}

void check_params(const ProcessSpec& p) {
  if (p.m < 0) throw std::invalid_argument("catalog: m must be nonnegative");
  if (p.l < 0) throw std::invalid_argument("catalog: l must be nonnegative");
  if ((int)p.beta.size() != p.m)
    throw std::invalid_argument("catalog: beta length must equal m");
  for (int b : p.beta)
    if (b != 0 && b != 1)
      throw std::invalid_argument("catalog: beta entries must be 0 or 1");
}

// Endpoint conditions u^(m-j)(beta_j) = 0 and u^(m+gap+j)(1-beta_j) = 0 for
// j = 1..m, expressed as orders pinned at t=0 and t=1.
void append_beta_conditions(BvpSpec& bvp, int m, const std::vector<int>& beta, int gap) {
  BetaOrders ord = beta_orders_gap(m, beta, gap);
  for (int j = 0; j < m; ++j) {
    bvp.conditions.push_back(endpoint0(ord.k[j]));
    bvp.conditions.push_back(endpoint1(ord.k_prime[j]));
  }
}

ProcessSpec make_slepian(double c, int m, const std::vector<int>& beta) {
  if (!(c >= 0.5)) throw std::invalid_argument("catalog: slepian requires c >= 1/2");
  ProcessSpec p;
  p.family = m == 0 ? Family::slepian : Family::slepian_integrated;
  p.c = c;
  p.m = m;
  p.beta = beta;
  p.ell = m + 1;
  p.theta_ell = std::pow(2.0, 1.0 / (2.0 * p.ell));
  p.zero_mode = false;
  check_params(p);

  BvpSpec bvp;
  bvp.ell = p.ell;
  bvp.leading_factor = 0.5;
  if (m > 0) append_beta_conditions(bvp, m, beta, 1);
  bvp.conditions.push_back(symmetric_sum(m + 1));  // u^(m+1)(0) + u^(m+1)(1) = 0
  // The structural boundary at c = 1/2 is exact, not a tolerance: the second
  // coupling condition degenerates to order m there.
  if (2.0 * c - 1.0 == 0.0) {
    bvp.conditions.push_back(symmetric_sum(m));    // u^(m)(0) + u^(m)(1) = 0
  } else {
    // (2c-1) u^(m+1)(0) - u^(m)(0) - u^(m)(1) = 0
    BoundaryCondition bc;
    bc.k = m + 1;
    bc.alpha = 2.0 * c - 1.0;
    bc.gamma = 0.0;
    bc.alpha_lower.assign(m + 1, 0.0);
    bc.gamma_lower.assign(m + 1, 0.0);
    bc.alpha_lower[m] = -1.0;
    bc.gamma_lower[m] = -1.0;
    bvp.conditions.push_back(bc);
  }
  sort_normalized(bvp);
  p.bvp = bvp;
  p.kappa = normalized_kappa(bvp);
  return p;
}

ProcessSpec make_bridge_centered(int l) {
  ProcessSpec p;
  p.family = Family::bridge_centered_tower;
  p.l = l;
  p.ell = l + 1;
  p.theta_ell = 1.0;
  p.zero_mode = true;
  check_params(p);

  BvpSpec bvp;
  bvp.ell = p.ell;
  bvp.leading_factor = 1.0;
  bvp.zero_mode = true;
  for (int j = 0; j <= 2 * l + 1; ++j) bvp.conditions.push_back(periodic(j));
  sort_normalized(bvp);
  p.bvp = bvp;
  p.kappa = normalized_kappa(bvp);
  return p;
}

ProcessSpec make_bridge_tower(int l, int m, const std::vector<int>& beta) {
  ProcessSpec p;
  p.family = Family::bridge_tower_integrated;
  p.l = l;
  p.m = m;
  p.beta = beta;
  p.ell = l + m + 1;
  p.theta_ell = 1.0;
  p.zero_mode = false;
  check_params(p);

  BvpSpec bvp;
  bvp.ell = p.ell;
  bvp.leading_factor = 1.0;
  if (m > 0) append_beta_conditions(bvp, m, beta, 2 * l + 1);
  bvp.conditions.push_back(endpoint0(m));
  bvp.conditions.push_back(endpoint1(m));
  for (int j = 1; j <= 2 * l; ++j) bvp.conditions.push_back(periodic(m + j));
  sort_normalized(bvp);
  p.bvp = bvp;
  p.kappa = normalized_kappa(bvp);
  return p;
}

ProcessSpec make_wiener_tower(int l, int m, const std::vector<int>& beta) {
  ProcessSpec p;
  p.family = m == 0 ? Family::wiener_centered_tower : Family::wiener_tower_integrated;
  p.l = l;
  p.m = m;
  p.beta = beta;
  p.ell = l + m + 1;
  p.theta_ell = 1.0;
  p.zero_mode = false;
  check_params(p);

  BvpSpec bvp;
  bvp.ell = p.ell;
  bvp.leading_factor = 1.0;
  if (l == 0) {
    // Plain Wiener process; the tower pattern below needs l >= 1.
    if (m != 0)
      throw std::invalid_argument("catalog: integrated wiener tower requires l >= 1");
    bvp.conditions.push_back(endpoint0(0));
    bvp.conditions.push_back(endpoint1(1));
  } else {
    if (m > 0) append_beta_conditions(bvp, m, beta, 2 * l + 1);
    bvp.conditions.push_back(endpoint0(m));
    bvp.conditions.push_back(endpoint1(m));
    bvp.conditions.push_back(endpoint0(m + l + 1));
    bvp.conditions.push_back(endpoint1(m + l + 1));
    for (int j = 1; j <= l - 1; ++j) bvp.conditions.push_back(periodic(m + j));
    for (int j = l + 2; j <= 2 * l; ++j) bvp.conditions.push_back(periodic(m + j));
  }
  sort_normalized(bvp);
  p.bvp = bvp;
  p.kappa = normalized_kappa(bvp);
  return p;
}

}  // namespace

BetaOrders beta_orders_gap(int m, const std::vector<int>& beta, int gap) {
  if (m < 1) throw std::invalid_argument("beta_orders: m must be >= 1");
  if ((int)beta.size() != m)
    throw std::invalid_argument("beta_orders: beta length must equal m");
  BetaOrders out;
  out.k.resize(m);
  out.k_prime.resize(m);
  for (int j = 1; j <= m; ++j) {
    int b = beta[j - 1];
    if (b != 0 && b != 1)
      throw std::invalid_argument("beta_orders: beta entries must be 0 or 1");
    int kj = b == 0 ? m - j : m + gap + j;
    out.k[j - 1] = kj;
    out.k_prime[j - 1] = 2 * m + gap - kj;
  }
  return out;
}

BetaOrders beta_orders(int m, const std::vector<int>& beta, BetaOrderFamily fam) {
  switch (fam) {
    case BetaOrderFamily::slepian: return beta_orders_gap(m, beta, 1);
    case BetaOrderFamily::bridge: return beta_orders_gap(m, beta, 3);
    case BetaOrderFamily::wiener2: return beta_orders_gap(m, beta, 5);
  }
  throw std::invalid_argument("beta_orders: unknown family offset");
}

long normalized_kappa(const BvpSpec& spec) {
  const auto& cs = spec.conditions;
  if ((int)cs.size() != 2 * spec.ell)
    throw std::invalid_argument("normalized_kappa: expected 2*ell conditions");
  long kappa = 0;
  for (size_t i = 0; i < cs.size(); ++i) {
    const auto& bc = cs[i];
    if (bc.k < 0 || bc.k > 2 * spec.ell - 1)
      throw std::invalid_argument("normalized_kappa: order out of range");
    if (bc.alpha == 0.0 && bc.gamma == 0.0)
      throw std::invalid_argument("normalized_kappa: alpha and gamma both zero");
    if (i > 0 && cs[i - 1].k < bc.k)
      throw std::invalid_argument("normalized_kappa: orders not descending");
    if (i > 1 && cs[i - 2].k <= bc.k)
      throw std::invalid_argument("normalized_kappa: order repeated three times");
    kappa += bc.k;
  }
  return kappa;
}

ProcessSpec catalog_process(Family family, const CatalogParams& params) {
  const double c = params.c.value_or(1.0);
  const int l = params.l.value_or(0);
  const int m = params.m.value_or(0);
  std::vector<int> beta = params.beta.value_or(std::vector<int>(std::max(m, 0), 0));

  switch (family) {
    case Family::slepian:
      if (m != 0) throw std::invalid_argument("catalog: slepian takes no integrations; use slepian-int");
      return make_slepian(c, 0, {});
    case Family::slepian_integrated:
      if (m < 1) throw std::invalid_argument("catalog: slepian-int requires m >= 1");
      return make_slepian(c, m, beta);
    case Family::bridge_centered_tower:
      return make_bridge_centered(l);
    case Family::bridge_tower_integrated:
      return make_bridge_tower(l, m, beta);
    case Family::wiener_centered_tower:
      if (m != 0) throw std::invalid_argument("catalog: wiener-c takes no integrations; use wiener-c-int");
      return make_wiener_tower(l, 0, {});
    case Family::wiener_tower_integrated:
      if (l < 1) throw std::invalid_argument("catalog: wiener-c-int requires l >= 1");
      return make_wiener_tower(l, m, beta);
  }
  throw std::invalid_argument("catalog: unknown family");
}

ProcessSpec catalog_process(const std::string& id, const CatalogParams& params) {
  return catalog_process(family_from_id(id), params);
}

BvpSpec wiener_centered_top(int l) {
  if (l < 1) throw std::invalid_argument("wiener_centered_top: requires l >= 1");
  BvpSpec bvp;
  bvp.ell = l + 1;
  bvp.leading_factor = 1.0;
  bvp.zero_mode = true;
  bvp.conditions.push_back(endpoint0(l + 1));
  bvp.conditions.push_back(endpoint1(l + 1));
  for (int j = 0; j <= l - 1; ++j) bvp.conditions.push_back(periodic(j));
  for (int j = l + 2; j <= 2 * l + 1; ++j) bvp.conditions.push_back(periodic(j));
  sort_normalized(bvp);
  (void)normalized_kappa(bvp);
  return bvp;
}

std::vector<std::string> catalog_ids() {
  return {"slepian", "slepian-int", "bridge-c", "bridge-c-int", "wiener-c", "wiener-c-int"};
}

Family family_from_id(const std::string& id) {
  static const std::map<std::string, Family> table = {
      {"slepian", Family::slepian},
      {"slepian-int", Family::slepian_integrated},
      {"bridge-c", Family::bridge_centered_tower},
      {"bridge-c-int", Family::bridge_tower_integrated},
      {"wiener-c", Family::wiener_centered_tower},
      {"wiener-c-int", Family::wiener_tower_integrated},
  };
  auto it = table.find(id);
  if (it == table.end()) throw std::invalid_argument("unknown process id: " + id);
  return it->second;
}

std::string family_id(Family f) {
  switch (f) {
    case Family::slepian: return "slepian";
    case Family::slepian_integrated: return "slepian-int";
    case Family::bridge_centered_tower: return "bridge-c";
    case Family::bridge_tower_integrated: return "bridge-c-int";
    case Family::wiener_centered_tower: return "wiener-c";
    case Family::wiener_tower_integrated: return "wiener-c-int";
  }
  return "?";
}

std::string ProcessSpec::id() const { return family_id(family); }

std::string ProcessSpec::describe() const {
  std::ostringstream os;
  os << id();
  switch (family) {
    case Family::slepian:
      os << " c=" << c;
      break;
    case Family::slepian_integrated: {
      os << " c=" << c << " m=" << m << " beta=";
      for (int b : beta) os << b;
      break;
    }
    case Family::bridge_centered_tower:
      os << " l=" << l;
      break;
    case Family::bridge_tower_integrated:
    case Family::wiener_tower_integrated: {
      os << " l=" << l << " m=" << m;
      if (m > 0) {
        os << " beta=";
        for (int b : beta) os << b;
      }
      break;
    }
    case Family::wiener_centered_tower:
      os << " l=" << l;
      break;
  }
  return os.str();
}

}  // namespace smallball
