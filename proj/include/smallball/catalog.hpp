#pragma once

#include <optional>
#include <string>
#include <vector>

namespace smallball {

/// One boundary functional in normalized form,
///   alpha*u^(k)(0) + gamma*u^(k)(1)
///     + sum_{j<k} [ alpha_lower[j]*u^(j)(0) + gamma_lower[j]*u^(j)(1) ] = 0.
/// At least one of alpha, gamma must be nonzero.  The lower-order lists may be
/// shorter than k; missing entries are zero.
struct BoundaryCondition {
  int k = 0;
  double alpha = 0.0;
  double gamma = 0.0;
  std::vector<double> alpha_lower;
  std::vector<double> gamma_lower;

  bool has_lower_terms() const;
};

/// Self-adjoint two-point problem (-1)^ell * p_ell * u^(2 ell) = mu * u on [0,1]
/// with 2*ell normalized boundary conditions, sorted by descending order k.
/// zero_mode marks problems whose kernel is the constant function; their Green
/// function is the generalized one and the zero eigenvalue is dropped
/// everywhere downstream.
struct BvpSpec {
  int ell = 1;
  double leading_factor = 1.0;
  std::vector<BoundaryCondition> conditions;
  bool zero_mode = false;
};

enum class Family {
  slepian,
  slepian_integrated,
  bridge_centered_tower,
  bridge_tower_integrated,
  wiener_centered_tower,
  wiener_tower_integrated,
};

/// A catalog entry: a named Gaussian process together with the boundary value
/// problem whose (generalized) Green function is its covariance.
struct ProcessSpec {
  Family family = Family::slepian;
  double c = 1.0;          // Slepian covariance offset, >= 1/2
  int l = 0;               // centering tower height
  int m = 0;               // number of extra integrations
  std::vector<int> beta;   // integration endpoints, |beta| == m, entries 0/1
  int ell = 1;             // half-order of the operator
  long kappa = 0;          // total order of the normalized boundary conditions
  double theta_ell = 1.0;  // integral of p_ell^(-1/(2 ell)); constant coefficient here
  bool zero_mode = false;
  BvpSpec bvp;

  std::string id() const;          // stable identifier, e.g. "bridge-c-int"
  std::string describe() const;    // identifier plus resolved parameters
};

struct CatalogParams {
  std::optional<double> c;
  std::optional<int> l;
  std::optional<int> m;
  std::optional<std::vector<int>> beta;
};

/// Orders of the endpoint conditions contributed by m extra integrations.
/// k[j] is the order pinned at t=0 and k_prime[j] the order pinned at t=1 for
/// integration j (1-based in the formulas, 0-based in the vectors).
struct BetaOrders {
  std::vector<int> k;
  std::vector<int> k_prime;
};

enum class BetaOrderFamily { slepian, bridge, wiener2 };

BetaOrders beta_orders(int m, const std::vector<int>& beta, BetaOrderFamily fam);

/// Same mapping for a general tower of height l (gap 2l+1 between the two
/// order ranges); the named variants above are l = 0, 1, 2.
BetaOrders beta_orders_gap(int m, const std::vector<int>& beta, int gap);

/// Sum of boundary-condition orders; throws if the conditions violate the
/// normalized-form ordering (descending k, no order appearing 3+ times).
long normalized_kappa(const BvpSpec& spec);

ProcessSpec catalog_process(Family family, const CatalogParams& params);
ProcessSpec catalog_process(const std::string& id, const CatalogParams& params);

/// Fully centered wiener tower top: the zero-mode problem whose nonzero
/// spectrum coincides with the bridge tower of the same height. Library/test
/// surface only, not a public process id.
BvpSpec wiener_centered_top(int l);

std::vector<std::string> catalog_ids();
Family family_from_id(const std::string& id);
std::string family_id(Family f);

}  // namespace smallball
