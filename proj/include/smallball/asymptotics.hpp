#pragma once

#include <vector>

#include "smallball/catalog.hpp"

namespace smallball {

/// Canonical small-ball law P{ . <= x } ~ K x^a exp(-E x^-d) as x -> 0,
/// either in the norm variable (x = eps) or the squared-norm variable
/// (x = r = eps^2).  The two are linked by (K, a, d, E) <-> (K, a/2, d/2, E).
struct SmallBallLaw {
  double K = 1.0;
  double a = 0.0;
  double d = 1.0;
  double E = 0.0;
  enum class Variable { norm_eps, squared_r } variable = Variable::norm_eps;
};

SmallBallLaw to_squared(const SmallBallLaw& law);
SmallBallLaw to_norm(const SmallBallLaw& law);

/// Law of the scaled variable c*V given the law of V (same variable tag).
SmallBallLaw scale_variable(const SmallBallLaw& law, double c);

/// General law of a process whose covariance solves a regular catalog
/// problem:  gamma = -ell + (kappa+1)/(2 ell - 1), decay d = 2/(2 ell - 1),
/// and the prefactor assembled from the distortion constant.  Requires
/// kappa < 2 ell^2.
SmallBallLaw general_law(int ell, long kappa, double theta_ell, double c_dist);

/// Theorem-specific closed laws for the cataloged families (norm variable).
SmallBallLaw closed_law(const ProcessSpec& spec);

bool has_closed_law(const ProcessSpec& spec);

/// Law of V1 + V2 for independent V1, V2 with matching decay exponent d,
/// both in the squared variable:  D = D1 + D2 with D_i = E_i^(1/(d+1)).
SmallBallLaw combine_laws(const SmallBallLaw& p, const SmallBallLaw& q);

/// Law of sum_n eta_n^2 / (pi n / scale)^(2 ell): building block for
/// zero-mode (periodic) towers whose spectrum is exactly double.
SmallBallLaw ideal_subsequence_law(int ell, double scale);

/// Assembled law for a catalog process: Theorem-route for regular entries
/// (distortion constant supplied by the caller), double-spectrum split for
/// zero-mode towers (c_dist ignored there).
SmallBallLaw assembled_law(const ProcessSpec& spec, double c_dist);

/// lim P{||A|| <= eps} / P{||B|| <= eps} = prod (mu_a_n / mu_b_n)^(1/2),
/// with a Cauchy check on the partial products.
double comparison_ratio(const std::vector<double>& mu_a, const std::vector<double>& mu_b);

struct RankedPattern {
  std::vector<int> beta;
  double K = 0.0;
  int group = 0;  // tie group index, 0 = largest K
};

/// Closed-law prefactors for all 2^m endpoint patterns, sorted descending,
/// ties grouped.
std::vector<RankedPattern> rank_beta_patterns(Family family, int l, int m, double c = 1.0);

}  // namespace smallball
