#include "smallball/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "smallball/constants.hpp"

namespace smallball {

using cplx = std::complex<double>;
using std::numbers::pi;

SmallBallLaw to_squared(const SmallBallLaw& law) {
  if (law.variable == SmallBallLaw::Variable::squared_r) return law;
  return {law.K, law.a / 2.0, law.d / 2.0, law.E, SmallBallLaw::Variable::squared_r};
}

SmallBallLaw to_norm(const SmallBallLaw& law) {
  if (law.variable == SmallBallLaw::Variable::norm_eps) return law;
  return {law.K, 2.0 * law.a, 2.0 * law.d, law.E, SmallBallLaw::Variable::norm_eps};
}

SmallBallLaw scale_variable(const SmallBallLaw& law, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_variable: need c > 0");
  // P{cV <= x} = P{V <= x/c}
  SmallBallLaw out = law;
  out.K = law.K * std::pow(c, -law.a);
  out.E = law.E * std::pow(c, law.d);
  return out;
}

namespace {

double decay_exponent_coeff(int ell, double theta_ell) {
  const double s = 2.0 * ell * std::sin(pi / (2.0 * ell));
  return 0.5 * (2.0 * ell - 1.0) * std::pow(theta_ell / s, 2.0 * ell / (2.0 * ell - 1.0));
}

}  // namespace

SmallBallLaw general_law(int ell, long kappa, double theta_ell, double c_dist) {
  if (!(c_dist > 0.0)) throw std::invalid_argument("general_law: need c_dist > 0");
  if (kappa >= 2L * ell * ell)
    throw std::invalid_argument("general_law: kappa >= 2 ell^2 is outside the regular range");
  const double gamma = -ell + (kappa + 1.0) / (2.0 * ell - 1.0);
  const double sinv = std::sin(pi / (2.0 * ell));
  const double num = std::pow(2.0 * pi, ell / 2.0) * std::pow(pi / theta_ell, ell * gamma) *
                     std::pow(sinv, 0.5 * (1.0 + gamma));
  const double den = std::sqrt(2.0 * ell - 1.0) * std::pow(pi / (2.0 * ell), 1.0 + gamma / 2.0) *
                     std::pow(std::tgamma(ell - kappa / (2.0 * ell)), ell);
  SmallBallLaw out;
  out.K = c_dist * num / den;
  out.a = gamma;
  out.d = 2.0 / (2.0 * ell - 1.0);
  out.E = decay_exponent_coeff(ell, theta_ell);
  out.variable = SmallBallLaw::Variable::norm_eps;
  return out;
}

SmallBallLaw combine_laws(const SmallBallLaw& p, const SmallBallLaw& q) {
  if (p.variable != SmallBallLaw::Variable::squared_r ||
      q.variable != SmallBallLaw::Variable::squared_r)
    throw std::invalid_argument("combine_laws: both laws must be in the squared variable");
  if (std::abs(p.d - q.d) > 1e-12 * std::max(p.d, q.d))
    throw std::invalid_argument("combine_laws: decay exponents must match");
  const double d = p.d;
  const double d1 = std::pow(p.E, 1.0 / (d + 1.0));
  const double d2 = std::pow(q.E, 1.0 / (d + 1.0));
  SmallBallLaw out;
  out.variable = SmallBallLaw::Variable::squared_r;
  out.d = d;
  const double dd = d1 + d2;
  out.E = std::pow(dd, d + 1.0);
  out.a = p.a + q.a - d / 2.0;
  out.K = p.K * q.K * std::sqrt(2.0 * pi * d / (d + 1.0)) * std::pow(d1, p.a + 0.5) *
          std::pow(d2, q.a + 0.5) / std::pow(dd, out.a + 0.5);
  return out;
}

SmallBallLaw ideal_subsequence_law(int ell, double scale) {
  // spectrum mu_n = (pi n / scale)^(2 ell), realized with kappa = 2 ell (ell-1)
  SmallBallLaw base = general_law(ell, 2L * ell * (ell - 1), 1.0, 1.0);
  SmallBallLaw sq = to_squared(base);
  return scale_variable(sq, std::pow(scale, 2.0 * ell));
}

SmallBallLaw assembled_law(const ProcessSpec& spec, double c_dist) {
  if (!spec.zero_mode) return general_law(spec.ell, spec.kappa, spec.theta_ell, c_dist);
  // zero-mode towers: exactly double spectrum mu_n = (2 pi n)^(2 ell), i.e.
  // two independent copies of the ideal subsequence scaled by 2^(-2 ell)
  SmallBallLaw one = ideal_subsequence_law(spec.ell, 0.5);
  return to_norm(combine_laws(one, one));
}

// ---------------------------------------------------------------------------
// closed laws

namespace {

// Law with prefactor coeff * e^p / sqrt(pi D_ell) and exponent D_ell/(2 e^2),
// where e = (eps * sqrt(scale2))^(1/(2 ell - 1)).
SmallBallLaw theorem_law(int ell, double coeff, int p, double scale2, double theta_ell) {
  SmallBallLaw out;
  const double dfrak = (2.0 * ell - 1.0) / (2.0 * ell * std::sin(pi / (2.0 * ell)));
  out.K = coeff * std::pow(scale2, 0.5 * p / (2.0 * ell - 1.0)) / std::sqrt(pi * dfrak);
  out.a = static_cast<double>(p) / (2.0 * ell - 1.0);
  out.d = 2.0 / (2.0 * ell - 1.0);
  out.E = decay_exponent_coeff(ell, theta_ell);
  out.variable = SmallBallLaw::Variable::norm_eps;
  return out;
}

cplx unit_root(int order2, long power) {
  return std::polar(1.0, pi * static_cast<double>(power) / order2);
}

double vandermonde_of_orders(int ellv, const std::vector<int>& ks) {
  std::vector<cplx> vs;
  vs.reserve(ks.size());
  for (int k : ks) vs.push_back(unit_root(ellv, k));
  return vandermonde_abs(vs);
}

double coupled_products(int ellv, const BetaOrders& ord, cplx shift) {
  double p1 = 1.0, p2 = 1.0;
  for (size_t j = 0; j < ord.k.size(); ++j) {
    p1 *= std::norm(shift + unit_root(ellv, ord.k[j]));
    p2 *= std::norm(shift + unit_root(ellv, ord.k_prime[j]));
  }
  return p1 + p2;
}

}  // namespace

bool has_closed_law(const ProcessSpec& spec) {
  switch (spec.family) {
    case Family::slepian:
    case Family::slepian_integrated:
    case Family::bridge_centered_tower:
      return true;
    case Family::bridge_tower_integrated:
      return spec.m == 0 || spec.l == 1;
    case Family::wiener_centered_tower:
      return true;
    case Family::wiener_tower_integrated:
      return spec.m == 0 || spec.l == 2;
  }
  return false;
}

SmallBallLaw closed_law(const ProcessSpec& spec) {
  const int m = spec.m;
  const int l = spec.l;

  switch (spec.family) {
    case Family::slepian: {
      if (2.0 * spec.c - 1.0 == 0.0)
        return {4.0 / std::sqrt(pi), 1.0, 2.0, 0.25, SmallBallLaw::Variable::norm_eps};
      return {4.0 * std::sqrt(2.0) / std::sqrt(pi * (2.0 * spec.c - 1.0)), 2.0, 2.0, 0.25,
              SmallBallLaw::Variable::norm_eps};
    }
    case Family::slepian_integrated: {
      const int ell = m + 1;
      const BetaOrders ord = beta_orders_gap(m, spec.beta, 1);
      const double v = vandermonde_of_orders(ell, ord.k);
      const double scale2 = ell * std::sin(pi / (2.0 * ell));  // tilde-eps scaling
      if (2.0 * spec.c - 1.0 == 0.0) {
        const double coupled = std::sqrt(coupled_products(ell, ord, cplx(1.0, 0.0)));
        const double coeff = std::pow(2.0 * m + 2.0, 0.5 * m + 1.0) * 2.0 / (v * coupled);
        return theorem_law(ell, coeff, 1, scale2, spec.theta_ell);
      }
      const double coeff = std::pow(2.0 * m + 2.0, 0.5 * (m + 1.0)) *
                           std::sqrt(2.0 * std::sin(pi / (2.0 * m + 2.0))) * 2.0 /
                           (v * std::sqrt(2.0 * spec.c - 1.0));
      return theorem_law(ell, coeff, 2, scale2, spec.theta_ell);
    }
    case Family::bridge_centered_tower: {
      const int ell = l + 1;
      const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
      return theorem_law(ell, std::sqrt(2.0 * l + 2.0), -(2 * l + 1), scale2, 1.0);
    }
    case Family::bridge_tower_integrated: {
      if (m == 0) {
        const int ell = l + 1;
        const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
        const double coeff = (2.0 * l + 2.0) * std::sqrt(std::sin(pi / (2.0 * l + 2.0)));
        return theorem_law(ell, coeff, -2 * l, scale2, 1.0);
      }
      if (l != 1)
        throw std::invalid_argument("closed_law: integrated bridge towers are closed only for height 1");
      const int ell = m + 2;
      const BetaOrders ord = beta_orders_gap(m, spec.beta, 3);
      const double v = vandermonde_of_orders(ell, ord.k);
      const double coupled = std::sqrt(coupled_products(ell, ord, cplx(1.0, 0.0)));
      const double coeff = std::pow(2.0 * m + 4.0, 0.5 * (m + 2.0)) *
                           std::sqrt(2.0 * std::sin(3.0 * pi / (2.0 * m + 4.0))) / (v * coupled);
      const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
      return theorem_law(ell, coeff, -2, scale2, 1.0);
    }
    case Family::wiener_centered_tower: {
      if (l == 0)
        return {4.0 / std::sqrt(pi), 1.0, 2.0, 0.125, SmallBallLaw::Variable::norm_eps};
      const int ell = l + 1;
      const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
      double coeff = std::pow(2.0 * l + 2.0, 1.5) * std::sin(pi / (2.0 * l + 2.0));
      if (l % 2 == 1) coeff *= std::cos(pi / (2.0 * l + 2.0));
      return theorem_law(ell, coeff, -(2 * l - 1), scale2, 1.0);
    }
    case Family::wiener_tower_integrated: {
      if (m == 0)
        return closed_law(catalog_process(Family::wiener_centered_tower, {{}, l, {}, {}}));
      if (l != 2)
        throw std::invalid_argument("closed_law: integrated wiener towers are closed only for height 2");
      const int ell = m + 3;
      const BetaOrders ord = beta_orders_gap(m, spec.beta, 5);
      const double v = vandermonde_of_orders(ell, ord.k);
      const double coupled = std::sqrt(coupled_products(ell, ord, unit_root(ell, 1)));
      const double coeff = 4.0 * std::pow(2.0 * m + 6.0, 0.5 * (m + 2.0)) *
                           std::sin(pi / (m + 3.0)) *
                           std::sqrt(std::sin(pi / (2.0 * m + 6.0)) *
                                     std::sin(5.0 * pi / (2.0 * m + 6.0))) /
                           (v * coupled);
      const double scale2 = 2.0 * ell * std::sin(pi / (2.0 * ell));
      return theorem_law(ell, coeff, -3, scale2, 1.0);
    }
  }
  throw std::invalid_argument("closed_law: uncovered family");
}

// ---------------------------------------------------------------------------

double comparison_ratio(const std::vector<double>& mu_a, const std::vector<double>& mu_b) {
  if (mu_a.size() != mu_b.size() || mu_a.empty())
    throw std::invalid_argument("comparison_ratio: sequences must have equal nonzero length");
  const size_t n = mu_a.size();
  double logp = 0.0;
  std::vector<double> partial(n);
  for (size_t i = 0; i < n; ++i) {
    logp += 0.5 * (std::log(mu_a[i]) - std::log(mu_b[i]));
    partial[i] = logp;
  }
  // Cauchy diagnostic: the last quarter of partial log-products must have
  // settled relative to the swing of the first quarter
  if (n >= 64) {
    double lo = partial[3 * n / 4], hi = partial[3 * n / 4];
    for (size_t i = 3 * n / 4; i < n; ++i) {
      lo = std::min(lo, partial[i]);
      hi = std::max(hi, partial[i]);
    }
    double lo0 = partial[0], hi0 = partial[0];
    for (size_t i = 0; i < n / 4; ++i) {
      lo0 = std::min(lo0, partial[i]);
      hi0 = std::max(hi0, partial[i]);
    }
    const double early = std::max(hi0 - lo0, 1e-9);
    if (hi - lo > 0.25 * early + 1e-3)
      throw std::runtime_error("comparison_ratio: partial products are not settling");
  }
  return std::exp(logp);
}

std::vector<RankedPattern> rank_beta_patterns(Family family, int l, int m, double c) {
  if (m < 1 || m > 12) throw std::invalid_argument("rank_beta_patterns: m must be in 1..12");
  std::vector<RankedPattern> out;
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::vector<int> beta(m);
    for (int j = 0; j < m; ++j) beta[j] = (mask >> j) & 1;
    CatalogParams params;
    params.c = c;
    params.l = l;
    params.m = m;
    params.beta = beta;
    ProcessSpec spec = catalog_process(family, params);
    if (!has_closed_law(spec))
      throw std::invalid_argument("rank_beta_patterns: family lacks a closed law with "
                                  "endpoint dependence");
    out.push_back({beta, closed_law(spec).K, 0});
  }
  std::sort(out.begin(), out.end(), [](const RankedPattern& a, const RankedPattern& b) {
    if (a.K != b.K) return a.K > b.K;
    return a.beta < b.beta;
  });
  int group = 0;
  for (size_t i = 1; i < out.size(); ++i) {
    if (std::abs(out[i].K - out[i - 1].K) > 1e-9 * std::abs(out[i - 1].K)) ++group;
    out[i].group = group;
  }
  return out;
}

}  // namespace smallball
