#include "smallball/bvp_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detail_linalg.hpp"

namespace smallball {

using detail::cplx;
using std::numbers::pi;

namespace {

cplx omega(int ell, long power) {
  // exp(i pi power / ell)
  double ang = pi * static_cast<double>(power) / ell;
  return std::polar(1.0, ang);
}

cplx phase_det(const BvpSpec& spec, cplx xi) {
  const int ell = spec.ell;
  const int n = 2 * ell;
  std::vector<cplx> a(static_cast<size_t>(n) * n);
  for (int nu = 0; nu < n; ++nu) {
    const auto& bc = spec.conditions[nu];
    const cplx al(bc.alpha, 0.0), ga(bc.gamma, 0.0);
    for (int j = 0; j < n; ++j) {
      cplx w = omega(ell, static_cast<long>(j) * bc.k);
      cplx entry;
      if (j == 0)
        entry = al + xi * ga;
      else if (j < ell)
        entry = al * w;
      else if (j == ell)
        entry = w * (al + ga / xi);
      else
        entry = ga * w;
      a[static_cast<size_t>(nu) * n + j] = entry;
    }
  }
  detail::ScaledLu lu(std::move(a), n);
  auto d = lu.det();
  return d.mantissa * std::exp(d.log_scale);
}

double reduce_arg(cplx z) {
  double a = std::arg(z);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

}  // namespace

ThetaQuadratic theta_coefficients(const BvpSpec& spec) {
  (void)normalized_kappa(spec);  // validates shape and ordering
  const cplx d1 = phase_det(spec, cplx(1.0, 0.0));
  const cplx dm1 = phase_det(spec, cplx(-1.0, 0.0));
  const cplx di = phase_det(spec, cplx(0.0, 1.0));

  // d(xi) = theta1*xi + theta0 + theta_minus1/xi sampled at xi = 1, -1, i
  ThetaQuadratic q;
  q.theta0 = 0.5 * (d1 + dm1);
  const cplx sum = 0.5 * (d1 - dm1);              // theta1 + theta_minus1
  const cplx dif = (di - q.theta0) / cplx(0, 1);  // theta1 - theta_minus1
  q.theta1 = 0.5 * (sum + dif);
  q.theta_minus1 = 0.5 * (sum - dif);

  const double scale = std::max({std::abs(q.theta0), std::abs(q.theta_minus1),
                                 std::abs(q.theta1), 1e-300});
  if (std::abs(q.theta1) <= 1e-12 * scale)
    throw IrregularBvpError("theta1 = 0: boundary conditions are irregular");
  return q;
}

PhasePair rho_pair(const ThetaQuadratic& q) {
  // roots of theta1*xi^2 + theta0*xi + theta_minus1 = 0
  const cplx a = q.theta1, b = q.theta0, c = q.theta_minus1;
  const cplx disc = b * b - 4.0 * a * c;
  cplx sq = std::sqrt(disc);
  if (std::abs(b - sq) > std::abs(b + sq)) sq = -sq;
  const cplx qq = -0.5 * (b + sq);
  cplx x1, x2;
  if (qq == cplx(0.0, 0.0)) {
    x1 = cplx(0.0, 0.0);
    x2 = cplx(0.0, 0.0);
  } else {
    x1 = qq / a;
    x2 = c / qq;
  }
  double r1 = reduce_arg(x1), r2 = reduce_arg(x2);
  if (r1 < r2) std::swap(r1, r2);
  return {r1, r2};
}

double verify_rho_sum(const BvpSpec& spec) {
  const PhasePair ph = rho_pair(theta_coefficients(spec));
  const long kappa = normalized_kappa(spec);
  const double target =
      2.0 * pi * spec.ell - 3.0 * pi - pi * static_cast<double>(kappa) / spec.ell;
  return std::abs(std::remainder(ph.rho_prime + ph.rho_second - target, 2.0 * pi));
}

// ---------------------------------------------------------------------------
// seeded random regular problems (xoshiro256**, independent of std library
// distribution details so suites are byte-stable across platforms)

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace

RandomBvp::RandomBvp(std::uint64_t seed) {
  for (auto& s : state_) s = splitmix64(seed);
}

double RandomBvp::uniform() {
  std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return static_cast<double>(result >> 11) * 0x1.0p-53;
}

BvpSpec RandomBvp::next(int ell) {
  if (ell < 1 || ell > 8) throw std::invalid_argument("RandomBvp: ell out of range");
  const int n = 2 * ell;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // admissible order multiset: d doubled values, 2*ell - 2*d singles
    const int d = static_cast<int>(uniform() * (ell + 1)) % (ell + 1);
    std::vector<int> values(n);
    for (int i = 0; i < n; ++i) values[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(uniform() * (i + 1)) % (i + 1);
      std::swap(values[i], values[j]);
    }
    std::vector<int> orders;
    for (int i = 0; i < d; ++i) {
      orders.push_back(values[i]);
      orders.push_back(values[i]);
    }
    for (int i = d; i < n - d; ++i) orders.push_back(values[i]);
    std::sort(orders.rbegin(), orders.rend());

    BvpSpec spec;
    spec.ell = ell;
    spec.leading_factor = 1.0;
    for (int k : orders) {
      BoundaryCondition bc;
      bc.k = k;
      do {
        bc.alpha = 4.0 * uniform() - 2.0;
        bc.gamma = 4.0 * uniform() - 2.0;
      } while (std::abs(bc.alpha) < 1e-3 && std::abs(bc.gamma) < 1e-3);
      spec.conditions.push_back(bc);
    }
    try {
      ThetaQuadratic q = theta_coefficients(spec);
      if (std::abs(q.theta1) < 1e-6) continue;  // documented rejection rule
      return spec;
    } catch (const IrregularBvpError&) {
      continue;
    }
  }
  throw std::runtime_error("RandomBvp: rejection loop failed to terminate");
}

}  // namespace smallball
