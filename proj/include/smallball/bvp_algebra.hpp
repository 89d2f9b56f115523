#pragma once

#include <complex>
#include <cstdint>

#include "smallball/catalog.hpp"

namespace smallball {

/// Coefficients of the boundary determinant seen as a Laurent polynomial
/// theta1*xi + theta0 + theta_minus1/xi in the coupling variable xi.
struct ThetaQuadratic {
  std::complex<double> theta1;
  std::complex<double> theta0;
  std::complex<double> theta_minus1;
};

/// Arguments of the two roots of the theta quadratic, reduced to (-pi, pi],
/// ordered rho_prime >= rho_second.  They are the second-term phases of the
/// two eigenvalue subsequences.
struct PhasePair {
  double rho_prime = 0.0;
  double rho_second = 0.0;
};

/// Builds the 2l x 2l phase matrix of the spec and extracts (theta1, theta0,
/// theta_minus1) from determinant samples at xi = 1, -1, i.  Throws
/// std::invalid_argument for non-normalized input and IrregularBvpError when
/// theta1 vanishes (irregular boundary conditions).
ThetaQuadratic theta_coefficients(const BvpSpec& spec);

struct IrregularBvpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PhasePair rho_pair(const ThetaQuadratic& q);

/// Distance of (rho' + rho'') - (2 pi ell - 3 pi - pi kappa / ell) from the
/// nearest multiple of 2 pi.  Phases live on a fixed branch, so the identity
/// holds mod 2 pi only.
double verify_rho_sum(const BvpSpec& spec);

/// Deterministic generator of regular normalized problems for property
/// suites.  Orders form a random admissible multiset over {0..2l-1} (no value
/// more than twice), alpha/gamma are uniform in [-2,2]; draws with
/// |theta1| < 1e-6 are rejected and redrawn, so suites are reproducible from
/// the seed alone.
class RandomBvp {
 public:
  explicit RandomBvp(std::uint64_t seed);
  BvpSpec next(int ell);

 private:
  double uniform();                // in [0,1)
  std::uint64_t state_[4];
};

}  // namespace smallball
