#pragma once

#include <complex>
#include <vector>

#include "smallball/catalog.hpp"
#include "smallball/spectral.hpp"

namespace smallball {

/// |Vandermonde determinant| = prod_{j<k} |v[k] - v[j]|; 1 for short lists.
double vandermonde_abs(const std::vector<std::complex<double>>& values);

/// log Gamma for complex argument (Lanczos with reflection).
std::complex<double> lgamma_complex(std::complex<double> z);

/// 1 / Gamma(z), entire: zero at the poles of Gamma.
std::complex<double> rgamma_complex(std::complex<double> z);

/// Gamma-ratio comparison function
///   psi_delta(zeta) = Gamma^2(1+delta) / (Gamma(1+delta+zeta/pi) Gamma(1+delta-zeta/pi))
///                   = prod_n (1 - zeta^2 / (pi (n+delta))^2),
/// evaluated through the reciprocal form so product zeros return 0.
std::complex<double> psi_delta(double delta, std::complex<double> zeta);

/// prod_{j=0}^{ell-1} psi_delta(w_j zeta) with w_j = exp(i j pi / ell): the
/// calibration function whose modulus matches characteristic determinants up
/// to a known constant along rays.
std::complex<double> psi_delta_product(double delta, int ell, std::complex<double> zeta);

/// Hurwitz zeta for real q > 1, a > 0 (Euler-Maclaurin).
double hurwitz_zeta(double q, double a);

struct DistortionResult {
  double value = 0.0;
  enum class Method { numeric_product, closed_form } method = Method::numeric_product;
  int terms_used = 0;
  double tail_estimate = 0.0;
};

/// Convergent eigenvalue product
///   prod_n mu_n^(1/2) / ((pi/theta) (n + ell - 1 - kappa/(2 ell)))^ell
/// over the computed spectrum, completed by the two-branch ladder: explicit
/// pair sums in log space, then an alternating-pair expansion of order
/// tail_order summed by Hurwitz zetas.  Throws if the pair phases fail to
/// cancel (wrong kappa or spectrum) or if kappa >= 2 ell^2 without the
/// degenerate-index flag.
DistortionResult distortion_numeric(const SpectrumResult& s, int ell, long kappa,
                                    double theta_ell, const PhasePair& phases,
                                    int tail_order = 3,
                                    bool allow_degenerate_index = false);

/// Closed-form distortion constants for the families where an exact
/// expression exists; throws std::invalid_argument otherwise.
DistortionResult distortion_closed_form(const ProcessSpec& spec);

bool has_closed_form_distortion(const ProcessSpec& spec);

}  // namespace smallball
