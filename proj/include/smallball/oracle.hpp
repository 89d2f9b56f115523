#pragma once

#include <array>
#include <complex>
#include <vector>

#include "smallball/asymptotics.hpp"
#include "smallball/catalog.hpp"
#include "smallball/spectral.hpp"

namespace smallball {

struct PrecisionLossError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Spectrum of a quadratic form sum lambda_n eta_n^2, held as an explicit
/// list (computed eigenvalues continued by the two-branch ladder up to M)
/// plus closed-form power sums for everything beyond M.  The cumulant /
/// characteristic-function sums switch from exact evaluation to a power
/// series once the per-term argument drops below 0.1, so the tail cost is
/// O(1) regardless of M.
class CompletedSpectrum {
 public:
  static CompletedSpectrum from_lambdas(std::vector<double> lambdas);

  const std::vector<double>& lambdas() const { return lambda_; }
  double lambda1() const { return lambda_.front(); }
  long total_length() const { return m_total_; }
  double junction_error() const { return junction_error_; }

  double sum_log1p(double g) const;   // sum log(1 + g lambda)
  std::complex<double> sum_log1p_complex(std::complex<double> g) const;
  double sum_frac(double g) const;    // sum lambda / (1 + g lambda)
  double sum_frac2(double g) const;   // sum lambda^2 / (1 + g lambda)^2
  double sum_atan(double u) const;    // sum arctan(lambda u)
  double sum_log_sq(double u) const;  // sum log(1 + lambda^2 u^2)
  double sum_lin(double u) const;     // sum lambda / (1 + lambda^2 u^2)
  double sum_sat(double u) const;     // sum (lambda u)^2 / (1 + (lambda u)^2)
  double power_sum(int p) const;      // sum lambda^p over everything

  friend CompletedSpectrum tail_completed_spectrum(const SpectrumResult& s,
                                                   const ProcessSpec& spec, long m_total);

 private:
  CompletedSpectrum() = default;
  void build_prefix();
  size_t cut_index(double thresh) const;  // first index with lambda < thresh
  double tail_power(int p) const { return tail_[p]; }

  std::vector<double> lambda_;            // descending
  std::array<std::vector<double>, 6> suffix_;  // suffix_[p][i] = sum_{j>=i} lambda^p
  std::array<double, 6> tail_{};          // power sums beyond the explicit list
  long m_total_ = 0;
  double junction_error_ = 0.0;
};

/// Extends a computed spectrum with the two-branch ladder up to m_total
/// eigenvalues and closed-form sums beyond; throws if the ladder fails the
/// junction check against the last computed eigenvalues.
CompletedSpectrum tail_completed_spectrum(const SpectrumResult& s, const ProcessSpec& spec,
                                          long m_total = 100000);

/// Saddlepoint evaluation of P{sum lambda_n eta_n^2 <= eps^2}, on either side
/// of the mean.  The saddle is found by safeguarded bisection on the monotone
/// cumulant derivative; short spectra use the classical Lugannani-Rice
/// formula, completed spectra evaluate the inversion integral exactly along
/// the vertical contour through the saddle (the integrand there is a
/// non-oscillatory near-Gaussian, so trapezoid sums converge spectrally).
double prob_saddlepoint(const CompletedSpectrum& cs, double eps);

/// Characteristic-function inversion (one-dimensional oscillatory integral
/// with explicit truncation bound).  Guards against evaluations where the
/// probability is too small for the inversion to retain significance.
double prob_imhof(const CompletedSpectrum& cs, double eps);

/// K eps^a exp(-E eps^-d) for a law in the norm variable.
double asymptotic_eval(const SmallBallLaw& law, double eps);

}  // namespace smallball
