#pragma once

#include <complex>
#include <vector>

#include "smallball/bvp_algebra.hpp"
#include "smallball/catalog.hpp"

namespace smallball {

/// Characteristic determinant value carried as mantissa * exp(log_scale);
/// the raw determinant overflows double for zeta beyond ~700/(2 ell).
struct ScaledDet {
  std::complex<double> mantissa{0.0, 0.0};
  double log_scale = 0.0;
  double log_abs() const;
};

/// Entire characteristic function of a catalog problem: the 2l x 2l boundary
/// determinant over the exponential solution basis exp(i w_j zeta t),
/// w_j = exp(i j pi / l).  Its positive real roots r give the eigenvalues
/// mu = leading_factor * r^(2 ell).
class CharFunction {
 public:
  explicit CharFunction(BvpSpec spec);

  int ell() const { return spec_.ell; }
  int dim() const { return 2 * spec_.ell; }
  long kappa() const { return kappa_; }
  bool zero_mode() const { return spec_.zero_mode; }
  double mu_factor() const { return spec_.leading_factor; }
  double mu_of_root(double r) const;
  const BvpSpec& spec() const { return spec_; }

  /// Boundary determinant matrix at zeta (row-major, dim x dim).  Rows are
  /// divided by (i zeta)^k and each column by the modulus of its dominant
  /// exponential, so entries stay bounded however deep the scan goes; the
  /// dropped column factor is what det() folds back into log_scale.
  std::vector<std::complex<double>> matrix(std::complex<double> zeta) const;

  ScaledDet det(std::complex<double> zeta) const;

  /// Sign-carrying real reduction on the positive real axis.  The determinant
  /// there equals i^(kappa+1) times a real-valued function; h is that function
  /// divided by exp(log_scale), h_deriv its zeta-derivative at the same scale.
  struct RealEval {
    double h = 0.0;
    double h_deriv = 0.0;
    double log_scale = 0.0;
    double log_abs_h() const;
  };
  RealEval eval_real(double zeta) const;

  /// Phases of the two eigenvalue subsequences (cached theta-quadratic roots).
  PhasePair phases() const { return phases_; }

 private:
  std::vector<std::complex<double>> scaled_matrix(std::complex<double> zeta,
                                                  double* col_log_scale) const;
  std::vector<std::complex<double>> scaled_matrix_deriv(double zeta) const;

  BvpSpec spec_;
  long kappa_ = 0;
  PhasePair phases_;
  std::complex<double> align_;  // i^-(kappa+1)
};

CharFunction char_function(const ProcessSpec& spec);

struct SpectrumResult {
  struct Root {
    double r = 0.0;
    int multiplicity = 1;
  };
  std::vector<Root> roots;        // distinct roots, ascending
  std::vector<double> root_of;    // per-eigenvalue root value, size count
  std::vector<double> mu;         // eigenvalues, ascending, size count
  std::vector<double> lambda;     // 1/mu, size count
  int count = 0;
};

/// First n eigenvalues (counted with multiplicity) from a bracketed scan of
/// the real reduction: sign changes give simple roots, refined by bisection;
/// tangential minima of |h| below 1e-8 of the local scale give double roots,
/// refined by bisection on h'.
SpectrumResult positive_roots(const CharFunction& f, int n_eigenvalues);

/// Number of eigenvalue-subsequence slots predicted in (0, R] by the two-term
/// asymptotics, with R in units of mu^(1/(2 ell)).
long predicted_count(const CharFunction& f, double r_max);

/// Two-branch arithmetic continuation of a computed spectrum.  Slot
/// count+1+t maps to root_at(t); the ladder is aligned to the last computed
/// roots by a sliding match, so branch bookkeeping survives double roots.
struct TailLadder {
  double lo = 0.0;  // first two ladder values beyond the computed spectrum
  double hi = 0.0;
  double junction_error = 0.0;  // max relative root mismatch over the match window
  double root_at(long t) const;
};

TailLadder tail_ladder(const SpectrumResult& s, const PhasePair& ph);

}  // namespace smallball
