#include "smallball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "smallball/bvp_algebra.hpp"
#include "smallball/constants.hpp"

namespace smallball {

using std::numbers::pi;

namespace {
constexpr double kSeriesCut = 0.1;  // per-term argument below which the series kicks in
}

// ---------------------------------------------------------------------------
// CompletedSpectrum

CompletedSpectrum CompletedSpectrum::from_lambdas(std::vector<double> lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("CompletedSpectrum: empty spectrum");
  std::sort(lambdas.rbegin(), lambdas.rend());
  if (lambdas.back() <= 0.0)
    throw std::invalid_argument("CompletedSpectrum: eigenvalues must be positive");
  CompletedSpectrum cs;
  cs.lambda_ = std::move(lambdas);
  cs.m_total_ = static_cast<long>(cs.lambda_.size());
  cs.tail_.fill(0.0);
  cs.build_prefix();
  return cs;
}

void CompletedSpectrum::build_prefix() {
  // suffix sums, accumulated from the smallest eigenvalues up: the series
  // range of every cumulant sum is suffix_[p][cut], which would lose all its
  // precision if taken as a difference of prefix totals
  const size_t n = lambda_.size();
  for (int p = 1; p <= 5; ++p) {
    suffix_[p].assign(n + 1, 0.0);
    for (size_t i = n; i-- > 0;)
      suffix_[p][i] = suffix_[p][i + 1] + std::pow(lambda_[i], p);
  }
}

size_t CompletedSpectrum::cut_index(double thresh) const {
  // first index with lambda < thresh (lambda_ descending)
  return std::lower_bound(lambda_.begin(), lambda_.end(), thresh,
                          [](double a, double b) { return a >= b; }) -
         lambda_.begin();
}

double CompletedSpectrum::power_sum(int p) const {
  return suffix_[p].front() + tail_[p];
}

// Exact sum for lambda >= thresh, series in g*lambda (or u*lambda) beyond.
// L_p below always means the power sum over the series range.

double CompletedSpectrum::sum_log1p(double g) const {
  const double ag = std::abs(g);
  const size_t cut = ag == 0.0 ? lambda_.size() : cut_index(kSeriesCut / ag);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) s += std::log1p(g * lambda_[i]);
  double lp[6];
  for (int p = 1; p <= 5; ++p) lp[p] = suffix_[p][cut] + tail_[p];
  s += g * lp[1] - g * g * lp[2] / 2.0 + g * g * g * lp[3] / 3.0 -
       g * g * g * g * lp[4] / 4.0 + g * g * g * g * g * lp[5] / 5.0;
  return s;
}

std::complex<double> CompletedSpectrum::sum_log1p_complex(std::complex<double> g) const {
  const double ag = std::abs(g);
  const size_t cut = ag == 0.0 ? lambda_.size() : cut_index(kSeriesCut / ag);
  std::complex<double> s(0.0, 0.0);
  for (size_t i = 0; i < cut; ++i) s += std::log(1.0 + g * lambda_[i]);
  double lp[6];
  for (int p = 1; p <= 5; ++p) lp[p] = suffix_[p][cut] + tail_[p];
  const std::complex<double> g2 = g * g, g3 = g2 * g, g4 = g3 * g, g5 = g4 * g;
  s += g * lp[1] - g2 * lp[2] / 2.0 + g3 * lp[3] / 3.0 - g4 * lp[4] / 4.0 + g5 * lp[5] / 5.0;
  return s;
}

double CompletedSpectrum::sum_frac(double g) const {
  const double ag = std::abs(g);
  const size_t cut = ag == 0.0 ? lambda_.size() : cut_index(kSeriesCut / ag);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) s += lambda_[i] / (1.0 + g * lambda_[i]);
  double lp[6];
  for (int p = 1; p <= 5; ++p) lp[p] = suffix_[p][cut] + tail_[p];
  s += lp[1] - g * lp[2] + g * g * lp[3] - g * g * g * lp[4] + g * g * g * g * lp[5];
  return s;
}

double CompletedSpectrum::sum_frac2(double g) const {
  const double ag = std::abs(g);
  const size_t cut = ag == 0.0 ? lambda_.size() : cut_index(kSeriesCut / ag);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) {
    const double q = lambda_[i] / (1.0 + g * lambda_[i]);
    s += q * q;
  }
  double lp[6];
  for (int p = 2; p <= 5; ++p) lp[p] = suffix_[p][cut] + tail_[p];
  s += lp[2] - 2.0 * g * lp[3] + 3.0 * g * g * lp[4] - 4.0 * g * g * g * lp[5];
  return s;
}

double CompletedSpectrum::sum_atan(double u) const {
  const size_t cut = u == 0.0 ? lambda_.size() : cut_index(kSeriesCut / u);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) s += std::atan(lambda_[i] * u);
  double l1 = suffix_[1][cut] + tail_[1];
  double l3 = suffix_[3][cut] + tail_[3];
  double l5 = suffix_[5][cut] + tail_[5];
  s += u * l1 - u * u * u * l3 / 3.0 + std::pow(u, 5) * l5 / 5.0;
  return s;
}

double CompletedSpectrum::sum_log_sq(double u) const {
  const size_t cut = u == 0.0 ? lambda_.size() : cut_index(kSeriesCut / u);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) {
    const double y = lambda_[i] * u;
    s += std::log1p(y * y);
  }
  double l2 = suffix_[2][cut] + tail_[2];
  double l4 = suffix_[4][cut] + tail_[4];
  s += u * u * l2 - std::pow(u, 4) * l4 / 2.0;
  return s;
}

double CompletedSpectrum::sum_lin(double u) const {
  const size_t cut = u == 0.0 ? lambda_.size() : cut_index(kSeriesCut / u);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) {
    const double y = lambda_[i] * u;
    s += lambda_[i] / (1.0 + y * y);
  }
  double l1 = suffix_[1][cut] + tail_[1];
  double l3 = suffix_[3][cut] + tail_[3];
  double l5 = suffix_[5][cut] + tail_[5];
  s += l1 - u * u * l3 + std::pow(u, 4) * l5;
  return s;
}

double CompletedSpectrum::sum_sat(double u) const {
  const size_t cut = u == 0.0 ? lambda_.size() : cut_index(kSeriesCut / u);
  double s = 0.0;
  for (size_t i = 0; i < cut; ++i) {
    const double y2 = lambda_[i] * u * lambda_[i] * u;
    s += y2 / (1.0 + y2);
  }
  double l2 = suffix_[2][cut] + tail_[2];
  double l4 = suffix_[4][cut] + tail_[4];
  s += u * u * l2 - std::pow(u, 4) * l4;
  return s;
}

CompletedSpectrum tail_completed_spectrum(const SpectrumResult& s, const ProcessSpec& spec,
                                          long m_total) {
  if (s.count < 50) throw std::invalid_argument("tail_completed_spectrum: need N >= 50");
  if (m_total < s.count) throw std::invalid_argument("tail_completed_spectrum: M < N");

  const PhasePair ph = rho_pair(theta_coefficients(spec.bvp));
  const TailLadder lad = tail_ladder(s, ph);
  const int two_ell = 2 * spec.ell;
  const double theta = spec.theta_ell;

  const double junction_mu = std::abs(std::pow(1.0 + lad.junction_error, two_ell) - 1.0);
  if (junction_mu > 1e-3)
    throw std::runtime_error("tail_completed_spectrum: ladder fails the junction check");

  CompletedSpectrum cs;
  cs.m_total_ = m_total;
  cs.junction_error_ = junction_mu;
  cs.lambda_.assign(s.lambda.begin(), s.lambda.end());
  cs.lambda_.reserve(m_total);
  for (long n = s.count; n < m_total; ++n) {
    const double v = lad.root_at(n - s.count);
    cs.lambda_.push_back(std::pow(theta / v, two_ell));
  }
  // eigenvalues are produced in increasing-mu order; store descending lambda
  std::sort(cs.lambda_.rbegin(), cs.lambda_.rend());

  // closed-form power sums beyond M: two arithmetic branches with step 2 pi
  cs.tail_.fill(0.0);
  const double b0 = lad.root_at(m_total - s.count);
  const double b1 = lad.root_at(m_total - s.count + 1);
  for (int p = 1; p <= 5; ++p) {
    const double q = static_cast<double>(two_ell) * p;
    cs.tail_[p] = std::pow(theta, q) * std::pow(2.0 * pi, -q) *
                  (hurwitz_zeta(q, b0 / (2.0 * pi)) + hurwitz_zeta(q, b1 / (2.0 * pi)));
  }
  cs.build_prefix();
  return cs;
}

// ---------------------------------------------------------------------------
// saddlepoint

namespace {

// Phi(w) + phi(w) (1/w - 1/u), stable in both tails.
double lugannani_rice(double w, double u) {
  const double phi = std::exp(-0.5 * w * w) / std::sqrt(2.0 * pi);
  if (w < -8.0) {
    // Mills ratio expansion: Phi(w)/phi(w) + 1/w = (1/w^3)(1 - 3/w^2 + 15/w^4 - 105/w^6)
    const double iw2 = 1.0 / (w * w);
    const double series = (1.0 - 3.0 * iw2 + 15.0 * iw2 * iw2 - 105.0 * iw2 * iw2 * iw2) /
                          (w * w * w);
    return phi * (series - 1.0 / u);
  }
  const double cdf = 0.5 * std::erfc(-w / std::sqrt(2.0));
  return cdf + phi * (1.0 / w - 1.0 / u);
}

}  // namespace

namespace {

// P computed by the classical formula; adequate for short toy spectra where
// the contour quadrature would decay too slowly to truncate.
double saddle_lugannani_rice(const CompletedSpectrum& cs, double t, double x) {
  const double k = -0.5 * cs.sum_log1p(-2.0 * t);
  const double k2 = 2.0 * cs.sum_frac2(-2.0 * t);
  const double arg = 2.0 * (t * x - k);
  const double w = (t < 0 ? -1.0 : 1.0) * std::sqrt(std::max(arg, 0.0));
  const double uu = t * std::sqrt(k2);
  if (std::abs(w) < 1e-5 || std::abs(uu) < 1e-5) {
    // removable singularity at the mean
    const double kappa2 = 2.0 * cs.power_sum(2);
    const double kappa3 = 8.0 * cs.power_sum(3);
    const double phi0 = 1.0 / std::sqrt(2.0 * pi);
    return 0.5 + w * phi0 + phi0 * kappa3 / (6.0 * std::pow(kappa2, 1.5));
  }
  return std::clamp(lugannani_rice(w, uu), 0.0, 1.0);
}

// Exact inversion along the vertical contour Re t = c through (or near) the
// saddle.  The c < 0 contour yields F directly, the c > 0 contour yields
// 1 - F; the linear phase vanishes at the saddle, so the integrand is a
// smooth near-Gaussian and plain trapezoid sums are spectrally accurate.
double saddle_contour(const CompletedSpectrum& cs, double t, double x, double mean) {
  using cplx = std::complex<double>;
  const bool left = x <= mean;
  double c = t;
  const double sigma0 = 1.0 / std::sqrt(2.0 * cs.sum_frac2(0.0));
  const double c_min = 0.3 * sigma0;
  if (left)
    c = std::min(c, -c_min);
  else
    c = std::max(c, c_min);

  const double kc = -0.5 * cs.sum_log1p(-2.0 * c);
  const double k2 = 2.0 * cs.sum_frac2(-2.0 * c);
  const double sigma = 1.0 / std::sqrt(k2);
  const double a = kc - c * x;  // log of the peak magnitude

  auto f = [&](double y) {
    const cplx dk = -0.5 * cs.sum_log1p_complex(cplx(-2.0 * c, -2.0 * y)) - kc;
    const cplx val = std::exp(dk - cplx(0.0, y * x)) / cplx(c, y);
    return std::make_pair(val.real(), std::abs(val));
  };

  const double h = sigma / 8.0;
  double integral = 0.5 * f(0.0).first;
  const double floor_mag = 1e-14 / std::max(std::abs(c), sigma);
  for (long k = 1; k < 2000000; ++k) {
    auto [re, mag] = f(k * h);
    integral += re;
    if (k * h > 8.0 * sigma && mag < floor_mag) break;
  }
  integral *= h;

  const double half = std::exp(a) * integral / pi;  // integral over y in (-inf, inf) folded
  const double p = left ? -half : 1.0 - half;
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double prob_saddlepoint(const CompletedSpectrum& cs, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("prob_saddlepoint: eps must be positive");
  const double x = eps * eps;

  auto kprime = [&](double t) { return cs.sum_frac(-2.0 * t); };

  // bracket the saddle on the monotone-increasing K'
  const double mean = kprime(0.0);
  double t_lo, t_hi;
  if (x < mean) {
    t_hi = 0.0;
    t_lo = -1.0;
    while (kprime(t_lo) > x) {
      t_lo *= 4.0;
      if (t_lo < -1e300) throw std::runtime_error("prob_saddlepoint: saddle bracket failed");
    }
  } else {
    t_lo = 0.0;
    const double limit = 1.0 / (2.0 * cs.lambda1());
    double back = 0.5;
    t_hi = limit * (1.0 - back);
    while (kprime(t_hi) < x) {
      back *= 0.25;
      t_hi = limit * (1.0 - back);
      if (back < 1e-15) throw std::runtime_error("prob_saddlepoint: saddle bracket failed");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid == t_lo || mid == t_hi) break;
    (kprime(mid) < x ? t_lo : t_hi) = mid;
  }
  const double t = 0.5 * (t_lo + t_hi);

  if (cs.lambdas().size() < 100) return saddle_lugannani_rice(cs, t, x);
  return saddle_contour(cs, t, x, mean);
}

// ---------------------------------------------------------------------------
// characteristic-function inversion

double prob_imhof(const CompletedSpectrum& cs, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("prob_imhof: eps must be positive");
  const double x = eps * eps;

  auto theta = [&](double u) { return 0.5 * (cs.sum_atan(u) - x * u); };
  auto log_rho = [&](double u) { return 0.25 * cs.sum_log_sq(u); };
  auto f = [&](double u) {
    if (u == 0.0) return 0.5 * (cs.power_sum(1) - x);
    return std::sin(theta(u)) * std::exp(-log_rho(u)) / u;
  };
  auto theta_deriv = [&](double u) { return 0.5 * (cs.sum_lin(u) - x); };

  // adaptive Simpson on one panel
  struct Quad {
    const std::function<double(double)>& fn;
    double eval(double a, double fa, double b, double fb, double tol, int depth) const {
      const double m = 0.5 * (a + b), fm = fn(m);
      return step(a, fa, m, fm, b, fb, tol, depth);
    }
    double step(double a, double fa, double m, double fm, double b, double fb, double tol,
                int depth) const {
      const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = fn(lm), frm = fn(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return step(a, fa, lm, flm, m, fm, tol / 2.0, depth - 1) +
             step(m, fm, rm, frm, b, fb, tol / 2.0, depth - 1);
    }
  };
  std::function<double(double)> fn = f;
  Quad quad{fn};

  double integral = 0.0;
  double u0 = 0.0, f0 = f(0.0);
  const double tol = 1e-11;
  for (int panel = 0; panel < 100000; ++panel) {
    const double slope = std::max(std::abs(theta_deriv(u0)), 1e-4);
    const double width = std::clamp(0.5 * pi / slope, 1e-6, 1e6);
    const double u1 = u0 + width;
    const double f1 = f(u1);
    integral += quad.eval(u0, f0, u1, f1, tol * std::max(1.0, std::abs(integral)) * width /
                                              std::max(u1, 1.0),
                          28);
    u0 = u1;
    f0 = f1;
    // truncation bound: log rho grows at least with exponent sum_sat beyond u0
    const double lr = log_rho(u0);
    const double q = 0.5 * cs.sum_sat(u0);
    if (q > 1.0) {
      const double bound = std::exp(-lr) / q;
      if (bound < 1e-13 * std::max(1.0, std::abs(integral))) break;
    }
    if (u0 > 1e9) throw PrecisionLossError("prob_imhof: integral failed to truncate");
  }

  const double p = 0.5 - integral / pi;
  if (p < 1e-12)
    throw PrecisionLossError("prob_imhof: probability too small for inversion accuracy");
  return std::min(p, 1.0);
}

double asymptotic_eval(const SmallBallLaw& law, double eps) {
  if (law.variable != SmallBallLaw::Variable::norm_eps)
    throw std::invalid_argument("asymptotic_eval: law must be in the norm variable");
  return std::exp(std::log(law.K) + law.a * std::log(eps) - law.E * std::pow(eps, -law.d));
}

}  // namespace smallball
