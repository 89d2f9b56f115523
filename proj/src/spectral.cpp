#include "smallball/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "detail_linalg.hpp"

namespace smallball {

using detail::cplx;
using std::numbers::pi;

double ScaledDet::log_abs() const {
  double a = std::abs(mantissa);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a) + log_scale;
}

double CharFunction::RealEval::log_abs_h() const {
  double a = std::abs(h);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a) + log_scale;
}

namespace {

cplx ipow(long q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// (i*zeta)^p for integer p (possibly negative), zeta anywhere off the origin
cplx izeta_pow(cplx zeta, long p) {
  if (p == 0) return {1.0, 0.0};
  return std::pow(cplx(0.0, 1.0) * zeta, static_cast<double>(p));
}

}  // namespace

CharFunction::CharFunction(BvpSpec spec) : spec_(std::move(spec)) {
  kappa_ = normalized_kappa(spec_);
  phases_ = rho_pair(theta_coefficients(spec_));
  align_ = ipow(-(kappa_ + 1));
}

double CharFunction::mu_of_root(double r) const {
  return spec_.leading_factor * std::pow(r, 2.0 * spec_.ell);
}

// Column j of the boundary matrix carries exp(i w_j zeta), whose modulus
// reaches exp(|zeta|); each column is therefore scaled by exp(-s_j) with
// s_j = max(0, Re(i w_j zeta)), and the dropped factor is returned as a log.
// Rows are additionally divided by (i zeta)^k, which only removes a known
// power of zeta from the determinant.
std::vector<cplx> CharFunction::matrix(cplx zeta) const {
  double ignored = 0.0;
  return scaled_matrix(zeta, &ignored);
}

std::vector<cplx> CharFunction::scaled_matrix(cplx zeta, double* col_log_scale) const {
  const int ell = spec_.ell;
  const int n = 2 * ell;
  std::vector<cplx> e_scaled(n);
  double logsum = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx iw = cplx(0.0, 1.0) * std::polar(1.0, pi * j / ell);
    const cplx arg = iw * zeta;
    const double s = std::max(0.0, arg.real());
    logsum += s;
    e_scaled[j] = std::exp(arg - s);
  }
  *col_log_scale = logsum;

  std::vector<cplx> a(static_cast<size_t>(n) * n);
  for (int nu = 0; nu < n; ++nu) {
    const auto& bc = spec_.conditions[nu];
    for (int j = 0; j < n; ++j) {
      const cplx iw = cplx(0.0, 1.0) * std::polar(1.0, pi * j / ell);
      const double s = std::max(0.0, (iw * zeta).real());
      const double damp = std::exp(-s);  // underflows harmlessly for deep columns
      const cplx w_k = std::polar(1.0, pi * static_cast<double>(j) * bc.k / ell);
      cplx entry = (bc.alpha * damp + bc.gamma * e_scaled[j]) * w_k;
      const size_t lower = std::max(bc.alpha_lower.size(), bc.gamma_lower.size());
      for (size_t o = 0; o < lower; ++o) {
        const double al = o < bc.alpha_lower.size() ? bc.alpha_lower[o] : 0.0;
        const double ga = o < bc.gamma_lower.size() ? bc.gamma_lower[o] : 0.0;
        if (al == 0.0 && ga == 0.0) continue;
        const cplx w_o = std::polar(1.0, pi * static_cast<double>(j) * o / ell);
        entry += izeta_pow(zeta, static_cast<long>(o) - bc.k) *
                 (al * damp + ga * e_scaled[j]) * w_o;
      }
      a[static_cast<size_t>(nu) * n + j] = entry;
    }
  }
  return a;
}

// zeta-derivative of the scaled matrix, valid on the positive real axis where
// the column scale is linear: s_j = c_j zeta with c_j = max(0, Re(i w_j)).
std::vector<cplx> CharFunction::scaled_matrix_deriv(double zeta) const {
  const int ell = spec_.ell;
  const int n = 2 * ell;
  std::vector<cplx> e_scaled(n), rate(n);
  std::vector<double> cj(n), damp_rate(n), damp(n);
  for (int j = 0; j < n; ++j) {
    const cplx iw = cplx(0.0, 1.0) * std::polar(1.0, pi * j / ell);
    cj[j] = std::max(0.0, iw.real());
    rate[j] = iw - cj[j];
    e_scaled[j] = std::exp(rate[j] * zeta);
    damp[j] = std::exp(-cj[j] * zeta);
    damp_rate[j] = -cj[j];
  }
  std::vector<cplx> a(static_cast<size_t>(n) * n);
  const cplx z(zeta, 0.0);
  for (int nu = 0; nu < n; ++nu) {
    const auto& bc = spec_.conditions[nu];
    for (int j = 0; j < n; ++j) {
      const cplx w_k = std::polar(1.0, pi * static_cast<double>(j) * bc.k / ell);
      cplx entry = (bc.alpha * damp_rate[j] * damp[j] + bc.gamma * rate[j] * e_scaled[j]) * w_k;
      const size_t lower = std::max(bc.alpha_lower.size(), bc.gamma_lower.size());
      for (size_t o = 0; o < lower; ++o) {
        const double al = o < bc.alpha_lower.size() ? bc.alpha_lower[o] : 0.0;
        const double ga = o < bc.gamma_lower.size() ? bc.gamma_lower[o] : 0.0;
        if (al == 0.0 && ga == 0.0) continue;
        const cplx w_o = std::polar(1.0, pi * static_cast<double>(j) * o / ell);
        const long p = static_cast<long>(o) - bc.k;
        entry += izeta_pow(z, p) *
                 (al * damp_rate[j] * damp[j] + ga * rate[j] * e_scaled[j]) * w_o;
        if (p != 0)
          entry += static_cast<double>(p) * cplx(0.0, 1.0) * izeta_pow(z, p - 1) *
                   (al * damp[j] + ga * e_scaled[j]) * w_o;
      }
      a[static_cast<size_t>(nu) * n + j] = entry;
    }
  }
  return a;
}

ScaledDet CharFunction::det(cplx zeta) const {
  double col_scale = 0.0;
  detail::ScaledLu lu(scaled_matrix(zeta, &col_scale), dim());
  auto d = lu.det();
  return {d.mantissa, d.log_scale + col_scale};
}

CharFunction::RealEval CharFunction::eval_real(double zeta) const {
  double col_scale = 0.0;
  detail::ScaledLu lu(scaled_matrix(cplx(zeta, 0.0), &col_scale), dim());
  auto d = lu.det();
  RealEval out;
  out.log_scale = d.log_scale + col_scale;
  out.h = (align_ * d.mantissa).real();
  if (!lu.singular()) {
    cplx trace = lu.inverse_trace_product(scaled_matrix_deriv(zeta));
    out.h_deriv = (align_ * d.mantissa * trace).real();
  } else {
    out.h_deriv = 0.0;
  }
  return out;
}

CharFunction char_function(const ProcessSpec& spec) { return CharFunction(spec.bvp); }

// ---------------------------------------------------------------------------
// root extraction

long predicted_count(const CharFunction& f, double r_max) {
  const PhasePair ph = f.phases();
  auto branch_count = [&](double rho) {
    return static_cast<long>(std::floor((r_max - rho) / (2.0 * pi)));
  };
  return std::max(0L, branch_count(ph.rho_prime)) + std::max(0L, branch_count(ph.rho_second));
}

SpectrumResult positive_roots(const CharFunction& f, int n_eigenvalues) {
  if (n_eigenvalues < 1) throw std::invalid_argument("positive_roots: need n >= 1");

  const PhasePair ph = f.phases();
  const double gap = std::abs(std::remainder(ph.rho_prime - ph.rho_second, 2.0 * pi));
  double step = 2.0 * pi / 64.0;
  if (gap > 1e-3) step = std::min(step, gap / 6.0);

  const double z_cap = pi * (n_eigenvalues + 20) + 100.0;
  SpectrumResult out;

  auto eval = [&](double z) { return f.eval_real(z); };

  auto push_root = [&](double r, int mult) {
    out.roots.push_back({r, mult});
    for (int c = 0; c < mult && out.count < n_eigenvalues; ++c) {
      out.root_of.push_back(r);
      out.mu.push_back(f.mu_of_root(r));
      out.lambda.push_back(1.0 / out.mu.back());
      ++out.count;
    }
  };

  auto refine_simple = [&](double a, double b, double ha) {
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
      const double mid = 0.5 * (a + b);
      const double hm = eval(mid).h;
      if (hm == 0.0) return mid;
      if ((ha < 0) != (hm < 0))
        b = mid;
      else {
        a = mid;
        ha = hm;
      }
    }
    return 0.5 * (a + b);
  };

  // locate the zero of h' inside a same-sign dip; NaN when h' does not flip
  auto refine_extremum = [&](double a, double b, double da, double db) -> double {
    if ((da < 0) == (db < 0)) return std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
      const double mid = 0.5 * (a + b);
      const double dm = eval(mid).h_deriv;
      if (dm == 0.0) return mid;
      if ((da < 0) != (dm < 0))
        b = mid;
      else {
        a = mid;
        da = dm;
      }
    }
    return 0.5 * (a + b);
  };

  double z_prev = 1e-3;
  auto s_prev = eval(z_prev);
  std::vector<double> window;  // trailing log|h| samples for the local scale
  double prev_logh = s_prev.log_abs_h();
  double prev2_logh = -std::numeric_limits<double>::infinity();
  double prev2_z = 0.0, prev2_hd = 0.0, prev2_h = 0.0;

  while (out.count < n_eigenvalues) {
    double z = z_prev + step;
    if (z > z_cap)
      throw std::runtime_error(
          "positive_roots: scan reached safety cap before finding all roots");
    auto s = eval(z);
    if (s.h == 0.0) {
      z += 1e-9 * std::max(1.0, z);
      s = eval(z);
    }

    if ((s_prev.h < 0) != (s.h < 0)) {
      push_root(refine_simple(z_prev, z, s_prev.h), 1);
    } else {
      // same-sign dip: either a tangential double root, a close pair with no
      // sample between the two sign changes, or a benign shoulder
      const double logh = s.log_abs_h();
      if (prev2_logh > prev_logh && logh > prev_logh) {
        double local = std::max(prev2_logh, logh);
        for (double w : window) local = std::max(local, w);
        if (prev_logh < local - std::log(3.0)) {
          const double zstar = refine_extremum(prev2_z, z, prev2_hd, s.h_deriv);
          if (std::isfinite(zstar)) {
            const auto star = eval(zstar);
            if ((star.h < 0) != (prev2_h < 0)) {
              // two sign changes inside [prev2_z, z]
              push_root(refine_simple(prev2_z, zstar, prev2_h), 1);
              push_root(refine_simple(zstar, z, star.h), 1);
            } else if (star.log_abs_h() < local + std::log(1e-8)) {
              push_root(zstar, 2);
            }
          }
        }
      }
    }

    window.push_back(prev_logh);
    if (window.size() > 8) window.erase(window.begin());
    prev2_logh = prev_logh;
    prev2_z = z_prev;
    prev2_hd = s_prev.h_deriv;
    prev2_h = s_prev.h;
    prev_logh = s.log_abs_h();
    s_prev = s;
    z_prev = z;
  }
  return out;
}

// ---------------------------------------------------------------------------
// tail ladder

double TailLadder::root_at(long t) const {
  return (t % 2 == 0 ? lo : hi) + 2.0 * pi * static_cast<double>(t / 2);
}

TailLadder tail_ladder(const SpectrumResult& s, const PhasePair& ph) {
  if (s.count < 8) throw std::invalid_argument("tail_ladder: need at least 8 eigenvalues");
  const int W = 6;
  const double r_last = s.root_of.back();
  const double r_first = s.root_of[s.count - W];

  // ladder points of both branches in a window around the last computed roots
  std::vector<double> v;
  for (double rho : {ph.rho_prime, ph.rho_second}) {
    long k_lo = static_cast<long>(std::floor((r_first - 3.0 * pi - rho) / (2.0 * pi)));
    long k_hi = static_cast<long>(std::ceil((r_last + 5.0 * pi - rho) / (2.0 * pi)));
    for (long k = k_lo; k <= k_hi; ++k) v.push_back(rho + 2.0 * pi * k);
  }
  std::sort(v.begin(), v.end());

  // slide the computed window over the ladder; the best offset aligns slots
  double best_score = std::numeric_limits<double>::infinity();
  size_t best_pos = 0;
  for (size_t pos = W - 1; pos + 2 < v.size(); ++pos) {
    double score = 0.0;
    for (int i = 0; i < W; ++i)
      score += std::abs(v[pos - W + 1 + i] - s.root_of[s.count - W + i]);
    if (score < best_score) {
      best_score = score;
      best_pos = pos;
    }
  }
  if (best_pos + 2 >= v.size())
    throw std::runtime_error("tail_ladder: alignment window exhausted");

  TailLadder out;
  out.lo = v[best_pos + 1];
  out.hi = v[best_pos + 2];
  if (out.hi < out.lo) std::swap(out.lo, out.hi);
  double jerr = 0.0;
  for (int i = 0; i < W; ++i) {
    const double model = v[best_pos - W + 1 + i];
    const double comp = s.root_of[s.count - W + i];
    jerr = std::max(jerr, std::abs(model / comp - 1.0));
  }
  out.junction_error = jerr;
  return out;
}

}  // namespace smallball
