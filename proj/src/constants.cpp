#include "smallball/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smallball {

using cplx = std::complex<double>;
using std::numbers::pi;

double vandermonde_abs(const std::vector<cplx>& values) {
  double out = 1.0;
  for (size_t j = 0; j < values.size(); ++j)
    for (size_t k = j + 1; k < values.size(); ++k)
      out *= std::abs(values[k] - values[j]);
  return out;
}

// Lanczos, g = 7, 9 terms; relative error below 1e-13 on the half-plane.
cplx lgamma_complex(cplx z) {
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
  };
  if (z.real() < 0.5) {
    // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(pi / std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx rgamma_complex(cplx z) {
  if (z.real() < 0.5) {
    // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi, entire in z
    return std::sin(pi * z) * std::exp(lgamma_complex(1.0 - z)) / pi;
  }
  return std::exp(-lgamma_complex(z));
}

cplx psi_delta(double delta, cplx zeta) {
  if (!(delta > -1.0)) throw std::invalid_argument("psi_delta: requires delta > -1");
  const cplx a = cplx(1.0 + delta, 0.0) + zeta / pi;
  const cplx b = cplx(1.0 + delta, 0.0) - zeta / pi;
  const cplx g2 = std::exp(2.0 * lgamma_complex(cplx(1.0 + delta, 0.0)));
  return g2 * rgamma_complex(a) * rgamma_complex(b);
}

cplx psi_delta_product(double delta, int ell, cplx zeta) {
  cplx out(1.0, 0.0);
  for (int j = 0; j < ell; ++j)
    out *= psi_delta(delta, std::polar(1.0, pi * j / ell) * zeta);
  return out;
}

double hurwitz_zeta(double q, double a) {
  if (!(q > 1.0) || !(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: need q > 1, a > 0");
  double s = 0.0;
  const int n0 = 12;
  for (int k = 0; k < n0; ++k) s += std::pow(a + k, -q);
  const double b = a + n0;
  s += std::pow(b, 1.0 - q) / (q - 1.0);
  s += 0.5 * std::pow(b, -q);
  s += q * std::pow(b, -q - 1.0) / 12.0;
  s -= q * (q + 1.0) * (q + 2.0) * std::pow(b, -q - 3.0) / 720.0;
  s += q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) * std::pow(b, -q - 5.0) / 30240.0;
  return s;
}

// ---------------------------------------------------------------------------
// numeric distortion product

DistortionResult distortion_numeric(const SpectrumResult& s, int ell, long kappa,
                                    double theta_ell, const PhasePair& phases,
                                    int tail_order, bool allow_degenerate_index) {
  (void)theta_ell;  // cancels between mu^(1/2l) and the surrogate, see below
  if (s.count < 50) throw std::invalid_argument("distortion_numeric: need at least 50 eigenvalues");
  if (tail_order < 1 || tail_order > 8)
    throw std::invalid_argument("distortion_numeric: tail_order out of range");
  const double e = ell - 1.0 - static_cast<double>(kappa) / (2.0 * ell);
  if (e <= -1.0 + 1e-12 && !allow_degenerate_index)
    throw std::invalid_argument("distortion_numeric: kappa >= 2 ell^2 (degenerate surrogate index)");

  // mu^(1/(2 ell)) = r / theta and the surrogate is (pi/theta)(n+e), so theta
  // cancels and each factor is (r_n / (pi (n+e)))^ell.
  double logp = 0.0;
  int used = 0;
  for (int n = 1; n <= s.count; ++n) {
    const double idx = n + e;
    if (idx <= 0.0) continue;  // degenerate-index diagnostic mode skips these
    logp += ell * (std::log(s.root_of[n - 1]) - std::log(pi * idx));
    ++used;
  }

  // tail: explicit ladder pairs, then the expansion around the common center
  const TailLadder lad = tail_ladder(s, phases);
  const long explicit_pairs = 20000;
  long n1 = s.count + 1;
  for (long q = 0; q < explicit_pairs; ++q) {
    const double x = lad.root_at(2 * q);
    const double y = lad.root_at(2 * q + 1);
    logp += ell * (std::log(x) + std::log(y) - std::log(pi * (n1 + 2 * q + e)) -
                   std::log(pi * (n1 + 2 * q + 1 + e)));
  }
  used += 2 * explicit_pairs;

  // remaining pairs: sequences A + 2 pi t, t >= 0
  const double ax = lad.root_at(2 * explicit_pairs);
  const double ay = lad.root_at(2 * explicit_pairs + 1);
  const double ac = pi * (n1 + 2 * explicit_pairs + e);
  const double ad = pi * (n1 + 2 * explicit_pairs + 1 + e);
  const double eta = ax + ay - ac - ad;
  if (std::abs(eta) > 0.5)
    throw std::runtime_error(
        "distortion_numeric: pair phases fail to cancel; wrong kappa or inconsistent spectrum");

  const double ref = 0.25 * (ax + ay + ac + ad);
  // distribute the (tiny) residual so the 1/t term cancels identically
  const double gx = ax - ref, gy = ay - ref;
  const double gc = ac - ref + 0.5 * eta, gd = ad - ref + 0.5 * eta;
  double tail = 0.0;
  double last_term = 0.0;
  for (int p = 2; p <= tail_order + 1; ++p) {
    const double sp = std::pow(gx, p) + std::pow(gy, p) - std::pow(gc, p) - std::pow(gd, p);
    last_term = ell * ((p % 2 == 0) ? -1.0 : 1.0) / p * sp *
                std::pow(2.0 * pi, -p) * hurwitz_zeta(p, ref / (2.0 * pi));
    tail += last_term;
  }
  logp += tail;

  DistortionResult out;
  out.method = DistortionResult::Method::numeric_product;
  out.value = std::exp(logp);
  out.terms_used = used;
  const int pnext = tail_order + 2;
  const double gmax = std::max({std::abs(gx), std::abs(gy), std::abs(gc), std::abs(gd)});
  out.tail_estimate = ell * std::pow(gmax, pnext) / pnext * std::pow(2.0 * pi, -pnext) *
                          hurwitz_zeta(pnext, ref / (2.0 * pi)) +
                      std::abs(eta) * 40.0 + std::abs(last_term);
  return out;
}

// ---------------------------------------------------------------------------
// closed forms

namespace {

cplx root_of_unity(int order2, long power) {
  // exp(i pi power / order2)
  return std::polar(1.0, pi * static_cast<double>(power) / order2);
}

double gamma_pow(double x, int p) { return std::pow(std::tgamma(x), p); }

// |V(w^{k_1}, ..., w^{k_m})| with w = exp(i pi / ellv)
double vandermonde_of_orders(int ellv, const std::vector<int>& ks) {
  std::vector<cplx> vs;
  vs.reserve(ks.size());
  for (int k : ks) vs.push_back(root_of_unity(ellv, k));
  return vandermonde_abs(vs);
}

// prod_j |shift + w^{k_j}|^2 + prod_j |shift + w^{k'_j}|^2
double coupled_order_products(int ellv, const BetaOrders& ord, cplx shift) {
  double p1 = 1.0, p2 = 1.0;
  for (size_t j = 0; j < ord.k.size(); ++j) {
    p1 *= std::norm(shift + root_of_unity(ellv, ord.k[j]));
    p2 *= std::norm(shift + root_of_unity(ellv, ord.k_prime[j]));
  }
  return p1 + p2;
}

}  // namespace

bool has_closed_form_distortion(const ProcessSpec& spec) {
  switch (spec.family) {
    case Family::slepian:
      return 2.0 * spec.c - 1.0 == 0.0;  // c > 1/2 base case is out (kappa = 2 ell^2)
    case Family::slepian_integrated:
      return true;
    case Family::bridge_centered_tower:
      return false;  // zero mode: no conventional surrogate product
    case Family::bridge_tower_integrated:
      return spec.m == 0 || spec.l == 1;
    case Family::wiener_centered_tower:
      return true;
    case Family::wiener_tower_integrated:
      return spec.m == 0 || spec.l == 2;
  }
  return false;
}

DistortionResult distortion_closed_form(const ProcessSpec& spec) {
  DistortionResult out;
  out.method = DistortionResult::Method::closed_form;
  out.terms_used = 0;
  out.tail_estimate = 0.0;

  const int m = spec.m;
  const int l = spec.l;
  double c2 = -1.0;  // squared constant, set per family below

  switch (spec.family) {
    case Family::slepian: {
      if (2.0 * spec.c - 1.0 != 0.0)
        throw std::invalid_argument(
            "distortion_closed_form: base slepian with c > 1/2 has kappa = 2 ell^2; "
            "its law comes from the comparison route, not a distortion product");
      // double spectrum at (2n-1) pi: the product telescopes to sqrt(2)
      out.value = std::sqrt(2.0);
      return out;
    }
    case Family::slepian_integrated: {
      const BetaOrders ord = beta_orders_gap(m, spec.beta, 1);
      const int ellv = m + 1;
      const double vsq = std::pow(vandermonde_of_orders(ellv, ord.k), 2);
      if (2.0 * spec.c - 1.0 == 0.0) {
        const double big_m = vsq * coupled_order_products(ellv, ord, cplx(1.0, 0.0));
        c2 = 4.0 * std::pow(m + 1.0, m + 1.0) / big_m;
      } else {
        const double tau = 1.0 / (2.0 * spec.c - 1.0);
        const double delta = -(m + 2.0) / (2.0 * m + 2.0);
        const double one_minus_w = 2.0 * std::sin(pi / (2.0 * m + 2.0));
        c2 = 2.0 * tau * std::pow(m + 1.0, m) * gamma_pow(1.0 + delta, 2 * m + 2) *
             one_minus_w / (std::pow(pi, m + 2.0) * vsq);
      }
      break;
    }
    case Family::bridge_centered_tower:
      throw std::invalid_argument("distortion_closed_form: centered tower tops are assembled "
                                  "through the double-spectrum split, not a distortion product");
    case Family::bridge_tower_integrated: {
      if (m == 0) {
        const double delta = l / (2.0 * l + 2.0);
        c2 = gamma_pow(1.0 + delta, 2 * l + 2) * std::pow(pi, l) * (2.0 * l + 2.0) *
             2.0 * std::sin(pi / (2.0 * l + 2.0)) / std::pow(2.0, l + 2.0);
      } else if (l == 1) {
        const BetaOrders ord = beta_orders_gap(m, spec.beta, 3);
        const int ellv = m + 2;
        const double vsq = std::pow(vandermonde_of_orders(ellv, ord.k), 2);
        const double frak_m = vsq * (2.0 * m + 4.0) /
                              (2.0 * std::sin(3.0 * pi / (2.0 * m + 4.0))) *
                              coupled_order_products(ellv, ord, cplx(1.0, 0.0));
        const double delta = -(m - 1.0) / (2.0 * m + 4.0);
        c2 = gamma_pow(1.0 + delta, 2 * m + 4) * std::pow(2.0 * m + 4.0, m + 2.0) /
             (std::pow(2.0, m + 2.0) * std::pow(pi, m - 1.0) * frak_m);
      } else {
        throw std::invalid_argument("distortion_closed_form: integrated bridge towers have a "
                                    "closed constant only for tower height 1");
      }
      break;
    }
    case Family::wiener_centered_tower: {
      if (l == 0) {
        out.value = 1.0;  // exact spectrum (pi (n - 1/2))^2
        return out;
      }
      const double delta = (l - 1.0) / (2.0 * l + 2.0);
      const double mm = (l % 2 == 0)
                            ? std::pow(2.0 * std::sin(pi / (2.0 * l + 2.0)), 2)
                            : std::pow(2.0 * std::sin(2.0 * pi / (2.0 * l + 2.0)), 2) / 4.0;
      c2 = gamma_pow(1.0 + delta, 2 * l + 2) * std::pow(pi, l - 1.0) * mm *
           std::pow(2.0 * l + 2.0, 2) / std::pow(2.0, l + 3.0);
      break;
    }
    case Family::wiener_tower_integrated: {
      if (m == 0) return distortion_closed_form(catalog_process(Family::wiener_centered_tower,
                                                                {{}, l, {}, {}}));
      if (l != 2)
        throw std::invalid_argument("distortion_closed_form: integrated wiener towers have a "
                                    "closed constant only for tower height 2");
      const BetaOrders ord = beta_orders_gap(m, spec.beta, 5);
      const int ellv = m + 3;
      const double vsq = std::pow(vandermonde_of_orders(ellv, ord.k), 2);
      auto sin_j = [&](int j) { return 2.0 * std::sin(j * pi / (2.0 * m + 6.0)); };
      const double mm1 = vsq * std::pow(2.0 * m + 6.0, 2) /
                         (sin_j(1) * sin_j(2) * sin_j(2) * sin_j(5)) *
                         coupled_order_products(ellv, ord, root_of_unity(ellv, 1));
      const double delta = -(m - 1.0) / (2.0 * m + 6.0);
      c2 = gamma_pow(1.0 + delta, 2 * m + 6) * std::pow(2.0 * m + 6.0, m + 3.0) /
           (std::pow(2.0, m + 3.0) * std::pow(pi, m - 1.0) * mm1);
      break;
    }
  }
  if (!(c2 > 0.0)) throw std::runtime_error("distortion_closed_form: nonpositive square");
  out.value = std::sqrt(c2);
  return out;
}

}  // namespace smallball
