#include "smallball/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "smallball/asymptotics.hpp"
#include "smallball/bvp_algebra.hpp"
#include "smallball/catalog.hpp"
#include "smallball/constants.hpp"
#include "smallball/kernels.hpp"
#include "smallball/oracle.hpp"
#include "smallball/spectral.hpp"

namespace smallball::verify {

using std::numbers::pi;

namespace {

CheckResult bounded(std::string name, double measured, double tol, std::string note = "") {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.target = 0.0;
  c.tol = tol;
  c.pass = measured <= tol;
  c.note = std::move(note);
  return c;
}

CheckResult boolean(std::string name, bool ok, std::string note = "") {
  CheckResult c;
  c.name = std::move(name);
  c.measured = ok ? 0.0 : 1.0;
  c.target = 0.0;
  c.tol = 0.0;
  c.pass = ok;
  c.note = std::move(note);
  return c;
}

ProcessSpec sl(double c) { return catalog_process(Family::slepian, {c, {}, {}, {}}); }
ProcessSpec sli(double c, int m, std::vector<int> beta) {
  return catalog_process(Family::slepian_integrated, {c, {}, m, std::move(beta)});
}
ProcessSpec bc(int l) { return catalog_process(Family::bridge_centered_tower, {{}, l, {}, {}}); }
ProcessSpec bci(int l, int m, std::vector<int> beta) {
  return catalog_process(Family::bridge_tower_integrated, {{}, l, m, std::move(beta)});
}
ProcessSpec wc(int l) { return catalog_process(Family::wiener_centered_tower, {{}, l, {}, {}}); }
ProcessSpec wci(int l, int m, std::vector<int> beta) {
  return catalog_process(Family::wiener_tower_integrated, {{}, l, m, std::move(beta)});
}

std::vector<std::pair<std::string, BvpSpec>> catalog_bvps_up_to_ell4() {
  std::vector<std::pair<std::string, BvpSpec>> out;
  auto add = [&](const ProcessSpec& p) { out.emplace_back(p.describe(), p.bvp); };
  for (double c : {0.5, 1.0, 2.0}) add(sl(c));
  for (int m = 1; m <= 3; ++m)
    for (double c : {0.5, 1.0}) {
      add(sli(c, m, std::vector<int>(m, 0)));
      add(sli(c, m, std::vector<int>(m, 1)));
    }
  for (int l = 0; l <= 3; ++l) add(bc(l));
  for (int l = 0; l <= 3; ++l) add(bci(l, 0, {}));
  add(bci(1, 1, {0}));
  add(bci(1, 1, {1}));
  add(bci(1, 2, {0, 1}));
  for (int l = 0; l <= 3; ++l) add(wc(l));
  add(wci(1, 1, {0}));
  add(wci(2, 1, {1}));
  for (int l = 1; l <= 3; ++l)
    out.emplace_back("wiener centered top l=" + std::to_string(l), wiener_centered_top(l));
  return out;
}

double theta_identity_error(const BvpSpec& spec) {
  const ThetaQuadratic q = theta_coefficients(spec);
  const long kappa = normalized_kappa(spec);
  const std::complex<double> w1 = std::polar(1.0, pi / spec.ell);
  const std::complex<double> lhs = q.theta1 + std::pow(w1, static_cast<double>(kappa)) * q.theta_minus1;
  const double scale = std::max(std::abs(q.theta1), std::abs(q.theta_minus1));
  return std::abs(lhs) / scale;
}

}  // namespace

std::vector<CheckResult> rho_sum_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  double worst_rho = 0.0, worst_theta = 0.0;
  std::string worst_name;
  const auto cat = catalog_bvps_up_to_ell4();
  for (const auto& [name, bvp] : cat) {
    const double r = verify_rho_sum(bvp);
    if (r > worst_rho) {
      worst_rho = r;
      worst_name = name;
    }
    worst_theta = std::max(worst_theta, theta_identity_error(bvp));
  }
  out.push_back(bounded("rho-sum catalog (" + std::to_string(cat.size()) + " problems)",
                        worst_rho, 1e-8, "worst: " + worst_name));
  out.push_back(bounded("theta-identity catalog", worst_theta, 1e-10));

  RandomBvp gen(seed);
  for (int ell = 1; ell <= 3; ++ell) {
    double wr = 0.0, wt = 0.0;
    for (int i = 0; i < 100; ++i) {
      BvpSpec spec = gen.next(ell);
      wr = std::max(wr, verify_rho_sum(spec));
      wt = std::max(wt, theta_identity_error(spec));
    }
    out.push_back(bounded("rho-sum random ell=" + std::to_string(ell), wr, 1e-8));
    out.push_back(bounded("theta-identity random ell=" + std::to_string(ell), wt, 1e-10));
  }
  return out;
}

std::vector<CheckResult> spectra_suite() {
  std::vector<CheckResult> out;
  {
    const SpectrumResult s = positive_roots(char_function(sl(0.5)), 100);
    double worst = 0.0;
    bool all_double = true;
    for (size_t i = 0; i < s.roots.size(); ++i) {
      if (s.roots[i].multiplicity != 2) all_double = false;
      const double exact = (2.0 * (i + 1) - 1.0) * pi;
      worst = std::max(worst, std::abs(s.roots[i].r / exact - 1.0));
    }
    out.push_back(bounded("slepian c=1/2 double roots at odd pi", worst, 1e-10,
                          all_double ? "" : "multiplicity mismatch"));
    if (!all_double) out.back().pass = false;
  }
  {
    const SpectrumResult s = positive_roots(char_function(bci(0, 0, {})), 50);
    double worst = 0.0;
    for (int n = 1; n <= 50; ++n)
      worst = std::max(worst, std::abs(s.mu[n - 1] / std::pow(pi * n, 2) - 1.0));
    out.push_back(bounded("bridge spectrum (pi n)^2, n<=50", worst, 1e-10));
  }
  {
    const SpectrumResult s = positive_roots(char_function(wc(0)), 50);
    double worst = 0.0;
    for (int n = 1; n <= 50; ++n)
      worst = std::max(worst, std::abs(s.mu[n - 1] / std::pow(pi * (n - 0.5), 2) - 1.0));
    out.push_back(bounded("wiener spectrum (pi (n-1/2))^2, n<=50", worst, 1e-10));
  }
  return out;
}

std::vector<CheckResult> nystrom_suite(int grid) {
  std::vector<CheckResult> out;
  std::vector<ProcessSpec> procs = {sl(0.5),          sl(1.0),         sl(2.0),
                                    bci(0, 0, {}),    bci(1, 0, {}),   wc(1),
                                    wc(2),            sli(1.0, 1, {0}), bci(1, 1, {0}),
                                    wci(1, 1, {0})};
  for (const auto& p : procs) {
    const KernelGrid g = covariance_grid(p, grid);
    const std::vector<double> nys = nystrom_eigenvalues(g, 10);
    const SpectrumResult s = positive_roots(char_function(p), 10);
    double worst = 0.0;
    for (int n = 0; n < 10; ++n)
      worst = std::max(worst, std::abs(nys[n] * s.mu[n] - 1.0));
    out.push_back(bounded("nystrom vs roots: " + p.describe(), worst, 1e-4));
  }
  return out;
}

std::vector<CheckResult> coincide_suite() {
  std::vector<CheckResult> out;
  for (int l = 1; l <= 2; ++l) {
    const SpectrumResult a = positive_roots(CharFunction(bci(l, 0, {}).bvp), 10);
    const SpectrumResult b = positive_roots(CharFunction(wiener_centered_top(l)), 10);
    double worst = 0.0;
    for (int n = 0; n < 10; ++n)
      worst = std::max(worst, std::abs(a.mu[n] / b.mu[n] - 1.0));
    out.push_back(bounded("bridge tower vs centered wiener top, l=" + std::to_string(l),
                          worst, 1e-8));
  }
  return out;
}

std::vector<CheckResult> distortion_suite(double tol) {
  std::vector<CheckResult> out;

  auto numeric = [](const ProcessSpec& p, int n) {
    const CharFunction f = char_function(p);
    const SpectrumResult s = positive_roots(f, n);
    return distortion_numeric(s, p.ell, p.kappa, p.theta_ell, f.phases());
  };

  {
    const ProcessSpec bridge = bci(0, 0, {});
    out.push_back(bounded("distortion numeric: bridge = 1",
                          std::abs(numeric(bridge, 2000).value - 1.0), 1e-6));
  }
  {
    const ProcessSpec s12 = sl(0.5);
    out.push_back(bounded("distortion numeric: slepian c=1/2 = sqrt(2)",
                          std::abs(numeric(s12, 2000).value - std::sqrt(2.0)), 1e-6));
  }

  std::vector<ProcessSpec> procs;
  for (double c : {0.5, 1.0, 2.0}) {
    for (int b1 : {0, 1}) procs.push_back(sli(c, 1, {b1}));
    for (int b1 : {0, 1})
      for (int b2 : {0, 1}) procs.push_back(sli(c, 2, {b1, b2}));
  }
  for (int b1 : {0, 1}) procs.push_back(bci(1, 1, {b1}));
  for (int b1 : {0, 1})
    for (int b2 : {0, 1}) procs.push_back(bci(1, 2, {b1, b2}));
  for (int l = 1; l <= 3; ++l) procs.push_back(wc(l));
  for (int b1 : {0, 1}) procs.push_back(wci(2, 1, {b1}));

  for (const auto& p : procs) {
    const double closed = distortion_closed_form(p).value;
    const double num = numeric(p, 2000).value;
    out.push_back(bounded("distortion closed vs numeric: " + p.describe(),
                          std::abs(num / closed - 1.0), tol));
  }
  return out;
}

std::vector<CheckResult> laws_suite() {
  std::vector<CheckResult> out;

  auto fieldwise = [](const SmallBallLaw& x, const SmallBallLaw& y) {
    double worst = std::abs(x.K / y.K - 1.0);
    worst = std::max(worst, std::abs(x.a - y.a));
    worst = std::max(worst, std::abs(x.d - y.d));
    worst = std::max(worst, std::abs(x.E / y.E - 1.0));
    return worst;
  };

  {
    std::vector<ProcessSpec> procs = {sl(0.5)};
    for (double c : {0.5, 1.0, 2.0})
      for (int b1 : {0, 1}) procs.push_back(sli(c, 1, {b1}));
    for (double c : {0.5, 1.0})
      for (int b1 : {0, 1})
        for (int b2 : {0, 1}) procs.push_back(sli(c, 2, {b1, b2}));
    for (int l = 0; l <= 3; ++l) procs.push_back(bci(l, 0, {}));
    for (int b1 : {0, 1}) procs.push_back(bci(1, 1, {b1}));
    for (int b1 : {0, 1})
      for (int b2 : {0, 1}) procs.push_back(bci(1, 2, {b1, b2}));
    for (int l = 0; l <= 3; ++l) procs.push_back(wc(l));
    for (int b1 : {0, 1}) procs.push_back(wci(2, 1, {b1}));

    double worst = 0.0;
    std::string worst_name;
    for (const auto& p : procs) {
      const double cdist = distortion_closed_form(p).value;
      const double err = fieldwise(closed_law(p), assembled_law(p, cdist));
      if (err > worst) {
        worst = err;
        worst_name = p.describe();
      }
    }
    out.push_back(bounded("closed law vs assembly (" + std::to_string(procs.size()) +
                              " processes)",
                          worst, 1e-9, "worst: " + worst_name));
  }

  {
    // two independent halves of a squared Wiener norm recombine to the
    // c = 1/2 slepian law
    const SmallBallLaw wiener = general_law(1, 1, 1.0, 1.0);
    const SmallBallLaw half = scale_variable(to_squared(wiener), 0.5);
    const SmallBallLaw sum = to_norm(combine_laws(half, half));
    const SmallBallLaw expected{4.0 / std::sqrt(pi), 1.0, 2.0, 0.25,
                                SmallBallLaw::Variable::norm_eps};
    out.push_back(bounded("scaled-wiener pair recombination", fieldwise(sum, expected), 1e-12));
  }

  {
    double worst = 0.0;
    for (int l = 0; l <= 3; ++l) {
      const double expected = std::sqrt((2.0 * l + 2.0) / (2.0 * l + 1.0)) / std::sqrt(pi);
      worst = std::max(worst, std::abs(closed_law(bc(l)).K / expected - 1.0));
    }
    out.push_back(bounded("centered tower prefactor identity, l<=3", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (int l = 0; l <= 3; ++l)
      worst = std::max(worst, fieldwise(closed_law(bc(l)), assembled_law(bc(l), 0.0)));
    out.push_back(bounded("centered tower closed vs double-split assembly, l<=3", worst, 1e-12));
  }
  return out;
}

std::vector<CheckResult> oracle_suite() {
  std::vector<CheckResult> out;
  struct Case {
    std::string name;
    ProcessSpec spec;
  };
  const std::vector<Case> cases = {
      {"bridge", bci(0, 0, {})},      {"wiener", wc(0)},
      {"slepian c=1/2", sl(0.5)},     {"slepian c=1", sl(1.0)},
      {"centered bridge l=0", bc(0)}, {"centered bridge l=1", bc(1)},
      {"centered bridge l=2", bc(2)},
  };
  const std::vector<double> eps_grid = {0.3, 0.2, 0.1, 0.05};

  for (const auto& cse : cases) {
    const SmallBallLaw law = closed_law(cse.spec);
    const SpectrumResult s = positive_roots(char_function(cse.spec), 200);
    const CompletedSpectrum cs = tail_completed_spectrum(s, cse.spec, 100000);

    std::vector<double> ratios;
    for (double e : eps_grid)
      ratios.push_back(asymptotic_eval(law, e) / prob_saddlepoint(cs, e));

    out.push_back(bounded("oracle " + cse.name + ": asymptotic/saddlepoint at 0.05",
                          std::abs(ratios.back() - 1.0), 0.10));
    bool monotone = true;
    double worst_step = -1.0;
    for (size_t i = 1; i < ratios.size(); ++i) {
      const double step = std::abs(ratios[i] - 1.0) - std::abs(ratios[i - 1] - 1.0);
      worst_step = std::max(worst_step, step);
      if (step >= 0.0) monotone = false;
    }
    std::ostringstream note;
    note << "ratios:";
    for (double r : ratios) note << " " << r;
    CheckResult mono = boolean("oracle " + cse.name + ": monotone approach", monotone, note.str());
    mono.measured = worst_step;
    out.push_back(mono);

    double worst = 0.0;
    for (double e : {0.2, 0.3})
      worst = std::max(worst,
                       std::abs(prob_saddlepoint(cs, e) / prob_imhof(cs, e) - 1.0));
    out.push_back(bounded("oracle " + cse.name + ": saddlepoint vs inversion", worst, 0.02));
  }
  return out;
}

std::vector<CheckResult> ranking_suite() {
  std::vector<CheckResult> out;
  for (int m : {2, 3}) {
    const auto ranked = rank_beta_patterns(Family::slepian_integrated, 0, m, 1.0);
    std::set<std::vector<int>> top, bottom;
    const int last_group = ranked.back().group;
    for (const auto& r : ranked) {
      if (r.group == 0) top.insert(r.beta);
      if (r.group == last_group) bottom.insert(r.beta);
    }
    const std::vector<int> zeros(m, 0), ones(m, 1);
    std::vector<int> euler0(m), euler1(m);
    for (int j = 0; j < m; ++j) {
      euler0[j] = j % 2;      // 0,1,0,...
      euler1[j] = 1 - j % 2;  // 1,0,1,...
    }
    const bool ok_top = top.count(zeros) && top.count(ones) && top.size() == 2;
    const bool ok_bottom = bottom.count(euler0) && bottom.count(euler1) && bottom.size() == 2;
    out.push_back(boolean("ranking slepian c=1 m=" + std::to_string(m) + ": extremal groups",
                          ok_top && ok_bottom));
  }
  return out;
}

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed,
                                   double distortion_tol, int grid) {
  if (name == "rho-sum") return rho_sum_suite(seed);
  if (name == "spectra") return spectra_suite();
  if (name == "nystrom") return nystrom_suite(grid);
  if (name == "coincide") return coincide_suite();
  if (name == "distortion") return distortion_suite(distortion_tol);
  if (name == "laws") return laws_suite();
  if (name == "oracles") return oracle_suite();
  if (name == "ranking") return ranking_suite();
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const auto& n : {"rho-sum", "spectra", "nystrom", "coincide", "distortion", "laws",
                          "oracles", "ranking"}) {
      auto part = run_suite(n, seed, distortion_tol, grid);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown verify suite: " + name);
}

std::vector<std::string> suite_names() {
  return {"rho-sum", "spectra", "nystrom", "coincide", "distortion", "laws", "oracles",
          "ranking", "all"};
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-4s %-58s measured=%.3e target=%.3e tol=%.3e",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.target, c.tol);
    os << buf;
    if (!c.note.empty()) os << "  [" << c.note << "]";
    os << "\n";
  }
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

}  // namespace smallball::verify
