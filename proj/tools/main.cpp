// Command-line front end: catalog listing, spectra, small-ball laws,
// probability evaluation and the named verification suites.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smallball/asymptotics.hpp"
#include "smallball/bvp_algebra.hpp"
#include "smallball/catalog.hpp"
#include "smallball/constants.hpp"
#include "smallball/oracle.hpp"
#include "smallball/spectral.hpp"
#include "smallball/verify.hpp"

namespace {

using namespace smallball;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumericalGuard = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int default_grid() {
  if (const char* env = std::getenv("SMALLBALL_GRID_SIZE")) {
    int g = std::atoi(env);
    if (g >= 16) return g;
  }
  return 2000;
}

struct ProcessOptions {
  std::string id;
  std::optional<double> c;
  std::optional<int> l;
  std::optional<int> m;
  std::optional<std::string> beta;

  ProcessSpec resolve() const {
    CatalogParams params;
    params.c = c;
    params.l = l;
    params.m = m;
    if (beta) {
      std::vector<int> bits;
      for (char ch : *beta) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("beta must be a 0/1 string");
        bits.push_back(ch - '0');
      }
      params.beta = bits;
    } else if (m && *m > 0) {
      params.beta = std::vector<int>(*m, 0);
    }
    return catalog_process(id, params);
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--process", id, "process id (see `list`)")->required();
    cmd->add_option("--c", c, "slepian covariance offset (>= 1/2)");
    cmd->add_option("--l", l, "centering tower height");
    cmd->add_option("--m", m, "number of extra integrations");
    cmd->add_option("--beta", beta, "integration endpoints as a 0/1 string, e.g. 010");
  }
};

void echo_config(const std::string& cmd, const std::string& detail) {
  std::cerr << "# smallball " << cmd << " | " << detail << "\n";
}

int cmd_list() {
  std::printf("%-14s %-10s %s\n", "id", "params", "process");
  std::printf("%-14s %-10s %s\n", "slepian", "c", "stationary process with covariance c-|t-s|");
  std::printf("%-14s %-10s %s\n", "slepian-int", "c,m,beta", "m-times endpoint-integrated slepian");
  std::printf("%-14s %-10s %s\n", "bridge-c", "l", "centered bridge tower top (zero mode)");
  std::printf("%-14s %-10s %s\n", "bridge-c-int", "l,m,beta", "bridge tower, m extra integrations");
  std::printf("%-14s %-10s %s\n", "wiener-c", "l", "centered wiener tower (l=0: wiener)");
  std::printf("%-14s %-10s %s\n", "wiener-c-int", "l,m,beta", "wiener tower, m extra integrations");
  return kExitOk;
}

int cmd_spectrum(const ProcessOptions& opts, int count, const std::string& format) {
  const ProcessSpec spec = opts.resolve();
  echo_config("spectrum", spec.describe() + " count=" + std::to_string(count) +
                              " format=" + format);
  const SpectrumResult s = positive_roots(char_function(spec), count);

  // per-eigenvalue rows; multiplicity is that of the underlying root
  std::vector<int> mult(s.count);
  {
    int idx = 0;
    for (const auto& root : s.roots)
      for (int c2 = 0; c2 < root.multiplicity && idx < s.count; ++c2) mult[idx++] = root.multiplicity;
  }
  if (format == "csv") {
    std::printf("n,r_n,mu_n,lambda_n,multiplicity\n");
    for (int n = 0; n < s.count; ++n)
      std::printf("%d,%s,%s,%s,%d\n", n + 1, fmt17(s.root_of[n]).c_str(),
                  fmt17(s.mu[n]).c_str(), fmt17(s.lambda[n]).c_str(), mult[n]);
  } else if (format == "json") {
    json rows = json::array();
    for (int n = 0; n < s.count; ++n)
      rows.push_back({{"n", n + 1},
                      {"r_n", s.root_of[n]},
                      {"mu_n", s.mu[n]},
                      {"lambda_n", s.lambda[n]},
                      {"multiplicity", mult[n]}});
    std::printf("%s\n", rows.dump(2).c_str());
  } else {
    throw std::invalid_argument("spectrum: format must be csv or json");
  }
  return kExitOk;
}

json law_to_json(const SmallBallLaw& law, const std::string& path) {
  return json{{"K", law.K},
              {"a", law.a},
              {"d", law.d},
              {"E", law.E},
              {"variable", law.variable == SmallBallLaw::Variable::norm_eps ? "norm_eps"
                                                                            : "squared_r"},
              {"path", path}};
}

int cmd_law(const ProcessOptions& opts, const std::string& path, const std::string& format) {
  const ProcessSpec spec = opts.resolve();
  echo_config("law", spec.describe() + " path=" + path + " format=" + format);
  json out = json::array();
  if (path == "closed" || path == "both") out.push_back(law_to_json(closed_law(spec), "closed"));
  if (path == "assembled" || path == "both") {
    double cdist = 1.0;
    if (!spec.zero_mode) {
      if (has_closed_form_distortion(spec)) {
        cdist = distortion_closed_form(spec).value;
      } else {
        const CharFunction f = char_function(spec);
        const SpectrumResult s = positive_roots(f, 2000);
        cdist = distortion_numeric(s, spec.ell, spec.kappa, spec.theta_ell, f.phases()).value;
      }
    }
    out.push_back(law_to_json(assembled_law(spec, cdist), "assembled"));
  }
  if (out.empty()) throw std::invalid_argument("law: path must be closed, assembled or both");
  if (format == "json") {
    std::printf("%s\n", (out.size() == 1 ? out[0] : out).dump(2).c_str());
  } else if (format == "text") {
    for (const auto& j : out)
      std::printf("%s: K=%s a=%s d=%s E=%s (%s)\n", j["path"].get<std::string>().c_str(),
                  fmt17(j["K"]).c_str(), fmt17(j["a"]).c_str(), fmt17(j["d"]).c_str(),
                  fmt17(j["E"]).c_str(), j["variable"].get<std::string>().c_str());
  } else {
    throw std::invalid_argument("law: format must be json or text");
  }
  return kExitOk;
}

int cmd_eval(const ProcessOptions& opts, const std::string& eps_list, const std::string& format,
             int n_roots, long m_total) {
  const ProcessSpec spec = opts.resolve();
  echo_config("eval", spec.describe() + " eps=" + eps_list);
  std::vector<double> eps;
  std::stringstream ss(eps_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) eps.push_back(std::stod(tok));
  if (eps.empty()) throw std::invalid_argument("eval: empty eps list");

  const SpectrumResult s = positive_roots(char_function(spec), n_roots);
  const CompletedSpectrum cs = tail_completed_spectrum(s, spec, m_total);
  SmallBallLaw law;
  if (has_closed_law(spec)) {
    law = closed_law(spec);
  } else {
    const CharFunction f = char_function(spec);
    const SpectrumResult deep = positive_roots(f, 2000);
    law = assembled_law(spec,
                        distortion_numeric(deep, spec.ell, spec.kappa, spec.theta_ell,
                                           f.phases())
                            .value);
  }

  json rows = json::array();
  if (format == "csv") std::printf("eps,asymptotic,saddlepoint,imhof,ratio\n");
  for (double e : eps) {
    const double asym = asymptotic_eval(law, e);
    const double saddle = prob_saddlepoint(cs, e);
    std::string imhof = "nan";
    try {
      imhof = fmt17(prob_imhof(cs, e));
    } catch (const PrecisionLossError&) {
    }
    const double ratio = asym / saddle;
    if (format == "csv") {
      std::printf("%s,%s,%s,%s,%s\n", fmt17(e).c_str(), fmt17(asym).c_str(),
                  fmt17(saddle).c_str(), imhof.c_str(), fmt17(ratio).c_str());
    } else {
      rows.push_back({{"eps", e},
                      {"asymptotic", asym},
                      {"saddlepoint", saddle},
                      {"imhof", imhof},
                      {"ratio", ratio}});
    }
  }
  if (format == "json") std::printf("%s\n", rows.dump(2).c_str());
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, double tol, int grid) {
  echo_config("verify", "suite=" + suite + " seed=" + std::to_string(seed) +
                            " tol=" + fmt17(tol) + " grid=" + std::to_string(grid));
  const auto checks = verify::run_suite(suite, seed, tol, grid);
  verify::print_checks(std::cout, checks);
  return verify::all_pass(checks) ? kExitOk : kExitVerifyFail;
}

int cmd_rank(const std::string& family, int l, int m, double c) {
  echo_config("rank", "family=" + family + " l=" + std::to_string(l) +
                          " m=" + std::to_string(m));
  const auto ranked = rank_beta_patterns(family_from_id(family), l, m, c);
  std::printf("rank,group,beta,K\n");
  for (size_t i = 0; i < ranked.size(); ++i) {
    std::string beta;
    for (int b : ranked[i].beta) beta += ('0' + b);
    std::printf("%zu,%d,%s,%s\n", i + 1, ranked[i].group, beta.c_str(),
                fmt17(ranked[i].K).c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "smallball: spectra and exact small-deviation laws of cataloged Gaussian processes\n"
      "process ids: slepian, slepian-int, bridge-c, bridge-c-int, wiener-c, wiener-c-int"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list catalog process ids");

  ProcessOptions spectrum_opts;
  int spectrum_count = 10;
  std::string spectrum_format = "csv";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a catalog process");
  spectrum_opts.attach(spectrum);
  spectrum->add_option("--count", spectrum_count, "number of eigenvalues")->default_val(10);
  spectrum->add_option("--format", spectrum_format, "csv or json")->default_val("csv");

  ProcessOptions law_opts;
  std::string law_path = "closed";
  std::string law_format = "json";
  auto* law = app.add_subcommand("law", "small-ball law of a catalog process");
  law_opts.attach(law);
  law->add_option("--path", law_path, "closed, assembled or both")->default_val("closed");
  law->add_option("--format", law_format, "json or text")->default_val("json");

  ProcessOptions eval_opts;
  std::string eval_eps = "0.3,0.2,0.1,0.05";
  std::string eval_format = "csv";
  int eval_roots = 200;
  long eval_m = 100000;
  auto* eval = app.add_subcommand("eval", "asymptotic law vs probability oracles");
  eval_opts.attach(eval);
  eval->add_option("--eps", eval_eps, "comma-separated eps values")->default_val(eval_eps);
  eval->add_option("--format", eval_format, "csv or json")->default_val("csv");
  eval->add_option("--roots", eval_roots, "computed eigenvalues before tail completion")
      ->default_val(200);
  eval->add_option("--tail", eval_m, "total spectrum length after tail completion")
      ->default_val(100000);

  std::string verify_suite = "all";
  std::uint64_t verify_seed = 0;
  double verify_tol = 1e-3;
  int verify_grid = default_grid();
  auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
  verify_cmd->add_option("--suite", verify_suite, "suite name or 'all'")->default_val("all");
  verify_cmd->add_option("--seed", verify_seed, "seed for the random-problem suite")
      ->default_val(0);
  verify_cmd->add_option("--tol", verify_tol, "distortion comparison tolerance")
      ->default_val(1e-3);
  verify_cmd->add_option("--grid", verify_grid, "kernel grid size");

  std::string rank_family;
  int rank_l = 0, rank_m = 1;
  double rank_c = 1.0;
  auto* rank = app.add_subcommand("rank", "order endpoint patterns by law prefactor");
  rank->add_option("--family", rank_family, "family id")->required();
  rank->add_option("--l", rank_l, "tower height")->default_val(0);
  rank->add_option("--m", rank_m, "number of integrations")->required();
  rank->add_option("--c", rank_c, "slepian offset")->default_val(1.0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opts, spectrum_count, spectrum_format);
    if (law->parsed()) return cmd_law(law_opts, law_path, law_format);
    if (eval->parsed()) return cmd_eval(eval_opts, eval_eps, eval_format, eval_roots, eval_m);
    if (verify_cmd->parsed()) return cmd_verify(verify_suite, verify_seed, verify_tol, verify_grid);
    if (rank->parsed()) return cmd_rank(rank_family, rank_l, rank_m, rank_c);
  } catch (const smallball::PrecisionLossError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumericalGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalGuard;
  }
  return kExitUsage;
}
