#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace smallball::verify {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;  // optional detail, e.g. which sub-case failed
};

std::vector<CheckResult> rho_sum_suite(std::uint64_t seed);
std::vector<CheckResult> spectra_suite();
std::vector<CheckResult> nystrom_suite(int grid);
std::vector<CheckResult> coincide_suite();
std::vector<CheckResult> distortion_suite(double tol);
std::vector<CheckResult> laws_suite();
std::vector<CheckResult> oracle_suite();
std::vector<CheckResult> ranking_suite();

/// Runs one named suite ("rho-sum", "spectra", "nystrom", "coincide",
/// "distortion", "laws", "oracles", "ranking" or "all").
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed,
                                   double distortion_tol, int grid);

std::vector<std::string> suite_names();

/// One row per check: PASS/FAIL, name, measured, target, tolerance.
void print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace smallball::verify
