#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptosc/coperator.hpp"
#include "ptosc/models.hpp"
#include "ptosc/symmetry.hpp"

namespace ptosc {

struct CheckReport {
  std::string name;
  bool passed = false;
  double defect = 0.0;  // infinity when skipped
  double tolerance = kDefaultTol;
  bool skipped = false;
  std::string note;
};

CheckReport make_report(std::string name, double defect, double tolerance, std::string note = {});
CheckReport skipped_report(std::string name, double tolerance, std::string reason);
// Skipped checks are reported but do not count as failures.
bool all_passed(const std::vector<CheckReport>& reports);

// ||H S Z - S Z conj(H)||
CheckReport check_pt_commute(const SymmetryPair& sym, const CMatrix& h, double tol = kDefaultTol);
// ||S^-1 H^dagger S - H||
CheckReport check_pseudo_hermiticity(const SymmetryPair& sym, const CMatrix& h, double tol = kDefaultTol);
// Momentum form ||S^-1 H(p)^dagger S - H(-p)||.
CheckReport check_pseudo_hermiticity(const SymmetryPair& sym, const CMatrix& h, const CMatrix& h_reflected,
                                     double tol = kDefaultTol);
// max |Im lambda| from the general eigensolver.
CheckReport check_real_spectrum(const CMatrix& h, double tol = kDefaultTol);

std::vector<CheckReport> check_alpha_beta_conditions(const std::array<CMatrix, 3>& alphas, const CMatrix& beta,
                                                     const SymmetryPair& sym, double tol = kDefaultTol);
// ||beta - beta^dagger||. Diagnostic only: the PT-symmetric mass term is not Hermitian.
CheckReport check_beta_hermiticity(const CMatrix& beta, double tol = kDefaultTol);
std::vector<CheckReport> check_generator_constraints(const std::array<CMatrix, 3>& alphas, const SymmetryPair& sym,
                                                     double tol = kDefaultTol);

struct SuiteOptions {
  double tol = kDefaultTol;
  double oracle_tol = 1e-8;
  std::size_t random_vectors = 1000;
  std::uint64_t seed = 20240917;
  std::size_t t_points = 64;
};

// Everything the suite inspects. Fields may be replaced before run_suite to
// probe the checks with deliberately corrupted inputs.
struct SuiteSubject {
  Model model;
  std::optional<EigenSystem> eigensystem;
  std::optional<COperator> c;
  std::string unavailable;  // why eigensystem or C is missing
  bool broken_phase = false;
};

SuiteSubject prepare_subject(const ModelSpec& spec, const SuiteOptions& options = {});
std::vector<CheckReport> run_suite(const SuiteSubject& subject, const SuiteOptions& options = {});
std::vector<CheckReport> run_full_suite(const ModelSpec& spec, const SuiteOptions& options = {});

}  // namespace ptosc
