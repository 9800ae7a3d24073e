#pragma once

#include <array>
#include <string>
#include <vector>

#include "ptosc/coperator.hpp"
#include "ptosc/inner.hpp"
#include "ptosc/models.hpp"

namespace ptosc {

using ProbabilityMatrix = std::array<std::array<double, 4>, 4>;

struct FlavourBasis {
  std::vector<MomentumState> kets;  // f'_1..f'_4
  CMatrix mixing;                   // e_l = sum_j mixing(l, j) f'_j
};

struct TransitionTable {
  std::vector<double> t_grid;
  std::vector<ProbabilityMatrix> probs;  // probs[k][i][j] = P(f_i -> f_j) at t_grid[k]
};

// f'1 = (e1+e3)/sqrt2, f'2 = (e2+e4)/sqrt2, f'3 = (e1-e3)/sqrt2, f'4 = (e2-e4)/sqrt2.
// Throws BasisError unless the eigenkets are CPT-orthonormal.
FlavourBasis standard_flavour_basis(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c,
                                    double tol = kDefaultTol);

// CPT expansion coefficients c_j = ((e_j|v)).
std::vector<Complex> cpt_coefficients(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c,
                                      const MomentumState& v);

MomentumState evolve(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c, const MomentumState& v,
                     double t);
CVector evolve(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c, const CVector& v, double t);

TransitionTable transition_table(const SymmetryPair& sym, const FlavourBasis& basis, const EigenSystem& eigsys,
                                 const COperator& c, const std::vector<double>& t_grid);

// Closed-form cos^2 / sin^2 pattern implied by the spectrum of a standard flavour basis.
ProbabilityMatrix analytic_probabilities(const EigenSystem& eigsys, double t);
double golden_deviation(const TransitionTable& table, const EigenSystem& eigsys);
double max_row_sum_defect(const TransitionTable& table);

std::vector<double> uniform_grid(double start, double stop, std::size_t points);
// 64 points on [0, 2 pi / smallest nonzero gap].
std::vector<double> default_time_grid(const EigenSystem& eigsys, std::size_t points = 64);

// B_jk = sum_l alpha_lj conj(alpha_lk) for coordinate flavour kets f_j.
CMatrix naive_flavour_B(const EigenSystem& eigsys, const COperator& c);

std::string to_csv(const TransitionTable& table);

}  // namespace ptosc
