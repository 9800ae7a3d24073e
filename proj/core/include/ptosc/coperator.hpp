#pragma once

#include <optional>
#include <span>

#include "ptosc/inner.hpp"
#include "ptosc/matcore.hpp"
#include "ptosc/models.hpp"
#include "ptosc/symmetry.hpp"

namespace ptosc {

struct COperator {
  CMatrix matrix;     // C at +p
  CMatrix reflected;  // C at -p; equals matrix for momentum-free models
  std::optional<ModelSpec> source_model;
};

struct CProperties {
  double involution = 0.0;   // ||C C - I||
  double commutes_h = 0.0;   // ||[C, H]||
  double commutes_pt = 0.0;  // ||C S Z - S Z conj(C)||
  double max() const;
};

CProperties c_properties(const SymmetryPair& sym, const CMatrix& c, const CMatrix& h);
// Momentum form: PT reverses p, so the PT defect is ||C(p) S Z - S Z conj(C(-p))||.
CProperties c_properties(const SymmetryPair& sym, const COperator& c, const CMatrix& h);

// C = sum_j |e_j)(e_j| with the PT bra (e_j| = e_j(-p)^dagger S. Throws
// ConstructionError on a complex spectrum, non-orthonormal kets, or when a
// defining property (checked against h, or the spectral reconstruction of H
// when h is absent) exceeds tol.
COperator build_C(const SymmetryPair& sym, const EigenSystem& eigsys, const std::optional<CMatrix>& h = std::nullopt,
                  double tol = kDefaultTol);

// H(p) / sqrt(p^2 + m0^2 - m2^2) on the reduced subspace.
CMatrix closed_form_C_h8v(double m0, double m2, double p);

// Operator norm of sum_j |e_j))((e_j| - I with the CPT bra ((e| = e(-p)^dagger S C.
double completeness_defect(const SymmetryPair& sym, const COperator& c, std::span<const MomentumState> kets);
double completeness_defect(const SymmetryPair& sym, const COperator& c, std::span<const CVector> kets);

// C on the 8x8 Dirac space for one helicity sector at p: C(p) (x) xi xi^dagger
// plus C(-p) (x) the opposite projector.
CMatrix lift_C_to_dirac8(const COperator& c, double theta_p, double phi_p);

}  // namespace ptosc
