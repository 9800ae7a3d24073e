#pragma once

#include <cstddef>

#include "ptosc/matcore.hpp"

namespace ptosc {

// Linear parts of parity (S) and time reversal (Z). T acts as Z K with K
// complex conjugation, so it only exists through apply_T.
class SymmetryPair {
 public:
  struct Defects {
    double parity_involution = 0.0;  // ||S S - I||
    double time_reversal = 0.0;      // ||Z conj(Z) + I||
    double pt_commute = 0.0;         // ||S Z - Z conj(S)||
    double z_antisymmetry = 0.0;     // ||Z^T + Z||
    double pt_forms = 0.0;           // ||Z^T S Z - S||, equality of the two PT product forms
    double max() const;
  };

  // Validates every invariant to tol; throws ParameterError otherwise.
  SymmetryPair(CMatrix s, CMatrix z, double tol = 1e-12);
  // Skips validation. Used to feed deliberately broken pairs to the verifier.
  static SymmetryPair unchecked(CMatrix s, CMatrix z);

  const CMatrix& s() const noexcept { return s_; }
  const CMatrix& z() const noexcept { return z_; }
  std::size_t dim() const noexcept { return s_.rows(); }
  const Defects& defects() const noexcept { return defects_; }

 private:
  SymmetryPair() = default;
  static Defects measure(const CMatrix& s, const CMatrix& z);

  CMatrix s_;
  CMatrix z_;
  Defects defects_;
};

CMatrix build_canonical_Z(std::size_t n_pairs);
CMatrix build_canonical_S(std::size_t m, std::size_t dim);
CMatrix build_canonical_S(std::size_t dim);
// 8x8 parity of the Dirac basis: identity blocks on the off-diagonal.
CMatrix build_dirac_S();
// 4x4 parity acting on the reduced Dirac subspace.
CMatrix build_reduced_dirac_S();

SymmetryPair canonical_pair(std::size_t dim);
SymmetryPair dirac_pair();
SymmetryPair reduced_dirac_pair();

CVector apply_T(const SymmetryPair& sym, const CVector& v);
CVector apply_PT(const SymmetryPair& sym, const CVector& v);

}  // namespace ptosc
