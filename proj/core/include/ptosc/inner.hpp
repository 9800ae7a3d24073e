#pragma once

#include <functional>
#include <span>
#include <string_view>

#include "ptosc/matcore.hpp"
#include "ptosc/symmetry.hpp"

namespace ptosc {

// A ket family indexed by signed momentum along the propagation axis.
// Momentum-free kets are constant families at p = 0.
struct MomentumState {
  std::function<CVector(double)> spinor_at;
  double p = 0.0;
  int helicity = +1;

  static MomentumState constant(CVector v);

  CVector ket() const { return spinor_at(p); }
  CVector reflected() const { return spinor_at(-p); }
  std::size_t dim() const { return ket().dim(); }
};

// Linear combination sum_j coeffs[j] * states[j]; all states must share p and helicity.
MomentumState combine(std::span<const Complex> coeffs, std::span<const MomentumState> states);
MomentumState scaled(const MomentumState& state, Complex factor);

enum class InnerProductKind { Dirac, PtCs, CptCs };
std::string_view to_string(InnerProductKind kind);

Complex dirac_ip(const CVector& a, const CVector& b);

// a^dagger S b. SymmetryPair construction already certifies that this equals
// (PT a)^T Z b, see SymmetryPair::Defects::pt_forms.
Complex pt_ip(const SymmetryPair& sym, const CVector& a, const CVector& b);
// The literal (PT a)^T Z b form.
Complex pt_ip_transposed(const SymmetryPair& sym, const CVector& a, const CVector& b);

// CS product: zero across distinct momenta or helicities, else a(-p)^dagger S b(p).
Complex pt_ip_momentum(const SymmetryPair& sym, const MomentumState& a, const MomentumState& b);

struct JsmCsComparison {
  Complex jsm;  // delta(k + p) selects k = -p, so a self-overlap survives only at p = 0
  Complex cs;
  bool coincide = false;
};
JsmCsComparison jsm_cs_comparison(const SymmetryPair& sym, const MomentumState& a, double tol = kDefaultTol);

CMatrix pt_adjoint(const SymmetryPair& sym, const CMatrix& h);

struct NormalizedKet {
  CVector ket;
  int sign = +1;
};
struct NormalizedState {
  MomentumState state;
  int sign = +1;
};

// Scales to unit |PT norm| and fixes the phase so the first nonzero component
// is real positive. Throws DegenerateNormError when the PT norm vanishes.
NormalizedKet pt_normalize(const SymmetryPair& sym, const CVector& v, double tol = kDefaultTol);
NormalizedState pt_normalize(const SymmetryPair& sym, const MomentumState& v, double tol = kDefaultTol);

// Unit phase making the first component above tol * ||v|| real positive.
Complex canonical_phase(const CVector& v, double tol = 1e-12);

// (C PT a)^T Z b
Complex cpt_ip(const SymmetryPair& sym, const CMatrix& c, const CVector& a, const CVector& b);
// CS form a(-p)^dagger S C(p) b(p); zero across momenta or helicities.
Complex cpt_ip_momentum(const SymmetryPair& sym, const CMatrix& c_at_p, const MomentumState& a,
                        const MomentumState& b);

}  // namespace ptosc
