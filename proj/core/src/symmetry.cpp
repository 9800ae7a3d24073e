#include "ptosc/symmetry.hpp"

#include <algorithm>
#include <string>

#include "ptosc/eigen.hpp"
#include "ptosc/errors.hpp"

namespace ptosc {

double SymmetryPair::Defects::max() const {
  return std::max({parity_involution, time_reversal, pt_commute, z_antisymmetry, pt_forms});
}

SymmetryPair::Defects SymmetryPair::measure(const CMatrix& s, const CMatrix& z) {
  const std::size_t n = s.rows();
  const CMatrix id = CMatrix::identity(n);
  Defects d;
  d.parity_involution = operator_norm(s * s - id);
  d.time_reversal = operator_norm(z * conj(z) + id);
  d.pt_commute = operator_norm(s * z - z * conj(s));
  d.z_antisymmetry = operator_norm(transpose(z) + z);
  d.pt_forms = operator_norm(transpose(z) * s * z - s);
  return d;
}

SymmetryPair::SymmetryPair(CMatrix s, CMatrix z, double tol) {
  *this = unchecked(std::move(s), std::move(z));
  if (defects_.max() > tol) {
    throw ParameterError("symmetry pair violates its invariants (defect " + std::to_string(defects_.max()) + ")");
  }
}

SymmetryPair SymmetryPair::unchecked(CMatrix s, CMatrix z) {
  if (!s.is_square() || !z.is_square() || s.rows() != z.rows()) {
    throw ShapeError("symmetry pair: S and Z must be square and of equal size");
  }
  if (s.rows() % 2 != 0) throw ShapeError("symmetry pair: dimension must be even");
  SymmetryPair p;
  p.defects_ = measure(s, z);
  p.s_ = std::move(s);
  p.z_ = std::move(z);
  return p;
}

CMatrix build_canonical_Z(std::size_t n_pairs) {
  if (n_pairs == 0 || 2 * n_pairs > kMaxDim) throw ShapeError("build_canonical_Z: need 1..4 pairs");
  return kron(CMatrix::identity(n_pairs), e2());
}

CMatrix build_canonical_S(std::size_t m, std::size_t dim) {
  if (dim == 0 || dim % 2 != 0 || dim > kMaxDim) throw ParameterError("build_canonical_S: dim must be even and <= 8");
  if (m == 0 || m > dim) throw ParameterError("build_canonical_S: m must lie in [1, dim]");
  std::vector<Complex> diag(dim, -1.0);
  std::fill(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
  return CMatrix::diagonal(diag);
}

CMatrix build_canonical_S(std::size_t dim) { return build_canonical_S(dim / 2, dim); }

CMatrix build_reduced_dirac_S() { return kron(pauli(1), pauli(0)); }

CMatrix build_dirac_S() { return kron(build_reduced_dirac_S(), pauli(0)); }

SymmetryPair canonical_pair(std::size_t dim) {
  return SymmetryPair(build_canonical_S(dim), build_canonical_Z(dim / 2));
}

SymmetryPair dirac_pair() { return SymmetryPair(build_dirac_S(), build_canonical_Z(4)); }

SymmetryPair reduced_dirac_pair() { return SymmetryPair(build_reduced_dirac_S(), build_canonical_Z(2)); }

CVector apply_T(const SymmetryPair& sym, const CVector& v) {
  if (v.dim() != sym.dim()) throw ShapeError("apply_T: dimension mismatch");
  return sym.z() * conj(v);
}

CVector apply_PT(const SymmetryPair& sym, const CVector& v) {
  if (v.dim() != sym.dim()) throw ShapeError("apply_PT: dimension mismatch");
  return sym.s() * (sym.z() * conj(v));
}

}  // namespace ptosc
