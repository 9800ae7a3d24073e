#include "ptosc/coperator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptosc/eigen.hpp"
#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

CMatrix spectral_hamiltonian(const SymmetryPair& sym, const EigenSystem& es) {
  CMatrix h(sym.dim(), sym.dim());
  for (const EigenPair& p : es.pairs) {
    const CVector bra = sym.s() * p.state.reflected();
    h += (p.value * static_cast<double>(p.pt_sign)) * CMatrix::outer(p.ket(), bra);
  }
  return h;
}

CMatrix outer_sum(const SymmetryPair& sym, const EigenSystem& es, double q_sign) {
  CMatrix c(sym.dim(), sym.dim());
  for (const EigenPair& p : es.pairs) {
    const double q = q_sign * p.state.p;
    c += CMatrix::outer(p.state.spinor_at(q), sym.s() * p.state.spinor_at(-q));
  }
  return c;
}

}  // namespace

double CProperties::max() const { return std::max({involution, commutes_h, commutes_pt}); }

CProperties c_properties(const SymmetryPair& sym, const CMatrix& c, const CMatrix& h) {
  const CMatrix sz = sym.s() * sym.z();
  return {operator_norm(c * c - CMatrix::identity(c.rows())), operator_norm(commutator(c, h)),
          operator_norm(c * sz - sz * conj(c))};
}

CProperties c_properties(const SymmetryPair& sym, const COperator& c, const CMatrix& h) {
  const CMatrix sz = sym.s() * sym.z();
  CProperties props = c_properties(sym, c.matrix, h);
  props.commutes_pt = operator_norm(c.matrix * sz - sz * conj(c.reflected));
  return props;
}

COperator build_C(const SymmetryPair& sym, const EigenSystem& eigsys, const std::optional<CMatrix>& h, double tol) {
  if (eigsys.size() != sym.dim()) throw ConstructionError("build_C: eigensystem does not span the space", 1.0);
  for (const EigenPair& p : eigsys.pairs) {
    if (std::abs(p.value.imag()) > tol) throw ConstructionError("build_C: complex eigenvalue", std::abs(p.value.imag()));
  }
  double gram_defect = 0.0;
  for (std::size_t i = 0; i < eigsys.size(); ++i) {
    for (std::size_t j = 0; j < eigsys.size(); ++j) {
      const Complex g = pt_ip_momentum(sym, eigsys.pairs[i].state, eigsys.pairs[j].state);
      const double expected = i == j ? eigsys.pairs[i].pt_sign : 0.0;
      gram_defect = std::max(gram_defect, std::abs(g - expected));
    }
  }
  if (gram_defect > tol) {
    throw ConstructionError("build_C: kets are not PT-orthonormal (defect " + std::to_string(gram_defect) + ")",
                            gram_defect);
  }

  COperator out{outer_sum(sym, eigsys, +1.0), outer_sum(sym, eigsys, -1.0), std::nullopt};
  const CMatrix ham = h.value_or(spectral_hamiltonian(sym, eigsys));
  const CProperties props = c_properties(sym, out, ham);
  if (props.max() > tol) {
    throw ConstructionError("build_C: C fails its defining properties (defect " + std::to_string(props.max()) + ")",
                            props.max());
  }
  return out;
}

CMatrix closed_form_C_h8v(double m0, double m2, double p) {
  if (m0 <= std::abs(m2)) throw PtBrokenError("closed_form_C_h8v: broken PT phase", eigenvalues(h8_reduced({m0, 0.0, m2, 0.0}, p)));
  const Dirac8Params d{m0, 0.0, m2, 0.0, p};
  return h8_reduced(d, p) / Complex(d.energy());
}

double completeness_defect(const SymmetryPair& sym, const COperator& c, std::span<const MomentumState> kets) {
  if (kets.empty()) return operator_norm(CMatrix::identity(sym.dim()));
  CMatrix sum(sym.dim(), sym.dim());
  for (const MomentumState& k : kets) {
    const CVector bra = adjoint(c.matrix) * (sym.s() * k.reflected());  // ((e| = e(-p)^dagger S C
    sum += CMatrix::outer(k.ket(), bra);
  }
  return operator_norm(sum - CMatrix::identity(sym.dim()));
}

double completeness_defect(const SymmetryPair& sym, const COperator& c, std::span<const CVector> kets) {
  std::vector<MomentumState> states;
  for (const CVector& v : kets) states.push_back(MomentumState::constant(v));
  return completeness_defect(sym, c, states);
}

CMatrix lift_C_to_dirac8(const COperator& c, double theta_p, double phi_p) {
  const auto [plus, minus] = helicity_spinors(theta_p, phi_p);
  return kron(c.matrix, CMatrix::outer(plus, plus)) + kron(c.reflected, CMatrix::outer(minus, minus));
}

}  // namespace ptosc
