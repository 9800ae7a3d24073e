#include "ptosc/inner.hpp"

#include <cmath>
#include <vector>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

void require_dim(const SymmetryPair& sym, const CVector& v, const char* op) {
  if (v.dim() != sym.dim()) throw ShapeError(std::string(op) + ": dimension mismatch");
}

bool same_sector(const MomentumState& a, const MomentumState& b) {
  return a.p == b.p && a.helicity == b.helicity;
}

}  // namespace

MomentumState MomentumState::constant(CVector v) {
  return MomentumState{[v = std::move(v)](double) { return v; }, 0.0, +1};
}

MomentumState combine(std::span<const Complex> coeffs, std::span<const MomentumState> states) {
  if (coeffs.size() != states.size() || states.empty()) throw ShapeError("combine: coefficient count mismatch");
  for (const MomentumState& s : states) {
    if (!same_sector(s, states[0])) throw BasisError("combine: states live in different momentum sectors");
  }
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  std::vector<MomentumState> parts(states.begin(), states.end());
  auto fn = [c, parts](double q) {
    CVector out(parts[0].spinor_at(q).dim());
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (c[j] != Complex{}) out += c[j] * parts[j].spinor_at(q);
    }
    return out;
  };
  return MomentumState{fn, states[0].p, states[0].helicity};
}

MomentumState scaled(const MomentumState& state, Complex factor) {
  auto inner = state.spinor_at;
  return MomentumState{[inner, factor](double q) { return factor * inner(q); }, state.p, state.helicity};
}

std::string_view to_string(InnerProductKind kind) {
  switch (kind) {
    case InnerProductKind::Dirac: return "Dirac";
    case InnerProductKind::PtCs: return "PT_CS";
    case InnerProductKind::CptCs: return "CPT_CS";
  }
  return "unknown";
}

Complex dirac_ip(const CVector& a, const CVector& b) { return vdot(a, b); }

Complex pt_ip(const SymmetryPair& sym, const CVector& a, const CVector& b) {
  require_dim(sym, a, "pt_ip");
  require_dim(sym, b, "pt_ip");
  return vdot(a, sym.s() * b);
}

Complex pt_ip_transposed(const SymmetryPair& sym, const CVector& a, const CVector& b) {
  require_dim(sym, b, "pt_ip_transposed");
  return bilinear(apply_PT(sym, a), sym.z() * b);
}

Complex pt_ip_momentum(const SymmetryPair& sym, const MomentumState& a, const MomentumState& b) {
  if (!same_sector(a, b)) return 0.0;
  return pt_ip(sym, a.reflected(), b.ket());
}

JsmCsComparison jsm_cs_comparison(const SymmetryPair& sym, const MomentumState& a, double tol) {
  JsmCsComparison out;
  out.cs = pt_ip_momentum(sym, a, a);
  // Self-overlap at momenta k = p and p: the delta(k + p) factor needs p = -p.
  out.jsm = a.p == 0.0 ? pt_ip(sym, a.ket(), a.ket()) : Complex{};
  out.coincide = std::abs(out.jsm - out.cs) <= tol;
  return out;
}

CMatrix pt_adjoint(const SymmetryPair& sym, const CMatrix& h) {
  if (!h.is_square() || h.rows() != sym.dim()) throw ShapeError("pt_adjoint: dimension mismatch");
  return inverse(sym.s()) * adjoint(h) * sym.s();
}

Complex canonical_phase(const CVector& v, double tol) {
  const double scale = v.norm();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double m = std::abs(v[i]);
    if (m > tol * scale) return std::conj(v[i]) / m;
  }
  return 1.0;
}

NormalizedKet pt_normalize(const SymmetryPair& sym, const CVector& v, double tol) {
  const Complex n = pt_ip(sym, v, v);
  if (std::abs(n) <= tol * std::max(1.0, std::norm(v.norm()))) {
    throw DegenerateNormError("pt_normalize: vanishing PT norm");
  }
  const CVector scaled_v = v / std::sqrt(std::abs(n));
  return {canonical_phase(scaled_v) * scaled_v, n.real() > 0.0 ? +1 : -1};
}

NormalizedState pt_normalize(const SymmetryPair& sym, const MomentumState& v, double tol) {
  const Complex n = pt_ip_momentum(sym, v, v);
  const CVector at_p = v.ket();
  if (std::abs(n) <= tol * std::max(1.0, std::norm(at_p.norm()))) {
    throw DegenerateNormError("pt_normalize: vanishing CS norm");
  }
  const Complex factor = canonical_phase(at_p) / std::sqrt(std::abs(n));
  return {scaled(v, factor), n.real() > 0.0 ? +1 : -1};
}

Complex cpt_ip(const SymmetryPair& sym, const CMatrix& c, const CVector& a, const CVector& b) {
  require_dim(sym, a, "cpt_ip");
  require_dim(sym, b, "cpt_ip");
  // C is linear, so C PT a = C (S Z conj(a)).
  return bilinear(c * apply_PT(sym, a), sym.z() * b);
}

Complex cpt_ip_momentum(const SymmetryPair& sym, const CMatrix& c_at_p, const MomentumState& a,
                        const MomentumState& b) {
  if (!same_sector(a, b)) return 0.0;
  const CVector bra_source = a.reflected();
  require_dim(sym, bra_source, "cpt_ip_momentum");
  return vdot(bra_source, sym.s() * (c_at_p * b.ket()));
}

}  // namespace ptosc
