#include "ptosc/models.hpp"

#include <cmath>
#include <string>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw ParameterError(std::string(name) + " must be finite");
}

template <typename T>
const T& get_params(const ModelSpec& spec, const char* what) {
  if (const T* p = std::get_if<T>(&spec.params)) return *p;
  throw ParameterError(std::string("model spec does not carry ") + what + " parameters");
}

std::array<Complex, 4> pauli_coefficients(const CMatrix& m) {
  std::array<Complex, 4> c{};
  for (int k = 0; k < 4; ++k) c[k] = 0.5 * trace(pauli(k) * m);
  return c;
}

}  // namespace

// ---- parameters ----

double SfdmParams::a0() const { return std::cosh(chi); }

std::array<double, 4> SfdmParams::b() const {
  const double sh = std::sinh(chi);
  return {sh * std::cos(psi), sh * std::sin(psi) * std::sin(theta) * std::cos(phi),
          sh * std::sin(psi) * std::sin(theta) * std::sin(phi), sh * std::sin(psi) * std::cos(theta)};
}

void SfdmParams::validate() const {
  require_finite(chi, "chi");
  require_finite(psi, "psi");
  require_finite(theta, "theta");
  require_finite(phi, "phi");
  if (std::abs(chi) > 30.0) throw ParameterError("chi outside the representable range |chi| <= 30");
}

GenericTOddParams GenericTOddParams::from_scalars(double a0, double d0, const std::array<double, 4>& b) {
  return {a0 * CMatrix::identity(2), d0 * CMatrix::identity(2), real_quaternion(b)};
}

void GenericTOddParams::validate(double tol) const {
  for (const CMatrix* m : {&a, &d, &b}) {
    if (m->rows() != 2 || m->cols() != 2) throw ShapeError("generic T-odd blocks must be 2x2");
  }
  if (!is_hermitian(a, tol)) throw ParameterError("generic T-odd block A must be Hermitian");
  if (!is_hermitian(d, tol)) throw ParameterError("generic T-odd block D must be Hermitian");
  const auto c = pauli_coefficients(b);
  if (std::abs(c[0].imag()) > tol) throw ParameterError("B is not a real quaternion: sigma0 coefficient not real");
  for (int k = 1; k < 4; ++k) {
    if (std::abs(c[k].real()) > tol) {
      throw ParameterError("B is not a real quaternion: sigma" + std::to_string(k) + " coefficient not imaginary");
    }
  }
}

double Dirac8Params::effective_mass() const {
  if (m0 <= std::abs(m2)) throw ParameterError("effective mass needs m0 > |m2|");
  return std::sqrt(m0 * m0 - m2 * m2);
}

double Dirac8Params::energy() const {
  const double m = effective_mass();
  return std::sqrt(p * p + m * m);
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Sfdm: return "sfdm";
    case ModelKind::Generic: return "generic";
    case ModelKind::H8: return "h8";
    case ModelKind::H8r: return "h8r";
    case ModelKind::H8v: return "h8v";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "sfdm") return ModelKind::Sfdm;
  if (name == "generic") return ModelKind::Generic;
  if (name == "h8") return ModelKind::H8;
  if (name == "h8r") return ModelKind::H8r;
  if (name == "h8v") return ModelKind::H8v;
  throw ParameterError("unknown model '" + std::string(name) + "'");
}

ModelSpec ModelSpec::sfdm(const SfdmParams& p) { return {ModelKind::Sfdm, p}; }
ModelSpec ModelSpec::generic(const GenericTOddParams& p) { return {ModelKind::Generic, p}; }

ModelSpec ModelSpec::dirac(ModelKind kind, const Dirac8Params& p) {
  if (kind != ModelKind::H8 && kind != ModelKind::H8r && kind != ModelKind::H8v) {
    throw ParameterError("dirac spec needs h8, h8r or h8v");
  }
  return {kind, p};
}

const SfdmParams& ModelSpec::sfdm_params() const { return get_params<SfdmParams>(*this, "sfdm"); }
const GenericTOddParams& ModelSpec::generic_params() const { return get_params<GenericTOddParams>(*this, "generic"); }
const Dirac8Params& ModelSpec::dirac_params() const { return get_params<Dirac8Params>(*this, "dirac"); }

bool ModelSpec::is_dirac_family() const {
  return kind == ModelKind::H8 || kind == ModelKind::H8r || kind == ModelKind::H8v;
}

void ModelSpec::validate() const {
  switch (kind) {
    case ModelKind::Sfdm: sfdm_params().validate(); return;
    case ModelKind::Generic: generic_params().validate(); return;
    default: break;
  }
  const Dirac8Params& d = dirac_params();
  for (double x : {d.m0, d.m1, d.m2, d.m3, d.p, d.theta_p, d.phi_p}) require_finite(x, "dirac parameter");
  if (d.m0 <= 0.0) throw ParameterError("m0 must be positive");
  if (kind == ModelKind::H8v && (d.m1 != 0.0 || d.m3 != 0.0)) throw ParameterError("h8v preset requires m1 = m3 = 0");
  if (kind == ModelKind::H8r && d.m3 != 0.0) throw ParameterError("h8r preset requires m3 = 0");
}

// ---- Hamiltonians ----

CMatrix real_quaternion(const std::array<double, 4>& b) {
  return b[0] * pauli(0) + kI * (b[1] * pauli(1) + b[2] * pauli(2) + b[3] * pauli(3));
}

CMatrix sfdm_hamiltonian(const SfdmParams& params) {
  params.validate();
  const CMatrix a = params.a0() * pauli(0);
  const CMatrix b = real_quaternion(params.b());
  return block({{a, kI * b}, {kI * adjoint(b), -a}});
}

CMatrix generic_t_odd_hamiltonian(const GenericTOddParams& params) {
  params.validate();
  return block({{params.a, kI * params.b}, {kI * adjoint(params.b), params.d}});
}

CMatrix dirac_mass_block(double m0, double m1, double m2, double m3) {
  const Complex p = m0 + m3, q = m0 - m3;
  const Complex up = Complex(m1, m2), dn = Complex(m1, -m2);
  return {{0.0, 0.0, p, dn}, {0.0, 0.0, up, q}, {p, up, 0.0, 0.0}, {dn, q, 0.0, 0.0}};
}

CMatrix dirac_momentum_weight() { return CMatrix::diagonal({1.0, 1.0, -1.0, -1.0}); }

CMatrix h8_reduced(const Dirac8Params& params, double q) {
  return dirac_mass_block(params.m0, params.m1, params.m2, params.m3) + q * dirac_momentum_weight();
}

std::array<CMatrix, 3> dirac_alphas() {
  const CMatrix w = dirac_momentum_weight();
  return {kron(w, pauli(1)), kron(w, pauli(2)), kron(w, pauli(3))};
}

CMatrix dirac_beta(const Dirac8Params& params) {
  return kron(dirac_mass_block(params.m0, params.m1, params.m2, params.m3), pauli(0));
}

CMatrix h8_hamiltonian(const Dirac8Params& params) {
  const double st = std::sin(params.theta_p);
  const std::array<double, 3> n{st * std::cos(params.phi_p), st * std::sin(params.phi_p), std::cos(params.theta_p)};
  const auto alphas = dirac_alphas();
  CMatrix h = dirac_beta(params);
  for (int i = 0; i < 3; ++i) h += (params.p * n[i]) * alphas[i];
  return h;
}

std::pair<CVector, CVector> helicity_spinors(double theta_p, double phi_p) {
  const double c = std::cos(0.5 * theta_p), s = std::sin(0.5 * theta_p);
  const Complex ph = std::polar(1.0, phi_p);
  return {CVector{c, ph * s}, CVector{-std::conj(ph) * s, c}};
}

CVector lift_to_dirac8(const CVector& reduced, const CVector& helicity_spinor) {
  if (reduced.dim() != 4 || helicity_spinor.dim() != 2) throw ShapeError("lift_to_dirac8 expects 4 and 2 components");
  CVector out(8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 2; ++k) out[2 * i + k] = reduced[i] * helicity_spinor[k];
  }
  return out;
}

// ---- realization ----

Model realize(const ModelSpec& spec) {
  spec.validate();
  if (!spec.is_dirac_family()) {
    const CMatrix h = spec.kind == ModelKind::Sfdm ? sfdm_hamiltonian(spec.sfdm_params())
                                                   : generic_t_odd_hamiltonian(spec.generic_params());
    const SymmetryPair sym = canonical_pair(4);
    return Model{spec, sym, h, h, sym, h, h, false, std::nullopt, std::nullopt};
  }
  const Dirac8Params& d = spec.dirac_params();
  Dirac8Params reflected = d;
  reflected.p = -d.p;
  return Model{spec,
               reduced_dirac_pair(),
               h8_reduced(d, d.p),
               h8_reduced(d, -d.p),
               dirac_pair(),
               h8_hamiltonian(d),
               h8_hamiltonian(reflected),
               d.p != 0.0,
               dirac_alphas(),
               dirac_beta(d)};
}

}  // namespace ptosc
