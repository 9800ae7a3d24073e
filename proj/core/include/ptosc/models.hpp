#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ptosc/inner.hpp"
#include "ptosc/matcore.hpp"
#include "ptosc/symmetry.hpp"

namespace ptosc {

// Hyperbolic parametrization of the det = 1 four-dimensional family.
struct SfdmParams {
  double chi = 0.0;
  double psi = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  double a0() const;
  std::array<double, 4> b() const;  // b0..b3
  void validate() const;
};

struct GenericTOddParams {
  CMatrix a = CMatrix::identity(2);
  CMatrix d = -CMatrix::identity(2);
  CMatrix b = CMatrix(2, 2);

  // A = a0 sigma0, D = d0 sigma0, B = b0 sigma0 + i b_k sigma_k.
  static GenericTOddParams from_scalars(double a0, double d0, const std::array<double, 4>& b);
  void validate(double tol = 1e-12) const;
};

struct Dirac8Params {
  double m0 = 1.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double p = 0.0;
  double theta_p = 0.0;
  double phi_p = 0.0;

  double effective_mass() const;  // sqrt(m0^2 - m2^2); requires m0 > |m2|
  double energy() const;          // sqrt(p^2 + m_eff^2)
};

enum class ModelKind { Sfdm, Generic, H8, H8r, H8v };
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::Sfdm;
  std::variant<SfdmParams, GenericTOddParams, Dirac8Params> params = SfdmParams{};

  static ModelSpec sfdm(const SfdmParams& p);
  static ModelSpec generic(const GenericTOddParams& p);
  static ModelSpec dirac(ModelKind kind, const Dirac8Params& p);

  const SfdmParams& sfdm_params() const;
  const GenericTOddParams& generic_params() const;
  const Dirac8Params& dirac_params() const;
  bool is_dirac_family() const;
  // Checks the preset constraints (h8v: m1 = m3 = 0, h8r: m3 = 0) and basic ranges.
  void validate() const;
};

// ---- Hamiltonians ----

CMatrix real_quaternion(const std::array<double, 4>& b);
CMatrix sfdm_hamiltonian(const SfdmParams& params);
CMatrix generic_t_odd_hamiltonian(const GenericTOddParams& params);

// 4x4 mass block A and the D = diag(1, 1, -1, -1) momentum weight.
CMatrix dirac_mass_block(double m0, double m1, double m2, double m3);
CMatrix dirac_momentum_weight();
// A + q D: the Hamiltonian on one helicity sector with signed momentum q.
CMatrix h8_reduced(const Dirac8Params& params, double q);
CMatrix h8_hamiltonian(const Dirac8Params& params);
std::array<CMatrix, 3> dirac_alphas();
CMatrix dirac_beta(const Dirac8Params& params);

// xi+ and xi- with (sigma . n) xi(+-) = +-xi(+-).
std::pair<CVector, CVector> helicity_spinors(double theta_p, double phi_p);
CVector lift_to_dirac8(const CVector& reduced, const CVector& helicity_spinor);

// ---- eigensystems ----

struct EigenPair {
  Complex value;
  MomentumState state;
  int pt_sign = +1;
  std::string label;

  CVector ket() const { return state.ket(); }
};

struct EigenSystem {
  std::vector<EigenPair> pairs;
  std::vector<std::vector<std::size_t>> clusters;
  double momentum = 0.0;

  std::size_t size() const noexcept { return pairs.size(); }
  std::vector<Complex> values() const;
  std::vector<CVector> kets() const;
  std::vector<MomentumState> states() const;
  // Kets evaluated at -p.
  std::vector<CVector> reflected_kets() const;
  bool momentum_dependent() const noexcept { return momentum != 0.0; }
};

// Sorts ascending by real part (stable in label order) and rebuilds clusters.
void finalize_eigensystem(EigenSystem& es, double cluster_threshold = 1e-8);

EigenSystem sfdm_eigensystem(const SfdmParams& params);
EigenSystem h8v_p0_eigensystem(double m0, double m2);
EigenSystem h8v_hermitian_limit_eigensystem(double m0);
EigenSystem h8r_p0_eigensystem(double m0, double m1, double m2);
EigenSystem h8v_reduced_eigensystem(double m0, double m2, double p);
// PT-normalized eigensystem from the oracle; kets within each cluster are
// rotated to diagonalize the PT Gram matrix.
EigenSystem numeric_eigensystem(const SymmetryPair& sym, const CMatrix& h, double tol = kDefaultTol);

// ---- realized models ----

struct Model {
  ModelSpec spec;
  SymmetryPair sym;  // working basis (4D)
  CMatrix h;         // working Hamiltonian at +p
  CMatrix h_reflected;
  SymmetryPair full_sym;  // 8D Dirac pair for the H8 family, else equal to sym
  CMatrix full_h;
  CMatrix full_h_reflected;
  bool momentum_dependent = false;
  std::optional<std::array<CMatrix, 3>> alphas;
  std::optional<CMatrix> beta;
};

Model realize(const ModelSpec& spec);
// Throws PtBrokenError in the broken phase and UnsupportedError where no
// eigenbasis is available (H8 and H8r at p != 0).
EigenSystem model_eigensystem(const ModelSpec& spec, double tol = kDefaultTol);
// Throws PtBrokenError when the working Hamiltonian has non-real eigenvalues.
void require_real_spectrum(const CMatrix& h, double tol = 1e-8);

}  // namespace ptosc
