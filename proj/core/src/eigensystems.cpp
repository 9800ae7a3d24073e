#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ptosc/eigen.hpp"
#include "ptosc/errors.hpp"
#include "ptosc/models.hpp"

namespace ptosc {

namespace {

EigenPair constant_pair(Complex value, const CVector& ket, int sign, std::string label) {
  return {value, MomentumState::constant(ket), sign, std::move(label)};
}

// PT-normalizes each ket and records the sign.
EigenSystem normalized_system(const SymmetryPair& sym, std::vector<std::pair<double, CVector>> raw,
                              const std::vector<std::string>& labels) {
  EigenSystem es;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const NormalizedKet nk = pt_normalize(sym, raw[i].second);
    es.pairs.push_back(constant_pair(raw[i].first, nk.ket, nk.sign, labels[i]));
  }
  finalize_eigensystem(es);
  return es;
}

PtBrokenError broken(const std::string& where, const CMatrix& h) {
  return PtBrokenError(where + ": broken PT phase (m0 <= |m2|)", eigenvalues(h));
}

}  // namespace

std::vector<Complex> EigenSystem::values() const {
  std::vector<Complex> out;
  for (const EigenPair& p : pairs) out.push_back(p.value);
  return out;
}

std::vector<CVector> EigenSystem::kets() const {
  std::vector<CVector> out;
  for (const EigenPair& p : pairs) out.push_back(p.ket());
  return out;
}

std::vector<MomentumState> EigenSystem::states() const {
  std::vector<MomentumState> out;
  for (const EigenPair& p : pairs) out.push_back(p.state);
  return out;
}

std::vector<CVector> EigenSystem::reflected_kets() const {
  std::vector<CVector> out;
  for (const EigenPair& p : pairs) out.push_back(p.state.reflected());
  return out;
}

void finalize_eigensystem(EigenSystem& es, double cluster_threshold) {
  std::stable_sort(es.pairs.begin(), es.pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) { return a.value.real() < b.value.real(); });
  double scale = 1.0;
  for (const EigenPair& p : es.pairs) scale = std::max(scale, std::abs(p.value));
  const std::vector<Complex> v = es.values();
  es.clusters = cluster_indices(v, cluster_threshold * scale);
}

void require_real_spectrum(const CMatrix& h, double tol) {
  const std::vector<Complex> ev = eigenvalues(h);
  const double scale = std::max(1.0, operator_norm(h));
  for (const Complex& z : ev) {
    if (std::abs(z.imag()) > tol * scale) throw PtBrokenError("spectrum is not real", ev);
  }
}

EigenSystem sfdm_eigensystem(const SfdmParams& params) {
  params.validate();
  const SymmetryPair sym = canonical_pair(4);
  if (params.chi == 0.0) {
    return normalized_system(sym,
                             {{-1.0, CVector::basis(4, 3)},
                              {-1.0, CVector::basis(4, 2)},
                              {1.0, CVector::basis(4, 0)},
                              {1.0, CVector::basis(4, 1)}},
                             {"e1", "e2", "e3", "e4"});
  }
  const double sh = std::sinh(0.5 * params.chi), ch = std::cosh(0.5 * params.chi);
  const double cp = std::cos(params.psi), sp = std::sin(params.psi);
  const double ct = std::cos(params.theta), st = std::sin(params.theta);
  const Complex em = std::polar(1.0, -params.phi), ep = std::polar(1.0, params.phi);
  const Complex upper = -kI * (cp - kI * sp * ct);  // -i(cos psi - i sin psi cos theta)
  const Complex lower = -kI * cp + sp * ct;         // (-i cos psi + sin psi cos theta)
  // Eigenvalue -1 for e1, e2 and +1 for e3, e4.
  const CVector e1{st * em * sp * sh, sh * upper, 0.0, ch};
  const CVector e2{sh * lower, st * ep * sp * sh, ch, 0.0};
  const CVector e3{ch * st * sp * em, ch * upper, 0.0, sh};
  const CVector e4{ch * lower, ch * st * sp * ep, sh, 0.0};
  return normalized_system(sym, {{-1.0, e1}, {-1.0, e2}, {1.0, e3}, {1.0, e4}}, {"e1", "e2", "e3", "e4"});
}

EigenSystem h8v_p0_eigensystem(double m0, double m2) {
  Dirac8Params d{m0, 0.0, m2, 0.0};
  if (m0 <= 0.0) throw ParameterError("m0 must be positive");
  if (std::abs(m2) >= m0) throw broken("h8v_p0_eigensystem", h8_reduced(d, 0.0));
  if (m2 == 0.0) {
    throw ParameterError("h8v_p0_eigensystem: m2 = 0 makes the u2/v2 combination singular; use the Hermitian limit");
  }
  const double r = d.effective_mass();
  const CVector u1{-kI * m2 / r, m0 / r, 0.0, 1.0};
  const CVector u2p{m0 / r, kI * m2 / r, 1.0, 0.0};
  const CVector v1{kI * m2 / r, -m0 / r, 0.0, 1.0};
  const CVector v2p{-m0 / r, -kI * m2 / r, 1.0, 0.0};
  const Complex mix = kI * m0 / m2;
  return normalized_system(reduced_dirac_pair(),
                           {{-r, v1}, {-r, v1 + mix * v2p}, {r, u1}, {r, u1 + mix * u2p}},
                           {"v1", "v2", "u1", "u2"});
}

EigenSystem h8v_hermitian_limit_eigensystem(double m0) {
  if (m0 <= 0.0) throw ParameterError("m0 must be positive");
  return normalized_system(reduced_dirac_pair(),
                           {{-m0, CVector{0.0, -1.0, 0.0, 1.0}},
                            {-m0, CVector{-1.0, 0.0, 1.0, 0.0}},
                            {m0, CVector{0.0, 1.0, 0.0, 1.0}},
                            {m0, CVector{1.0, 0.0, 1.0, 0.0}}},
                           {"v1", "v2", "u1", "u2"});
}

EigenSystem h8r_p0_eigensystem(double m0, double m1, double m2) {
  Dirac8Params d{m0, m1, m2, 0.0};
  if (m0 <= 0.0) throw ParameterError("m0 must be positive");
  if (std::abs(m2) >= m0) throw broken("h8r_p0_eigensystem", h8_reduced(d, 0.0));
  const double r = d.effective_mass();
  const Complex a = Complex(r, m2) / m0;
  const Complex ab = std::conj(a);
  const double n = 1.0 / (2.0 * std::pow(1.0 - m2 * m2 / (m0 * m0), 0.25));
  const CVector vt1 = n * CVector{-1.0, -a, a, 1.0};
  const CVector vt2 = n * CVector{1.0, -ab, -ab, 1.0};
  const CVector ut1 = n * CVector{-1.0, ab, -ab, 1.0};
  const CVector ut2 = n * CVector{1.0, a, a, 1.0};
  return normalized_system(reduced_dirac_pair(),
                           {{-m1 - r, vt1}, {m1 - r, vt2}, {r - m1, ut1}, {m1 + r, ut2}},
                           {"v~1", "v~2", "u~1", "u~2"});
}

EigenSystem h8v_reduced_eigensystem(double m0, double m2, double p) {
  Dirac8Params d{m0, 0.0, m2, 0.0, p};
  if (m0 <= 0.0) throw ParameterError("m0 must be positive");
  if (std::abs(m2) >= m0) throw broken("h8v_reduced_eigensystem", h8_reduced(d, p));
  const double meff = d.effective_mass();
  const double eps_p = d.energy();
  auto energy = [meff](double q) { return std::sqrt(q * q + meff * meff); };
  auto norm = [m0, energy](double q) { return 1.0 / std::sqrt(2.0 * m0 * energy(q)); };

  const std::vector<std::function<CVector(double)>> families{
      [=](double q) {
        const double e = energy(q);
        return norm(q) * CVector{kI * m2 * (e - q) / meff, m0 * (q - e) / meff, 0.0, meff};
      },
      [=](double q) {
        const double e = energy(q);
        return norm(q) * CVector{kI * (q - e), 0.0, kI * m0, m2};
      },
      [=](double q) {
        const double e = energy(q);
        return norm(q) * CVector{-kI * m2 * (e + q) / meff, m0 * (q + e) / meff, 0.0, meff};
      },
      [=](double q) {
        const double e = energy(q);
        return norm(q) * CVector{kI * (q + e), 0.0, kI * m0, m2};
      }};
  const std::array<double, 4> values{-eps_p, -eps_p, eps_p, eps_p};
  const std::array<const char*, 4> labels{"v^1", "v^2", "u^1", "u^2"};

  const SymmetryPair sym = reduced_dirac_pair();
  EigenSystem es;
  es.momentum = p;
  for (std::size_t i = 0; i < 4; ++i) {
    const NormalizedState ns = pt_normalize(sym, MomentumState{families[i], p, +1});
    es.pairs.push_back({values[i], ns.state, ns.sign, labels[i]});
  }
  finalize_eigensystem(es);
  return es;
}

EigenSystem numeric_eigensystem(const SymmetryPair& sym, const CMatrix& h, double tol) {
  if (h.rows() != sym.dim()) throw ShapeError("numeric_eigensystem: dimension mismatch");
  require_real_spectrum(h);
  const EigenDecomposition dec = eig_oracle(h, tol);
  std::vector<std::pair<double, CVector>> raw;
  for (const auto& cluster : dec.clusters) {
    double mu = 0.0;
    std::vector<CVector> basis;
    for (std::size_t i : cluster) {
      mu += dec.values[i].real();
      basis.push_back(dec.vectors[i]);
    }
    mu /= static_cast<double>(cluster.size());
    const CMatrix v = CMatrix::from_columns(basis);
    const HermitianEigen g = hermitian_eigen(adjoint(v) * sym.s() * v);
    for (std::size_t k = 0; k < g.values.size(); ++k) {
      if (std::abs(g.values[k]) <= tol) throw DegenerateNormError("numeric_eigensystem: null PT norm in eigenspace");
      raw.emplace_back(mu, v * g.vectors[k]);
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < raw.size(); ++i) labels.push_back("e" + std::to_string(i + 1));
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return normalized_system(sym, std::move(raw), labels);
}

EigenSystem model_eigensystem(const ModelSpec& spec, double tol) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::Sfdm: return sfdm_eigensystem(spec.sfdm_params());
    case ModelKind::Generic: return numeric_eigensystem(canonical_pair(4), generic_t_odd_hamiltonian(spec.generic_params()), tol);
    default: break;
  }
  const Dirac8Params& d = spec.dirac_params();
  if (std::abs(d.m2) >= d.m0) throw broken(std::string(to_string(spec.kind)), h8_reduced(d, d.p));
  switch (spec.kind) {
    case ModelKind::H8v:
      if (d.p != 0.0) return h8v_reduced_eigensystem(d.m0, d.m2, d.p);
      return d.m2 == 0.0 ? h8v_hermitian_limit_eigensystem(d.m0) : h8v_p0_eigensystem(d.m0, d.m2);
    case ModelKind::H8r:
      if (d.p != 0.0) throw UnsupportedError("h8r: no closed-form momentum family at p != 0");
      return h8r_p0_eigensystem(d.m0, d.m1, d.m2);
    default:
      if (d.p != 0.0) throw UnsupportedError("h8: no closed-form momentum family at p != 0");
      return numeric_eigensystem(reduced_dirac_pair(), h8_reduced(d, 0.0), tol);
  }
}

}  // namespace ptosc
