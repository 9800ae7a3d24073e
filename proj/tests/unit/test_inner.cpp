#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptosc/coperator.hpp"
#include "ptosc/errors.hpp"
#include "ptosc/inner.hpp"
#include "ptosc/models.hpp"

using namespace ptosc;

namespace {

const SfdmParams kSfdm{0.5, 0.3, 0.7, 0.2};

// a^dagger diag(s) b written out by hand.
Complex metric_product(const CMatrix& s, const CVector& a, const CVector& b) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) sum += std::conj(a[i]) * s(i, j) * b[j];
  }
  return sum;
}

}  // namespace

TEST(Inner, DiracProduct) {
  oracle::Rng rng(41);
  CVector v = rng.vector(4);
  v = v / Complex(v.norm());
  EXPECT_NEAR(std::abs(dirac_ip(v, v) - 1.0), 0.0, 1e-15);
  const CVector a = rng.vector(4), b = rng.vector(4);
  EXPECT_LT(std::abs(dirac_ip(a, kI * b) - kI * dirac_ip(a, b)), 1e-14);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  EXPECT_GT(std::abs(dirac_ip(es.pairs[0].ket(), es.pairs[2].ket())), 1e-3);
  EXPECT_THROW(dirac_ip(a, CVector(2)), ShapeError);
}

TEST(Inner, PtProductOnSfdmKets) {
  const SymmetryPair sym = canonical_pair(4);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  const std::vector<CVector> e = es.kets();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double expected = i != j ? 0.0 : (i < 2 ? -1.0 : 1.0);
      EXPECT_LT(std::abs(pt_ip(sym, e[i], e[j]) - expected), 1e-12) << i << "," << j;
      EXPECT_LT(std::abs(metric_product(sym.s(), e[i], e[j]) - expected), 1e-12);
    }
  }
}

TEST(Inner, PtProductFormsAgree) {
  oracle::Rng rng(42);
  for (const SymmetryPair& sym : {canonical_pair(4), canonical_pair(8), dirac_pair(), reduced_dirac_pair()}) {
    EXPECT_LE(sym.defects().pt_forms, 1e-14);
    for (int k = 0; k < 50; ++k) {
      const CVector a = rng.vector(sym.dim()), b = rng.vector(sym.dim());
      const Complex ref = metric_product(sym.s(), a, b);
      EXPECT_LT(std::abs(pt_ip(sym, a, b) - ref), 1e-13);
      EXPECT_LT(std::abs(pt_ip_transposed(sym, a, b) - ref), 1e-13);
    }
  }
}

TEST(Inner, HamiltoniansArePtSelfAdjoint) {
  oracle::Rng rng(43);
  const SymmetryPair sym = canonical_pair(4);
  for (int k = 0; k < 20; ++k) {
    const CMatrix h = k % 2 ? sfdm_hamiltonian(rng.sfdm()) : generic_t_odd_hamiltonian(rng.generic());
    const CVector a = rng.vector(4), b = rng.vector(4);
    const double scale = std::max(1.0, oracle::max_entry(h)) * a.norm() * b.norm();
    EXPECT_LT(std::abs(pt_ip(sym, h * a, b) - pt_ip(sym, a, h * b)), 1e-12 * scale);
  }
  const SymmetryPair rsym = reduced_dirac_pair();
  const CMatrix h8r = h8_reduced({2.0, 0.5, 1.0, 0.0}, 0.0);
  const CVector a = rng.vector(4), b = rng.vector(4);
  EXPECT_LT(std::abs(pt_ip(rsym, h8r * a, b) - pt_ip(rsym, a, h8r * b)), 1e-12 * 10.0 * a.norm() * b.norm());
}

TEST(Inner, MomentumProductOnH8vKets) {
  const SymmetryPair sym = reduced_dirac_pair();
  const EigenSystem es = h8v_reduced_eigensystem(2.0, 1.0, 1.0);
  ASSERT_EQ(es.size(), 4u);
  EXPECT_EQ(es.pairs[2].label, "u^1");
  const MomentumState& u1 = es.pairs[2].state;
  const MomentumState& u2 = es.pairs[3].state;
  const MomentumState& v1 = es.pairs[0].state;
  EXPECT_LT(std::abs(pt_ip_momentum(sym, u1, u1) - 1.0), 1e-12);
  EXPECT_LT(std::abs(pt_ip_momentum(sym, u1, u2)), 1e-12);
  EXPECT_LT(std::abs(pt_ip_momentum(sym, u1, v1)), 1e-12);
  MomentumState shifted = u1;
  shifted.p = 2.0;
  EXPECT_EQ(pt_ip_momentum(sym, u1, shifted), Complex(0.0));
  MomentumState flipped = u1;
  flipped.helicity = -1;
  EXPECT_EQ(pt_ip_momentum(sym, u1, flipped), Complex(0.0));
  // CS form contracts the reflected bra: a(-p)^dagger S b(p)
  EXPECT_LT(std::abs(pt_ip_momentum(sym, u1, u2) - metric_product(sym.s(), u1.reflected(), u2.ket())), 1e-15);
}

TEST(Inner, JsmVersusCs) {
  const SymmetryPair sym = reduced_dirac_pair();
  const JsmCsComparison moving = jsm_cs_comparison(sym, h8v_reduced_eigensystem(2.0, 1.0, 1.0).pairs[2].state);
  EXPECT_EQ(moving.jsm, Complex(0.0));
  EXPECT_LT(std::abs(moving.cs - 1.0), 1e-12);
  EXPECT_FALSE(moving.coincide);
  const JsmCsComparison rest = jsm_cs_comparison(sym, h8v_reduced_eigensystem(2.0, 1.0, 0.0).pairs[2].state);
  EXPECT_TRUE(rest.coincide);
  EXPECT_LT(std::abs(rest.jsm - rest.cs), 1e-14);
  const JsmCsComparison v2 = jsm_cs_comparison(sym, h8v_reduced_eigensystem(2.0, 1.0, 0.5).pairs[1].state);
  EXPECT_EQ(v2.jsm, Complex(0.0));
}

TEST(Inner, PtAdjoint) {
  const SymmetryPair sym = canonical_pair(4);
  const CMatrix hc = sfdm_hamiltonian(kSfdm);
  EXPECT_LT(max_abs_diff(pt_adjoint(sym, hc), hc), 1e-14);
  oracle::Rng rng(44);
  const CMatrix h = block({{rng.hermitian(2), CMatrix(2, 2)}, {CMatrix(2, 2), rng.hermitian(2)}});
  EXPECT_LT(max_abs_diff(pt_adjoint(sym, h), h), 1e-14);
  const CMatrix a = rng.matrix(4);
  EXPECT_LT(max_abs_diff(pt_adjoint(sym, pt_adjoint(sym, a)), a), 1e-14);
  EXPECT_THROW(pt_adjoint(sym, CMatrix::identity(2)), ShapeError);
}

TEST(Inner, PtNormalize) {
  const SymmetryPair sym = canonical_pair(4);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  const NormalizedKet n1 = pt_normalize(sym, 3.0 * es.pairs[0].ket());
  EXPECT_EQ(n1.sign, -1);
  EXPECT_LT(max_abs_diff(n1.ket, es.pairs[0].ket()), 1e-13);
  const NormalizedKet n3 = pt_normalize(sym, es.pairs[2].ket());
  EXPECT_EQ(n3.sign, +1);
  EXPECT_LT(max_abs_diff(n3.ket, es.pairs[2].ket()), 1e-14);
  EXPECT_THROW(pt_normalize(sym, CVector{1.0, 0.0, 1.0, 0.0}), DegenerateNormError);

  const SymmetryPair rsym = reduced_dirac_pair();
  const EigenSystem h8v = h8v_reduced_eigensystem(2.0, 1.0, 0.0);
  const NormalizedState u2 = pt_normalize(rsym, scaled(h8v.pairs[3].state, Complex(0.0, 2.5)));
  EXPECT_EQ(u2.sign, +1);
  EXPECT_LT(std::abs(pt_ip_momentum(rsym, u2.state, u2.state) - 1.0), 1e-12);
}

TEST(Inner, CanonicalPhase) {
  const CVector v{0.0, Complex(0.0, 2.0), 1.0};
  const Complex phase = canonical_phase(v);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-15);
  const Complex lead = phase * v[1];
  EXPECT_NEAR(lead.imag(), 0.0, 1e-15);
  EXPECT_GT(lead.real(), 0.0);
}

TEST(Inner, CptProduct) {
  const SymmetryPair sym = canonical_pair(4);
  const EigenSystem es = sfdm_eigensystem(kSfdm);
  const COperator c = build_C(sym, es);
  const std::vector<CVector> e = es.kets();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_LT(std::abs(cpt_ip(sym, c.matrix, e[i], e[j]) - (i == j ? 1.0 : 0.0)), 1e-12);
    }
  }
  oracle::Rng rng(45);
  for (int k = 0; k < 1000; ++k) {
    const CVector a = rng.vector(4), b = rng.vector(4);
    const Complex aa = cpt_ip(sym, c.matrix, a, a);
    EXPECT_GT(aa.real(), 0.0);
    EXPECT_LT(std::abs(aa.imag()), 1e-12 * aa.real());
    const double scale = a.norm() * b.norm();
    EXPECT_LT(std::abs(cpt_ip(sym, c.matrix, a, b) - std::conj(cpt_ip(sym, c.matrix, b, a))), 1e-12 * scale);
    EXPECT_LT(std::abs(cpt_ip(sym, c.matrix, a, kI * b) - kI * cpt_ip(sym, c.matrix, a, b)), 1e-12 * scale);
  }
}

TEST(Inner, CombineRequiresOneSector) {
  const EigenSystem es = h8v_reduced_eigensystem(2.0, 1.0, 1.0);
  const std::vector<MomentumState> states = es.states();
  const std::vector<Complex> coeffs{1.0, kI};
  const MomentumState mixed = combine(coeffs, std::span(states).first(2));
  EXPECT_LT(max_abs_diff(mixed.ket(), states[0].ket() + kI * states[1].ket()), 1e-15);
  EXPECT_LT(max_abs_diff(mixed.reflected(), states[0].reflected() + kI * states[1].reflected()), 1e-15);
  std::vector<MomentumState> bad{states[0], states[1]};
  bad[1].p = 3.0;
  EXPECT_THROW(combine(coeffs, bad), BasisError);
}
