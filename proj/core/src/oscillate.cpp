#include "ptosc/oscillate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

constexpr double kClamp = 1e-14;

void require_four(const EigenSystem& eigsys) {
  if (eigsys.size() != 4) throw BasisError("flavour construction needs exactly four eigenkets");
}

void require_real(const EigenSystem& eigsys) {
  for (const EigenPair& p : eigsys.pairs) {
    if (p.value.imag() != 0.0) throw PtBrokenError("evolution needs a real spectrum", eigsys.values());
  }
}

double clamp_probability(double x) { return x < kClamp ? 0.0 : x; }

}  // namespace

FlavourBasis standard_flavour_basis(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c,
                                    double tol) {
  require_four(eigsys);
  const auto states = eigsys.states();
  double defect = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex g = cpt_ip_momentum(sym, c.matrix, states[i], states[j]);
      defect = std::max(defect, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  if (defect > tol) throw BasisError("eigenkets are not CPT-orthonormal (defect " + std::to_string(defect) + ")");

  const double h = 1.0 / std::sqrt(2.0);
  // Rows: flavour index; columns: eigenket index.
  const CMatrix f_of_e{{h, 0.0, h, 0.0}, {0.0, h, 0.0, h}, {h, 0.0, -h, 0.0}, {0.0, h, 0.0, -h}};
  FlavourBasis basis;
  for (std::size_t i = 0; i < 4; ++i) {
    const CVector row = f_of_e.row(i);
    basis.kets.push_back(combine(row.entries(), states));
  }
  // The map is real orthogonal, so e = f_of_e^T f.
  basis.mixing = transpose(f_of_e);
  return basis;
}

std::vector<Complex> cpt_coefficients(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c,
                                      const MomentumState& v) {
  std::vector<Complex> coeffs;
  for (const EigenPair& p : eigsys.pairs) coeffs.push_back(cpt_ip_momentum(sym, c.matrix, p.state, v));
  return coeffs;
}

MomentumState evolve(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c, const MomentumState& v,
                     double t) {
  require_real(eigsys);
  std::vector<Complex> coeffs = cpt_coefficients(sym, eigsys, c, v);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] *= std::polar(1.0, -eigsys.pairs[j].value.real() * t);
  return combine(coeffs, eigsys.states());
}

CVector evolve(const SymmetryPair& sym, const EigenSystem& eigsys, const COperator& c, const CVector& v, double t) {
  if (eigsys.momentum_dependent()) throw BasisError("evolve: plain vectors need a momentum-free eigensystem");
  return evolve(sym, eigsys, c, MomentumState::constant(v), t).ket();
}

TransitionTable transition_table(const SymmetryPair& sym, const FlavourBasis& basis, const EigenSystem& eigsys,
                                 const COperator& c, const std::vector<double>& t_grid) {
  if (basis.kets.size() != 4) throw BasisError("transition_table needs four flavour kets");
  TransitionTable table;
  table.t_grid = t_grid;
  table.probs.reserve(t_grid.size());
  for (double t : t_grid) {
    ProbabilityMatrix pm{};
    for (std::size_t i = 0; i < 4; ++i) {
      const MomentumState fi_t = evolve(sym, eigsys, c, basis.kets[i], t);
      for (std::size_t j = 0; j < 4; ++j) {
        pm[i][j] = clamp_probability(std::norm(cpt_ip_momentum(sym, c.matrix, basis.kets[j], fi_t)));
      }
    }
    table.probs.push_back(pm);
  }
  return table;
}

ProbabilityMatrix analytic_probabilities(const EigenSystem& eigsys, double t) {
  require_four(eigsys);
  const double w13 = 0.5 * (eigsys.pairs[2].value.real() - eigsys.pairs[0].value.real()) * t;
  const double w24 = 0.5 * (eigsys.pairs[3].value.real() - eigsys.pairs[1].value.real()) * t;
  const double c13 = std::pow(std::cos(w13), 2), s13 = std::pow(std::sin(w13), 2);
  const double c24 = std::pow(std::cos(w24), 2), s24 = std::pow(std::sin(w24), 2);
  return {{{c13, 0.0, s13, 0.0}, {0.0, c24, 0.0, s24}, {s13, 0.0, c13, 0.0}, {0.0, s24, 0.0, c24}}};
}

double golden_deviation(const TransitionTable& table, const EigenSystem& eigsys) {
  double dev = 0.0;
  for (std::size_t k = 0; k < table.t_grid.size(); ++k) {
    const ProbabilityMatrix expected = analytic_probabilities(eigsys, table.t_grid[k]);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) dev = std::max(dev, std::abs(table.probs[k][i][j] - expected[i][j]));
    }
  }
  return dev;
}

double max_row_sum_defect(const TransitionTable& table) {
  double dev = 0.0;
  for (const ProbabilityMatrix& pm : table.probs) {
    for (const auto& row : pm) {
      double s = 0.0;
      for (double x : row) s += x;
      dev = std::max(dev, std::abs(s - 1.0));
    }
  }
  return dev;
}

std::vector<double> uniform_grid(double start, double stop, std::size_t points) {
  if (points == 0) throw ParameterError("time grid needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ParameterError("time grid bounds must be finite");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = start;
    return grid;
  }
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = start + step * static_cast<double>(k);
  grid.back() = stop;
  return grid;
}

std::vector<double> default_time_grid(const EigenSystem& eigsys, std::size_t points) {
  double scale = 1.0;
  for (const EigenPair& p : eigsys.pairs) scale = std::max(scale, std::abs(p.value));
  double gap = 0.0;
  for (std::size_t i = 0; i < eigsys.size(); ++i) {
    for (std::size_t j = i + 1; j < eigsys.size(); ++j) {
      const double d = std::abs(eigsys.pairs[i].value - eigsys.pairs[j].value);
      if (d > 1e-8 * scale && (gap == 0.0 || d < gap)) gap = d;
    }
  }
  const double period = gap == 0.0 ? 2.0 * std::numbers::pi : 2.0 * std::numbers::pi / gap;
  return uniform_grid(0.0, period, points);
}

CMatrix naive_flavour_B(const EigenSystem& eigsys, const COperator& /*c*/) {
  require_four(eigsys);
  const std::vector<CVector> kets = eigsys.kets();
  const CMatrix e = CMatrix::from_columns(kets);
  return e * adjoint(e);
}

std::string to_csv(const TransitionTable& table) {
  std::string out = "t";
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) out += ",P" + std::to_string(i) + std::to_string(j);
  }
  out += '\n';
  char buf[32];
  for (std::size_t k = 0; k < table.t_grid.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.12g", table.t_grid[k]);
    out += buf;
    for (const auto& row : table.probs[k]) {
      for (double x : row) {
        std::snprintf(buf, sizeof buf, ",%.12g", x);
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace ptosc
