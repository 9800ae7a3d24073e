#include "ptosc/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 100;
constexpr int kQrIterationsPerEigenvalue = 60;

double off_diagonal_sq(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return s;
}

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Unitary similarity to upper Hessenberg form via Householder reflections.
void reduce_to_hessenberg(CMatrix& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    std::vector<Complex> v(len);
    double xnorm = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = h(k + 1 + i, k);
      xnorm += std::norm(v[i]);
    }
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = v[0];
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    v[0] += phase * xnorm;
    double vnorm = 0.0;
    for (const Complex& z : v) vnorm += std::norm(z);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (Complex& z : v) z /= vnorm;

    // H <- (I - 2 v v^dagger) H
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * h(k + 1 + i, c);
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, c) -= 2.0 * v[i] * s;
    }
    // H <- H (I - 2 v v^dagger)
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += h(r, k + 1 + i) * v[i];
      for (std::size_t i = 0; i < len; ++i) h(r, k + 1 + i) -= 2.0 * s * std::conj(v[i]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  Complex s;
};

// G = [[c, s], [-conj(s), c]] maps (x, y) to (r, 0).
Givens make_givens(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double r = std::hypot(ax, std::abs(y));
  if (r == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, std::conj(y) / std::abs(y)};
  return {ax / r, (x / ax) * std::conj(y) / r};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex mu1 = mid + disc;
  const Complex mu2 = mid - disc;
  return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

std::vector<Complex> hessenberg_qr(CMatrix h) {
  const std::size_t n = h.rows();
  const double scale = std::max(frobenius_norm(h), std::numeric_limits<double>::min());
  std::vector<Complex> values(n);
  if (n == 1) {
    values[0] = h(0, 0);
    return values;
  }
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  const int cap = kQrIterationsPerEigenvalue * static_cast<int>(n);
  std::vector<Givens> rots(n);

  while (true) {
    std::size_t lo = hi;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = scale;
      if (std::abs(h(lo, lo - 1)) <= kEps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      values[hi] = h(hi, hi);
      if (hi == 0) break;
      --hi;
      iter = 0;
      continue;
    }
    if (++total > cap) {
      throw NumericalError("eigenvalues: shifted QR did not converge", std::abs(h(hi, hi - 1)));
    }
    ++iter;
    Complex mu;
    if (iter % 11 == 0) {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rots[k] = g;
      for (std::size_t c = k; c <= hi; ++c) {
        const Complex u = h(k, c);
        const Complex v = h(k + 1, c);
        h(k, c) = g.c * u + g.s * v;
        h(k + 1, c) = -std::conj(g.s) * u + g.c * v;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rots[k];
      const std::size_t last = std::min(k + 1, hi);
      for (std::size_t r = lo; r <= last; ++r) {
        const Complex u = h(r, k);
        const Complex v = h(r, k + 1);
        h(r, k) = u * g.c + v * std::conj(g.s);
        h(r, k + 1) = -u * g.s + v * g.c;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return values;
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& h) {
  if (!h.is_square()) throw ShapeError("hermitian_eigen: non-square");
  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);
  const double total = frobenius_norm(a);
  if (total > 0.0) {
    const double target = std::pow(kEps * total, 2) * 1e-2;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && off_diagonal_sq(a) > target; ++sweep) {
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = std::abs(a(p, q));
          if (apq == 0.0) continue;
          const Complex e = std::conj(a(p, q)) / apq;
          const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // U = I except U_pp = c, U_pq = s, U_qp = -s e, U_qq = c e.
          const Complex upp = c, upq = s, uqp = -s * e, uqq = c * e;
          for (std::size_t r = 0; r < n; ++r) {  // A <- A U
            const Complex x = a(r, p), y = a(r, q);
            a(r, p) = x * upp + y * uqp;
            a(r, q) = x * upq + y * uqq;
          }
          for (std::size_t cidx = 0; cidx < n; ++cidx) {  // A <- U^dagger A
            const Complex x = a(p, cidx), y = a(q, cidx);
            a(p, cidx) = std::conj(upp) * x + std::conj(uqp) * y;
            a(q, cidx) = std::conj(upq) * x + std::conj(uqq) * y;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (std::size_t r = 0; r < n; ++r) {  // V <- V U
            const Complex x = v(r, p), y = v(r, q);
            v(r, p) = x * upp + y * uqp;
            v(r, q) = x * upq + y * uqq;
          }
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out;
  for (std::size_t i : order) {
    out.values.push_back(a(i, i).real());
    out.vectors.push_back(v.column(i));
  }
  return out;
}

std::vector<double> singular_values(const CMatrix& a) {
  const HermitianEigen he = hermitian_eigen(adjoint(a) * a);
  std::vector<double> sv;
  sv.reserve(he.values.size());
  for (auto it = he.values.rbegin(); it != he.values.rend(); ++it) sv.push_back(std::sqrt(std::max(0.0, *it)));
  return sv;
}

double operator_norm(const CMatrix& a) {
  const double f = frobenius_norm(a);
  if (f == 0.0) return 0.0;
  // Rescale so tiny defects keep full relative precision inside the Gram matrix.
  return f * singular_values(a / f).front();
}

std::vector<Complex> eigenvalues(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("eigenvalues: non-square");
  CMatrix h = a;
  reduce_to_hessenberg(h);
  std::vector<Complex> values = hessenberg_qr(std::move(h));
  std::sort(values.begin(), values.end(), complex_less);
  return values;
}

std::vector<std::vector<std::size_t>> cluster_indices(std::span<const Complex> values, double threshold) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) <= threshold) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (slot[root] == n) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[slot[root]].push_back(i);
  }
  return clusters;
}

EigenDecomposition eig_oracle(const CMatrix& a, double tol) {
  if (!a.is_square()) throw ShapeError("eig_oracle: non-square");
  const std::size_t n = a.rows();
  const double anorm = operator_norm(a);
  EigenDecomposition out;
  out.values = eigenvalues(a);
  out.clusters = cluster_indices(out.values, 1e-8 * anorm);
  out.vectors.resize(n);

  const double limit = tol * std::max(anorm, 1.0);
  for (const auto& cluster : out.clusters) {
    Complex mu = 0.0;
    for (std::size_t i : cluster) mu += out.values[i];
    mu /= static_cast<double>(cluster.size());
    const CMatrix shifted = a - mu * CMatrix::identity(n);
    const HermitianEigen he = hermitian_eigen(adjoint(shifted) * shifted);
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      const CVector& v = he.vectors[k];
      const double r = (a * v - mu * v).norm();
      out.residual = std::max(out.residual, r);
      out.vectors[cluster[k]] = v;
    }
  }
  if (out.residual > limit) {
    throw NumericalError("eig_oracle: eigenvector residual above tolerance", out.residual);
  }
  return out;
}

CMatrix orthogonal_projector(std::span<const CVector> vectors) {
  const CMatrix v = CMatrix::from_columns(vectors);
  return v * inverse(adjoint(v) * v) * adjoint(v);
}

}  // namespace ptosc
