#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace oracle {

namespace {

int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

CMatrix identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

}  // namespace

Complex leibniz_det(const CMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do {
    Complex term = static_cast<double>(permutation_sign(perm));
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

CMatrix cofactor_inverse(const CMatrix& a) {
  const std::size_t n = a.rows();
  const Complex d = leibniz_det(a);
  if (n == 1) return CMatrix{{1.0 / d}};
  CMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      inv(j, i) = sign * leibniz_det(minor) / d;
    }
  }
  return inv;
}

CMatrix naive_mul(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

double max_entry(const CMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

std::vector<Complex> characteristic_polynomial(const CMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Complex> coeffs(n + 1);
  coeffs[0] = 1.0;
  CMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix next = naive_mul(a, m);
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[k - 1];
    m = next;
    const CMatrix am = naive_mul(a, m);
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    coeffs[k] = -tr / static_cast<double>(k);
  }
  return coeffs;
}

std::vector<Complex> polynomial_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> coeffs{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= r * coeffs[i];
    }
    coeffs = next;
  }
  return coeffs;
}

CMatrix expm(const CMatrix& a) {
  const std::size_t n = a.rows();
  const double norm = max_entry(a) * static_cast<double>(n);
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  CMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = a(i, j) * scale;
  }
  CMatrix result = identity(n);
  CMatrix term = identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = naive_mul(term, scaled);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) term(i, j) /= static_cast<double>(k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) result(i, j) += term(i, j);
    }
  }
  for (int s = 0; s < squarings; ++s) result = naive_mul(result, result);
  return result;
}

double spectral_norm(const CMatrix& a) {
  const std::size_t n = a.cols();
  CMatrix ah(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) ah(j, i) = std::conj(a(i, j));
  }
  const CMatrix g = naive_mul(ah, a);
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i));
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    std::vector<Complex> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) w[i] += g(i, j) * v[j];
    }
    double len = 0.0;
    for (const Complex& z : w) len += std::norm(z);
    len = std::sqrt(len);
    if (len == 0.0) return 0.0;
    for (Complex& z : w) z /= len;
    const double prev = lambda;
    lambda = len;
    v = w;
    if (it > 10 && std::abs(lambda - prev) <= 1e-15 * lambda) break;
  }
  return std::sqrt(lambda);
}

std::array<std::array<double, 4>, 4> paired_pattern(const std::array<double, 4>& lambda, double t) {
  std::array<std::array<double, 4>, 4> p{};
  const double c1 = std::cos(0.5 * (lambda[2] - lambda[0]) * t);
  const double c2 = std::cos(0.5 * (lambda[3] - lambda[1]) * t);
  const double s1 = 1.0 - c1 * c1;
  const double s2 = 1.0 - c2 * c2;
  p[0][0] = p[2][2] = c1 * c1;
  p[0][2] = p[2][0] = s1;
  p[1][1] = p[3][3] = c2 * c2;
  p[1][3] = p[3][1] = s2;
  return p;
}

CVector Rng::vector(std::size_t n) {
  CVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = complex_normal();
  return v;
}

CMatrix Rng::matrix(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = complex_normal();
  }
  return m;
}

CMatrix Rng::hermitian(std::size_t n) {
  CMatrix m = matrix(n);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  }
  return h;
}

ptosc::SfdmParams Rng::sfdm() {
  return {uniform(-2.0, 2.0), uniform(0.0, std::numbers::pi), uniform(0.0, std::numbers::pi),
          uniform(0.0, 2.0 * std::numbers::pi)};
}

ptosc::GenericTOddParams Rng::generic() {
  return ptosc::GenericTOddParams::from_scalars(uniform(-2.0, 2.0), uniform(-2.0, 2.0),
                                                {normal(), normal(), normal(), normal()});
}

}  // namespace oracle
