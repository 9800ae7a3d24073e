#include "ptosc/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptosc/errors.hpp"

namespace ptosc {

namespace {

void check_dim(std::size_t n, const char* what) {
  if (n == 0 || n > kMaxDim) {
    throw ShapeError(std::string(what) + " dimension " + std::to_string(n) + " outside [1, 8]");
  }
}

void check_finite(std::span<const Complex> values) {
  for (const Complex& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParameterError("non-finite complex entry");
    }
  }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch");
  }
}

void require_same_dim(const CVector& a, const CVector& b, const char* op) {
  if (a.dim() != b.dim()) throw ShapeError(std::string(op) + ": dimension mismatch");
}

}  // namespace

Complex checked_complex(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParameterError("non-finite complex value");
  return {re, im};
}

// ---- CVector ----

CVector::CVector(std::size_t dim) : data_(dim) { check_dim(dim, "vector"); }

CVector::CVector(std::vector<Complex> entries) : data_(std::move(entries)) {
  check_dim(data_.size(), "vector");
  check_finite(data_);
}

CVector::CVector(std::initializer_list<Complex> entries) : CVector(std::vector<Complex>(entries)) {}

CVector CVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw ShapeError("basis index out of range");
  CVector v(dim);
  v.data_[k] = 1.0;
  return v;
}

double CVector::norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

CVector& CVector::operator+=(const CVector& other) {
  require_same_dim(*this, other, "vector +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& other) {
  require_same_dim(*this, other, "vector -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CVector& CVector::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator-(CVector a) { return a *= -1.0; }
CVector operator*(Complex s, CVector v) { return v *= s; }
CVector operator*(CVector v, Complex s) { return v *= s; }
CVector operator/(CVector v, Complex s) { return v *= 1.0 / s; }

CVector conj(const CVector& v) {
  CVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
  return out;
}

Complex vdot(const CVector& a, const CVector& b) {
  require_same_dim(a, b, "vdot");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Complex bilinear(const CVector& a, const CVector& b) {
  require_same_dim(a, b, "bilinear");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---- CMatrix ----

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  check_dim(rows, "row");
  check_dim(cols, "column");
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dim(rows, "row");
  check_dim(cols, "column");
  if (data_.size() != rows * cols) throw ShapeError("entry count does not match rows*cols");
  check_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  check_dim(rows_, "row");
  check_dim(cols_, "column");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  check_finite(m.data_);
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<Complex> values) {
  return diagonal(std::span<const Complex>(values.begin(), values.size()));
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) throw ShapeError("from_columns: no columns");
  CMatrix m(columns[0].dim(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].dim() != m.rows_) throw ShapeError("from_columns: ragged columns");
    for (std::size_t r = 0; r < m.rows_; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

CMatrix CMatrix::outer(const CVector& a, const CVector& b) {
  CMatrix m(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  if (c >= cols_) throw ShapeError("column index out of range");
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CVector CMatrix::row(std::size_t r) const {
  if (r >= rows_) throw ShapeError("row index out of range");
  CVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "matrix +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "matrix -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("mat_mul: inner dimensions differ");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CVector mat_vec(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim()) throw ShapeError("mat_vec: dimension mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mat_mul(a, b); }
CVector operator*(const CMatrix& a, const CVector& v) { return mat_vec(a, v); }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
CMatrix operator/(CMatrix a, Complex s) { return a *= 1.0 / s; }

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  }
  return out;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  }
  return out;
}

CMatrix conj(const CMatrix& a) {
  CMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = std::conj(a(r, c));
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) throw ShapeError("kron: result exceeds 8x8");
  CMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

CMatrix block(std::initializer_list<std::initializer_list<CMatrix>> blocks) {
  if (blocks.size() == 0 || blocks.begin()->size() == 0) throw ShapeError("block: empty grid");
  const CMatrix& first = *blocks.begin()->begin();
  const std::size_t br = first.rows();
  const std::size_t bc = first.cols();
  const std::size_t grid_cols = blocks.begin()->size();
  CMatrix out(br * blocks.size(), bc * grid_cols);
  std::size_t bi = 0;
  for (const auto& row : blocks) {
    if (row.size() != grid_cols) throw ShapeError("block: ragged grid");
    std::size_t bj = 0;
    for (const CMatrix& m : row) {
      if (m.rows() != br || m.cols() != bc) throw ShapeError("block: unequal block shapes");
      for (std::size_t r = 0; r < br; ++r) {
        for (std::size_t c = 0; c < bc; ++c) out(bi * br + r, bj * bc + c) = m(r, c);
      }
      ++bj;
    }
    ++bi;
  }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

Complex trace(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("trace: non-square");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

Complex det(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("det: non-square");
  const std::size_t n = a.rows();
  CMatrix lu = a;
  Complex d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
    }
    if (lu(piv, k) == Complex{}) return 0.0;
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      d = -d;
    }
    d *= lu(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu(r, k) / lu(k, k);
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
    }
  }
  return d;
}

CMatrix inverse(const CMatrix& a) {
  if (!a.is_square()) throw ShapeError("inverse: non-square");
  const std::size_t n = a.rows();
  CMatrix m = a;
  CMatrix inv = CMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    }
    if (std::abs(m(piv, k)) == 0.0) throw NumericalError("inverse: singular matrix", 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(m(k, c), m(piv, c));
      std::swap(inv(k, c), inv(piv, c));
    }
    const Complex p = m(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      m(k, c) /= p;
      inv(k, c) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      const Complex f = m(r, k);
      if (f == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m(r, c) -= f * m(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

bool is_hermitian(const CMatrix& a, double tol) {
  return a.is_square() && max_abs_diff(a, adjoint(a)) <= tol;
}

CMatrix pauli(int k) {
  switch (k) {
    case 0: return {{1.0, 0.0}, {0.0, 1.0}};
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, -kI}, {kI, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw ParameterError("pauli index must be 0..3");
  }
}

CMatrix e2() { return {{0.0, 1.0}, {-1.0, 0.0}}; }

}  // namespace ptosc
