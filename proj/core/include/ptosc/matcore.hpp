#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ptosc {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;
inline constexpr double kDefaultTol = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

// Throws ParameterError on NaN or infinite parts.
Complex checked_complex(double re, double im);

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim);
  explicit CVector(std::vector<Complex> entries);
  CVector(std::initializer_list<Complex> entries);

  static CVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return data_.size(); }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  double norm() const;

  CVector& operator+=(const CVector& other);
  CVector& operator-=(const CVector& other);
  CVector& operator*=(Complex s);

 private:
  std::vector<Complex> data_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator-(CVector a);
CVector operator*(Complex s, CVector v);
CVector operator*(CVector v, Complex s);
CVector operator/(CVector v, Complex s);
CVector conj(const CVector& v);

// a^dagger b
Complex vdot(const CVector& a, const CVector& b);
// a^T b, no conjugation
Complex bilinear(const CVector& a, const CVector& b);
double max_abs_diff(const CVector& a, const CVector& b);

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> values);
  static CMatrix diagonal(std::initializer_list<Complex> values);
  static CMatrix from_columns(std::span<const CVector> columns);
  // a b^dagger
  static CMatrix outer(const CVector& a, const CVector& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CVector column(std::size_t c) const;
  CVector row(std::size_t r) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix mat_mul(const CMatrix& a, const CMatrix& b);
CVector mat_vec(const CMatrix& a, const CVector& v);

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator/(CMatrix a, Complex s);

CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conj(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
// Block matrix from a row-major grid of equally shaped blocks.
CMatrix block(std::initializer_list<std::initializer_list<CMatrix>> blocks);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

Complex trace(const CMatrix& a);
Complex det(const CMatrix& a);
CMatrix inverse(const CMatrix& a);

double frobenius_norm(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_hermitian(const CMatrix& a, double tol = kDefaultTol);

// Pauli basis sigma_0..sigma_3 and e2 = i sigma_2.
CMatrix pauli(int k);
CMatrix e2();

}  // namespace ptosc
