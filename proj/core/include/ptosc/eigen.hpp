#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptosc/matcore.hpp"

namespace ptosc {

struct HermitianEigen {
  std::vector<double> values;   // ascending
  std::vector<CVector> vectors; // orthonormal, vectors[i] pairs with values[i]
};

// Cyclic complex Jacobi; input must be Hermitian.
HermitianEigen hermitian_eigen(const CMatrix& h);

std::vector<double> singular_values(const CMatrix& a);
// Largest singular value.
double operator_norm(const CMatrix& a);

// Eigenvalues of a general complex matrix: Hessenberg reduction followed by
// shifted complex QR. Sorted ascending by real part, then imaginary part.
std::vector<Complex> eigenvalues(const CMatrix& a);

// Index partition grouping eigenvalues closer than threshold (transitively).
std::vector<std::vector<std::size_t>> cluster_indices(std::span<const Complex> values, double threshold);

struct EigenDecomposition {
  std::vector<Complex> values;
  std::vector<CVector> vectors;
  std::vector<std::vector<std::size_t>> clusters;
  double residual = 0.0;  // max ||A v - lambda v|| over returned pairs
};

// General eigen-oracle. Vectors of a cluster form an orthonormal basis of the
// cluster's eigenspace. Throws NumericalError when the residual exceeds
// tol * max(||A||, 1) or QR fails to converge.
EigenDecomposition eig_oracle(const CMatrix& a, double tol = kDefaultTol);

// Orthogonal projector onto span(vectors).
CMatrix orthogonal_projector(std::span<const CVector> vectors);

}  // namespace ptosc
