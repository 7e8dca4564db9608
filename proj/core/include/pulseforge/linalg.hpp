// Copyright 2026 The PulseForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra sized for single-transmon work: Hilbert spaces
// of a few levels and their d^2 x d^2 superoperators. Storage is row-major;
// vectorization of operators elsewhere in the engine is column-stacking,
// vec(rho)[j * d + i] = rho(i, j).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pulseforge {

using Complex = std::complex<double>;

/// Square matrix of complex doubles, row-major.
class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension. Throws UsageError for dim == 0.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of `entries`, which must hold dim * dim values.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return entries_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Matrix product. Throws UsageError on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);

/// Kronecker product; (a ⊗ b)(i*nb + k, j*nb + l) = a(i, j) * b(k, l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

Complex trace(const ComplexMatrix& a) noexcept;

/// Frobenius inner product Tr(a^dagger b).
Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |a_ij|
double max_abs(const ComplexMatrix& a) noexcept;
/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Induced 1-norm (maximum absolute column sum).
double norm1(const ComplexMatrix& a) noexcept;

bool all_finite(const ComplexMatrix& a) noexcept;
/// max |A - A^dagger| <= tol
bool is_hermitian(const ComplexMatrix& a, double tol);
/// max |A^dagger A - I| <= tol
bool is_unitary(const ComplexMatrix& a, double tol);

/// Eigen-decomposition of a Hermitian matrix: h = vectors * diag(values) *
/// vectors^dagger, eigenvalues ascending.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Throws ValidationError unless h is Hermitian within
/// 1e-10. Diagonal inputs are returned exactly.
HermitianEigen eigh(const ComplexMatrix& h);

/// exp(i * scale * h) for Hermitian h.
ComplexMatrix herm_expm(const ComplexMatrix& h, double scale);
ComplexMatrix herm_expm(const HermitianEigen& eig, double scale);

/// exp(m) for an arbitrary square matrix, by scaling and squaring around a
/// degree-selected Pade approximant. Throws ValidationError on non-finite m.
ComplexMatrix general_expm(const ComplexMatrix& m);

/// Propagator and its directional derivative,
/// d/du exp(i * scale * (h + u v)) at u = 0.
struct FrechetPair {
  ComplexMatrix propagator;
  ComplexMatrix derivative;
};

FrechetPair expm_frechet(const ComplexMatrix& h, const ComplexMatrix& v,
                         double scale);

/// Derivative part only, reusing an existing decomposition of h. Used by the
/// gradient code to share one eigensolve across control channels.
ComplexMatrix expm_frechet_derivative(const HermitianEigen& eig,
                                      const ComplexMatrix& v, double scale);

/// Eigenvalue gaps at or below this are treated as degenerate by the
/// divided-difference formula.
inline constexpr double kDegeneracyThreshold = 1e-12;

}  // namespace pulseforge
