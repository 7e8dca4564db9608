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

#include "pulseforge/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "pulseforge/errors.hpp"

namespace pulseforge {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    throw UsageError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, Complex{0.0, 0.0}) {
  if (dim == 0) throw UsageError("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw UsageError("ComplexMatrix: dim must be >= 1");
  if (entries_.size() != dim * dim) {
    throw UsageError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                     " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw UsageError("ComplexMatrix: dim must be >= 1");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw UsageError("ComplexMatrix: initializer rows must be square");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj(a(i, j));
  }
  return r;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(j, i) = a(i, j);
  }
  return r;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(i, j));
  }
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) {
          r(i * nb + k, j * nb + l) = aij * b(k, l);
        }
      }
    }
  }
  return r;
}

Complex trace(const ComplexMatrix& a) noexcept {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_inner");
  Complex t{};
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) t += std::conj(ea[i]) * eb[i];
  return t;
}

double max_abs(const ComplexMatrix& a) noexcept {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    m = std::max(m, std::abs(ea[i] - eb[i]));
  }
  return m;
}

double norm1(const ComplexMatrix& a) noexcept {
  double m = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) col += std::abs(a(i, j));
    m = std::max(m, col);
  }
  return m;
}

bool all_finite(const ComplexMatrix& a) noexcept {
  return std::all_of(a.entries().begin(), a.entries().end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return max_abs_diff(a, adjoint(a)) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return max_abs_diff(adjoint(a) * a, ComplexMatrix::identity(a.dim())) <= tol;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr int kMaxJacobiSweeps = 64;

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return s;
}

// Applies A <- G^dagger A G and V <- V G for the 2x2 unitary G acting on the
// (p, q) plane.
void apply_plane_rotation(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                          std::size_t q, const std::array<Complex, 4>& g) {
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g[0] + akq * g[2];
    a(k, q) = akp * g[1] + akq * g[3];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g[0]) * apk + std::conj(g[2]) * aqk;
    a(q, k) = std::conj(g[1]) * apk + std::conj(g[3]) * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g[0] + vkq * g[2];
    v(k, q) = vkp * g[1] + vkq * g[3];
  }
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix& h) {
  if (!all_finite(h)) throw ValidationError("eigh: non-finite entries");
  if (!is_hermitian(h, kHermitianTol)) {
    throw ValidationError("eigh: matrix is not Hermitian within 1e-10");
  }
  const std::size_t n = h.dim();
  // Work on the exactly Hermitian part.
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = z;
      a(j, i) = std::conj(z);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale2 = 0.0;
  for (const auto& e : a.entries()) scale2 += std::norm(e);
  const double stop2 = scale2 * 1e-34;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    const double off2 = off_diagonal_norm2(a);
    if (off2 == 0.0 || off2 <= stop2) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = std::conj(apq) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        apply_plane_rotation(a, v, p, q, {c, s, -s * phase, c * phase});
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

// V * diag(d) * V^dagger
ComplexMatrix reconstruct(const ComplexMatrix& vectors,
                          std::span<const Complex> d) {
  const std::size_t n = vectors.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) {
        s += vectors(i, k) * d[k] * std::conj(vectors(j, k));
      }
      out(i, j) = s;
    }
  }
  return out;
}

std::vector<Complex> phases(const HermitianEigen& eig, double scale) {
  std::vector<Complex> d(eig.values.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = std::polar(1.0, scale * eig.values[k]);
  }
  return d;
}

}  // namespace

ComplexMatrix herm_expm(const HermitianEigen& eig, double scale) {
  return reconstruct(eig.vectors, phases(eig, scale));
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double scale) {
  return herm_expm(eigh(h), scale);
}

ComplexMatrix expm_frechet_derivative(const HermitianEigen& eig,
                                      const ComplexMatrix& v, double scale) {
  const std::size_t n = eig.vectors.dim();
  if (v.dim() != n) throw UsageError("expm_frechet: dimension mismatch");
  const Complex i_scale{0.0, scale};
  const auto e = phases(eig, scale);
  // Direction in the eigenbasis, weighted by divided differences of exp.
  ComplexMatrix vt = adjoint(eig.vectors) * v * eig.vectors;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double gap = eig.values[j] - eig.values[k];
      Complex weight;
      if (std::abs(gap) <= kDegeneracyThreshold) {
        weight = i_scale * e[j];
      } else {
        weight = (e[j] - e[k]) / gap;
      }
      vt(j, k) *= weight;
    }
  }
  return eig.vectors * vt * adjoint(eig.vectors);
}

FrechetPair expm_frechet(const ComplexMatrix& h, const ComplexMatrix& v,
                         double scale) {
  if (h.dim() != v.dim()) throw UsageError("expm_frechet: dimension mismatch");
  if (!is_hermitian(v, kHermitianTol)) {
    throw ValidationError("expm_frechet: direction is not Hermitian");
  }
  const HermitianEigen eig = eigh(h);
  return {herm_expm(eig, scale), expm_frechet_derivative(eig, v, scale)};
}

// ---------------------------------------------------------------------------
// General exponential: scaling and squaring with Pade [m/m], m in
// {3, 5, 7, 9, 13}, degree chosen from the 1-norm.

namespace {

// Solves a X = b by LU with partial pivoting.
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b) {
  const std::size_t n = a.dim();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) throw ValidationError("general_expm: singular Pade denominator");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(col, k), a(pivot, k));
        std::swap(b(col, k), b(pivot, k));
      }
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a(r, col) / a(col, col);
      if (f == Complex{}) continue;
      for (std::size_t k = col; k < n; ++k) a(r, k) -= f * a(col, k);
      for (std::size_t k = 0; k < n; ++k) b(r, k) -= f * b(col, k);
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex s = b(r, k);
      for (std::size_t c = r + 1; c < n; ++c) s -= a(r, c) * b(c, k);
      b(r, k) = s / a(r, r);
    }
  }
  return b;
}

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0,
                                          420.0,   30.0,    1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0,
                                          277200.0,   25200.0,   1512.0,
                                          56.0,       1.0};
constexpr std::array<double, 10> kPade9 = {
    17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const std::size_t n = a.dim();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix u_inner = id * b[1];
  ComplexMatrix v = id * b[0];
  ComplexMatrix power = id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += power * b[k];
    u_inner += power * b[k + 1];
  }
  const ComplexMatrix u = a * u_inner;
  return solve(v - u, v + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  const auto& b = kPade13;
  const ComplexMatrix id = ComplexMatrix::identity(a.dim());
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u =
      a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] +
           a4 * b[5] + a2 * b[3] + id * b[1]);
  const ComplexMatrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) +
                          a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
  return solve(v - u, v + u);
}

}  // namespace

ComplexMatrix general_expm(const ComplexMatrix& m) {
  if (!all_finite(m)) throw ValidationError("general_expm: non-finite entries");
  const double norm = norm1(m);
  if (norm <= kTheta3) return pade_low(m, kPade3);
  if (norm <= kTheta5) return pade_low(m, kPade5);
  if (norm <= kTheta7) return pade_low(m, kPade7);
  if (norm <= kTheta9) return pade_low(m, kPade9);

  const int squarings =
      std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  ComplexMatrix r = pade13(m * std::ldexp(1.0, -squarings));
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace pulseforge
