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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pulseforge/errors.hpp"
#include "support/test_support.hpp"

namespace pulseforge {
namespace {

using testing::naive_product;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_with_norm1;
using testing::taylor_expm;
using testing::taylor_herm_expm;

const Complex kI{0.0, 1.0};

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }

// Determinant by Gaussian elimination, test-local.
Complex determinant(ComplexMatrix a) {
  const std::size_t n = a.dim();
  Complex det{1.0, 0.0};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    }
    if (a(p, c) == Complex{}) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

double relative_error(const ComplexMatrix& got, const ComplexMatrix& want) {
  return max_abs_diff(got, want) / max_abs(want);
}

TEST(ComplexMatrixTest, RejectsEmptyAndMisSizedStorage) {
  EXPECT_THROW(ComplexMatrix(0), UsageError);
  EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), UsageError);
  EXPECT_NO_THROW(ComplexMatrix(2, std::vector<Complex>(4)));
}

TEST(ComplexMatrixTest, RowMajorLayout) {
  const ComplexMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  ASSERT_EQ(m.entries().size(), 4u);
  EXPECT_EQ(m.entries()[1], Complex(2.0));
  EXPECT_EQ(m(1, 0), Complex(3.0));
}

TEST(MatmulTest, IdentityAndPauliInvolution) {
  EXPECT_EQ(ComplexMatrix::identity(2) * pauli_x(), pauli_x());
  EXPECT_EQ(pauli_x() * pauli_x(), ComplexMatrix::identity(2));
}

TEST(MatmulTest, LadderProductOnThreeLevels) {
  const double r2 = std::sqrt(2.0);
  const ComplexMatrix a{{0.0, 1.0, 0.0}, {0.0, 0.0, r2}, {0.0, 0.0, 0.0}};
  const ComplexMatrix a_dag{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, r2, 0.0}};
  // Row i of a times column j of a^dag, by hand: only (0,0) = 1*1 and
  // (1,1) = sqrt2*sqrt2 survive.
  const ComplexMatrix expected{{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 0.0}};
  EXPECT_LE(max_abs_diff(a * a_dag, expected), 1e-15);
}

TEST(MatmulTest, MatchesNaiveProductAndLeavesInputsUntouched) {
  std::mt19937_64 rng(7);
  for (std::size_t dim : {1u, 2u, 3u, 5u, 9u}) {
    const ComplexMatrix a = random_matrix(dim, rng);
    const ComplexMatrix b = random_matrix(dim, rng);
    const ComplexMatrix a_copy = a;
    const ComplexMatrix b_copy = b;
    EXPECT_LE(max_abs_diff(matmul(a, b), naive_product(a, b)), 1e-14);
    EXPECT_EQ(a, a_copy);
    EXPECT_EQ(b, b_copy);
  }
}

TEST(MatmulTest, DimensionMismatchIsUsageError) {
  EXPECT_THROW(matmul(ComplexMatrix(2), ComplexMatrix(3)), UsageError);
  EXPECT_THROW(trace_inner(ComplexMatrix(2), ComplexMatrix(3)), UsageError);
}

TEST(AdjointTest, Definitions) {
  EXPECT_EQ(adjoint(ComplexMatrix::identity(2)), ComplexMatrix::identity(2));
  const ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
  const ComplexMatrix expected{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(adjoint(a), expected);
  const ComplexMatrix c{{kI, 2.0}, {3.0 * kI, 4.0}};
  const ComplexMatrix c_dag{{-kI, -3.0 * kI}, {2.0, 4.0}};
  EXPECT_EQ(adjoint(c), c_dag);
}

TEST(AdjointTest, InvolutionOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(1 + trial % 5, rng);
    EXPECT_EQ(adjoint(adjoint(m)), m);
  }
}

TEST(TraceInnerTest, Values) {
  EXPECT_EQ(trace_inner(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
            Complex(2.0, 0.0));
  EXPECT_EQ(trace_inner(pauli_x(), pauli_y()), Complex(0.0, 0.0));
  std::mt19937_64 rng(3);
  const ComplexMatrix m = random_matrix(4, rng);
  double frob = 0.0;
  for (const auto& e : m.entries()) frob += std::norm(e);
  const Complex mm = trace_inner(m, m);
  EXPECT_NEAR(mm.real(), frob, 1e-13);
  EXPECT_EQ(mm.imag(), 0.0);
  EXPECT_GE(mm.real(), 0.0);
}

TEST(PredicateTest, HermitianAndUnitaryToleranceIsExact) {
  ComplexMatrix h{{1.0, 0.5}, {0.5, -1.0}};
  h(0, 1) += 2e-10;
  EXPECT_FALSE(is_hermitian(h, 1e-10));
  EXPECT_TRUE(is_hermitian(h, 2.1e-10));
  EXPECT_TRUE(is_unitary(pauli_x(), 0.0));
  ComplexMatrix u = ComplexMatrix::identity(2);
  u(0, 0) = 1.0 + 1e-9;  // u^dag u differs from I by ~2e-9 at (0,0)
  EXPECT_FALSE(is_unitary(u, 1e-9));
  EXPECT_TRUE(is_unitary(u, 3e-9));
}

TEST(EighTest, DiagonalInputIsExact) {
  const std::vector<double> d = {0.3, -1.5, 2.0};
  const HermitianEigen eig = eigh(ComplexMatrix::diagonal(std::span<const double>(d)));
  EXPECT_EQ(eig.values, (std::vector<double>{-1.5, 0.3, 2.0}));
}

TEST(EighTest, ReconstructsRandomHermitian) {
  std::mt19937_64 rng(5);
  for (std::size_t dim = 1; dim <= 9; ++dim) {
    const ComplexMatrix h = random_hermitian(dim, rng, 3.0);
    const HermitianEigen eig = eigh(h);
    const ComplexMatrix lambda =
        ComplexMatrix::diagonal(std::span<const double>(eig.values));
    EXPECT_LE(max_abs_diff(eig.vectors * lambda * adjoint(eig.vectors), h), 1e-13);
    EXPECT_TRUE(is_unitary(eig.vectors, 1e-13));
    EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
  }
}

TEST(HermExpmTest, ZeroGivesIdentity) {
  EXPECT_EQ(herm_expm(ComplexMatrix(3), 12.5), ComplexMatrix::identity(3));
}

TEST(HermExpmTest, EulerIdentityForPauliX) {
  // exp(-i pi/2 sigma_x) = cos(pi/2) I - i sin(pi/2) sigma_x = -i sigma_x
  const ComplexMatrix u = herm_expm(pauli_x(), -std::numbers::pi / 2.0);
  EXPECT_LE(max_abs_diff(u, pauli_x() * (-kI)), 1e-15);
}

TEST(HermExpmTest, DiagonalAnharmonicSliceMatchesTaylorOracle) {
  const double alpha = -2.0 * std::numbers::pi * 0.3;
  const double dt = 0.2;
  const std::vector<double> d = {0.0, alpha};
  const ComplexMatrix h = ComplexMatrix::diagonal(std::span<const double>(d));
  const ComplexMatrix u = herm_expm(h, -dt);
  const ComplexMatrix expected{{1.0, 0.0}, {0.0, std::polar(1.0, -alpha * dt)}};
  EXPECT_EQ(u, expected);  // exact for diagonal inputs
  EXPECT_LE(max_abs_diff(u, taylor_expm(h * Complex{0.0, -dt}, 20)), 1e-15);
}

TEST(HermExpmTest, RandomInputsMatchTaylorOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const ComplexMatrix h = random_hermitian(2 + trial % 3, rng, 2.0);
    const double scale = testing::uniform(rng, -3.0, 3.0);
    EXPECT_LE(max_abs_diff(herm_expm(h, scale), taylor_herm_expm(h, scale)), 1e-12);
  }
}

TEST(HermExpmTest, RejectsNonHermitian) {
  const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(herm_expm(m, 1.0), ValidationError);
}

TEST(HermExpmProperty, UnitaryWithUnitDeterminant) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + trial % 8;
    const ComplexMatrix h = random_hermitian(dim, rng);
    // Scale so that ||h * scale||_max reaches up to 1e3.
    const double target = std::pow(10.0, testing::uniform(rng, -2.0, 3.0));
    const double scale = target / max_abs(h);
    const ComplexMatrix u = herm_expm(h, scale);
    EXPECT_TRUE(is_unitary(u, 1e-10)) << "trial " << trial;
    EXPECT_NEAR(std::abs(determinant(u)), 1.0, 1e-9) << "trial " << trial;
  }
}

TEST(GeneralExpmTest, ZeroAndDiagonal) {
  EXPECT_EQ(general_expm(ComplexMatrix(4)), ComplexMatrix::identity(4));
  const double gamma_t = 0.4;
  const std::vector<double> d = {-gamma_t, -2.0 * gamma_t, 0.0};
  const ComplexMatrix e = general_expm(ComplexMatrix::diagonal(std::span<const double>(d)));
  EXPECT_NEAR(e(0, 0).real(), std::exp(-gamma_t), 1e-15);
  EXPECT_NEAR(e(1, 1).real(), std::exp(-2.0 * gamma_t), 1e-15);
  EXPECT_NEAR(e(2, 2).real(), 1.0, 1e-15);
  EXPECT_EQ(e(0, 1), Complex{});
}

TEST(GeneralExpmTest, MatchesThirtyTermTaylorForUnitNorm) {
  // Norms chosen to land in every Pade degree band, up to ||m||_1 = 1.
  std::mt19937_64 rng(29);
  for (double norm : {1e-3, 0.01, 0.1, 0.25, 0.5, 0.9, 0.95, 1.0}) {
    for (std::size_t dim : {2u, 4u, 9u}) {
      const ComplexMatrix m = random_with_norm1(dim, rng, norm);
      EXPECT_LE(relative_error(general_expm(m), taylor_expm(m, 30)), 1e-12)
          << "norm " << norm << " dim " << dim;
    }
  }
}

TEST(GeneralExpmTest, ScalingAndSquaringBranch) {
  std::mt19937_64 rng(31);
  for (double norm : {3.0, 8.0, 40.0}) {
    const ComplexMatrix m = random_with_norm1(4, rng, norm);
    int s = 0;
    while (std::ldexp(norm, -s) > 0.5) ++s;
    ComplexMatrix oracle = taylor_expm(m * std::ldexp(1.0, -s), 30);
    for (int k = 0; k < s; ++k) oracle = naive_product(oracle, oracle);
    EXPECT_LE(relative_error(general_expm(m), oracle), 1e-11) << "norm " << norm;
  }
}

TEST(GeneralExpmTest, InverseProduct) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a =
        random_with_norm1(2 + trial % 8, rng, testing::uniform(rng, 0.0, 2.0));
    EXPECT_LE(max_abs_diff(general_expm(a) * general_expm(-a),
                           ComplexMatrix::identity(a.dim())),
              1e-10);
  }
}

TEST(GeneralExpmProperty, CommutingDiagonalPairsAdd) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 9;
    std::vector<Complex> da(dim);
    std::vector<Complex> db(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      da[k] = {testing::uniform(rng, -2, 1), testing::uniform(rng, -3, 3)};
      db[k] = {testing::uniform(rng, -2, 1), testing::uniform(rng, -3, 3)};
    }
    const ComplexMatrix a = ComplexMatrix::diagonal(std::span<const Complex>(da));
    const ComplexMatrix b = ComplexMatrix::diagonal(std::span<const Complex>(db));
    EXPECT_LE(max_abs_diff(general_expm(a + b), general_expm(a) * general_expm(b)),
              1e-10);
  }
}

TEST(GeneralExpmTest, RejectsNonFinite) {
  ComplexMatrix m(2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(general_expm(m), ValidationError);
  m(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(general_expm(m), ValidationError);
}

TEST(ExpmFrechetTest, CommutingLimit) {
  const double t = 0.7;
  const FrechetPair fp = expm_frechet(ComplexMatrix(2), pauli_x(), t);
  EXPECT_EQ(fp.propagator, ComplexMatrix::identity(2));
  EXPECT_LE(max_abs_diff(fp.derivative, pauli_x() * Complex{0.0, t}), 1e-15);
}

TEST(ExpmFrechetTest, DegenerateIdentity) {
  const double s = -1.3;
  const ComplexMatrix v = pauli_x() + pauli_y() * 0.5;
  const FrechetPair fp = expm_frechet(ComplexMatrix::identity(2), v, s);
  const Complex factor = Complex{0.0, s} * std::polar(1.0, s);
  EXPECT_LE(max_abs_diff(fp.derivative, v * factor), 1e-15);
}

ComplexMatrix central_difference(const ComplexMatrix& h, const ComplexMatrix& v,
                                 double scale, double eps) {
  return (taylor_herm_expm(h + v * eps, scale) - taylor_herm_expm(h - v * eps, scale)) *
         (1.0 / (2.0 * eps));
}

TEST(ExpmFrechetTest, MatchesFiniteDifferenceOnThreeLevels) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const ComplexMatrix v = random_hermitian(3, rng);
    const double scale = testing::uniform(rng, -2.0, 2.0);
    const FrechetPair fp = expm_frechet(h, v, scale);
    EXPECT_LE(max_abs_diff(fp.derivative, central_difference(h, v, scale, 1e-6)),
              1e-7);
    EXPECT_LE(max_abs_diff(fp.propagator, taylor_herm_expm(h, scale)), 1e-12);
  }
}

TEST(ExpmFrechetProperty, FiniteDifferenceAgreementOverSeededPairs) {
  std::mt19937_64 rng(47);
  int cases = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    ComplexMatrix h = random_hermitian(dim, rng, 2.0);
    if (trial % 10 == 0) {
      // Exactly degenerate pair of eigenvalues.
      h = ComplexMatrix::identity(dim) * 0.4;
      h(dim - 1, dim - 1) = -0.9;
    }
    const ComplexMatrix v = random_hermitian(dim, rng);
    const double scale = testing::uniform(rng, -1.5, 1.5);
    const ComplexMatrix d = expm_frechet(h, v, scale).derivative;
    EXPECT_LE(max_abs_diff(d, central_difference(h, v, scale, 1e-6)), 1e-7)
        << "trial " << trial;
    ++cases;
  }
  EXPECT_GE(cases, 100);
}

TEST(ExpmFrechetTest, RejectsNonHermitianInputs) {
  const ComplexMatrix bad{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(expm_frechet(bad, pauli_x(), 1.0), ValidationError);
  EXPECT_THROW(expm_frechet(pauli_x(), bad, 1.0), ValidationError);
}

TEST(KronTest, IndexConvention) {
  const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const ComplexMatrix b{{0.0, 1.0}, {kI, 0.0}};
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.dim(), 4u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c)
          EXPECT_EQ(k(i * 2 + r, j * 2 + c), a(i, j) * b(r, c));
}

}  // namespace
}  // namespace pulseforge
