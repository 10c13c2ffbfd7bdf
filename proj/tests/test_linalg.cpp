#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "gsteer/linalg.hpp"

using namespace gsteer;

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
  }
  return 0.5 * (a + a.adjoint());
}

RealMatrix random_symmetric(Eigen::Index n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = u(rng);
  }
  return 0.5 * (a + a.transpose());
}

std::vector<double> oracle_eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const RealVector v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("symplectic form structure") {
  const RealMatrix o = symplectic_form(3);
  CHECK(o.rows() == 6);
  CHECK((o * o + RealMatrix::Identity(6, 6)).norm() == 0.0);
  CHECK((o + o.transpose()).norm() == 0.0);
  CHECK(o(0, 1) == 1.0);
  CHECK(o(1, 0) == -1.0);
  CHECK(o(0, 3) == 0.0);

  const RealMatrix ob = b_side_symplectic_form(2, 1);
  CHECK(ob.rows() == 6);
  CHECK(ob.topLeftCorner(4, 4).norm() == 0.0);
  CHECK((ob.bottomRightCorner(2, 2) - symplectic_form(1)).norm() == 0.0);
}

TEST_CASE("direct sum places blocks on the diagonal") {
  RealMatrix a(1, 1);
  a << 2.0;
  const RealMatrix s = direct_sum(a, RealMatrix::Identity(2, 2));
  CHECK(s.rows() == 3);
  CHECK(s(0, 0) == 2.0);
  CHECK(s(2, 2) == 1.0);
  CHECK(s(0, 1) == 0.0);
}

TEST_CASE("finiteness and symmetry checks") {
  RealMatrix m = RealMatrix::Identity(2, 2);
  CHECK_NOTHROW(require_finite(m, "m"));
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(require_finite(m, "m"), ValidationError);
  m(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(require_finite(m, "m"), ValidationError);

  RealMatrix a(2, 2);
  a << 1.0, 2.0, 2.5, 1.0;
  CHECK(relative_asymmetry(a) == doctest::Approx(0.5 / 2.5));
}

TEST_CASE("Hermitian repair and rejection") {
  ComplexMatrix h(2, 2);
  h << 1.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0 + 1e-14), 2.0;
  const HermitianMatrix repaired(h);
  CHECK((repaired.matrix() - repaired.matrix().adjoint()).norm() == 0.0);

  h(1, 0) = std::complex<double>(0.0, -0.9);
  CHECK_THROWS_AS(HermitianMatrix{h}, ValidationError);

  const ComplexMatrix bad_diag = ComplexMatrix::Identity(2, 2) * std::complex<double>(1.0, 0.1);
  CHECK_THROWS_AS(HermitianMatrix{bad_diag}, ValidationError);
}

TEST_CASE("from_parts assembles re + i im") {
  const RealMatrix o = symplectic_form(1);
  const HermitianMatrix h = HermitianMatrix::from_parts(RealMatrix::Identity(2, 2), o);
  CHECK(h.matrix()(0, 1) == std::complex<double>(0.0, 1.0));
  CHECK(h.trace() == 2.0);
  CHECK((h.imag_part() - o).norm() == 0.0);
}

TEST_CASE("Hermitian eigenvalues match an independent solver") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + trial % 10;
    const double scale = trial % 3 == 0 ? 1e3 : 1.0;
    const ComplexMatrix h = random_hermitian(n, scale, rng);
    const std::vector<double> ours = hermitian_eigenvalues(HermitianMatrix(h));
    const std::vector<double> ref = oracle_eigenvalues(h);
    REQUIRE(ours.size() == ref.size());
    const double norm = std::max(1.0, h.norm());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      worst = std::max(worst, std::abs(ours[k] - ref[k]) / norm);
    }
    CHECK(std::is_sorted(ours.begin(), ours.end()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("symmetric Jacobi decomposition") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 12;
    const RealMatrix a = random_symmetric(n, 5.0, rng);
    const SymmetricEigen e = symmetric_eigen(a);
    const RealMatrix v = e.vectors;
    RealVector lam(n);
    for (Eigen::Index k = 0; k < n; ++k) lam(k) = e.values[static_cast<std::size_t>(k)];
    CHECK((v.transpose() * v - RealMatrix::Identity(n, n)).norm() < 1e-12);
    CHECK((a * v - v * lam.asDiagonal()).norm() < 1e-11 * std::max(1.0, a.norm()));
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("real embedding doubles the spectrum") {
  std::mt19937_64 rng(13);
  const ComplexMatrix h = random_hermitian(4, 1.0, rng);
  const std::vector<double> doubled = symmetric_eigenvalues(real_embed(HermitianMatrix(h)));
  const std::vector<double> ref = oracle_eigenvalues(h);
  REQUIRE(doubled.size() == 8);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(doubled[2 * k] == doctest::Approx(ref[k]).epsilon(1e-12));
    CHECK(doubled[2 * k + 1] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
}

TEST_CASE("trace norm") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = random_hermitian(1 + trial % 6, 2.0, rng);
    double ref = 0.0;
    for (double v : oracle_eigenvalues(h)) ref += std::abs(v);
    CHECK(trace_norm(HermitianMatrix(h)) == doctest::Approx(ref).epsilon(1e-12));
  }
  // For a PSD matrix the trace norm is the trace.
  const ComplexMatrix g = random_hermitian(5, 1.0, rng);
  const ComplexMatrix p = g * g.adjoint();
  CHECK(trace_norm(HermitianMatrix(p)) == doctest::Approx(p.trace().real()).epsilon(1e-12));
  CHECK(trace_norm(std::vector<double>{-1.0, 2.0, -3.0}) == 6.0);
}

TEST_CASE("PSD test with relative tolerance") {
  CHECK(is_psd(HermitianMatrix(ComplexMatrix::Identity(3, 3))).psd);

  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-3;
  const PsdReport neg = is_psd(HermitianMatrix::from_parts(d, RealMatrix::Zero(2, 2)));
  CHECK_FALSE(neg.psd);
  CHECK(neg.min_eigenvalue == doctest::Approx(-1e-3));

  d(1, 1) = -1e-12;
  CHECK(is_psd(HermitianMatrix::from_parts(d, RealMatrix::Zero(2, 2))).psd);
  CHECK_FALSE(is_psd(HermitianMatrix::from_parts(d, RealMatrix::Zero(2, 2)), 0.0).psd);

  // Tolerance scales with the largest eigenvalue magnitude.
  const PsdReport scaled = psd_from_eigenvalues({-5e-7, 1e3}, 1e-9);
  CHECK(scaled.psd);
  CHECK_FALSE(psd_from_eigenvalues({-5e-6, 1e3}, 1e-9).psd);

  // sigma_y is Hermitian with eigenvalues -1 and 1.
  const HermitianMatrix sy =
      HermitianMatrix::from_parts(RealMatrix::Zero(2, 2), -symplectic_form(1));
  const PsdReport r = is_psd(sy);
  CHECK_FALSE(r.psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
  CHECK(r.max_abs_eigenvalue == doctest::Approx(1.0));
}

TEST_CASE("matrix square root and absolute value") {
  std::mt19937_64 rng(15);
  const RealMatrix g = random_symmetric(5, 1.0, rng);
  const RealMatrix p = g * g;
  const RealMatrix root = sqrt_psd(p);
  CHECK((root * root - p).norm() < 1e-12);
  CHECK((abs_symmetric(g) - root).norm() < 1e-11);
  CHECK(symmetric_eigenvalues(root).front() > -1e-12);
}

TEST_CASE("matrix exponential") {
  CHECK((matrix_exp(RealMatrix::Zero(3, 3)) - RealMatrix::Identity(3, 3)).norm() == 0.0);
  RealMatrix rot(2, 2);
  rot << 0.0, -0.5, 0.5, 0.0;
  const RealMatrix e = matrix_exp(rot);
  CHECK(e(0, 0) == doctest::Approx(std::cos(0.5)));
  CHECK(e(1, 0) == doctest::Approx(std::sin(0.5)));

  // exp(Omega H) with H symmetric is symplectic.
  std::mt19937_64 rng(16);
  const RealMatrix o = symplectic_form(2);
  const RealMatrix s = matrix_exp(o * random_symmetric(4, 1.0, rng));
  CHECK((s * o * s.transpose() - o).norm() < 1e-12 * std::max(1.0, s.squaredNorm()));
}
