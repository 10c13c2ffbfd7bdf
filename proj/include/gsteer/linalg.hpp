#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gsteer {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Raised when an input violates a structural precondition (shape,
/// symmetry, finiteness, parameter range).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Block-diagonal symplectic form Omega_n = (+)^n [[0, 1], [-1, 0]].
RealMatrix symplectic_form(std::size_t n_modes);

/// 0_A (+) Omega_B for an (m+n)-mode partition (real antisymmetric part,
/// the imaginary unit is applied by the caller).
RealMatrix b_side_symplectic_form(std::size_t modes_a, std::size_t modes_b);

/// Direct sum of two square matrices.
RealMatrix direct_sum(const RealMatrix& upper, const RealMatrix& lower);

/// Throws ValidationError unless every entry is finite.
void require_finite(const RealMatrix& m, const std::string& what);

/// Largest |m - m^T| entry, divided by max(1, max |m_ij|).
double relative_asymmetry(const RealMatrix& m);

/// Complex Hermitian matrix. Inputs within kHermitianTolerance (relative
/// to max(1, max |h_ij|)) of Hermitian are repaired to (h + h^H) / 2;
/// larger deviations are rejected.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& h,
                           double tolerance = kHermitianTolerance);

  /// re + i * im with re symmetric and im antisymmetric.
  static HermitianMatrix from_parts(const RealMatrix& re, const RealMatrix& im);

  std::size_t dim() const { return static_cast<std::size_t>(data_.rows()); }
  const ComplexMatrix& matrix() const { return data_; }
  RealMatrix real_part() const { return data_.real(); }
  RealMatrix imag_part() const { return data_.imag(); }
  double trace() const { return data_.trace().real(); }

 private:
  ComplexMatrix data_;
};

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Eigenvalues ascending; column k of `vectors` belongs to
/// value k.
struct SymmetricEigen {
  std::vector<double> values;
  RealMatrix vectors;
};

SymmetricEigen symmetric_eigen(const RealMatrix& s);
std::vector<double> symmetric_eigenvalues(const RealMatrix& s);

/// [[A, -B], [B, A]] for h = A + iB. Same spectrum as h, each eigenvalue
/// doubled.
RealMatrix real_embed(const HermitianMatrix& h);

/// All dim eigenvalues of h in ascending order.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h);

/// Sum of |eigenvalue|.
double trace_norm(const HermitianMatrix& h);
double trace_norm(const std::vector<double>& eigenvalues);

struct PsdReport {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double max_abs_eigenvalue = 0.0;
  double tolerance = 0.0;
};

/// psd iff lambda_min >= -tol * max(1, max |lambda|).
PsdReport is_psd(const HermitianMatrix& h, double tol = kDefaultPsdTolerance);
PsdReport psd_from_eigenvalues(const std::vector<double>& eigenvalues,
                               double tol);

/// Principal square root and absolute value |S| = sqrt(S^2) of a real
/// symmetric matrix. sqrt_psd clamps tiny negative eigenvalues to zero.
RealMatrix sqrt_psd(const RealMatrix& s);
RealMatrix abs_symmetric(const RealMatrix& s);

/// exp(X) for a small dense real matrix.
RealMatrix matrix_exp(const RealMatrix& x);

}  // namespace gsteer
