#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "gsteer/linalg.hpp"

namespace gsteer {

/// Raised when a covariance matrix fails Gamma + i Omega >= 0.
class PhysicalityError : public std::runtime_error {
 public:
  PhysicalityError(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// (m+n)-mode Gaussian state: covariance matrix and mean vector over the
/// quadratures (Q1, P1, Q2, P2, ...), modes 1..m on side A and the rest
/// on side B. Vacuum covariance is the identity.
class GaussianState {
 public:
  std::size_t modes_a() const { return modes_a_; }
  std::size_t modes_b() const { return modes_b_; }
  std::size_t total_modes() const { return modes_a_ + modes_b_; }
  std::size_t dim() const { return 2 * total_modes(); }
  const RealMatrix& cov() const { return cov_; }
  const RealVector& mean() const { return mean_; }

  /// Blocks of the A|B partition.
  RealMatrix block_a() const;
  RealMatrix block_b() const;
  RealMatrix block_c() const;

  /// Shape and symmetry checks only; the bona fide condition is not
  /// enforced. Used for intermediate results whose physicality is reported
  /// separately.
  static GaussianState unchecked(std::size_t modes_a, std::size_t modes_b,
                                 RealMatrix cov, RealVector mean);

 private:
  GaussianState(std::size_t modes_a, std::size_t modes_b, RealMatrix cov,
                RealVector mean)
      : modes_a_(modes_a), modes_b_(modes_b), cov_(std::move(cov)),
        mean_(std::move(mean)) {}

  std::size_t modes_a_;
  std::size_t modes_b_;
  RealMatrix cov_;
  RealVector mean_;
};

/// Gamma + i Omega as a Hermitian matrix, and its PSD report.
HermitianMatrix bona_fide_matrix(const RealMatrix& cov);
PsdReport bona_fide_report(const RealMatrix& cov,
                           double tol = kDefaultPsdTolerance);

/// Validated construction. Throws ValidationError on shape, finiteness or
/// symmetry problems and PhysicalityError when Gamma + i Omega is not PSD.
GaussianState make_state(std::size_t modes_a, std::size_t modes_b,
                         const RealMatrix& cov, const RealVector& mean,
                         double tol = kDefaultPsdTolerance);
GaussianState make_state(std::size_t modes_a, std::size_t modes_b,
                         const RealMatrix& cov,
                         double tol = kDefaultPsdTolerance);

/// (1+1)-mode standard form [[a,0,c,0],[0,a,0,d],[c,0,b,0],[0,d,0,b]].
struct StandardFormParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;
};

/// Throws ValidationError naming the first violated constraint.
void validate_standard_form(const StandardFormParams& p);
bool satisfies_standard_form(const StandardFormParams& p, double slack = 0.0);

GaussianState standard_form_state(const StandardFormParams& p);
RealMatrix standard_form_cov(const StandardFormParams& p);

/// Phase-space Schmidt form of a pure (m+n)-mode state with mixing factors
/// gamma_k >= 1, k = 1..min(m, n).
struct SchmidtFormParams {
  std::size_t modes_a = 1;
  std::size_t modes_b = 1;
  std::vector<double> gammas;
};

GaussianState schmidt_pure_state(const SchmidtFormParams& p);

/// Two-mode squeezed vacuum with squeezing r >= 0 (cosh 2r / sinh 2r).
GaussianState squeezed_vacuum_state(double r);

/// The (1+1)-mode pure family [[r,0,s,0],[0,r,0,-s],[s,0,r,0],[0,-s,0,r]],
/// s = sqrt(r^2 - 1), r >= 1.
GaussianState pure_family_state(double r);

/// S D S^T with S = exp(Omega H) and D = diag(nu_1, nu_1, nu_2, nu_2, ...).
/// H must be symmetric and each nu_k >= 1.
RealMatrix williamson_compose(const RealMatrix& h,
                              const std::vector<double>& symplectic_eigenvalues);

/// Random bona fide state: symplectic eigenvalues uniform in
/// [1, max_sympl_eigen], H entries uniform in [-1, 1], zero mean.
GaussianState random_state(std::size_t modes_a, std::size_t modes_b,
                           double max_sympl_eigen, std::mt19937_64& rng);
GaussianState random_state(std::size_t modes_a, std::size_t modes_b,
                           double max_sympl_eigen, std::uint64_t seed);

/// Random symplectic matrix exp(Omega H) on n modes.
RealMatrix random_symplectic(std::size_t n_modes, std::mt19937_64& rng,
                             double scale = 1.0);

/// Random matrix that is both orthogonal and symplectic on n modes (a
/// passive linear-optics transformation): the real form of a random unitary.
RealMatrix random_orthogonal_symplectic(std::size_t n_modes,
                                        std::mt19937_64& rng);
/// Random real orthogonal matrix of size dim (Haar via QR).
RealMatrix random_orthogonal(std::size_t dim, std::mt19937_64& rng);

/// p1 * s1 + (1 - p1) * s2 for covariance and mean.
GaussianState mix_covariances(const GaussianState& s1, const GaussianState& s2,
                              double p1);

/// |eigenvalues| of i Omega Gamma, ascending, one per mode.
std::vector<double> symplectic_eigenvalues(const RealMatrix& cov);

}  // namespace gsteer
