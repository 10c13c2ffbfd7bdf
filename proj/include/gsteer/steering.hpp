#pragma once

#include <cstddef>
#include <utility>

#include "gsteer/linalg.hpp"
#include "gsteer/states.hpp"

namespace gsteer {

// A -> B steering of Gaussian states. Every quantity here depends on the
// covariance matrix only; mean vectors are ignored.

/// Gamma + 0_A (+) i Omega_B.
HermitianMatrix steering_matrix(const GaussianState& s);
HermitianMatrix steering_matrix(const RealMatrix& cov, std::size_t modes_a,
                                std::size_t modes_b);

/// Relative zero-clamp applied to J1 and J2 (scaled by Tr Gamma for J2).
inline constexpr double kSteeringClamp = 1e-9;

struct SteeringReport {
  bool unsteerable = false;
  double j1 = 0.0;
  double j2 = 0.0;
  double min_eigenvalue = 0.0;
  double tol_used = kDefaultPsdTolerance;
  // Unclamped values for diagnostics.
  double j1_raw = 0.0;
  double j2_raw = 0.0;
};

SteeringReport steering_report(const GaussianState& s,
                               double tol = kDefaultPsdTolerance);
SteeringReport steering_report(const RealMatrix& cov, std::size_t modes_a,
                               std::size_t modes_b,
                               double tol = kDefaultPsdTolerance);

bool is_unsteerable(const GaussianState& s, double tol = kDefaultPsdTolerance);
PsdReport unsteerability_margin(const GaussianState& s,
                                double tol = kDefaultPsdTolerance);

/// ||Gamma + 0_A (+) i Omega_B||_1 / Tr(Gamma) - 1, clamped to zero.
double j1(const GaussianState& s);
/// ||Gamma + 0_A (+) i Omega_B||_1 - Tr(Gamma), clamped to zero.
double j2(const GaussianState& s);

struct JPair {
  double j1 = 0.0;
  double j2 = 0.0;
};

/// Closed forms for the phase-space Schmidt form of a pure state.
JPair j_closed_schmidt(const SchmidtFormParams& p);

/// Closed forms for (1+1)-mode standard form with c = |d| (mixed thermal
/// c = d, squeezed thermal c = -d). Throws ValidationError otherwise.
JPair j_closed_standard(const StandardFormParams& p);

/// 1 - 4 / (r + 3), the fidelity-measure upper bound for pure_family_state(r).
double n3_upper_bound_pure(double r);

/// Symplectic eigenvalues all within this distance of 1.
inline constexpr double kPurityTolerance = 1e-8;
bool is_pure(const GaussianState& s, double tol = kPurityTolerance);

/// Tr(rho sigma) = 4 / sqrt(det(Gamma_p + Gamma_s)) for (1+1)-mode states with
/// p pure.
double pure_overlap_2mode(const GaussianState& pure, const GaussianState& other);

struct N3GridResult {
  double bound = 1.0;            // 1 - best overlap
  double best_overlap = 0.0;
  StandardFormParams maximizer;  // standard form attaining best_overlap
  std::size_t feasible_points = 0;
  std::size_t total_points = 0;
};

/// Grid estimate of 1 - sup Tr(rho sigma) over unsteerable standard-form
/// sigma, rho = pure_family_state(r). a, b range over [1, r + 4] and c, d
/// over [-sqrt(ab - 1), sqrt(ab - 1)], each with grid_density points.
N3GridResult n3_bound_grid(double r, std::size_t grid_density);

}  // namespace gsteer
