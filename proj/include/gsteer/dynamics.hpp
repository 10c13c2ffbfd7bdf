#pragma once

#include <complex>
#include <vector>

#include "gsteer/linalg.hpp"
#include "gsteer/states.hpp"

namespace gsteer {

/// Markovian squeezed-thermal bath acting identically on both modes.
struct BathParameters {
  double n_th = 0.0;    // thermal photon number
  double squeeze = 0.0; // bath squeezing R
  double phase = 0.0;   // squeezing phase phi, radians
  double rate = 1.0;    // damping rate lambda

  /// N = n_th (cosh^2 R + sinh^2 R) + sinh^2 R.
  double effective_photons() const;
  /// M = -(2 n_th + 1) cosh R sinh R e^{i phi}.
  std::complex<double> squeezing_coefficient() const;
};

/// Throws ValidationError for out-of-range parameters or |M|^2 > N(N+1).
void validate(const BathParameters& b);

/// Stationary covariance 2 * blockdiag([[1/2 + L+, M_I], [M_I, 1/2 + L-]])
/// on both modes, L+- = N +- Re M, M_I = Im M.
RealMatrix gamma_infinity(const BathParameters& b);

/// Gamma(t) = e^{-lambda t} Gamma(0) + (1 - e^{-lambda t}) Gamma(inf);
/// the mean is damped as e^{-lambda t / 2}.
GaussianState evolve(const GaussianState& s0, const BathParameters& b, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> j2_values;
  std::vector<double> bound_values;  // convexity bound from the endpoints
};

/// 0, dt, 2 dt, ... up to t_max inclusive (endpoint snapped when within
/// 1e-9 dt). t_max = 0 gives the single point 0.
std::vector<double> time_grid(double t_max, double dt);

Trajectory sweep(const GaussianState& s0, const BathParameters& b,
                 const std::vector<double>& t_grid);

/// 1 + sqrt(4 cosh^2 2r - 3) - 2 cosh 2r (0 at r = 0).
double j2_initial_squeezed(double r);

/// First time in [0, t_max] at which j2(t) < threshold, located on a grid
/// of width dt then refined by bisection. Returns a negative value when the
/// threshold is never crossed.
double first_passage_time(const GaussianState& s0, const BathParameters& b,
                          double threshold, double t_max, double dt);

}  // namespace gsteer
