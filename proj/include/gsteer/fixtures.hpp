#pragma once

#include "gsteer/channels.hpp"
#include "gsteer/states.hpp"

// Reference regression matrices, entered exactly as printed (two to
// nine significant figures). The JSON files under data/ carry the same
// values; tests keep the two in sync.
namespace gsteer::fixtures {

/// Channel that maps sampled states to bona fide states although its
/// validity certificate fails.
RealMatrix counterexample_k1();
RealMatrix counterexample_m1();
GaussianChannel counterexample_channel1();

/// Valid channel that preserves sampled unsteerable states although its
/// unsteerability certificate fails.
RealMatrix counterexample_k2();
RealMatrix counterexample_m2();
GaussianChannel counterexample_channel2();

/// (1+1)-mode state whose J2 grows under a local symplectic shear on A.
RealMatrix shear_witness_cov();
GaussianState shear_witness_state();
/// The printed output covariance (rounded to two decimals).
RealMatrix shear_witness_output_cov();
/// K_A = [[1, 1], [0, 1]], K_B = I, M = 0.
GaussianChannel shear_channel();

inline constexpr double kShearWitnessJ2 = 0.0148;
inline constexpr double kShearWitnessOutputJ2 = 0.0152;

}  // namespace gsteer::fixtures
