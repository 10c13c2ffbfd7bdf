#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "gsteer/linalg.hpp"
#include "gsteer/states.hpp"

namespace gsteer {

/// Gaussian channel (K, M, dbar) on an (m+n)-mode system:
/// Gamma -> K Gamma K^T + M, d -> K d + dbar.
class GaussianChannel {
 public:
  std::size_t modes_a() const { return modes_a_; }
  std::size_t modes_b() const { return modes_b_; }
  std::size_t dim() const { return 2 * (modes_a_ + modes_b_); }
  const RealMatrix& k() const { return k_; }
  const RealMatrix& m() const { return m_; }
  const RealVector& dbar() const { return dbar_; }

  friend GaussianChannel make_channel(std::size_t, std::size_t,
                                      const RealMatrix&, const RealMatrix&,
                                      const RealVector&, double);

 private:
  GaussianChannel(std::size_t modes_a, std::size_t modes_b, RealMatrix k,
                  RealMatrix m, RealVector dbar)
      : modes_a_(modes_a), modes_b_(modes_b), k_(std::move(k)),
        m_(std::move(m)), dbar_(std::move(dbar)) {}

  std::size_t modes_a_;
  std::size_t modes_b_;
  RealMatrix k_;
  RealMatrix m_;
  RealVector dbar_;
};

/// Validates shapes, finiteness, M = M^T and M >= 0 (within tol).
GaussianChannel make_channel(std::size_t modes_a, std::size_t modes_b,
                             const RealMatrix& k, const RealMatrix& m,
                             const RealVector& dbar,
                             double tol = kDefaultPsdTolerance);
GaussianChannel make_channel(std::size_t modes_a, std::size_t modes_b,
                             const RealMatrix& k, const RealMatrix& m,
                             double tol = kDefaultPsdTolerance);
GaussianChannel identity_channel(std::size_t modes_a, std::size_t modes_b);

struct Verdict {
  bool holds = false;
  double margin = 0.0;  // minimum eigenvalue of the tested matrix
};

/// M + i Omega - i K Omega K^T >= 0.
Verdict is_valid_gaussian(const GaussianChannel& ch,
                          double tol = kDefaultPsdTolerance);
/// M + 0_A (+) i Omega_B - K (0_A (+) i Omega_B) K^T >= 0. Sufficient for
/// mapping unsteerable states to unsteerable states, not necessary.
Verdict is_unsteerable_channel(const GaussianChannel& ch,
                               double tol = kDefaultPsdTolerance);
/// M + 0_A (+) i Omega_B - i K (Omega_A (+) Omega_B) K^T >= 0. Sufficient for
/// every output to be unsteerable.
Verdict is_steering_breaking(const GaussianChannel& ch,
                             double tol = kDefaultPsdTolerance);

struct ChannelClassification {
  Verdict valid_gaussian;
  Verdict unsteerable;
  Verdict steering_breaking;
};

ChannelClassification classify(const GaussianChannel& ch,
                               double tol = kDefaultPsdTolerance);

struct ChannelOutput {
  GaussianState state;
  PsdReport bona_fide;
};

/// Applies the channel. When the channel passes is_valid_gaussian the output
/// must be bona fide (PhysicalityError otherwise); for other channels the
/// bona fide report is returned without being enforced.
ChannelOutput apply(const GaussianChannel& ch, const GaussianState& s,
                    double tol = kDefaultPsdTolerance);

/// K Gamma K^T + M without any validation of the result.
RealMatrix apply_cov(const GaussianChannel& ch, const RealMatrix& cov);

/// One side of a local channel (K, M, dbar) on `modes` modes.
struct SideChannel {
  std::size_t modes = 1;
  RealMatrix k;
  RealMatrix m;
  RealVector dbar;

  static SideChannel identity(std::size_t modes);
};

/// Phi_A (x) Phi_B. Requires M_A >= 0 and M_B + i Omega - i K_B Omega K_B^T >= 0.
GaussianChannel tensor_local(const SideChannel& side_a, const SideChannel& side_b,
                             double tol = kDefaultPsdTolerance);

/// Random single-side channel satisfying M + i Omega - i K Omega K^T >= 0
/// (hence also M >= 0): K entries uniform in [-k_scale, k_scale], M the
/// minimal real compensation plus a random PSD term.
SideChannel random_valid_side(std::size_t modes, std::mt19937_64& rng,
                              double k_scale = 1.0);

/// Random channel certified valid and unsteerable: K has entries uniform in
/// [-1, 1] / (2(m+n)), M = |X_u| + |X_v| + slack I where X_u, X_v are the
/// imaginary Hermitian parts of the two certificates.
GaussianChannel random_unsteerable_channel(std::size_t modes_a,
                                           std::size_t modes_b,
                                           std::mt19937_64& rng);
GaussianChannel random_unsteerable_channel(std::size_t modes_a,
                                           std::size_t modes_b,
                                           std::uint64_t seed);

enum class SamplePredicate { kBonaFide, kUnsteerablePreserving };

std::string to_string(SamplePredicate p);
SamplePredicate parse_predicate(const std::string& name);

/// Raised when rejection sampling needs more than 100x oversampling.
class SamplingAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleOptions {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  double max_sympl_eigen = 3.0;
  std::size_t max_oversampling = 100;
};

struct SampleReport {
  SamplePredicate predicate = SamplePredicate::kBonaFide;
  std::size_t samples = 0;
  std::size_t draws = 0;  // including rejected ones
  std::size_t violations = 0;
  double worst_margin = 0.0;  // smallest relative minimum eigenvalue seen
  std::optional<RealMatrix> first_counterexample;  // input covariance
  double acceptance_rate() const {
    return draws == 0 ? 0.0 : static_cast<double>(samples) / static_cast<double>(draws);
  }
};

/// Falsification (never certification) of a channel property by sampling:
/// kBonaFide applies ch to random states and checks the output is bona fide;
/// kUnsteerablePreserving applies it to random unsteerable states (by
/// rejection) and checks the output stays unsteerable.
SampleReport sample_verify(const GaussianChannel& ch, SamplePredicate predicate,
                           const SampleOptions& options);

}  // namespace gsteer
