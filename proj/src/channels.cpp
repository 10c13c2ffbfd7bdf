#include "gsteer/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gsteer/steering.hpp"

namespace gsteer {

GaussianChannel make_channel(std::size_t modes_a, std::size_t modes_b,
                             const RealMatrix& k, const RealMatrix& m,
                             const RealVector& dbar, double tol) {
  if (modes_a + modes_b == 0) throw ValidationError("channel: no modes");
  const auto dim = static_cast<Eigen::Index>(2 * (modes_a + modes_b));
  if (k.rows() != dim || k.cols() != dim || m.rows() != dim ||
      m.cols() != dim || dbar.size() != dim) {
    std::ostringstream msg;
    msg << "channel: K and M must be " << dim << "x" << dim
        << " and dbar of length " << dim;
    throw ValidationError(msg.str());
  }
  require_finite(k, "channel K");
  require_finite(m, "channel M");
  require_finite(dbar, "channel dbar");
  if (relative_asymmetry(m) > kHermitianTolerance) {
    throw ValidationError("channel: M is not symmetric");
  }
  const RealMatrix m_sym = 0.5 * (m + m.transpose());
  const PsdReport psd = psd_from_eigenvalues(symmetric_eigenvalues(m_sym), tol);
  if (!psd.psd) {
    std::ostringstream msg;
    msg << "channel: M is not positive semidefinite, lambda_min = "
        << psd.min_eigenvalue;
    throw ValidationError(msg.str());
  }
  return GaussianChannel(modes_a, modes_b, k, m_sym, dbar);
}

GaussianChannel make_channel(std::size_t modes_a, std::size_t modes_b,
                             const RealMatrix& k, const RealMatrix& m,
                             double tol) {
  return make_channel(modes_a, modes_b, k, m,
                      RealVector::Zero(2 * static_cast<Eigen::Index>(modes_a + modes_b)),
                      tol);
}

GaussianChannel identity_channel(std::size_t modes_a, std::size_t modes_b) {
  const auto dim = static_cast<Eigen::Index>(2 * (modes_a + modes_b));
  return make_channel(modes_a, modes_b, RealMatrix::Identity(dim, dim),
                      RealMatrix::Zero(dim, dim));
}

namespace {

Verdict certificate(const RealMatrix& m, const RealMatrix& imag, double tol) {
  const RealMatrix im = 0.5 * (imag - imag.transpose());
  const PsdReport psd = is_psd(HermitianMatrix::from_parts(m, im), tol);
  return {psd.psd, psd.min_eigenvalue};
}

// Imaginary parts of the three certificates.
RealMatrix validity_imag(const GaussianChannel& ch) {
  const RealMatrix omega = symplectic_form(ch.modes_a() + ch.modes_b());
  return omega - ch.k() * omega * ch.k().transpose();
}

RealMatrix unsteerable_imag(const GaussianChannel& ch) {
  const RealMatrix omega_b = b_side_symplectic_form(ch.modes_a(), ch.modes_b());
  return omega_b - ch.k() * omega_b * ch.k().transpose();
}

RealMatrix breaking_imag(const GaussianChannel& ch) {
  const RealMatrix omega = symplectic_form(ch.modes_a() + ch.modes_b());
  const RealMatrix omega_b = b_side_symplectic_form(ch.modes_a(), ch.modes_b());
  return omega_b - ch.k() * omega * ch.k().transpose();
}

}  // namespace

Verdict is_valid_gaussian(const GaussianChannel& ch, double tol) {
  return certificate(ch.m(), validity_imag(ch), tol);
}

Verdict is_unsteerable_channel(const GaussianChannel& ch, double tol) {
  return certificate(ch.m(), unsteerable_imag(ch), tol);
}

Verdict is_steering_breaking(const GaussianChannel& ch, double tol) {
  return certificate(ch.m(), breaking_imag(ch), tol);
}

ChannelClassification classify(const GaussianChannel& ch, double tol) {
  return {is_valid_gaussian(ch, tol), is_unsteerable_channel(ch, tol),
          is_steering_breaking(ch, tol)};
}

RealMatrix apply_cov(const GaussianChannel& ch, const RealMatrix& cov) {
  if (cov.rows() != static_cast<Eigen::Index>(ch.dim()) ||
      cov.cols() != static_cast<Eigen::Index>(ch.dim())) {
    throw ValidationError("apply: covariance does not match channel dimension");
  }
  RealMatrix out = ch.k() * cov * ch.k().transpose() + ch.m();
  return 0.5 * (out + out.transpose());
}

ChannelOutput apply(const GaussianChannel& ch, const GaussianState& s,
                    double tol) {
  if (s.modes_a() != ch.modes_a() || s.modes_b() != ch.modes_b()) {
    throw ValidationError("apply: state and channel partitions differ");
  }
  RealMatrix cov = apply_cov(ch, s.cov());
  RealVector mean = ch.k() * s.mean() + ch.dbar();
  GaussianState out =
      GaussianState::unchecked(s.modes_a(), s.modes_b(), std::move(cov), std::move(mean));
  const PsdReport report = bona_fide_report(out.cov(), tol);
  if (!report.psd && is_valid_gaussian(ch, tol).holds) {
    std::ostringstream msg;
    msg << "apply: output of a valid Gaussian channel is not bona fide, "
           "lambda_min = "
        << report.min_eigenvalue;
    throw PhysicalityError(msg.str(), report.min_eigenvalue);
  }
  return {std::move(out), report};
}

SideChannel SideChannel::identity(std::size_t modes) {
  const auto dim = static_cast<Eigen::Index>(2 * modes);
  return {modes, RealMatrix::Identity(dim, dim), RealMatrix::Zero(dim, dim),
          RealVector::Zero(dim)};
}

namespace {

void check_side_shape(const SideChannel& side, const char* name) {
  const auto dim = static_cast<Eigen::Index>(2 * side.modes);
  if (side.modes == 0 || side.k.rows() != dim || side.k.cols() != dim ||
      side.m.rows() != dim || side.m.cols() != dim || side.dbar.size() != dim) {
    throw ValidationError(std::string("tensor_local: side ") + name +
                          " has inconsistent dimensions");
  }
}

}  // namespace

GaussianChannel tensor_local(const SideChannel& side_a, const SideChannel& side_b,
                             double tol) {
  check_side_shape(side_a, "A");
  check_side_shape(side_b, "B");
  const RealMatrix ma = 0.5 * (side_a.m + side_a.m.transpose());
  const PsdReport pa = psd_from_eigenvalues(symmetric_eigenvalues(ma), tol);
  if (!pa.psd) {
    throw ValidationError("tensor_local: M_A is not positive semidefinite");
  }
  const RealMatrix omega_b = symplectic_form(side_b.modes);
  const Verdict vb =
      certificate(side_b.m, omega_b - side_b.k * omega_b * side_b.k.transpose(), tol);
  if (!vb.holds) {
    std::ostringstream msg;
    msg << "tensor_local: side B is not a valid Gaussian channel, lambda_min = "
        << vb.margin;
    throw ValidationError(msg.str());
  }
  RealVector dbar(side_a.dbar.size() + side_b.dbar.size());
  dbar << side_a.dbar, side_b.dbar;
  return make_channel(side_a.modes, side_b.modes, direct_sum(side_a.k, side_b.k),
                      direct_sum(side_a.m, side_b.m), dbar, tol);
}

namespace {

// i * A with A real antisymmetric has |i A| = sqrt(-A^2), a real PSD matrix.
RealMatrix abs_imag(const RealMatrix& a) {
  const RealMatrix anti = 0.5 * (a - a.transpose());
  return sqrt_psd(-anti * anti);
}

}  // namespace

SideChannel random_valid_side(std::size_t modes, std::mt19937_64& rng,
                              double k_scale) {
  const auto dim = static_cast<Eigen::Index>(2 * modes);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix k(dim, dim);
  RealMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      k(i, j) = k_scale * u(rng);
      g(i, j) = u(rng);
    }
  }
  const RealMatrix omega = symplectic_form(modes);
  RealMatrix m = abs_imag(omega - k * omega * k.transpose()) + g * g.transpose();
  return {modes, k, 0.5 * (m + m.transpose()), RealVector::Zero(dim)};
}

GaussianChannel random_unsteerable_channel(std::size_t modes_a,
                                           std::size_t modes_b,
                                           std::mt19937_64& rng) {
  const std::size_t n = modes_a + modes_b;
  const auto dim = static_cast<Eigen::Index>(2 * n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  RealMatrix k(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) k(i, j) = scale * u(rng);
  }
  const RealMatrix omega = symplectic_form(n);
  const RealMatrix omega_b = b_side_symplectic_form(modes_a, modes_b);
  const RealMatrix a_valid = omega - k * omega * k.transpose();
  const RealMatrix a_unst = omega_b - k * omega_b * k.transpose();
  constexpr double kSlack = 1e-6;
  RealMatrix m = abs_imag(a_valid) + abs_imag(a_unst) +
                 kSlack * RealMatrix::Identity(dim, dim);
  return make_channel(modes_a, modes_b, k, 0.5 * (m + m.transpose()));
}

GaussianChannel random_unsteerable_channel(std::size_t modes_a,
                                           std::size_t modes_b,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unsteerable_channel(modes_a, modes_b, rng);
}

std::string to_string(SamplePredicate p) {
  return p == SamplePredicate::kBonaFide ? "bona-fide" : "unsteerable-preserving";
}

SamplePredicate parse_predicate(const std::string& name) {
  if (name == "bona-fide") return SamplePredicate::kBonaFide;
  if (name == "unsteerable-preserving") {
    return SamplePredicate::kUnsteerablePreserving;
  }
  throw ValidationError("unknown predicate '" + name +
                        "' (expected bona-fide or unsteerable-preserving)");
}

SampleReport sample_verify(const GaussianChannel& ch, SamplePredicate predicate,
                           const SampleOptions& options) {
  if (options.n_samples == 0) {
    throw ValidationError("sample_verify: n_samples must be >= 1");
  }
  SampleReport report;
  report.predicate = predicate;
  report.worst_margin = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(options.seed);
  const std::size_t max_draws = options.max_oversampling * options.n_samples;
  const std::size_t ma = ch.modes_a();
  const std::size_t mb = ch.modes_b();

  while (report.samples < options.n_samples) {
    if (report.draws >= max_draws) {
      std::ostringstream msg;
      msg << "sample_verify: rejection sampling aborted after " << report.draws
          << " draws with " << report.samples << " accepted (limit "
          << options.max_oversampling << "x oversampling)";
      throw SamplingAbort(msg.str());
    }
    ++report.draws;
    const GaussianState input = random_state(ma, mb, options.max_sympl_eigen, rng);
    const bool want_unsteerable =
        predicate == SamplePredicate::kUnsteerablePreserving;
    if (want_unsteerable && !is_unsteerable(input, kDefaultPsdTolerance)) {
      continue;
    }
    ++report.samples;
    const RealMatrix out = apply_cov(ch, input.cov());
    const PsdReport psd = want_unsteerable
                              ? is_psd(steering_matrix(out, ma, mb), options.tol)
                              : bona_fide_report(out, options.tol);
    const double relative =
        psd.min_eigenvalue / std::max(1.0, psd.max_abs_eigenvalue);
    report.worst_margin = std::min(report.worst_margin, relative);
    if (!psd.psd) {
      ++report.violations;
      if (!report.first_counterexample) report.first_counterexample = input.cov();
    }
  }
  return report;
}

}  // namespace gsteer
