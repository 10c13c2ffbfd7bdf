#include "gsteer/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsteer {

RealMatrix GaussianState::block_a() const {
  const auto na = static_cast<Eigen::Index>(2 * modes_a_);
  return cov_.topLeftCorner(na, na);
}

RealMatrix GaussianState::block_b() const {
  const auto nb = static_cast<Eigen::Index>(2 * modes_b_);
  return cov_.bottomRightCorner(nb, nb);
}

RealMatrix GaussianState::block_c() const {
  const auto na = static_cast<Eigen::Index>(2 * modes_a_);
  const auto nb = static_cast<Eigen::Index>(2 * modes_b_);
  return cov_.topRightCorner(na, nb);
}

GaussianState GaussianState::unchecked(std::size_t modes_a, std::size_t modes_b,
                                       RealMatrix cov, RealVector mean) {
  if (modes_a + modes_b == 0) {
    throw ValidationError("state: at least one mode is required");
  }
  const auto dim = static_cast<Eigen::Index>(2 * (modes_a + modes_b));
  if (cov.rows() != dim || cov.cols() != dim) {
    std::ostringstream msg;
    msg << "state: covariance must be " << dim << "x" << dim << ", got "
        << cov.rows() << "x" << cov.cols();
    throw ValidationError(msg.str());
  }
  if (mean.size() != dim) {
    std::ostringstream msg;
    msg << "state: mean must have length " << dim << ", got " << mean.size();
    throw ValidationError(msg.str());
  }
  require_finite(cov, "state covariance");
  require_finite(mean, "state mean");
  if (relative_asymmetry(cov) > kHermitianTolerance) {
    throw ValidationError("state: covariance is not symmetric");
  }
  RealMatrix sym = 0.5 * (cov + cov.transpose());
  return GaussianState(modes_a, modes_b, std::move(sym), std::move(mean));
}

HermitianMatrix bona_fide_matrix(const RealMatrix& cov) {
  return HermitianMatrix::from_parts(cov, symplectic_form(cov.rows() / 2));
}

PsdReport bona_fide_report(const RealMatrix& cov, double tol) {
  return is_psd(bona_fide_matrix(cov), tol);
}

GaussianState make_state(std::size_t modes_a, std::size_t modes_b,
                         const RealMatrix& cov, const RealVector& mean,
                         double tol) {
  GaussianState s = GaussianState::unchecked(modes_a, modes_b, cov, mean);
  const PsdReport report = bona_fide_report(s.cov(), tol);
  if (!report.psd) {
    std::ostringstream msg;
    msg << "state: bona fide condition violated, lambda_min(cov + i Omega) = "
        << report.min_eigenvalue;
    throw PhysicalityError(msg.str(), report.min_eigenvalue);
  }
  return s;
}

GaussianState make_state(std::size_t modes_a, std::size_t modes_b,
                         const RealMatrix& cov, double tol) {
  return make_state(modes_a, modes_b, cov,
                    RealVector::Zero(2 * static_cast<Eigen::Index>(modes_a + modes_b)),
                    tol);
}

namespace {

// Slack absorbs rounding in exact-boundary cases such as pure states.
double standard_form_slack(const StandardFormParams& p) {
  const double scale = std::max({1.0, std::abs(p.a), std::abs(p.b)});
  return 1e-9 * scale * scale * scale * scale;
}

}  // namespace

bool satisfies_standard_form(const StandardFormParams& p, double slack) {
  const double ab = p.a * p.b;
  return p.a >= 1.0 - slack && p.b >= 1.0 - slack &&
         p.a * (ab - p.c * p.c) - p.b >= -slack &&
         p.b * (ab - p.d * p.d) - p.a >= -slack &&
         (ab - p.c * p.c) * (ab - p.d * p.d) + 1.0 - p.a * p.a - p.b * p.b -
                 2.0 * p.c * p.d >=
             -slack;
}

void validate_standard_form(const StandardFormParams& p) {
  for (double v : {p.a, p.b, p.c, p.d}) {
    if (!std::isfinite(v)) {
      throw ValidationError("standard form: parameters must be finite");
    }
  }
  const double slack = standard_form_slack(p);
  const double ab = p.a * p.b;
  if (p.a < 1.0 - slack) throw ValidationError("standard form: a >= 1 violated");
  if (p.b < 1.0 - slack) throw ValidationError("standard form: b >= 1 violated");
  if (p.a * (ab - p.c * p.c) - p.b < -slack) {
    throw ValidationError("standard form: a(ab - c^2) - b >= 0 violated");
  }
  if (p.b * (ab - p.d * p.d) - p.a < -slack) {
    throw ValidationError("standard form: b(ab - d^2) - a >= 0 violated");
  }
  if ((ab - p.c * p.c) * (ab - p.d * p.d) + 1.0 - p.a * p.a - p.b * p.b -
          2.0 * p.c * p.d <
      -slack) {
    throw ValidationError(
        "standard form: (ab - c^2)(ab - d^2) + 1 - a^2 - b^2 - 2cd >= 0 violated");
  }
}

RealMatrix standard_form_cov(const StandardFormParams& p) {
  RealMatrix g(4, 4);
  g << p.a, 0, p.c, 0,
       0, p.a, 0, p.d,
       p.c, 0, p.b, 0,
       0, p.d, 0, p.b;
  return g;
}

GaussianState standard_form_state(const StandardFormParams& p) {
  validate_standard_form(p);
  return make_state(1, 1, standard_form_cov(p));
}

GaussianState schmidt_pure_state(const SchmidtFormParams& p) {
  const std::size_t m = p.modes_a;
  const std::size_t n = p.modes_b;
  const std::size_t k_max = std::min(m, n);
  if (m + n == 0) throw ValidationError("schmidt form: no modes");
  if (p.gammas.size() != k_max) {
    std::ostringstream msg;
    msg << "schmidt form: expected " << k_max << " mixing factors, got "
        << p.gammas.size();
    throw ValidationError(msg.str());
  }
  const auto dim = static_cast<Eigen::Index>(2 * (m + n));
  const auto off_b = static_cast<Eigen::Index>(2 * m);
  // Unpaired modes on either side are vacuum.
  RealMatrix g = RealMatrix::Identity(dim, dim);
  for (std::size_t k = 0; k < k_max; ++k) {
    const double gamma = p.gammas[k];
    if (!std::isfinite(gamma) || gamma < 1.0) {
      throw ValidationError("schmidt form: mixing factors must satisfy gamma >= 1");
    }
    const double s = std::sqrt(gamma * gamma - 1.0);
    const auto ia = static_cast<Eigen::Index>(2 * k);
    const auto ib = off_b + static_cast<Eigen::Index>(2 * k);
    g(ia, ia) = g(ia + 1, ia + 1) = gamma;
    g(ib, ib) = g(ib + 1, ib + 1) = gamma;
    g(ia, ib) = g(ib, ia) = s;
    g(ia + 1, ib + 1) = g(ib + 1, ia + 1) = -s;
  }
  return make_state(m, n, g);
}

GaussianState squeezed_vacuum_state(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw ValidationError("squeezed vacuum: r must be >= 0");
  }
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  RealMatrix g(4, 4);
  g << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return make_state(1, 1, g);
}

GaussianState pure_family_state(double r) {
  if (!std::isfinite(r) || r < 1.0) {
    throw ValidationError("pure family: r must be >= 1");
  }
  return schmidt_pure_state({1, 1, {r}});
}

RealMatrix williamson_compose(const RealMatrix& h,
                              const std::vector<double>& nus) {
  const auto dim = static_cast<Eigen::Index>(2 * nus.size());
  if (h.rows() != dim || h.cols() != dim) {
    throw ValidationError("williamson_compose: H has the wrong size");
  }
  if (relative_asymmetry(h) > kHermitianTolerance) {
    throw ValidationError("williamson_compose: H must be symmetric");
  }
  RealVector diag(dim);
  for (std::size_t k = 0; k < nus.size(); ++k) {
    if (!(nus[k] >= 1.0)) {
      throw ValidationError("williamson_compose: symplectic eigenvalues must be >= 1");
    }
    diag(static_cast<Eigen::Index>(2 * k)) = nus[k];
    diag(static_cast<Eigen::Index>(2 * k + 1)) = nus[k];
  }
  const RealMatrix s = matrix_exp(symplectic_form(nus.size()) * h);
  RealMatrix g = s * diag.asDiagonal() * s.transpose();
  return 0.5 * (g + g.transpose());
}

namespace {

RealMatrix random_symmetric(Eigen::Index dim, std::mt19937_64& rng,
                            double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealMatrix h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      h(i, j) = h(j, i) = u(rng);
    }
  }
  return h;
}

}  // namespace

RealMatrix random_symplectic(std::size_t n_modes, std::mt19937_64& rng,
                             double scale) {
  const RealMatrix h =
      random_symmetric(static_cast<Eigen::Index>(2 * n_modes), rng, scale);
  return matrix_exp(symplectic_form(n_modes) * h);
}

GaussianState random_state(std::size_t modes_a, std::size_t modes_b,
                           double max_sympl_eigen, std::mt19937_64& rng) {
  if (!(max_sympl_eigen >= 1.0)) {
    throw ValidationError("random_state: max_sympl_eigen must be >= 1");
  }
  const std::size_t n = modes_a + modes_b;
  std::uniform_real_distribution<double> nu_dist(1.0, max_sympl_eigen);
  std::vector<double> nus(n);
  for (double& v : nus) v = max_sympl_eigen > 1.0 ? nu_dist(rng) : 1.0;
  const RealMatrix h = random_symmetric(static_cast<Eigen::Index>(2 * n), rng, 1.0);
  return make_state(modes_a, modes_b, williamson_compose(h, nus));
}

GaussianState random_state(std::size_t modes_a, std::size_t modes_b,
                           double max_sympl_eigen, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_state(modes_a, modes_b, max_sympl_eigen, rng);
}

RealMatrix random_orthogonal(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  RealMatrix x(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<RealMatrix> qr(x);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    if (r(k, k) < 0) q.col(k) = -q.col(k);
  }
  return q;
}

RealMatrix random_orthogonal_symplectic(std::size_t n_modes,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(n_modes);
  ComplexMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      z(i, j) = {normal(rng), normal(rng)};
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  const ComplexMatrix u = qr.householderQ();
  const RealMatrix x = u.real();
  const RealMatrix y = u.imag();
  // Annihilation operators a -> U a act on (Q, P) as [[X, -Y], [Y, X]];
  // interleave into (Q1, P1, Q2, P2, ...).
  RealMatrix o(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      o(2 * i, 2 * j) = x(i, j);
      o(2 * i, 2 * j + 1) = -y(i, j);
      o(2 * i + 1, 2 * j) = y(i, j);
      o(2 * i + 1, 2 * j + 1) = x(i, j);
    }
  }
  return o;
}

GaussianState mix_covariances(const GaussianState& s1, const GaussianState& s2,
                              double p1) {
  if (s1.modes_a() != s2.modes_a() || s1.modes_b() != s2.modes_b()) {
    throw ValidationError("mix_covariances: partitions differ");
  }
  if (!(p1 >= 0.0 && p1 <= 1.0)) {
    throw ValidationError("mix_covariances: p1 must lie in [0, 1]");
  }
  const double p2 = 1.0 - p1;
  return make_state(s1.modes_a(), s1.modes_b(), p1 * s1.cov() + p2 * s2.cov(),
                    p1 * s1.mean() + p2 * s2.mean());
}

std::vector<double> symplectic_eigenvalues(const RealMatrix& cov) {
  const std::size_t n = static_cast<std::size_t>(cov.rows() / 2);
  const RealMatrix root = sqrt_psd(cov);
  // sqrt(G) (i Omega) sqrt(G) is Hermitian with spectrum +-nu_k.
  const RealMatrix im = root * symplectic_form(n) * root;
  const HermitianMatrix h =
      HermitianMatrix::from_parts(RealMatrix::Zero(cov.rows(), cov.cols()),
                                  0.5 * (im - im.transpose()));
  std::vector<double> ev = hermitian_eigenvalues(h);
  std::vector<double> out(ev.end() - static_cast<std::ptrdiff_t>(n), ev.end());
  return out;
}

}  // namespace gsteer
