#include "gsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gsteer {

HermitianMatrix steering_matrix(const RealMatrix& cov, std::size_t modes_a,
                                std::size_t modes_b) {
  return HermitianMatrix::from_parts(cov,
                                     b_side_symplectic_form(modes_a, modes_b));
}

HermitianMatrix steering_matrix(const GaussianState& s) {
  return steering_matrix(s.cov(), s.modes_a(), s.modes_b());
}

SteeringReport steering_report(const RealMatrix& cov, std::size_t modes_a,
                               std::size_t modes_b, double tol) {
  const std::vector<double> ev =
      hermitian_eigenvalues(steering_matrix(cov, modes_a, modes_b));
  const PsdReport psd = psd_from_eigenvalues(ev, tol);
  const double trace = cov.trace();
  const double norm = trace_norm(ev);

  SteeringReport out;
  out.unsteerable = psd.psd;
  out.min_eigenvalue = psd.min_eigenvalue;
  out.tol_used = tol;
  out.j2_raw = norm - trace;
  out.j1_raw = norm / trace - 1.0;
  const bool zero = out.j2_raw <= kSteeringClamp * trace;
  out.j2 = zero ? 0.0 : out.j2_raw;
  out.j1 = zero ? 0.0 : out.j1_raw;
  return out;
}

SteeringReport steering_report(const GaussianState& s, double tol) {
  return steering_report(s.cov(), s.modes_a(), s.modes_b(), tol);
}

PsdReport unsteerability_margin(const GaussianState& s, double tol) {
  return is_psd(steering_matrix(s), tol);
}

bool is_unsteerable(const GaussianState& s, double tol) {
  return unsteerability_margin(s, tol).psd;
}

double j1(const GaussianState& s) { return steering_report(s).j1; }
double j2(const GaussianState& s) { return steering_report(s).j2; }

JPair j_closed_schmidt(const SchmidtFormParams& p) {
  const std::size_t k_max = std::min(p.modes_a, p.modes_b);
  if (p.gammas.size() != k_max) {
    throw ValidationError("j_closed_schmidt: wrong number of mixing factors");
  }
  const double pad = 2.0 * static_cast<double>(p.modes_a > p.modes_b
                                                   ? p.modes_a - p.modes_b
                                                   : p.modes_b - p.modes_a);
  double norm = pad;
  double trace = pad;
  double j2 = 0.0;
  for (double g : p.gammas) {
    if (!std::isfinite(g) || g < 1.0) {
      throw ValidationError("j_closed_schmidt: mixing factors must be >= 1");
    }
    const double root = std::sqrt(4.0 * g * g - 3.0);
    norm += 1.0 + 2.0 * g + root;
    trace += 4.0 * g;
    j2 += 1.0 - 2.0 * g + root;
  }
  return {norm / trace - 1.0, j2};
}

JPair j_closed_standard(const StandardFormParams& p) {
  const double scale = std::max({1.0, std::abs(p.c), std::abs(p.d)});
  if (std::abs(p.c - std::abs(p.d)) > kHermitianTolerance * scale) {
    throw ValidationError("j_closed_standard: requires c = |d|");
  }
  const double root =
      std::sqrt((p.a - p.b + 1.0) * (p.a - p.b + 1.0) + 4.0 * p.c * p.c);
  const double sum = p.a + p.b;
  return {std::max(0.0, (1.0 + sum + root) / (2.0 * sum) - 1.0),
          std::max(0.0, 1.0 + root - sum)};
}

double n3_upper_bound_pure(double r) {
  if (!std::isfinite(r) || r < 1.0) {
    throw ValidationError("n3_upper_bound_pure: r must be >= 1");
  }
  return 1.0 - 4.0 / (r + 3.0);
}

bool is_pure(const GaussianState& s, double tol) {
  for (double nu : symplectic_eigenvalues(s.cov())) {
    if (std::abs(nu - 1.0) > tol) return false;
  }
  return true;
}

double pure_overlap_2mode(const GaussianState& pure, const GaussianState& other) {
  for (const GaussianState* s : {&pure, &other}) {
    if (s->modes_a() != 1 || s->modes_b() != 1) {
      throw ValidationError("pure_overlap_2mode: states must be (1+1)-mode");
    }
  }
  if (!is_pure(pure)) {
    throw ValidationError("pure_overlap_2mode: first state is not pure");
  }
  const double det = (pure.cov() + other.cov()).determinant();
  return 4.0 / std::sqrt(det);
}

namespace {

double grid_point(double lo, double hi, std::size_t i, std::size_t n) {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

N3GridResult n3_bound_grid(double r, std::size_t grid_density) {
  if (!std::isfinite(r) || r < 1.0) {
    throw ValidationError("n3_bound_grid: r must be >= 1");
  }
  if (grid_density == 0) {
    throw ValidationError("n3_bound_grid: grid_density must be >= 1");
  }
  const double s = std::sqrt(r * r - 1.0);
  const double hi = r + 4.0;
  constexpr double kSlack = 1e-12;

  N3GridResult out;
  for (std::size_t ia = 0; ia < grid_density; ++ia) {
    const double a = grid_point(1.0, hi, ia, grid_density);
    for (std::size_t ib = 0; ib < grid_density; ++ib) {
      const double b = grid_point(1.0, hi, ib, grid_density);
      const double ab = a * b;
      const double w = std::sqrt(std::max(0.0, ab - 1.0));
      for (std::size_t ic = 0; ic < grid_density; ++ic) {
        const double c = grid_point(-w, w, ic, grid_density);
        for (std::size_t id = 0; id < grid_density; ++id) {
          const double d = grid_point(-w, w, id, grid_density);
          ++out.total_points;
          const StandardFormParams p{a, b, c, d};
          if (!satisfies_standard_form(p, kSlack)) continue;
          if ((ab - c * c) * (ab - d * d) < a * a - kSlack) continue;
          ++out.feasible_points;
          // det of (Gamma_rho + Gamma_sigma), which splits into Q and P blocks.
          const double diag = (r + a) * (r + b);
          const double det =
              (diag - (s + c) * (s + c)) * (diag - (d - s) * (d - s));
          if (!(det > 0.0)) continue;
          const double overlap = 4.0 / std::sqrt(det);
          if (overlap > out.best_overlap) {
            out.best_overlap = overlap;
            out.maximizer = p;
          }
        }
      }
    }
  }
  out.bound = 1.0 - out.best_overlap;
  return out;
}

}  // namespace gsteer
