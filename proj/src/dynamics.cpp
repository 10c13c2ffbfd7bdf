#include "gsteer/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "gsteer/steering.hpp"

namespace gsteer {

double BathParameters::effective_photons() const {
  const double ch = std::cosh(squeeze);
  const double sh = std::sinh(squeeze);
  return n_th * (ch * ch + sh * sh) + sh * sh;
}

std::complex<double> BathParameters::squeezing_coefficient() const {
  return -(2.0 * n_th + 1.0) * std::cosh(squeeze) * std::sinh(squeeze) *
         std::polar(1.0, phase);
}

void validate(const BathParameters& b) {
  for (double v : {b.n_th, b.squeeze, b.phase, b.rate}) {
    if (!std::isfinite(v)) {
      throw ValidationError("bath: parameters must be finite");
    }
  }
  if (b.n_th < 0.0) throw ValidationError("bath: n_th must be >= 0");
  if (!(b.rate > 0.0)) throw ValidationError("bath: lambda must be > 0");
  const double n = b.effective_photons();
  const double m2 = std::norm(b.squeezing_coefficient());
  if (m2 > n * (n + 1.0) * (1.0 + 1e-12) + 1e-12) {
    throw ValidationError("bath: |M|^2 <= N(N + 1) violated");
  }
}

RealMatrix gamma_infinity(const BathParameters& b) {
  validate(b);
  const double n = b.effective_photons();
  const std::complex<double> m = b.squeezing_coefficient();
  const double l_plus = n + m.real();
  const double l_minus = n - m.real();
  RealMatrix block(2, 2);
  block << 0.5 + l_plus, m.imag(),
           m.imag(), 0.5 + l_minus;
  RealMatrix g = 2.0 * direct_sum(block, block);
  const PsdReport report = bona_fide_report(g);
  if (!report.psd) {
    std::ostringstream msg;
    msg << "gamma_infinity: stationary covariance is not bona fide, lambda_min = "
        << report.min_eigenvalue;
    throw PhysicalityError(msg.str(), report.min_eigenvalue);
  }
  return g;
}

namespace {

GaussianState evolve_with(const GaussianState& s0, const RealMatrix& g_inf,
                          double rate, double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError("evolve: t must be a finite value >= 0");
  }
  const double decay = std::exp(-rate * t);
  // Convex combination of two bona fide matrices, so no physicality check.
  return GaussianState::unchecked(s0.modes_a(), s0.modes_b(),
                                  decay * s0.cov() + (1.0 - decay) * g_inf,
                                  std::exp(-0.5 * rate * t) * s0.mean());
}

void require_two_mode(const GaussianState& s0) {
  if (s0.modes_a() != 1 || s0.modes_b() != 1) {
    throw ValidationError("dynamics: only (1+1)-mode states are supported");
  }
}

}  // namespace

GaussianState evolve(const GaussianState& s0, const BathParameters& b, double t) {
  require_two_mode(s0);
  return evolve_with(s0, gamma_infinity(b), b.rate, t);
}

std::vector<double> time_grid(double t_max, double dt) {
  if (!std::isfinite(t_max) || t_max < 0.0) {
    throw ValidationError("time grid: t_max must be >= 0");
  }
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw ValidationError("time grid: dt must be > 0");
  }
  std::vector<double> out;
  const double steps = t_max / dt;
  auto n = static_cast<std::size_t>(std::floor(steps));
  if (steps - static_cast<double>(n) > 1.0 - 1e-9) ++n;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.push_back(static_cast<double>(k) * dt);
  return out;
}

Trajectory sweep(const GaussianState& s0, const BathParameters& b,
                 const std::vector<double>& t_grid) {
  require_two_mode(s0);
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) {
      throw ValidationError("sweep: time grid must be strictly increasing");
    }
  }
  const RealMatrix g_inf = gamma_infinity(b);
  const double j2_initial = j2(s0);
  const double j2_final = steering_report(g_inf, 1, 1).j2;

  Trajectory out;
  out.times = t_grid;
  out.j2_values.reserve(t_grid.size());
  out.bound_values.reserve(t_grid.size());
  for (double t : t_grid) {
    const GaussianState st = evolve_with(s0, g_inf, b.rate, t);
    const double decay = std::exp(-b.rate * t);
    out.j2_values.push_back(j2(st));
    out.bound_values.push_back(decay * j2_initial + (1.0 - decay) * j2_final);
  }
  return out;
}

double j2_initial_squeezed(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw ValidationError("j2_initial_squeezed: r must be >= 0");
  }
  if (r == 0.0) return 0.0;
  const double c = std::cosh(2.0 * r);
  return 1.0 + std::sqrt(4.0 * c * c - 3.0) - 2.0 * c;
}

double first_passage_time(const GaussianState& s0, const BathParameters& b,
                          double threshold, double t_max, double dt) {
  require_two_mode(s0);
  const RealMatrix g_inf = gamma_infinity(b);
  const auto value = [&](double t) { return j2(evolve_with(s0, g_inf, b.rate, t)); };
  const std::vector<double> grid = time_grid(t_max, dt);
  if (value(0.0) < threshold) return 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (value(grid[k]) < threshold) {
      double lo = grid[k - 1];
      double hi = grid[k];
      for (int it = 0; it < 60 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) < threshold ? hi : lo) = mid;
      }
      return hi;
    }
  }
  return -1.0;
}

}  // namespace gsteer
