#include <doctest.h>

#include <cmath>
#include <random>

#include "gsteer/dynamics.hpp"
#include "gsteer/steering.hpp"

using namespace gsteer;

TEST_CASE("bath parameters") {
  const BathParameters b{1.0, 0.5, 0.3, 0.1};
  const double ch = std::cosh(0.5);
  const double sh = std::sinh(0.5);
  CHECK(b.effective_photons() == doctest::Approx(ch * ch + 2 * sh * sh));
  CHECK(std::abs(b.squeezing_coefficient()) == doctest::Approx(3 * ch * sh));
  CHECK_NOTHROW(validate(b));
  CHECK_THROWS_AS(validate({-1.0, 0.0, 0.0, 0.1}), ValidationError);
  CHECK_THROWS_AS(validate({0.0, 0.0, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(validate({0.0, NAN, 0.0, 0.1}), ValidationError);

  // |M|^2 <= N(N + 1) holds identically.
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const BathParameters r{u(rng) * 10, u(rng), u(rng) * 2, 0.1};
    const double n = r.effective_photons();
    CHECK(std::norm(r.squeezing_coefficient()) <= n * (n + 1) * (1 + 1e-12) + 1e-12);
  }
}

TEST_CASE("stationary covariance") {
  CHECK((gamma_infinity({0, 0, 0, 0.1}) - RealMatrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((gamma_infinity({1, 0, 0, 0.1}) - 3 * RealMatrix::Identity(4, 4)).norm() < 1e-14);

  const RealMatrix g = gamma_infinity({0, 1, 0, 0.1});
  const double ch = std::cosh(1.0);
  const double sh = std::sinh(1.0);
  CHECK(g(0, 0) == doctest::Approx(2 * (0.5 + sh * sh - ch * sh)));
  CHECK(g(1, 1) == doctest::Approx(2 * (0.5 + sh * sh + ch * sh)));
  CHECK(g(0, 1) == doctest::Approx(0.0));
  CHECK(g(0, 2) == 0.0);
  CHECK(bona_fide_report(g).psd);

  const RealMatrix rotated = gamma_infinity({0.5, 0.7, 1.0, 0.1});
  CHECK(std::abs(rotated(0, 1)) > 0.0);
  CHECK(bona_fide_report(rotated).psd);
}

TEST_CASE("evolution") {
  const GaussianState s0 = squeezed_vacuum_state(1.0);
  const BathParameters b{0.5, 0.3, 0.2, 0.1};
  CHECK((evolve(s0, b, 0.0).cov() - s0.cov()).norm() == 0.0);
  CHECK((evolve(s0, b, 1e4).cov() - gamma_infinity(b)).norm() < 1e-12);

  const double half = std::log(2.0) / b.rate;
  CHECK((evolve(s0, b, half).cov() - 0.5 * (s0.cov() + gamma_infinity(b))).norm() < 1e-12);

  // Semigroup property in covariance space.
  const GaussianState a = evolve(evolve(s0, b, 1.3), b, 2.1);
  CHECK((a.cov() - evolve(s0, b, 3.4).cov()).norm() < 1e-10);

  RealVector mean(4);
  mean << 1, 2, 3, 4;
  const GaussianState shifted = make_state(1, 1, s0.cov(), mean);
  CHECK((evolve(shifted, b, 2.0).mean() - std::exp(-0.1) * mean).norm() < 1e-14);

  CHECK_THROWS_AS(evolve(s0, b, -1.0), ValidationError);
  CHECK_THROWS_AS(evolve(schmidt_pure_state({1, 2, {1.0}}), b, 1.0), ValidationError);

  for (double t : {0.0, 0.5, 3.0, 40.0}) {
    CHECK(bona_fide_report(evolve(s0, b, t).cov()).psd);
  }
}

TEST_CASE("time grid") {
  CHECK(time_grid(0.0, 0.1) == std::vector<double>{0.0});
  const std::vector<double> g = time_grid(60.0, 0.1);
  CHECK(g.size() == 601);
  CHECK(g.back() == 60.0);
  CHECK(time_grid(1.0, 0.3).back() == doctest::Approx(0.9));
  CHECK_THROWS_AS(time_grid(-1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(time_grid(1.0, 0.0), ValidationError);
}

TEST_CASE("initial squeezed j2") {
  CHECK(j2_initial_squeezed(0.0) == 0.0);
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    CHECK(std::abs(j2_initial_squeezed(r) - j2(squeezed_vacuum_state(r))) < 1e-10);
  }
  const double c2 = std::cosh(2.0);
  CHECK(j2_initial_squeezed(1.0) == doctest::Approx(1 + std::sqrt(4 * c2 * c2 - 3) - 2 * c2));
  CHECK_THROWS_AS(j2_initial_squeezed(-1.0), ValidationError);
}

TEST_CASE("sweep") {
  const GaussianState s0 = squeezed_vacuum_state(1.0);
  const BathParameters b{0.0, 1.0, 10.0, 0.1};
  const Trajectory tr = sweep(s0, b, time_grid(60.0, 0.1));
  REQUIRE(tr.times.size() == 601);
  REQUIRE(tr.j2_values.size() == 601);
  REQUIRE(tr.bound_values.size() == 601);
  CHECK(tr.j2_values.front() == doctest::Approx(j2_initial_squeezed(1.0)));
  for (std::size_t k = 1; k < tr.times.size(); ++k) {
    CHECK(tr.j2_values[k] <= tr.j2_values[k - 1] + 1e-9);
  }
  CHECK(tr.j2_values.back() < 1e-3);

  // Stationary start gives a constant trajectory.
  const BathParameters th{0.7, 0.0, 0.0, 0.1};
  const GaussianState st = make_state(1, 1, gamma_infinity(th));
  const Trajectory flat = sweep(st, th, time_grid(5.0, 0.5));
  for (double v : flat.j2_values) CHECK(v == doctest::Approx(flat.j2_values.front()));

  CHECK_THROWS_AS(sweep(s0, b, {0.0, 1.0, 0.5}), ValidationError);

  // r = 0 with an unsqueezed bath stays unsteerable.
  const Trajectory zero = sweep(squeezed_vacuum_state(0.0), th, time_grid(10.0, 1.0));
  for (double v : zero.j2_values) CHECK(v == 0.0);
}

TEST_CASE("convexity bound along random trajectories") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t violations = 0;
  for (int k = 0; k < 100; ++k) {
    const BathParameters b{5 * u(rng), 1.5 * u(rng), 6.3 * u(rng), 0.05 + u(rng)};
    const Trajectory tr = sweep(squeezed_vacuum_state(2 * u(rng)), b, time_grid(20.0, 0.5));
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      if (tr.j2_values[i] > tr.bound_values[i] + 1e-9) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("first passage") {
  const GaussianState s0 = squeezed_vacuum_state(1.0);
  const BathParameters b{0.0, 1.0, 10.0, 0.1};
  const double t = first_passage_time(s0, b, 0.01, 60.0, 0.1);
  REQUIRE(t > 0.0);
  CHECK(j2(evolve(s0, b, t)) <= 0.01 + 1e-9);
  CHECK(j2(evolve(s0, b, 0.99 * t)) > 0.01 - 1e-6);
  CHECK(first_passage_time(s0, b, 1e-30, 1.0, 0.1) < 0.0);

  std::vector<double> by_squeeze;
  for (double r : {2.0, 3.0, 5.0}) {
    by_squeeze.push_back(first_passage_time(s0, {0.0, r, 0.0, 0.1}, 0.01, 60.0, 0.1));
  }
  CHECK(by_squeeze[0] > by_squeeze[1]);
  CHECK(by_squeeze[1] > by_squeeze[2]);

  std::vector<double> by_temp;
  for (double n : {10.0, 20.0, 30.0}) {
    by_temp.push_back(first_passage_time(s0, {n, 0.5, 0.0, 0.1}, 0.01, 60.0, 0.1));
  }
  CHECK(by_temp[0] > by_temp[1]);
  CHECK(by_temp[1] > by_temp[2]);
}
