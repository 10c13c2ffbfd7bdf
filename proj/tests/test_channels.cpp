#include <doctest.h>

#include <random>

#include "gsteer/channels.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/steering.hpp"

using namespace gsteer;

TEST_CASE("channel construction validates inputs") {
  const RealMatrix i4 = RealMatrix::Identity(4, 4);
  CHECK_NOTHROW(make_channel(1, 1, i4, RealMatrix::Zero(4, 4)));
  CHECK_THROWS_AS(make_channel(1, 1, RealMatrix::Identity(6, 6), RealMatrix::Zero(4, 4)),
                  ValidationError);
  CHECK_THROWS_AS(make_channel(1, 1, i4, -i4), ValidationError);
  RealMatrix asym = RealMatrix::Zero(4, 4);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(make_channel(1, 1, i4, asym), ValidationError);
  CHECK_THROWS_AS(make_channel(1, 1, i4, i4, RealVector::Zero(2)), ValidationError);
}

TEST_CASE("apply transforms covariance and mean") {
  RealVector mean(4);
  mean << 1, -2, 0.5, 3;
  const GaussianState s = make_state(1, 1, squeezed_vacuum_state(0.4).cov(), mean);

  const ChannelOutput same = apply(identity_channel(1, 1), s);
  CHECK((same.state.cov() - s.cov()).norm() == 0.0);
  CHECK((same.state.mean() - s.mean()).norm() == 0.0);

  RealMatrix noise = RealMatrix::Identity(4, 4) * 0.3;
  noise(0, 2) = noise(2, 0) = 0.1;
  RealVector dbar(4);
  dbar << 0.1, 0.2, 0.3, 0.4;
  const GaussianChannel classical = make_channel(1, 1, RealMatrix::Identity(4, 4), noise, dbar);
  const ChannelOutput out = apply(classical, s);
  CHECK((out.state.cov() - (s.cov() + noise)).norm() < 1e-15);
  CHECK((out.state.mean() - (mean + dbar)).norm() < 1e-15);
  CHECK(out.bona_fide.psd);

  CHECK_THROWS_AS(apply(identity_channel(1, 2), s), ValidationError);
}

TEST_CASE("shear channel reproduces the printed output") {
  const GaussianChannel ch = fixtures::shear_channel();
  RealMatrix expected_k = RealMatrix::Identity(4, 4);
  expected_k(0, 1) = 1.0;
  CHECK((ch.k() - expected_k).norm() == 0.0);
  const ChannelOutput out = apply(ch, fixtures::shear_witness_state());
  CHECK((out.state.cov() - fixtures::shear_witness_output_cov()).cwiseAbs().maxCoeff() < 5e-3);
  CHECK(j2(out.state) == doctest::Approx(0.0152).epsilon(0.03));
  CHECK(j2(out.state) > j2(fixtures::shear_witness_state()));
}

TEST_CASE("certificates on simple channels") {
  const GaussianChannel id = identity_channel(1, 1);
  const ChannelClassification c = classify(id);
  CHECK(c.valid_gaussian.holds);
  CHECK(c.valid_gaussian.margin == doctest::Approx(0.0));
  CHECK(c.unsteerable.holds);
  CHECK_FALSE(c.steering_breaking.holds);

  // Discard and reprepare the vacuum.
  const GaussianChannel reset =
      make_channel(1, 1, RealMatrix::Zero(4, 4), RealMatrix::Identity(4, 4));
  CHECK(is_steering_breaking(reset).holds);
  CHECK(is_valid_gaussian(reset).holds);

  // Identity keeps the steering of a steerable state.
  CHECK_FALSE(is_unsteerable(apply(id, pure_family_state(2.0)).state));
}

TEST_CASE("printed counterexample channels") {
  const ChannelClassification c1 = classify(fixtures::counterexample_channel1());
  CHECK_FALSE(c1.valid_gaussian.holds);
  CHECK(c1.valid_gaussian.margin < 0.0);

  const ChannelClassification c2 = classify(fixtures::counterexample_channel2());
  CHECK(c2.valid_gaussian.holds);
  CHECK(c2.valid_gaussian.margin >= -1e-9);
  CHECK_FALSE(c2.unsteerable.holds);
  CHECK(c2.unsteerable.margin < 0.0);
}

TEST_CASE("apply reports but does not enforce physicality for invalid maps") {
  // K = 0, M = 0 produces the zero covariance, which is not bona fide.
  const GaussianChannel collapse =
      make_channel(1, 1, RealMatrix::Zero(4, 4), RealMatrix::Zero(4, 4));
  CHECK_FALSE(is_valid_gaussian(collapse).holds);
  const ChannelOutput out = apply(collapse, squeezed_vacuum_state(0.2));
  CHECK_FALSE(out.bona_fide.psd);
}

TEST_CASE("tensor_local") {
  const GaussianChannel id = tensor_local(SideChannel::identity(1), SideChannel::identity(2));
  CHECK((id.k() - RealMatrix::Identity(6, 6)).norm() == 0.0);
  CHECK(id.m().norm() == 0.0);
  CHECK(id.modes_b() == 2);

  SideChannel bad_b = SideChannel::identity(1);
  bad_b.k *= 2.0;  // amplification without added noise
  CHECK_THROWS_AS(tensor_local(SideChannel::identity(1), bad_b), ValidationError);

  SideChannel bad_a = SideChannel::identity(1);
  bad_a.m = -RealMatrix::Identity(2, 2);
  CHECK_THROWS_AS(tensor_local(bad_a, SideChannel::identity(1)), ValidationError);

  // A-side amplification without noise is allowed: only M_A >= 0 is required.
  SideChannel amp_a = SideChannel::identity(1);
  amp_a.k *= 2.0;
  CHECK(is_unsteerable_channel(tensor_local(amp_a, SideChannel::identity(1))).holds);

  std::mt19937_64 rng(41);
  std::size_t failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t ma = 1 + t % 2;
    const std::size_t mb = 1 + (t / 2) % 2;
    const GaussianChannel ch =
        tensor_local(random_valid_side(ma, rng), random_valid_side(mb, rng));
    if (!is_unsteerable_channel(ch, 1e-8).holds) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("random unsteerable channels") {
  const GaussianChannel a = random_unsteerable_channel(1, 2, std::uint64_t{5});
  const GaussianChannel b = random_unsteerable_channel(1, 2, std::uint64_t{5});
  CHECK((a.k() - b.k()).norm() == 0.0);
  CHECK((a.m() - b.m()).norm() == 0.0);

  std::mt19937_64 rng(42);
  std::size_t failures = 0;
  for (int t = 0; t < 300; ++t) {
    const GaussianChannel ch = random_unsteerable_channel(1 + t % 2, 1 + (t / 2) % 2, rng);
    const ChannelClassification c = classify(ch);
    if (!c.valid_gaussian.holds || !c.unsteerable.holds) ++failures;
    if (c.unsteerable.margin < 0.0 || c.valid_gaussian.margin < 0.0) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("steering-breaking channels make every output unsteerable") {
  std::mt19937_64 rng(43);
  // Heavy noise on B side: K small, M large.
  RealMatrix k = RealMatrix::Identity(4, 4) * 0.2;
  const RealMatrix m = RealMatrix::Identity(4, 4) * 2.0;
  const GaussianChannel ch = make_channel(1, 1, k, m);
  REQUIRE(is_steering_breaking(ch).holds);
  std::size_t steerable = 0;
  for (int t = 0; t < 100; ++t) {
    const GaussianState s = random_state(1, 1, 3.0, rng);
    if (!is_unsteerable(apply(ch, s).state)) ++steerable;
  }
  CHECK(steerable == 0);
}

TEST_CASE("sampling falsification") {
  SampleOptions opt;
  opt.n_samples = 500;
  opt.seed = 7;
  const SampleReport id_bf =
      sample_verify(identity_channel(1, 1), SamplePredicate::kBonaFide, opt);
  CHECK(id_bf.violations == 0);
  CHECK(id_bf.samples == 500);
  CHECK(id_bf.draws == 500);
  const SampleReport id_us =
      sample_verify(identity_channel(1, 1), SamplePredicate::kUnsteerablePreserving, opt);
  CHECK(id_us.violations == 0);
  CHECK(id_us.draws >= id_us.samples);
  CHECK(id_us.acceptance_rate() > 0.0);

  // Determinism: identical options give identical reports.
  const SampleReport again =
      sample_verify(identity_channel(1, 1), SamplePredicate::kUnsteerablePreserving, opt);
  CHECK(again.draws == id_us.draws);
  CHECK(again.worst_margin == id_us.worst_margin);

  // A map that collapses everything to zero is caught.
  const GaussianChannel collapse =
      make_channel(1, 1, RealMatrix::Zero(4, 4), RealMatrix::Zero(4, 4));
  const SampleReport caught = sample_verify(collapse, SamplePredicate::kBonaFide, opt);
  CHECK(caught.violations == 500);
  CHECK(caught.first_counterexample.has_value());

  // Pure states are (almost surely) never unsteerable: rejection gives up.
  SampleOptions pure = opt;
  pure.max_sympl_eigen = 1.0;
  pure.n_samples = 20;
  CHECK_THROWS_AS(sample_verify(identity_channel(1, 1),
                                SamplePredicate::kUnsteerablePreserving, pure),
                  SamplingAbort);

  opt.n_samples = 0;
  CHECK_THROWS_AS(sample_verify(identity_channel(1, 1), SamplePredicate::kBonaFide, opt),
                  ValidationError);
}

TEST_CASE("predicate names") {
  CHECK(parse_predicate("bona-fide") == SamplePredicate::kBonaFide);
  CHECK(parse_predicate("unsteerable-preserving") == SamplePredicate::kUnsteerablePreserving);
  CHECK(to_string(SamplePredicate::kBonaFide) == "bona-fide");
  CHECK_THROWS_AS(parse_predicate("valid"), ValidationError);
}
