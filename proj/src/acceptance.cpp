#include "gsteer/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "gsteer/channels.hpp"
#include "gsteer/dynamics.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/linalg.hpp"
#include "gsteer/states.hpp"
#include "gsteer/steering.hpp"

namespace gsteer::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) { return fmt::format("{:.10g}", v); }

Check make_check(std::string name, std::string expected, std::string got,
                 std::string tolerance, bool passed) {
  return {std::move(name), std::move(expected), std::move(got), std::move(tolerance),
          passed};
}

Check close_check(std::string name, double expected, double got, double tol) {
  return make_check(std::move(name), num(expected), num(got), num(tol),
                    std::abs(expected - got) <= tol);
}

Check count_check(std::string name, std::size_t violations, std::size_t trials) {
  return make_check(std::move(name), "0 violations",
                    fmt::format("{} violations in {} trials", violations, trials),
                    "exact", violations == 0);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Random unsteerable state by rejection.
GaussianState random_unsteerable(std::size_t ma, std::size_t mb, std::mt19937_64& rng) {
  for (;;) {
    GaussianState s = random_state(ma, mb, 3.0, rng);
    if (is_unsteerable(s)) return s;
  }
}

RealMatrix random_psd(Eigen::Index dim, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = u(rng);
  }
  return g * g.transpose();
}

// Alternates (1+1), (1+2) and (2+1) partitions with the trial index.
std::pair<std::size_t, std::size_t> partition(std::size_t trial) {
  switch (trial % 3) {
    case 0: return {1, 1};
    case 1: return {1, 2};
    default: return {2, 1};
  }
}

// |i A| for real antisymmetric A.
RealMatrix abs_imag(const RealMatrix& a) {
  const RealMatrix anti = 0.5 * (a - a.transpose());
  return sqrt_psd(-anti * anti);
}

// ------------------------------------------------------------------ criteria

void example_regression(CriterionResult& r) {
  const GaussianState s = fixtures::shear_witness_state();
  const GaussianChannel ch = fixtures::shear_channel();
  const auto start = Clock::now();
  const double before = j2(s);
  const ChannelOutput out = apply(ch, s);
  const double after = j2(out.state);
  const double elapsed = seconds_since(start);
  r.checks.push_back(close_check("j2 of the witness state", fixtures::kShearWitnessJ2,
                                 before, 5e-4));
  r.checks.push_back(close_check("j2 after the local shear channel",
                                 fixtures::kShearWitnessOutputJ2, after, 5e-4));
  const double entry_err =
      (out.state.cov() - fixtures::shear_witness_output_cov()).cwiseAbs().maxCoeff();
  r.checks.push_back(close_check("output covariance vs printed (max entry error)", 0.0,
                                 entry_err, 5e-3));
  r.checks.push_back(make_check("computation time", "< 1 ms",
                                fmt::format("{:.3g} ms", 1e3 * elapsed), "-",
                                elapsed < 1e-3));
}

void example_signs(CriterionResult& r) {
  const auto start = Clock::now();
  const GaussianChannel ch1 = fixtures::counterexample_channel1();
  const GaussianChannel ch2 = fixtures::counterexample_channel2();
  const Verdict v1 = is_valid_gaussian(ch1, 0.0);
  const Verdict v2 = is_valid_gaussian(ch2, 0.0);
  const Verdict u2 = is_unsteerable_channel(ch2, 0.0);
  const double elapsed = seconds_since(start);
  r.checks.push_back(make_check("channel 1 validity lambda_min", "< 0", num(v1.margin),
                                "strict", v1.margin < 0.0));
  r.checks.push_back(make_check("channel 2 validity lambda_min", ">= -1e-9",
                                num(v2.margin), "1e-9", v2.margin >= -1e-9));
  r.checks.push_back(make_check("channel 2 unsteerable-certificate lambda_min", "< 0",
                                num(u2.margin), "strict", u2.margin < 0.0));
  r.checks.push_back(make_check("computation time", "< 10 ms",
                                fmt::format("{:.3g} ms", 1e3 * elapsed), "-",
                                elapsed < 1e-2));
}

void example_sampling(CriterionResult& r) {
  SampleOptions opt;
  opt.n_samples = 10000;
  opt.tol = 1e-8;
  opt.seed = 20240101;
  const SampleReport bona =
      sample_verify(fixtures::counterexample_channel1(), SamplePredicate::kBonaFide, opt);
  r.checks.push_back(make_check(
      "channel 1 outputs bona fide", "0 violations",
      fmt::format("{} violations in {} samples (worst relative margin {})",
                  bona.violations, bona.samples, num(bona.worst_margin)),
      "1e-8", bona.violations == 0 && bona.samples == opt.n_samples));
  opt.seed = 20240102;
  const SampleReport unst = sample_verify(fixtures::counterexample_channel2(),
                                          SamplePredicate::kUnsteerablePreserving, opt);
  r.checks.push_back(make_check(
      "channel 2 keeps unsteerable states unsteerable", "0 violations",
      fmt::format("{} violations in {} samples (acceptance {}, worst relative margin {})",
                  unst.violations, unst.samples, num(unst.acceptance_rate()),
                  num(unst.worst_margin)),
      "1e-8", unst.violations == 0 && unst.samples == opt.n_samples));
}

void closed_forms(CriterionResult& r) {
  constexpr double kTol = 1e-10;
  std::size_t schmidt_cases = 0;
  double schmidt_err = 0.0;
  const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
      {1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}};
  for (int k = 0; k <= 900; ++k) {
    const double g = 1.0 + 0.01 * k;
    for (const auto& [ma, mb] : shapes) {
      SchmidtFormParams p{ma, mb, {}};
      for (std::size_t i = 0; i < std::min(ma, mb); ++i) {
        p.gammas.push_back(i == 0 ? g : 1.0 + 0.5 * (g - 1.0));
      }
      const JPair closed = j_closed_schmidt(p);
      const SteeringReport rep = steering_report(schmidt_pure_state(p));
      schmidt_err = std::max({schmidt_err, std::abs(closed.j1 - rep.j1),
                              std::abs(closed.j2 - rep.j2)});
      ++schmidt_cases;
    }
  }
  r.checks.push_back(make_check(
      "pure Schmidt-form closed forms vs eigensolver", "max |diff| <= 1e-10",
      fmt::format("max |diff| = {} over {} states", num(schmidt_err), schmidt_cases),
      num(kTol), schmidt_err <= kTol));

  std::size_t standard_cases = 0;
  double standard_err = 0.0;
  constexpr int kGrid = 20;
  for (int ia = 0; ia < kGrid; ++ia) {
    const double a = 1.0 + 5.0 * ia / (kGrid - 1);
    for (int ib = 0; ib < kGrid; ++ib) {
      const double b = 1.0 + 5.0 * ib / (kGrid - 1);
      const double c_max = std::sqrt(std::max(0.0, a * b - 1.0));
      for (int ic = 0; ic < kGrid; ++ic) {
        const double c = c_max * ic / (kGrid - 1);
        for (const double sign : {1.0, -1.0}) {
          const StandardFormParams p{a, b, c, sign * c};
          if (!satisfies_standard_form(p)) continue;
          const JPair closed = j_closed_standard(p);
          const SteeringReport rep = steering_report(standard_form_state(p));
          standard_err = std::max({standard_err, std::abs(closed.j1 - rep.j1),
                                   std::abs(closed.j2 - rep.j2)});
          ++standard_cases;
        }
      }
    }
  }
  r.checks.push_back(make_check(
      "mixed standard-form (c = |d|) closed forms vs eigensolver",
      "max |diff| <= 1e-10",
      fmt::format("max |diff| = {} over {} bona fide grid states", num(standard_err),
                  standard_cases),
      num(kTol), standard_err <= kTol && standard_cases > 0));
}

void inequality_chain(CriterionResult& r) {
  std::size_t below = 0;
  std::size_t strict_violations = 0;
  double gap_at_one = 0.0;
  double min_gap_above_one = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 900; ++k) {
    const double rr = 1.0 + 0.01 * k;
    const double z = n3_upper_bound_pure(rr);
    const double j = j2(pure_family_state(rr));
    const double gap = j - z;
    if (gap < -1e-9) ++below;
    if (k == 0) {
      gap_at_one = gap;
    } else {
      min_gap_above_one = std::min(min_gap_above_one, gap);
      if (gap <= 1e-9) ++strict_violations;
    }
  }
  r.checks.push_back(count_check("z(r) <= j2(r) on r in [1, 10]", below, 901));
  r.checks.push_back(close_check("equality at r = 1", 0.0, gap_at_one, 1e-9));
  r.checks.push_back(make_check("strict inequality for r > 1", "min gap > 1e-9",
                                num(min_gap_above_one), "1e-9",
                                strict_violations == 0));
}

void faithfulness(CriterionResult& r) {
  std::mt19937_64 rng(4301);
  std::size_t disagreements = 0;
  std::size_t unsteerable_count = 0;
  std::size_t trials = 0;
  for (const auto& [ma, mb] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1},
                                                                             {1, 2}}) {
    for (int t = 0; t < 1000; ++t) {
      const GaussianState s = random_state(ma, mb, 3.0, rng);
      const bool psd = is_psd(steering_matrix(s)).psd;
      const bool z1 = j1(s) == 0.0;
      const bool z2 = j2(s) == 0.0;
      if (z1 != z2 || z2 != psd) ++disagreements;
      if (psd) ++unsteerable_count;
      ++trials;
    }
  }
  r.checks.push_back(make_check(
      "j1 = 0 <=> j2 = 0 <=> steering matrix PSD", "0 disagreements",
      fmt::format("{} disagreements in {} states ({} unsteerable)", disagreements, trials,
                  unsteerable_count),
      num(kSteeringClamp), disagreements == 0));
}

void channel_properties(CriterionResult& r) {
  constexpr double kTol = 1e-8;
  constexpr std::size_t kTrials = 1000;

  // Upward closure: unsteerable Gamma plus PSD noise stays unsteerable.
  {
    std::mt19937_64 rng(3201);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const GaussianState s = random_unsteerable(ma, mb, rng);
      const RealMatrix cov =
          s.cov() + random_psd(static_cast<Eigen::Index>(s.dim()), 0.7, rng);
      if (!is_psd(steering_matrix(cov, ma, mb), kTol).psd) ++bad;
    }
    r.checks.push_back(count_check("upward closure under PSD noise", bad, kTrials));
  }

  // Local channels Phi_A (x) Phi_B are certified unsteerable and preserve
  // unsteerability.
  {
    std::mt19937_64 rng(3301);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const GaussianChannel ch =
          tensor_local(random_valid_side(ma, rng), random_valid_side(mb, rng));
      const GaussianState s = random_unsteerable(ma, mb, rng);
      const bool certified = is_unsteerable_channel(ch, kTol).holds;
      const bool preserved =
          is_psd(steering_matrix(apply_cov(ch, s.cov()), ma, mb), kTol).psd;
      if (!certified || !preserved) ++bad;
    }
    r.checks.push_back(count_check("local channels preserve unsteerability", bad, kTrials));
  }

  // Local symplectic unitaries preserve the unsteerable verdict both ways.
  {
    std::mt19937_64 rng(3401);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const RealMatrix k =
          direct_sum(random_symplectic(ma, rng, 0.5), random_symplectic(mb, rng, 0.5));
      const GaussianState s = random_state(ma, mb, 3.0, rng);
      const bool before = is_psd(steering_matrix(s), kTol).psd;
      const RealMatrix out = k * s.cov() * k.transpose();
      const bool after = is_psd(steering_matrix(0.5 * (out + out.transpose()), ma, mb),
                                kTol).psd;
      if (before != after) ++bad;
    }
    r.checks.push_back(
        count_check("local symplectic unitaries preserve the verdict", bad, kTrials));
  }

  // Channels passing the unsteerable certificate map unsteerable to unsteerable.
  {
    std::mt19937_64 rng(3501);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const GaussianChannel ch = random_unsteerable_channel(ma, mb, rng);
      const GaussianState s = random_unsteerable(ma, mb, rng);
      const ChannelClassification c = classify(ch, kTol);
      const bool preserved =
          is_psd(steering_matrix(apply_cov(ch, s.cov()), ma, mb), kTol).psd;
      if (!c.valid_gaussian.holds || !c.unsteerable.holds || !preserved) ++bad;
    }
    r.checks.push_back(
        count_check("certified unsteerable channels preserve unsteerability", bad,
                    kTrials));
  }
}

void quantifier_properties(CriterionResult& r) {
  constexpr double kSlack = 1e-9;
  constexpr std::size_t kTrials = 1000;

  {
    std::mt19937_64 rng(4401);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const GaussianState s1 = random_state(ma, mb, 3.0, rng);
      const GaussianState s2 = random_state(ma, mb, 3.0, rng);
      const double p = u(rng);
      const GaussianState mix = mix_covariances(s1, s2, p);
      const bool ok2 = j2(mix) <= p * j2(s1) + (1.0 - p) * j2(s2) + kSlack;
      const bool ok1 = j1(mix) <= j1(s1) + j1(s2) + 1.0 + kSlack;
      if (!ok1 || !ok2) ++bad;
    }
    r.checks.push_back(count_check("convex bounds on mixtures", bad, kTrials));
  }

  // Local channels with orthogonal K_A, orthogonal symplectic K_B.
  const auto monotone_trials = [&](bool block_noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const auto [ma, mb] = partition(t);
      const RealMatrix k = direct_sum(random_orthogonal(2 * ma, rng),
                                      random_orthogonal_symplectic(mb, rng));
      const auto dim = static_cast<Eigen::Index>(2 * (ma + mb));
      RealMatrix m;
      if (block_noise) {
        const RealMatrix ka = k.topLeftCorner(2 * ma, 2 * ma);
        const RealMatrix oa = symplectic_form(ma);
        m = direct_sum(abs_imag(oa - ka * oa * ka.transpose()) +
                           random_psd(static_cast<Eigen::Index>(2 * ma), 0.5, rng),
                       random_psd(static_cast<Eigen::Index>(2 * mb), 0.5, rng));
      } else {
        const RealMatrix o = symplectic_form(ma + mb);
        m = abs_imag(o - k * o * k.transpose()) + random_psd(dim, 0.5, rng);
      }
      const GaussianChannel ch = make_channel(ma, mb, k, 0.5 * (m + m.transpose()));
      const GaussianState s = random_state(ma, mb, 3.0, rng);
      const GaussianState out = apply(ch, s).state;
      if (j1(out) > j1(s) + kSlack || j2(out) > j2(s) + kSlack) ++bad;
    }
    return bad;
  };
  r.checks.push_back(count_check("monotone under local orthogonal channels",
                                 monotone_trials(true, 4501), kTrials));
  r.checks.push_back(count_check("monotone under correlated-noise channels",
                                 monotone_trials(false, 4601), kTrials));

  const GaussianState s = fixtures::shear_witness_state();
  const double before = j2(s);
  const double after = j2(apply(fixtures::shear_channel(), s).state);
  r.checks.push_back(make_check("non-orthogonal K_A witness increases j2",
                                "j2 after > j2 before",
                                fmt::format("{} -> {}", num(before), num(after)), "strict",
                                after > before));
}

void dynamics_checks(CriterionResult& r) {
  constexpr double kSlack = 1e-9;
  const GaussianState s0 = squeezed_vacuum_state(1.0);
  const std::vector<double> grid = time_grid(60.0, 0.1);
  for (const double phi : {10.0, 20.0, 30.0}) {
    const BathParameters b{0.0, 1.0, phi, 0.1};
    const Trajectory tr = sweep(s0, b, grid);
    std::size_t increases = 0;
    std::size_t bound_fail = 0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      if (k > 0 && tr.j2_values[k] > tr.j2_values[k - 1] + kSlack) ++increases;
      if (tr.j2_values[k] > tr.bound_values[k] + kSlack) ++bound_fail;
    }
    const std::string tag = fmt::format("phi = {}", phi);
    r.checks.push_back(count_check("j2 nonincreasing on [0, 60], " + tag, increases,
                                   tr.times.size() - 1));
    r.checks.push_back(make_check("terminal j2 below 1e-3, " + tag, "< 1e-3",
                                  num(tr.j2_values.back()), "-",
                                  tr.j2_values.back() < 1e-3));
    r.checks.push_back(count_check("convexity bound at every grid point, " + tag,
                                   bound_fail, tr.times.size()));
  }

  const auto ordering = [&](const std::string& name, const std::vector<BathParameters>& baths,
                            const std::string& labels) {
    std::vector<double> times;
    for (const BathParameters& b : baths) {
      times.push_back(first_passage_time(s0, b, 0.01, 60.0, 0.1));
    }
    bool ok = std::all_of(times.begin(), times.end(), [](double t) { return t >= 0.0; });
    for (std::size_t k = 1; k < times.size(); ++k) ok = ok && times[k] < times[k - 1];
    r.checks.push_back(make_check(
        name, "strictly decreasing first-passage times",
        fmt::format("{}: {}, {}, {}", labels, num(times[0]), num(times[1]), num(times[2])),
        "strict", ok));
  };
  ordering("larger bath squeezing crosses 0.01 earlier",
           {{0.0, 2.0, 0.0, 0.1}, {0.0, 3.0, 0.0, 0.1}, {0.0, 5.0, 0.0, 0.1}},
           "R = 2, 3, 5");
  ordering("hotter bath crosses 0.01 earlier",
           {{10.0, 0.5, 0.0, 0.1}, {20.0, 0.5, 0.0, 0.1}, {30.0, 0.5, 0.0, 0.1}},
           "n_th = 10, 20, 30");
}

void n3_grid(CriterionResult& r) {
  constexpr std::size_t kDensity = 30;
  const N3GridResult at_one = n3_bound_grid(1.0, kDensity);
  r.checks.push_back(make_check("grid bound at r = 1", "<= 1e-3", num(at_one.bound),
                                "1e-3", at_one.bound <= 1e-3));
  for (const double rr : {2.0, 3.0, 5.0}) {
    const N3GridResult g = n3_bound_grid(rr, kDensity);
    const double j = j2(pure_family_state(rr));
    r.checks.push_back(make_check(
        fmt::format("grid bound at r = {}", rr),
        fmt::format("in [0, j2 = {}]", num(j)),
        fmt::format("{} (z = {}, {} feasible points)", num(g.bound),
                    num(n3_upper_bound_pure(rr)), g.feasible_points),
        "1e-6", g.bound >= 0.0 && g.bound <= j + 1e-6));
  }
}

struct Definition {
  int id;
  const char* title;
  Suite suite;
  double time_limit;
  void (*body)(CriterionResult&);
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = {
      {1, "shear witness regression", Suite::kRegression, 0.0, example_regression},
      {2, "channel certificate signs", Suite::kRegression, 0.0, example_signs},
      {3, "channel sampling falsification", Suite::kRegression, 30.0, example_sampling},
      {4, "closed-form equivalence", Suite::kProperties, 60.0, closed_forms},
      {5, "fidelity bound chain", Suite::kRegression, 5.0, inequality_chain},
      {6, "faithfulness", Suite::kProperties, 0.0, faithfulness},
      {7, "unsteerable channel properties", Suite::kProperties, 0.0, channel_properties},
      {8, "convexity and monotonicity", Suite::kProperties, 0.0, quantifier_properties},
      {9, "bath dynamics", Suite::kRegression, 10.0, dynamics_checks},
      {10, "fidelity measure grid", Suite::kRegression, 120.0, n3_grid},
  };
  return defs;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "paper") return Suite::kRegression;
  if (name == "properties") return Suite::kProperties;
  if (name == "all") return Suite::kAll;
  throw ValidationError("unknown suite '" + name + "' (expected paper, properties or all)");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::kRegression: return "paper";
    case Suite::kProperties: return "properties";
    default: return "all";
  }
}

bool CriterionResult::passed() const {
  if (checks.empty()) return false;
  if (time_limit > 0.0 && seconds >= time_limit) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<int> criteria_in(Suite s) {
  std::vector<int> ids;
  for (const Definition& d : definitions()) {
    if (s == Suite::kAll || d.suite == s) ids.push_back(d.id);
  }
  return ids;
}

CriterionResult run_criterion(int id) {
  const auto& defs = definitions();
  const auto it = std::find_if(defs.begin(), defs.end(),
                               [id](const Definition& d) { return d.id == id; });
  if (it == defs.end()) throw ValidationError(fmt::format("no criterion {}", id));
  CriterionResult r;
  r.id = it->id;
  r.title = it->title;
  r.suite = it->suite;
  r.time_limit = it->time_limit;
  const auto start = Clock::now();
  try {
    it->body(r);
  } catch (const std::exception& e) {
    r.checks.push_back(make_check("unexpected exception", "none", e.what(), "-", false));
  }
  r.seconds = seconds_since(start);
  if (r.time_limit > 0.0) {
    r.checks.push_back(make_check("runtime", fmt::format("< {} s", r.time_limit),
                                  fmt::format("{:.3g} s", r.seconds), "-",
                                  r.seconds < r.time_limit));
  }
  return r;
}

std::vector<CriterionResult> run_suite(Suite s) {
  std::vector<CriterionResult> out;
  for (const int id : criteria_in(s)) out.push_back(run_criterion(id));
  return out;
}

void print(std::ostream& out, const CriterionResult& r, bool verbose) {
  out << fmt::format("{} {:>2} {} ({:.3f} s)\n", r.passed() ? "PASS" : "FAIL", r.id,
                     r.title, r.seconds);
  if (!verbose && r.passed()) return;
  for (const Check& c : r.checks) {
    out << fmt::format("     [{}] {}: expected {}, got {}, tol {}\n",
                       c.passed ? "ok" : "xx", c.name, c.expected, c.got, c.tolerance);
  }
}

}  // namespace gsteer::acceptance
