#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gsteer/acceptance.hpp"
#include "gsteer/channels.hpp"
#include "gsteer/dynamics.hpp"
#include "gsteer/io.hpp"
#include "gsteer/states.hpp"
#include "gsteer/steering.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kPhysicality = 3,
  kSamplingAbort = 4,
};

using gsteer::io::format_double;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gsteer::io::ParseError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Loads a state and enforces the bona fide condition.
gsteer::GaussianState load_bona_fide(const std::string& path, double tol) {
  const gsteer::GaussianState s =
      gsteer::io::state_from_json(gsteer::io::read_json_file(path));
  const gsteer::PsdReport bf = gsteer::bona_fide_report(s.cov(), tol);
  if (!bf.psd) {
    throw gsteer::PhysicalityError(
        "state is not bona fide: lambda_min(Gamma + i Omega) = " +
            format_double(bf.min_eigenvalue),
        bf.min_eigenvalue);
  }
  return s;
}

int cmd_check(const std::string& path, double tol) {
  const gsteer::GaussianState s =
      gsteer::io::state_from_json(gsteer::io::read_json_file(path));
  const gsteer::PsdReport bf = gsteer::bona_fide_report(s.cov(), tol);
  std::cout << "bona_fide: " << (bf.psd ? "true" : "false") << "\n"
            << "bona_fide_min_eigenvalue: " << format_double(bf.min_eigenvalue) << "\n";
  if (!bf.psd) return kPhysicality;
  const gsteer::PsdReport us = gsteer::unsteerability_margin(s, tol);
  std::cout << "unsteerable: " << (us.psd ? "true" : "false") << "\n"
            << "steering_min_eigenvalue: " << format_double(us.min_eigenvalue) << "\n"
            << "tolerance: " << format_double(tol) << "\n";
  return kOk;
}

int cmd_quantify(const std::string& path, double tol) {
  const gsteer::GaussianState s = load_bona_fide(path, tol);
  nlohmann::json out = gsteer::io::to_json(gsteer::steering_report(s, tol));
  out["bona_fide_min_eigenvalue"] = gsteer::bona_fide_report(s.cov(), tol).min_eigenvalue;
  std::cout << dump(out);
  return kOk;
}

int cmd_channel(const std::string& channel_path, const std::string& state_path,
                bool do_classify, const std::string& out_path, double tol) {
  const gsteer::GaussianChannel ch =
      gsteer::io::channel_from_json(gsteer::io::read_json_file(channel_path), tol);
  if (!do_classify && state_path.empty()) {
    throw gsteer::ValidationError("channel: nothing to do (pass --classify and/or --state)");
  }
  if (do_classify) {
    const std::string text = dump(gsteer::io::to_json(gsteer::classify(ch, tol)));
    // The classification goes to stdout when the output state takes --out.
    emit(text, state_path.empty() ? out_path : "");
  }
  if (!state_path.empty()) {
    const gsteer::GaussianState s = load_bona_fide(state_path, tol);
    const gsteer::ChannelOutput result = gsteer::apply(ch, s, tol);
    emit(dump(gsteer::io::to_json(result.state)), out_path);
    if (!result.bona_fide.psd) {
      std::cerr << "warning: channel is not a valid Gaussian channel and the output is "
                   "not bona fide (lambda_min = "
                << format_double(result.bona_fide.min_eigenvalue) << ")\n";
      return kPhysicality;
    }
  }
  return kOk;
}

struct SweepArgs {
  double r = 1.0;
  double n_th = 0.0;
  double squeeze = 1.0;
  double phase = 10.0;
  double rate = 0.1;
  double t_max = 60.0;
  double dt = 0.1;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  if (!std::isfinite(a.r) || a.r < 0.0) {
    throw gsteer::ValidationError("sweep: --r must be >= 0");
  }
  const gsteer::BathParameters bath{a.n_th, a.squeeze, a.phase, a.rate};
  gsteer::validate(bath);
  const gsteer::Trajectory tr = gsteer::sweep(gsteer::squeezed_vacuum_state(a.r), bath,
                                              gsteer::time_grid(a.t_max, a.dt));
  emit(gsteer::io::trajectory_csv(tr), a.out);
  return kOk;
}

int cmd_verify(const std::string& suite_name, bool verbose) {
  const gsteer::acceptance::Suite suite = gsteer::acceptance::parse_suite(suite_name);
  std::size_t failed = 0;
  std::size_t total = 0;
  for (const int id : gsteer::acceptance::criteria_in(suite)) {
    const auto r = gsteer::acceptance::run_criterion(id);
    gsteer::acceptance::print(std::cout, r, verbose);
    std::cout.flush();
    ++total;
    if (!r.passed()) ++failed;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", total - failed, total);
  return failed == 0 ? kOk : kFailure;
}

int cmd_sample(const std::string& path, std::size_t n, std::uint64_t seed,
               const std::string& predicate, double tol) {
  const gsteer::GaussianChannel ch =
      gsteer::io::channel_from_json(gsteer::io::read_json_file(path), tol);
  gsteer::SampleOptions opt;
  opt.n_samples = n;
  opt.seed = seed;
  opt.tol = tol;
  const gsteer::SampleReport rep =
      gsteer::sample_verify(ch, gsteer::parse_predicate(predicate), opt);
  std::cout << dump(gsteer::io::to_json(rep));
  return kOk;
}

double default_tolerance() {
  const char* env = std::getenv("GSTEER_TOL");
  if (env == nullptr || *env == '\0') return gsteer::kDefaultPsdTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !std::isfinite(v) || v < 0.0) {
    throw gsteer::ValidationError(std::string("GSTEER_TOL is not a valid tolerance: ") +
                                  env);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian steering toolkit: bona fide and steering checks, steering "
               "quantifiers, channel certificates and bath dynamics."};
  app.require_subcommand(1);
  app.fallthrough();

  double tol = 0.0;
  try {
    tol = default_tolerance();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  app.add_option("--tol", tol, "PSD tolerance (default 1e-9, or $GSTEER_TOL)")
      ->check(CLI::NonNegativeNumber);

  std::string state_file;
  auto* check = app.add_subcommand("check", "Bona fide and unsteerability verdicts");
  check->add_option("state", state_file, "State JSON file")->required();

  auto* quantify = app.add_subcommand("quantify", "Steering report (j1, j2) as JSON");
  quantify->add_option("state", state_file, "State JSON file")->required();

  std::string channel_file;
  std::string channel_state;
  std::string channel_out;
  bool classify_flag = false;
  auto* channel = app.add_subcommand("channel", "Classify a channel or apply it to a state");
  channel->add_option("channel", channel_file, "Channel JSON file")->required();
  channel->add_option("--state", channel_state, "State JSON file to transform");
  channel->add_flag("--classify", classify_flag,
                    "Print the validity, unsteerable and steering-breaking certificates");
  channel->add_option("--out", channel_out, "Output path (default stdout)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "j2 trajectory of a squeezed vacuum in a squeezed thermal bath (CSV)");
  sweep->add_option("--r", sweep_args.r, "Initial two-mode squeezing")->capture_default_str();
  sweep->add_option("--nth", sweep_args.n_th, "Bath thermal photon number")
      ->capture_default_str();
  sweep->add_option("--R", sweep_args.squeeze, "Bath squeezing")->capture_default_str();
  sweep->add_option("--phi", sweep_args.phase, "Bath squeezing phase (radians)")
      ->capture_default_str();
  sweep->add_option("--lambda", sweep_args.rate, "Damping rate")->capture_default_str();
  sweep->add_option("--tmax", sweep_args.t_max, "Final time")->capture_default_str();
  sweep->add_option("--dt", sweep_args.dt, "Time step")->capture_default_str();
  sweep->add_option("--out", sweep_args.out, "Output path (default stdout)");

  std::string suite = "all";
  bool verbose = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--suite", suite, "paper, properties or all")
      ->check(CLI::IsMember({"paper", "properties", "all"}))
      ->capture_default_str();
  verify->add_flag("-v,--verbose", verbose, "Print every check, not only failures");

  std::string sample_file;
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  std::string predicate = "bona-fide";
  auto* sample = app.add_subcommand("sample", "Falsify a channel property by sampling");
  sample->add_option("channel", sample_file, "Channel JSON file")->required();
  sample->add_option("--n", n_samples, "Number of accepted samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample->add_option("--predicate", predicate, "bona-fide or unsteerable-preserving")
      ->check(CLI::IsMember({"bona-fide", "unsteerable-preserving"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  std::cout.precision(17);
  try {
    if (*check) return cmd_check(state_file, tol);
    if (*quantify) return cmd_quantify(state_file, tol);
    if (*channel) {
      return cmd_channel(channel_file, channel_state, classify_flag, channel_out, tol);
    }
    if (*sweep) return cmd_sweep(sweep_args);
    if (*verify) return cmd_verify(suite, verbose);
    if (*sample) return cmd_sample(sample_file, n_samples, seed, predicate, tol);
  } catch (const gsteer::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const gsteer::PhysicalityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPhysicality;
  } catch (const gsteer::SamplingAbort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSamplingAbort;
  } catch (const gsteer::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
