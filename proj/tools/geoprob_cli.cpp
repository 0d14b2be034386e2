// geoprob: command-line front end for the constants, Crofton quadrature,
// Monte Carlo estimators and the verification battery.
//
// Exit codes: 0 success, 1 verification failure, 2 unknown command or
// experiment, 3 invalid arguments.

#include "geoprob/constants.hpp"
#include "geoprob/crofton.hpp"
#include "geoprob/mc.hpp"
#include "geoprob/report.hpp"
#include "geoprob/verify.hpp"

#include "CLI11.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace {

using namespace geoprob;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInvalid = 3;

struct UsageError {
  int code;
  std::string message;
};

struct OutputFlags {
  std::string out;
  std::string format = "json";
  bool compare = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags, bool with_format) {
  cmd->add_option("--out", flags.out, "Write the report to this path instead of stdout");
  cmd->add_flag("--compare", flags.compare, "Omit the timestamp so reports can be diffed");
  if (with_format) cmd->add_option("--format", flags.format, "json or csv");
}

void emit(const OutputFlags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(flags.out, std::ios::binary);
  if (!f) throw UsageError{kExitInvalid, "cannot open --out path " + flags.out};
  f << text;
}

void check_format(const OutputFlags& flags) {
  if (flags.format != "json" && flags.format != "csv") {
    throw UsageError{kExitInvalid, "--format must be json or csv"};
  }
}

std::string echo(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) s += ' ';
    s += argv[i];
  }
  return s;
}

// ---------------------------------------------------------------------------

Report constants_report() {
  Report r;
  for (int n = 1; n <= 8; ++n) r.add("beta_" + std::to_string(n), to_json(PiSum(unit_ball_volume(n))));
  for (int n : {4, 9, 16}) {
    r.add("half_ball_integral_" + std::to_string(n), to_json(PiSum(half_ball_integral(n))));
  }
  for (int n = 2; n <= 6; ++n) {
    r.add("v_b" + std::to_string(n - 1), to_json(PiSum(kingman_v(n))));
  }
  for (int d = 1; d <= 3; ++d) {
    r.add("sylvester_" + std::to_string(d) + "d", to_json(sylvester_probability(d)));
  }
  r.add("half_factorial_minus_half", to_json(PiSum(half_integer_factorial(-1))));
  for (int n : {1, 3, 5}) {
    r.add("half_integer_binomial_" + std::to_string(n), to_json(PiSum(half_integer_binomial(n))));
  }
  for (const auto& c : reference_constants()) r.add(c.name, to_json(c.exact));
  r.add("mean_distance_disk", to_json(exact_reference(Experiment::mean_distance, 2)));
  r.add("expected_tetra_volume_ball", to_json(PiSum(expected_simplex_volume(3))));
  return r;
}

struct EstimateArgs {
  std::string experiment;
  int dim = 0;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  OutputFlags out;
};

int run_estimate(const EstimateArgs& a, const std::string& command) {
  const auto exp = parse_experiment(a.experiment);
  if (!exp) throw UsageError{kExitUnknown, "unknown experiment '" + a.experiment + "'"};
  check_format(a.out);
  int dim = a.dim;
  switch (*exp) {
    case Experiment::simplex:
      if (dim == 0) dim = 2;
      if (dim < 1 || dim > 3) throw UsageError{kExitInvalid, "simplex needs --dim 1, 2 or 3"};
      break;
    case Experiment::sylvester:
      if (dim == 0) dim = 2;
      if (dim < 2 || dim > 3) throw UsageError{kExitInvalid, "sylvester needs --dim 2 or 3"};
      break;
    default:
      if (dim != 0 && dim != 2) throw UsageError{kExitInvalid, a.experiment + " is planar; --dim must be 2"};
      dim = 2;
  }
  if (a.samples < kMinEstimatorSamples) {
    throw UsageError{kExitInvalid, "--samples must be at least " + std::to_string(kMinEstimatorSamples)};
  }
  if (a.workers < 1) throw UsageError{kExitInvalid, "--workers must be at least 1"};

  const Estimate e = run_experiment(*exp, dim, a.samples, a.seed, a.workers);
  const double exact = exact_reference(*exp, dim).to_double();
  if (a.out.format == "csv") {
    std::ostringstream os;
    write_csv(os, e, exact);
    emit(a.out, os.str());
    return kExitOk;
  }
  Report r;
  r.command = command;
  r.seed = a.seed;
  r.include_timestamp = !a.out.compare;
  r.add("estimate", to_json(e));
  r.add("exact", to_json(exact_reference(*exp, dim)));
  r.add("relative_error", std::abs(e.mean - exact) / std::abs(exact));
  r.checks.push_back({"", e.experiment + " within 4 SE of exact", e.mean, exact, 4.0 * e.std_error,
                      e.within_sigma(exact, 4.0), false, ""});
  emit(a.out, r.dump());
  return kExitOk;
}

struct CroftonArgs {
  std::string target;
  std::string shape;
  std::size_t sides = 1024;
  std::size_t panels = kDefaultCroftonPanels;
  OutputFlags out;
};

int run_crofton(const CroftonArgs& a, const std::string& command) {
  constexpr double pi = std::numbers::pi;
  Report r;
  r.command = command;
  r.include_timestamp = !a.out.compare;
  if (a.panels < 1) throw UsageError{kExitInvalid, "--panels must be positive"};
  if (a.target == "length") {
    const std::string shape = a.shape.empty() ? "segment" : a.shape;
    std::optional<Polyline> curve;
    if (shape == "segment") {
      curve.emplace(std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}});
    } else if (shape == "two-segments") {
      curve.emplace(std::vector<Point2>{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
    } else if (shape == "ngon") {
      if (a.sides < 3) throw UsageError{kExitInvalid, "--sides must be at least 3"};
      curve.emplace(Polyline::closed(ConvexBody2::regular_polygon(a.sides).vertices()));
    } else {
      throw UsageError{kExitInvalid, "length shapes: segment, two-segments, ngon"};
    }
    const double measured = crofton_length(*curve, a.panels);
    const double truth = curve->length();
    r.add("shape", shape);
    r.add("panels", a.panels);
    r.add("crofton_length", measured);
    r.add("polyline_length", truth);
    r.checks.push_back({"", "crofton_length vs polyline length", measured, truth, 1e-6,
                        std::abs(measured - truth) <= 1e-6, false, ""});
  } else if (a.target == "moments") {
    const std::string shape = a.shape.empty() ? "disk" : a.shape;
    std::optional<ConvexBody2> body;
    if (shape == "disk") {
      body = ConvexBody2::unit_disk();
    } else if (shape == "square") {
      body = ConvexBody2::unit_square();
    } else if (shape == "ngon") {
      if (a.sides < 3 || a.sides > 64) throw UsageError{kExitInvalid, "moments need 3 <= --sides <= 64"};
      body = ConvexBody2::regular_polygon(a.sides);
    } else {
      throw UsageError{kExitInvalid, "moment shapes: disk, square, ngon"};
    }
    const double area = body->area();
    std::array<double, 5> moments{};
    Json list = Json::array();
    for (int n = 0; n <= 4; ++n) {
      const auto m = chord_moment(*body, n);
      moments[static_cast<std::size_t>(n)] = m.value;
      list.push_back(to_json(m));
    }
    r.add("shape", shape);
    r.add("area", area);
    r.add("perimeter", body->perimeter());
    r.add("chord_moments", list);
    r.add("J0", moments[3] / 3.0);
    r.add("mean_distance", moments[4] / 6.0 / (area * area));
    const bool disk = body->kind() == ConvexBody2::Kind::unit_disk;
    auto push = [&](std::string name, double value, double ref) {
      const double tol = disk ? 1e-8 * std::abs(ref) : 1e-6 * std::max(1.0, std::abs(ref));
      r.checks.push_back({"", std::move(name), value, ref, tol, std::abs(value - ref) <= tol, false, ""});
    };
    push("I0 = perimeter", moments[0], body->perimeter());
    push("I1 = pi A", moments[1], pi * area);
    push("I3 = 3 A^2", moments[3], 3.0 * area * area);
  } else {
    throw UsageError{kExitUnknown, "unknown crofton target '" + a.target + "' (length, moments)"};
  }
  emit(a.out, r.dump());
  return kExitOk;
}

struct DensityArgs {
  std::string which;
  std::uint64_t samples = kDefaultSamples;
  std::size_t bins = kDefaultBins;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  OutputFlags out;
};

int run_density(const DensityArgs& a, const std::string& command) {
  check_format(a.out);
  if (a.which != "2" && a.which != "3" && a.which != "4" && a.which != "max-radius") {
    throw UsageError{kExitUnknown, "unknown density '" + a.which + "' (2, 3, 4, max-radius)"};
  }
  if (a.bins < 10) throw UsageError{kExitInvalid, "--bins must be at least 10"};
  if (a.samples < kMinHistogramSamples) {
    throw UsageError{kExitInvalid, "--samples must be at least " + std::to_string(kMinHistogramSamples)};
  }
  if (a.workers < 1) throw UsageError{kExitInvalid, "--workers must be at least 1"};
  const HistogramGof h = a.which == "max-radius"
                             ? max_radius_gof(a.samples, a.seed, a.workers, a.bins)
                             : secant_offset_histogram(std::stoi(a.which), a.samples, a.bins,
                                                       a.seed, a.workers);
  if (a.out.format == "csv") {
    std::ostringstream os;
    write_csv(os, h);
    emit(a.out, os.str());
    return kExitOk;
  }
  Report r;
  r.command = command;
  r.seed = a.seed;
  r.include_timestamp = !a.out.compare;
  r.add("histogram", to_json(h));
  r.checks.push_back({"", "chi2 below 99th percentile", h.chi2, static_cast<double>(h.dof),
                      h.threshold, h.pass(), false, ""});
  emit(a.out, r.dump());
  return kExitOk;
}

struct VerifyArgs {
  VerifyOptions opt;
  OutputFlags out;
};

int run_verify_cmd(const VerifyArgs& a) {
  if (a.opt.workers < 1) throw UsageError{kExitInvalid, "--workers must be at least 1"};
  if (a.opt.samples < 2) throw UsageError{kExitInvalid, "--samples must be at least 2"};
  const VerifyResult result = run_verify(a.opt);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  Report r = verify_report(a.opt, result);
  r.include_timestamp = !a.out.compare;

  // Table on stderr when the report goes to stdout, else on stdout.
  std::ostream& table = a.out.out.empty() ? std::cerr : std::cout;
  for (const auto& c : result.checks) {
    table << (c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name
          << "  value=" << format_double(c.value) << " ref=" << format_double(c.reference)
          << " tol=" << format_double(c.tolerance) << "\n";
  }
  emit(a.out, r.dump());
  return result.all_pass() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geoprob: integral-geometry constants, Crofton quadrature and Monte Carlo checks"};
  app.require_subcommand(1);

  OutputFlags constants_out;
  auto* constants = app.add_subcommand("constants", "Exact constants with float renderings");
  add_output_flags(constants, constants_out, false);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of a named experiment");
  estimate->add_option("experiment", est.experiment,
                       "simplex, sylvester, center-triangle, boundary-triangle, offcut, mean-distance")
      ->required();
  estimate->add_option("--dim", est.dim, "Ball dimension (simplex: 1-3, sylvester: 2-3)");
  estimate->add_option("--samples", est.samples, "Number of samples");
  estimate->add_option("--seed", est.seed, "Random seed");
  estimate->add_option("--workers", est.workers, "Worker threads (changes the sample streams)");
  add_output_flags(estimate, est.out, true);

  CroftonArgs cro;
  auto* crofton = app.add_subcommand("crofton", "Crofton-formula quadrature checks");
  crofton->add_option("target", cro.target, "length or moments")->required();
  crofton->add_option("--shape", cro.shape, "length: segment, two-segments, ngon; moments: disk, square, ngon");
  crofton->add_option("--sides", cro.sides, "Sides of the regular polygon for --shape ngon");
  crofton->add_option("--panels", cro.panels, "Composite Simpson panels for the angle integral");
  add_output_flags(crofton, cro.out, false);

  DensityArgs den;
  auto* density = app.add_subcommand("density", "Histogram goodness of fit for secant offsets");
  density->add_option("which", den.which, "2, 3, 4 or max-radius")->required();
  density->add_option("--samples", den.samples, "Number of samples");
  density->add_option("--bins", den.bins, "Number of equal-width bins");
  density->add_option("--seed", den.seed, "Random seed");
  density->add_option("--workers", den.workers, "Worker threads");
  add_output_flags(density, den.out, true);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the full verification battery");
  verify->add_option("--samples", ver.opt.samples, "Monte Carlo samples per check");
  verify->add_option("--seed", ver.opt.seed, "Random seed");
  verify->add_option("--workers", ver.opt.workers, "Worker threads");
  verify->add_flag("--strict", ver.opt.strict, "Fail instead of skipping under-sampled checks");
  add_output_flags(verify, ver.out, false);

  if (argc > 1 && argv[1][0] != '-') {
    const std::string_view cmd = argv[1];
    if (cmd != "constants" && cmd != "estimate" && cmd != "crofton" && cmd != "density" &&
        cmd != "verify") {
      std::cerr << "error: unknown command '" << cmd << "'\n";
      return kExitUnknown;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  const std::string command = echo(argc, argv);
  try {
    if (*constants) {
      Report r = constants_report();
      r.command = command;
      r.include_timestamp = !constants_out.compare;
      emit(constants_out, r.dump());
      return kExitOk;
    }
    if (*estimate) return run_estimate(est, command);
    if (*crofton) return run_crofton(cro, command);
    if (*density) return run_density(den, command);
    if (*verify) return run_verify_cmd(ver);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUnknown;
}
