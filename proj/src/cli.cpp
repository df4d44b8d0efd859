#include "postselect/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "postselect/channel.hpp"
#include "postselect/error.hpp"
#include "postselect/json_io.hpp"
#include "postselect/montecarlo.hpp"
#include "postselect/realize.hpp"
#include "postselect/suites.hpp"

namespace postselect::cli {

namespace {

using io::json;

std::uint64_t require_seed(const CommandSpec& spec) {
  if (spec.seed) return *spec.seed;
  throw Error(ErrorCode::MissingSeed, spec.subcommand + " is randomized: pass --seed or set POSTSELECT_SEED");
}

void require_input(const CommandSpec& spec) {
  if (spec.input_path.empty()) throw io::ParseError(spec.subcommand + " needs --input");
}

std::string scaling_stem(const CommandSpec& spec) {
  return "mc-scaling_n" + std::to_string(spec.n) + "_ell" + std::to_string(spec.ell) + ".json";
}

std::string default_output(const CommandSpec& spec) {
  if (!spec.input_path.empty()) {
    const std::filesystem::path in(spec.input_path);
    return (in.parent_path() / (in.stem().string() + "." + spec.subcommand + ".json")).string();
  }
  if (spec.subcommand == "mc-scaling") return scaling_stem(spec);
  return "-";
}

json do_realize(const CommandSpec& spec) {
  require_input(spec);
  const ComplexMatrix l = io::matrix_from_json(io::read_file(spec.input_path));
  return io::dilation_to_json(exact_realize(l, spec.literal ? Scaling::Literal : Scaling::Optimal));
}

json do_classify(const CommandSpec& spec) {
  require_input(spec);
  const Suite s = io::suite_from_json(io::read_file(spec.input_path));
  return {{"verdict", to_string(classify_single_qubit(s))}};
}

json do_fit(const CommandSpec& spec) {
  require_input(spec);
  if (spec.restarts <= 0 || spec.max_iters <= 0) {
    throw Error(ErrorCode::BadOptions, "--restarts and --max-iters must be positive");
  }
  if (spec.eps.size() > 1 || (spec.eps.size() == 1 && !(spec.eps[0] > 0.0))) {
    throw Error(ErrorCode::BadOptions, "suite-fit takes at most one positive --eps");
  }
  FitOptions opts;
  opts.restarts = spec.restarts;
  opts.max_iters = spec.max_iters;
  opts.seed = require_seed(spec);
  const Suite s = io::suite_from_json(io::read_file(spec.input_path));
  const FitResult fit = fit_suite(s, opts);
  json out = io::fit_to_json(fit);
  if (!spec.eps.empty()) out["approximable"] = fit.max_fs < spec.eps[0];
  return out;
}

json do_exact(const CommandSpec& spec) {
  require_input(spec);
  const Suite s = io::suite_from_json(io::read_file(spec.input_path));
  const auto l = exact_realize_suite(s);
  const auto r = suite_rho(s);
  return {{"realizable", l.has_value()},
          {"L", l ? io::matrix_to_json(*l) : json(nullptr)},
          {"rho", r ? json(*r) : json(nullptr)}};
}

json do_scaling(const CommandSpec& spec, std::ostream& out, const std::string& json_path) {
  if (spec.eps.empty()) throw Error(ErrorCode::BadOptions, "mc-scaling needs --eps");
  if (spec.samples == 0 || spec.restarts <= 0 || spec.max_iters <= 0) {
    throw Error(ErrorCode::BadOptions, "--samples, --restarts and --max-iters must be positive");
  }
  if (spec.n < 2 || spec.ell < 1) throw Error(ErrorCode::BadOptions, "need n >= 2 and ell >= 1");
  const std::uint64_t seed = require_seed(spec);
  SamplingOptions opts;
  opts.fit.max_iters = spec.max_iters;
  opts.threads = spec.threads;
  // The pipeline default of 5 restarts applies unless --restarts was given.
  if (spec.restarts != CommandSpec{}.restarts) opts.fit.restarts = spec.restarts;

  const auto dist = approximable_distances(spec.n, spec.ell, spec.samples, seed, opts);
  const auto fractions = fractions_below(dist, spec.eps);

  std::ostringstream csv;
  csv << "eps,fraction\n";
  csv.precision(17);
  for (std::size_t i = 0; i < spec.eps.size(); ++i) csv << spec.eps[i] << ',' << fractions[i] << '\n';
  std::string csv_path = spec.csv_path;
  if (csv_path.empty()) {
    const std::string stem = json_path == "-" ? scaling_stem(spec) : json_path;
    csv_path = std::filesystem::path(stem).replace_extension(".csv").string();
  }
  if (csv_path == "-") {
    out << csv.str();
  } else {
    io::write_file(csv_path, csv.str());
  }
  return io::report_to_json(fit_scaling(spec.n, spec.ell, spec.eps, fractions, spec.samples, seed));
}

json do_channel(const CommandSpec& spec) {
  require_input(spec);
  const json in = io::read_file(spec.input_path);
  const ComplexMatrix u = io::matrix_from_json(in.is_object() && in.contains("U") ? in.at("U") : in);
  const KrausChannel ch = build_kraus(u);
  json out = io::channel_to_json(ch);
  if (!spec.rho_path.empty()) {
    const json r = io::read_file(spec.rho_path);
    const DensityMatrix rho(io::matrix_from_json(r.is_object() && r.contains("rho") ? r.at("rho") : r));
    out["output_state"] = io::matrix_to_json(apply_channel(ch, rho).matrix());
    json probs = json::array();
    for (std::size_t i = 0; i < ch.kraus().size(); ++i) probs.push_back(postselect_branch(ch, i, rho).prob);
    out["branch_probabilities"] = std::move(probs);
  }
  return out;
}

RiemannPoint riemann_token(const std::string& tok) {
  if (tok == "inf") return RiemannPoint::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return RiemannPoint::from_value(v);
  } catch (const std::exception&) {
  }
  throw io::ParseError("bad point \"" + tok + "\" (expected a real number or inf)");
}

const char* configuration_name(TetradConfiguration c) {
  switch (c) {
    case TetradConfiguration::Distinct: return "Distinct";
    case TetradConfiguration::TwoOneOne: return "TwoOneOne";
    case TetradConfiguration::TwoTwo: return "TwoTwo";
    case TetradConfiguration::ThreeOne: return "ThreeOne";
    case TetradConfiguration::Four: return "Four";
  }
  return "Unknown";
}

json do_cross_ratio(const CommandSpec& spec) {
  std::vector<RiemannPoint> pts;
  if (!spec.points.empty()) {
    std::stringstream ss(spec.points);
    for (std::string tok; std::getline(ss, tok, ',');) pts.push_back(riemann_token(tok));
  } else {
    require_input(spec);
    const json in = io::read_file(spec.input_path);
    const json& arr = in.is_object() && in.contains("points") ? in.at("points") : in;
    if (!arr.is_array()) throw io::ParseError("cross-ratio input needs a \"points\" array");
    for (const auto& e : arr) pts.push_back(io::riemann_from_json(e));
  }
  if (pts.size() != 4) throw io::ParseError("cross-ratio needs exactly four points");
  const RiemannPoint chi = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
  return {{"chi", io::riemann_to_json(chi)},
          {"value", chi.is_infinite() ? json("inf") : io::complex_to_json(chi.value())},
          {"configuration", configuration_name(tetrad_configuration(pts[0], pts[1], pts[2], pts[3]))}};
}

}  // namespace

int run(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const std::string out_path = spec.output_path.empty() ? default_output(spec) : spec.output_path;
  try {
    json result;
    if (spec.subcommand == "realize") {
      result = do_realize(spec);
    } else if (spec.subcommand == "suite-classify") {
      result = do_classify(spec);
    } else if (spec.subcommand == "suite-fit") {
      result = do_fit(spec);
    } else if (spec.subcommand == "suite-exact") {
      result = do_exact(spec);
    } else if (spec.subcommand == "mc-scaling") {
      result = do_scaling(spec, out, out_path);
    } else if (spec.subcommand == "channel") {
      result = do_channel(spec);
    } else if (spec.subcommand == "cross-ratio") {
      result = do_cross_ratio(spec);
    } else {
      err << "unknown subcommand: " << spec.subcommand << '\n';
      return kExitUsage;
    }
    const std::string text = io::dump(result);
    if (out_path == "-") {
      out << text;
    } else {
      io::write_file(out_path, text);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << io::dump({{"error", std::string(error_name(e.code()))}, {"detail", e.detail()}});
    return kExitDomain;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Post-selected realizations, projective suites and scaling experiments", "postselect"};
  app.require_subcommand(1);
  CommandSpec spec;
  std::uint64_t seed = 0;

  auto add_io = [&](CLI::App* sub, bool input_required) {
    auto* opt = sub->add_option("--input,-i", spec.input_path, "input JSON file");
    if (input_required) opt->required();
    sub->add_option("--output,-o", spec.output_path, "output path, - for stdout");
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "random seed"); };

  auto* realize = app.add_subcommand("realize", "one-ancilla unitary realizing an operator");
  add_io(realize, true);
  auto* opt_flag = realize->add_flag("--optimal", "scale by 1/sqrt(lambda_max) (default)");
  realize->add_flag("--literal", spec.literal, "keep L unscaled when weakly contracting")->excludes(opt_flag);

  auto* classify = app.add_subcommand("suite-classify", "single-qubit approximability class");
  add_io(classify, true);

  auto* fit = app.add_subcommand("suite-fit", "approximate a suite by a projective-linear one");
  add_io(fit, true);
  fit->add_option("--restarts", spec.restarts);
  fit->add_option("--max-iters", spec.max_iters);
  fit->add_option("--eps", spec.eps, "report approximability at this eps");
  add_seed(fit);

  auto* exact = app.add_subcommand("suite-exact", "exact realization of a suite");
  add_io(exact, true);

  auto* scaling = app.add_subcommand("mc-scaling", "approximable fraction versus eps");
  add_io(scaling, false);
  scaling->add_option("--n", spec.n)->required();
  scaling->add_option("--ell", spec.ell)->required();
  scaling->add_option("--eps", spec.eps)->delimiter(',')->required();
  scaling->add_option("--samples", spec.samples);
  scaling->add_option("--restarts", spec.restarts);
  scaling->add_option("--max-iters", spec.max_iters);
  scaling->add_option("--threads", spec.threads, "worker threads, 0 for all cores");
  scaling->add_option("--csv", spec.csv_path, "CSV table path");
  add_seed(scaling);

  auto* channel = app.add_subcommand("channel", "Kraus channel of a dilation");
  add_io(channel, true);
  channel->add_option("--rho", spec.rho_path, "density matrix to push through the channel");

  auto* cross = app.add_subcommand("cross-ratio", "cross-ratio of four Riemann-sphere points");
  add_io(cross, false);
  cross->add_option("--points", spec.points, "z1,z2,z3,z4 with entries real or inf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) spec.subcommand = sub->get_name();
  auto* active = app.get_subcommands().front();
  const CLI::Option* seed_opt = active->get_option_no_throw("--seed");
  if (seed_opt != nullptr && seed_opt->count() > 0) {
    spec.seed = seed;
  } else if (const char* env = std::getenv("POSTSELECT_SEED")) {
    try {
      std::size_t used = 0;
      spec.seed = std::stoull(env, &used);
      if (env[used] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: POSTSELECT_SEED is not an unsigned integer\n";
      return kExitIo;
    }
  }
  return run(spec, out, err);
}

}  // namespace postselect::cli
