#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "sepscan/error.hpp"
#include "sepscan/gadgets.hpp"
#include "sepscan/io.hpp"
#include "sepscan/nets.hpp"
#include "sepscan/qsep.hpp"
#include "sepscan/states.hpp"
#include "sepscan/witness.hpp"
#include "sepscan/wopt.hpp"

namespace sepscan::cli {

namespace {

int exit_code(const Verdict& v) {
  switch (v.outcome) {
    case Outcome::SeparableAssured:
      return kExitSeparable;
    case Outcome::Entangled:
      return kExitEntangled;
    case Outcome::Unknown:
      break;
  }
  return kExitUnknown;
}

void require_delta(double delta, double upper) {
  if (!(delta > 0.0 && delta <= upper)) {
    throw InputError("--delta must lie in (0, " + std::to_string(upper) + "]");
  }
}

Subsystem parse_side(const std::string& s) {
  if (s == "A" || s == "a") return Subsystem::A;
  if (s == "B" || s == "b") return Subsystem::B;
  throw InputError("--side must be A or B");
}

Json config_json(const RunConfig& c) {
  Json j = {{"command", c.command},
            {"seed", c.seed},
            {"threads", default_threads()},
            {"tolerances",
             {{"eigenvalue", c.onesided.eigenvalue},
              {"norm", c.onesided.norm},
              {"hermitian", tol::kHermitian},
              {"trace", tol::kTrace},
              {"psd", tol::kPsd},
              {"jacobi_relative", tol::kJacobiRelative}}}};
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("input", c.input);
  put("op", c.op);
  put("instance", c.instance);
  put("cert", c.cert);
  put("graph", c.graph);
  put("output", c.output);
  put("witness_out", c.witness_out);
  put("net_cache", c.net_cache);
  if (c.command == "witness" || c.command == "symext" || c.command == "wopt" || c.command == "gadget" ||
      c.command == "net") {
    j["delta"] = c.delta;
  }
  if (c.command == "qsep-reduce") j["delta"] = c.delta_rational;
  if (c.command == "witness" || c.command == "wopt") {
    j["side"] = c.side;
    j["absolute"] = c.absolute;
  }
  if (c.command == "symext") {
    j["kmax"] = c.kmax ? Json(*c.kmax) : Json(nullptr);
    j["ppt"] = c.ppt;
    j["strict"] = c.strict;
    j["scheme"] = c.dykstra ? "dykstra" : "alternating";
    j["max_iters"] = c.extension.max_iters;
    j["residual_tol"] = c.extension.tol;
    j["psd_tol"] = c.extension.psd_tol;
    j["entangled_threshold"] = c.entangled_threshold;
  }
  if (c.command == "gadget") {
    j["clique"] = c.clique;
    j["max_net_points"] = c.max_net_points;
  }
  if (c.command == "net") {
    j["m"] = c.m;
    j["real"] = c.real;
    j["quotient"] = c.quotient;
    j["verify_samples"] = c.verify_samples;
  }
  if (c.command == "state") {
    j["name"] = c.state_name;
    j["m"] = c.m;
    j["n"] = c.n;
    j["w"] = c.w;
    j["terms"] = c.terms;
    j["rational_bits"] = c.rational_bits;
  }
  return j;
}

// Dyadic rounding with the trace defect folded into the last diagonal entry,
// so the result has trace exactly 1.
QMatrix exact_density(const DensityMatrix& rho, int bits) {
  QMatrix q = rational_from_double(rho.matrix(), bits);
  const Rational defect = q.trace_real() - 1;
  q(q.dim() - 1, q.dim() - 1).re -= defect;
  return q;
}

int cmd_test(const RunConfig& c, Json& report) {
  const DensityMatrix rho = density_from_json(read_json_file(c.input));
  const Verdict v = pipeline(rho, c.onesided);
  report["verdict"] = verdict_to_json(v);
  report["symmetrization_residual"] = rho.op().symmetrization_residual();
  return exit_code(v);
}

int cmd_witness(const RunConfig& c, Json& report) {
  require_delta(c.delta, 1.0);
  const DensityMatrix rho = density_from_json(read_json_file(c.input));
  WitnessOptions opts;
  opts.wopt.discretized = parse_side(c.side);
  const DeltaNet net = witness_net(rho, c.delta, opts.wopt, c.net_cache);
  const WitnessResult r = wsep_solve(rho, c.delta, net, opts);
  report["verdict"] = verdict_to_json(r.verdict);
  report["iterations"] = r.iterations;
  report["termination"] = r.termination;
  report["net"] = {{"points", net.size()}, {"delta", net.delta()}};
  Json paths = Json::array();
  if (r.cert) {
    const Json w = witness_to_json(*r.cert, rho.m(), rho.n());
    report["witness"] = w;
    if (!c.witness_out.empty()) {
      write_json_file(c.witness_out, w);
      paths.push_back(c.witness_out);
    }
  }
  report["certificate_paths"] = paths;
  return exit_code(r.verdict);
}

int cmd_symext(const RunConfig& c, Json& report) {
  require_delta(c.delta, 2.0);
  const DensityMatrix rho = density_from_json(read_json_file(c.input));
  ScanOptions opts;
  opts.extension = c.extension;
  opts.extension.scheme = c.dykstra ? ProjectionScheme::Dykstra : ProjectionScheme::Alternating;
  opts.ppt = c.ppt;
  opts.strict = c.strict;
  opts.entangled_threshold = c.entangled_threshold;
  const ScanResult r = separability_scan(rho, c.delta, c.kmax, opts);
  report["verdict"] = verdict_to_json(r.verdict);
  report["kbar"] = r.kbar;
  report["last_k"] = r.last_k;
  Json steps = Json::array();
  for (size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    steps.push_back({{"k", static_cast<int>(i) + 2},
                     {"status", s.status == ExtensionStatus::FoundExtension ? "FoundExtension" : "NoCertificate"},
                     {"residual", s.residual},
                     {"lambda_min", s.lambda_min},
                     {"iterations", s.iterations},
                     {"budget_exhausted", s.budget_exhausted}});
  }
  report["steps"] = steps;
  if (!r.steps.empty() && r.steps.back().witness && !c.witness_out.empty()) {
    write_json_file(c.witness_out, operator_to_json(*r.steps.back().witness, rho.m(), rho.n()));
    report["certificate_paths"] = Json::array({c.witness_out});
  }
  return exit_code(r.verdict);
}

int cmd_wopt(const RunConfig& c, Json& report) {
  require_delta(c.delta, 2.0);
  const OperatorFile f = operator_from_json(read_json_file(c.op));
  WoptOptions opts;
  opts.discretized = parse_side(c.side);
  opts.mode = c.absolute ? WoptMode::Absolute : WoptMode::Signed;
  const int side = opts.discretized == Subsystem::A ? f.m : f.n;
  const DeltaNet net = cached_build_net(side, c.delta, NetOptions{NetField::Complex, true}, c.net_cache);
  const WoptResult r = wopt_max(f.a, f.m, f.n, net, opts);
  Json alpha = Json::array();
  Json beta = Json::array();
  for (Eigen::Index i = 0; i < r.maximizer.alpha.size(); ++i)
    alpha.push_back({r.maximizer.alpha[i].real(), r.maximizer.alpha[i].imag()});
  for (Eigen::Index i = 0; i < r.maximizer.beta.size(); ++i)
    beta.push_back({r.maximizer.beta[i].real(), r.maximizer.beta[i].imag()});
  report["value"] = r.value;
  report["guarantee"] = r.guarantee;
  report["net_index"] = r.net_index;
  report["net"] = {{"points", net.size()}, {"delta", net.delta()}};
  report["maximizer"] = {{"alpha", alpha}, {"beta", beta}};
  return kExitSeparable;
}

int cmd_qsep_verify(const RunConfig& c, Json& report) {
  const QsepInstance inst = instance_from_json(read_json_file(c.instance));
  const QsepCertificate cert = certificate_from_json(read_json_file(c.cert));
  const QsepVerification v = verify_certificate(inst, cert);
  report["accepted"] = v.accepted;
  report["normalization_ok"] = v.normalization_ok;
  report["distance_ok"] = v.distance_ok;
  report["normalization_defect"] = rational_to_json(v.normalization_defect);
  report["distance_sq"] = rational_to_json(v.distance_sq);
  report["bits"] = certificate_bits(inst.delta_p);
  const Verdict verdict = v.accepted ? Verdict::separable("qsep_certificate", true)
                                     : Verdict::unknown("qsep_certificate_rejected");
  report["verdict"] = verdict_to_json(verdict);
  return exit_code(verdict);
}

int cmd_qsep_reduce(const RunConfig& c, Json& report) {
  int m = 0;
  int n = 0;
  const QMatrix rho = qmatrix_from_json(read_json_file(c.input), m, n);
  if (c.delta_rational.empty()) throw InputError("--delta is required");
  const Rational delta = parse_rational(c.delta_rational);
  const QsepInstance inst = reduce_wmem_to_qsep(m, n, rho, delta);
  const Json j = instance_to_json(inst);
  report["bits"] = certificate_bits(inst.delta_p);
  report["instance"] = j;
  if (!c.output.empty()) {
    write_json_file(c.output, j);
    report["certificate_paths"] = Json::array({c.output});
  }
  return kExitSeparable;
}

int cmd_gadget(const RunConfig& c, Json& report) {
  require_delta(c.delta, 2.0);
  const Graph g = graph_from_json(read_json_file(c.graph));
  const MotzkinStraus ms = motzkin_straus_value(g);
  const ChainReport r = verify_chain(g, c.clique, c.delta, c.max_net_points);
  report["kappa"] = r.kappa;
  report["motzkin_straus"] = {{"value", rational_to_json(ms.value)},
                              {"grid_max", ms.grid_max},
                              {"grid_denominator", ms.grid_denominator}};
  report["chain"] = {{"c", r.c},
                     {"expected_yes", r.expected_yes},
                     {"chain_yes", r.chain_yes},
                     {"consistent", r.consistent},
                     {"h_value", r.h_value},
                     {"f_value", r.f_value},
                     {"wval_value", r.wval_value},
                     {"guarantee", r.guarantee},
                     {"gamma", rational_to_json(r.gamma)},
                     {"epsilon", rational_to_json(r.epsilon)},
                     {"net_points", r.net_points}};
  return r.consistent ? kExitSeparable : kExitUnknown;
}

int cmd_net(const RunConfig& c, Json& report) {
  require_delta(c.delta, 2.0);
  const NetOptions opts{c.real ? NetField::Real : NetField::Complex, c.quotient};
  const DeltaNet net = cached_build_net(c.m, c.delta, opts, c.net_cache);
  report["points"] = net.size();
  report["grid"] = net.grid();
  report["size_bound"] = net_size_constant(c.m) * std::pow(1.0 + 2.0 / c.delta, 2.0 * c.m);
  if (c.verify_samples > 0) {
    const CoverageReport cov = verify_coverage(net, c.verify_samples, c.seed);
    report["coverage"] = {{"max_gap", cov.max_gap}, {"samples", cov.samples}, {"pass", cov.pass}};
  }
  if (!c.output.empty()) {
    Json pts = Json::array();
    for (size_t i = 0; i < net.size(); ++i) {
      Json p = Json::array();
      const Complex* x = net.point_data(i);
      for (int k = 0; k < net.m(); ++k) p.push_back({x[k].real(), x[k].imag()});
      pts.push_back(std::move(p));
    }
    write_json_file(c.output, {{"m", net.m()}, {"delta", net.delta()}, {"points", pts}});
    report["certificate_paths"] = Json::array({c.output});
  }
  return kExitSeparable;
}

int cmd_state(const RunConfig& c, Json& report) {
  StateParams p;
  p.m = c.m;
  p.n = c.n;
  p.w = c.w;
  p.terms = c.terms;
  p.seed = c.seed;
  const DensityMatrix rho = state_library(c.state_name, p);
  Json state = density_to_json(rho);
  report["state"] = state;
  if (c.rational_bits > 0) {
    report["rational"] = qmatrix_to_json(exact_density(rho, c.rational_bits), rho.m(), rho.n());
  }
  if (!c.output.empty()) {
    write_json_file(c.output, c.rational_bits > 0 ? report["rational"] : state);
    report["certificate_paths"] = Json::array({c.output});
  }
  return kExitSeparable;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.threads > 0) set_default_threads(config.threads);
  Json report;
  report["config"] = config_json(config);
  const auto start = std::chrono::steady_clock::now();
  int code = kExitInternal;
  try {
    if (config.command == "test") {
      code = cmd_test(config, report);
    } else if (config.command == "witness") {
      code = cmd_witness(config, report);
    } else if (config.command == "symext") {
      code = cmd_symext(config, report);
    } else if (config.command == "wopt") {
      code = cmd_wopt(config, report);
    } else if (config.command == "qsep-verify") {
      code = cmd_qsep_verify(config, report);
    } else if (config.command == "qsep-reduce") {
      code = cmd_qsep_reduce(config, report);
    } else if (config.command == "gadget") {
      code = cmd_gadget(config, report);
    } else if (config.command == "net") {
      code = cmd_net(config, report);
    } else if (config.command == "state") {
      code = cmd_state(config, report);
    } else {
      throw InputError("unknown command '" + config.command + "'");
    }
  } catch (const InputError& e) {
    err << "sepscan: input error: " << e.what() << '\n';
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = kExitInput;
  } catch (const ConfigError& e) {
    err << "sepscan: configuration error: " << e.what() << '\n';
    report["error"] = {{"kind", "config"}, {"message", e.what()}};
    code = kExitConfig;
  } catch (const NumericalBreakdown& e) {
    err << "sepscan: numerical breakdown: " << e.what() << '\n';
    report["verdict"] = verdict_to_json(Verdict::unknown("numerical_breakdown"));
    code = kExitUnknown;
  } catch (const std::exception& e) {
    err << "sepscan: internal error: " << e.what() << '\n';
    report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    code = kExitInternal;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  report["exit_code"] = code;
  report["timings"] = {{"total_ms", elapsed.count()}};
  out << report.dump(2) << '\n';
  return code;
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("SEPSCAN_NET_CACHE")) c.net_cache = env;

  CLI::App app{"Bipartite separability toolkit", "sepscan"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_option("--threads", c.threads, "Cap on worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--eig-tol", c.onesided.eigenvalue, "Eigenvalue tolerance for one-sided tests")
      ->capture_default_str();
  app.add_option("--norm-tol", c.onesided.norm, "Norm tolerance for one-sided tests")->capture_default_str();

  auto* test = app.add_subcommand("test", "Run the one-sided criteria pipeline");
  test->add_option("--input", c.input, "Density matrix JSON")->required();

  auto* witness = app.add_subcommand("witness", "Cutting-plane witness search");
  witness->add_option("--input", c.input, "Density matrix JSON")->required();
  witness->add_option("--delta", c.delta, "Accuracy in (0, 1]")->required();
  witness->add_option("--net-cache", c.net_cache, "Net cache directory");
  witness->add_option("--witness-out", c.witness_out, "Write the witness operator here");
  witness->add_option("--side", c.side, "Factor scanned by the net (A or B)")->capture_default_str();

  auto* symext = app.add_subcommand("symext", "Symmetric-extension hierarchy scan");
  int kmax = 0;
  symext->add_option("--input", c.input, "Density matrix JSON")->required();
  symext->add_option("--delta", c.delta, "Trace-norm accuracy")->required();
  symext->add_option("--kmax", kmax, "Largest k to try (default kbar)");
  symext->add_flag("--ppt,!--no-ppt", c.ppt, "Also require PPT extensions")->capture_default_str();
  symext->add_flag("--strict", c.strict, "Confirm residual-based entanglement with the witness search");
  symext->add_flag("--dykstra", c.dykstra, "Use Dykstra-corrected projections");
  symext->add_option("--max-iters", c.extension.max_iters, "Projection iterations per k")->capture_default_str();
  symext->add_option("--residual-tol", c.extension.tol, "Extension residual tolerance")->capture_default_str();
  symext->add_option("--psd-tol", c.extension.psd_tol, "Accepted negative eigenvalue")->capture_default_str();
  symext->add_option("--threshold", c.entangled_threshold, "Residual that counts as entangled")
      ->capture_default_str();
  symext->add_option("--witness-out", c.witness_out, "Write the heuristic witness here");

  auto* wopt = app.add_subcommand("wopt", "Net maximum of a Hermitian form over product states");
  wopt->add_option("--op", c.op, "Operator JSON")->required();
  wopt->add_option("--delta", c.delta, "Net covering radius")->required();
  wopt->add_option("--net-cache", c.net_cache, "Net cache directory");
  wopt->add_option("--side", c.side, "Factor scanned by the net (A or B)")->capture_default_str();
  wopt->add_flag("--absolute", c.absolute, "Maximize the magnitude");

  auto* qv = app.add_subcommand("qsep-verify", "Exact certificate check");
  qv->add_option("--instance", c.instance, "Instance JSON")->required();
  qv->add_option("--cert", c.cert, "Certificate JSON")->required();

  auto* qr = app.add_subcommand("qsep-reduce", "Build a QSEP instance from an exact density matrix");
  qr->add_option("--input", c.input, "Rational density matrix JSON")->required();
  qr->add_option("--delta", c.delta_rational, "Accuracy as a rational, e.g. 1/10")->required();
  qr->add_option("--output", c.output, "Write the instance here");

  auto* gadget = app.add_subcommand("gadget", "CLIQUE to WVAL reduction chain check");
  gadget->add_option("--graph", c.graph, "Graph JSON")->required();
  gadget->add_option("--clique", c.clique, "Clique threshold c")->required();
  gadget->add_option("--delta", c.delta, "Net covering radius")->required();
  gadget->add_option("--max-net-points", c.max_net_points, "Net size guard")->capture_default_str();

  auto* net = app.add_subcommand("net", "Build, cache and check a delta-net");
  net->add_option("--m", c.m, "Dimension")->required()->check(CLI::PositiveNumber);
  net->add_option("--delta", c.delta, "Covering radius")->required();
  net->add_flag("--real", c.real, "Real sphere");
  net->add_flag("--quotient", c.quotient, "One point per global phase");
  net->add_option("--verify", c.verify_samples, "Monte-Carlo coverage samples");
  net->add_option("--net-cache", c.net_cache, "Net cache directory");
  net->add_option("--output", c.output, "Write the points as JSON");

  auto* state = app.add_subcommand("state", "Emit a library state");
  state->add_option("--name", c.state_name, "maxmixed|bell|werner|product_mixture|random_full_rank")
      ->required();
  state->add_option("--m", c.m, "Dimension of A")->capture_default_str();
  state->add_option("--n", c.n, "Dimension of B")->capture_default_str();
  state->add_option("--w", c.w, "Werner weight")->capture_default_str();
  state->add_option("--terms", c.terms, "Product mixture terms")->capture_default_str();
  state->add_option("--rational-bits", c.rational_bits, "Also emit an exact dyadic form");
  state->add_option("--output", c.output, "Write the state here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sepscan: " << e.what() << '\n';
    return kExitInput;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (kmax > 0) c.kmax = kmax;
  return run(c, out, err);
}

}  // namespace sepscan::cli
