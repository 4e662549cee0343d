/*
   Copyright 2026 The qdelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// qdelay: certify, sweep, simulate, reduce, verify-cert.
// Exit codes: 0 success or certified, 1 input error, 2 negative but valid outcome.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdelay/certifier/certificate_io.h"
#include "qdelay/certifier/certify.h"
#include "qdelay/poly/text.h"
#include "qdelay/quantum/reduction.h"
#include "qdelay/simulator/ensemble.h"

namespace {

using namespace qdelay;
using json = nlohmann::ordered_json;

constexpr int kOk = 0, kInputError = 1, kNegative = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SystemArgs {
  bool preset = false;
  int spin = 0;
  std::vector<std::string> k;
  std::string eta;
  std::string target;
  std::string tau;
  std::string system_file;
  int v0_degree = 0, v1_degree = 0, multiplier_degree = -1;
};

struct Resolved {
  certifier::DelaySystem system;
  certifier::DecisionTemplate tmpl;
  std::optional<quantum::SmeModel> model;
  json params;
};

void add_system_options(CLI::App* cmd, SystemArgs& a, bool with_tau = true) {
  auto* preset = cmd->add_flag("--paper", a.preset, "spin-1/2, k = (1, 4), eta = 0.9, tau = 0.3, target up");
  auto* spin = cmd->add_option("--spin", a.spin, "built-in spin system with N levels");
  auto* k = cmd->add_option("--k", a.k, "control gains k1 k2")->expected(2);
  auto* eta = cmd->add_option("--eta", a.eta, "measurement efficiency in (0, 1]");
  auto* target = cmd->add_option("--target", a.target, "target eigenstate: up or down");
  auto* file = cmd->add_option("--system", a.system_file, "system file");
  std::vector<CLI::Option*> pinned = {spin, k, eta, target, file};
  if (with_tau) pinned.push_back(cmd->add_option("--tau", a.tau, "delay (exact decimal or p/q)"));
  for (auto* o : pinned) preset->excludes(o);
  file->excludes(spin);
  file->excludes(k);
  file->excludes(eta);
  file->excludes(target);
  cmd->add_option("--v0-degree", a.v0_degree, "degree of V0");
  cmd->add_option("--v1-degree", a.v1_degree, "degree of V1");
  cmd->add_option("--multiplier-degree", a.multiplier_degree, "degree of the multipliers (even)");
}

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw InputError("invalid " + what + " '" + text + "': " + e.what());
  }
}

Resolved resolve(const SystemArgs& a, bool need_tau = true) {
  Resolved r;
  if (!a.system_file.empty()) {
    certifier::SystemSpec spec;
    try {
      spec = certifier::read_system_spec(a.system_file);
    } catch (const std::exception& e) {
      throw InputError(a.system_file + ": " + e.what());
    }
    r.system = spec.system;
    r.tmpl = spec.tmpl;
    if (!a.tau.empty()) r.system.tau = rational_arg(a.tau, "tau");
    r.params["source"] = "file";
    r.params["system_file"] = a.system_file;
  } else if (a.preset || a.spin > 0) {
    const int N = a.preset ? 2 : a.spin;
    Rational k1 = 1, k2 = 4, eta = Rational(9, 10), tau = Rational(3, 10);
    quantum::Target target = quantum::Target::Up;
    if (!a.preset) {
      if (a.k.size() != 2) throw InputError("--spin needs --k k1 k2");
      k1 = rational_arg(a.k[0], "k1");
      k2 = rational_arg(a.k[1], "k2");
      eta = a.eta.empty() ? Rational(1) : rational_arg(a.eta, "eta");
      try {
        if (!a.target.empty()) target = quantum::parse_target(a.target);
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
      if (a.tau.empty() && need_tau) throw InputError("--tau is required");
      tau = a.tau.empty() ? Rational(0) : rational_arg(a.tau, "tau");
    }
    if (sgn(tau) < 0) throw InputError("tau must be nonnegative");
    try {
      r.model = quantum::make_sme_model(static_cast<std::size_t>(N), k1, k2, eta, target);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    r.params["source"] = a.preset ? "preset" : "spin";
    r.params["N"] = N;
    r.params["k1"] = to_string(k1);
    r.params["k2"] = to_string(k2);
    r.params["eta"] = to_string(eta);
    r.params["target"] = quantum::to_string(target);
    if (N == 2) {
      r.system = quantum::reduce_spin_half(*r.model, tau);
    } else {
      r.system.tau = tau;
      r.system.name = "spin N=" + std::to_string(N);
    }
  } else {
    throw InputError("choose a system with --paper, --spin or --system");
  }
  if (a.v0_degree > 0) r.tmpl.v0_degree = a.v0_degree;
  if (a.v1_degree > 0) r.tmpl.v1_degree = a.v1_degree;
  if (a.multiplier_degree >= 0) r.tmpl.multiplier_degree = a.multiplier_degree;
  r.params["tau"] = to_string(r.system.tau);
  r.params["v0_degree"] = r.tmpl.v0_degree;
  r.params["v1_degree"] = r.tmpl.v1_degree;
  r.params["multiplier_degree"] = r.tmpl.multiplier_degree;
  r.params["epsilon"] = to_string(r.tmpl.epsilon);
  if (r.system.n > 0) {
    try {
      certifier::check_structure(r.system, r.tmpl);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    r.params["fingerprint"] = certifier::fingerprint(r.system);
  }
  return r;
}

const certifier::DelaySystem& reduced_system(const Resolved& r) {
  if (r.system.n == 0) throw InputError("this command needs a polynomial system (spin N = 2 or --system)");
  return r.system;
}

void write_manifest(const std::string& path, const json& manifest) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest '" + path + "'");
  out << manifest.dump(2) << '\n';
}

json manifest_head(const std::string& command, const Resolved& r) {
  json m;
  m["tool"] = "qdelay";
  m["format"] = 1;
  m["command"] = command;
  m["system"] = r.params;
  return m;
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

// ---- certify

struct CertifyArgs {
  SystemArgs sys;
  std::string cert_path = "certificate.txt";
  std::string manifest;
  bool skip_validation = false;
};

void report_validation(const certifier::DelaySystem& s, bool skip) {
  if (skip || s.builtin_invariant) return;
  const auto v = certifier::validate(s);
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
  if (!v.ok) throw InputError("invalid system: " + v.error);
}

int cmd_certify(const CertifyArgs& a) {
  const Resolved r = resolve(a.sys);
  const auto& s = reduced_system(r);
  report_validation(s, a.skip_validation);
  const auto res = certifier::certify(s, r.tmpl);
  std::cout << "status " << certifier::to_string(res.status) << '\n';
  std::cout << "sdp " << sdp::to_string(res.sdp_status) << " after " << res.iterations << " iterations, "
            << res.rounds << " round(s)\n";
  std::cout << "seconds " << std::fixed << std::setprecision(3) << res.seconds << std::defaultfloat << '\n';
  json m = manifest_head("certify", r);
  m["result"] = certifier::to_string(res.status);
  if (res.certificate) {
    std::ofstream out(a.cert_path);
    if (!out) throw InputError("cannot write certificate '" + a.cert_path + "'");
    certifier::write_certificate(*res.certificate, out);
    std::cout << "identity residual " << res.residual_inf << '\n';
    std::cout << "certificate " << a.cert_path << '\n';
    m["certificate"] = a.cert_path;
  } else {
    for (const auto& d : res.diagnostics) std::cout << "  " << d << '\n';
  }
  write_manifest(a.manifest.empty() ? a.cert_path + ".manifest.json" : a.manifest, m);
  return res.status == certifier::CertifyStatus::Certified ? kOk : kNegative;
}

// ---- sweep-delay

struct SweepArgs {
  SystemArgs sys;
  std::string tau_min = "0", tau_max = "1", tol = "0.05";
  std::string csv = "sweep.csv";
  std::string manifest;
};

int cmd_sweep(const SweepArgs& a) {
  const Resolved r = resolve(a.sys, false);
  const auto& s = reduced_system(r);
  report_validation(s, false);
  const Rational lo = rational_arg(a.tau_min, "tau-min"), hi = rational_arg(a.tau_max, "tau-max"),
                 tol = rational_arg(a.tol, "tol");
  if (sgn(tol) <= 0 || sgn(lo) < 0 || hi < lo) throw InputError("need 0 <= tau-min <= tau-max and tol > 0");
  const int workers = sim::default_workers();
  const auto res = certifier::max_certified_delay(s, r.tmpl, lo, hi, tol, workers);
  {
    std::ofstream out(a.csv);
    if (!out) throw InputError("cannot write '" + a.csv + "'");
    certifier::write_sweep_csv(res, out);
  }
  for (const auto& row : res.rows)
    std::cout << "tau " << to_string(row.tau) << ' ' << certifier::to_string(row.status) << ' ' << std::fixed
              << std::setprecision(3) << row.seconds << std::defaultfloat << " s\n";
  json m = manifest_head("sweep-delay", r);
  m["tau_min"] = to_string(lo);
  m["tau_max"] = to_string(hi);
  m["tol"] = to_string(tol);
  m["csv"] = a.csv;
  if (res.max_certified) {
    std::cout << "max certified delay " << to_string(*res.max_certified) << " (" << fmt(res.max_certified->get_d())
              << ")\n";
    m["max_certified"] = to_string(*res.max_certified);
  } else {
    std::cout << "no certified prefix\n";
    m["max_certified"] = nullptr;
  }
  if (!res.non_contiguous.empty()) {
    std::cout << "certified outside the prefix:";
    json nc = json::array();
    for (const auto& t : res.non_contiguous) {
      std::cout << ' ' << to_string(t);
      nc.push_back(to_string(t));
    }
    std::cout << '\n';
    m["non_contiguous"] = nc;
  }
  write_manifest(a.manifest.empty() ? a.csv + ".manifest.json" : a.manifest, m);
  return res.max_certified ? kOk : kNegative;
}

// ---- simulate

struct SimulateArgs {
  SystemArgs sys;
  std::string model = "auto";  // sme, reduced
  std::string initial;         // up, down, mixed or p in [0, 1]; x1,x2,... for --system
  double dt = 1e-3;
  double horizon = 15.0;
  std::size_t paths = 30;
  std::uint64_t seed = 1;
  std::size_t record_every = 10;
  bool no_control = false;
  bool no_noise = false;
  std::string out_dir = ".";
};

quantum::DensityMatrix spin_initial(const quantum::SmeModel& m, const std::string& text) {
  const std::size_t N = m.ops.N;
  const quantum::Target opposite = m.target == quantum::Target::Up ? quantum::Target::Down : quantum::Target::Up;
  if (text.empty()) return quantum::DensityMatrix(quantum::HermitianMatrix::from_dense(quantum::eigenprojector(N, opposite)));
  if (text == "up" || text == "down")
    return quantum::DensityMatrix(
        quantum::HermitianMatrix::from_dense(quantum::eigenprojector(N, quantum::parse_target(text))));
  if (text == "mixed") return quantum::DensityMatrix::maximally_mixed(N);
  double p = 0.0;
  try {
    std::size_t pos = 0;
    p = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw InputError("--initial must be up, down, mixed or a probability, got '" + text + "'");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("--initial probability must lie in [0, 1]");
  quantum::HermitianMatrix h(N);
  h.set(0, 0, p);
  h.set(N - 1, N - 1, 1.0 - p);
  return quantum::DensityMatrix(std::move(h));
}

std::vector<double> parse_point(const std::string& text, std::size_t n) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(rational_arg(item, "coordinate").get_d());
  if (x.size() != n) throw InputError("--initial needs " + std::to_string(n) + " comma-separated coordinates");
  return x;
}

int cmd_simulate(const SimulateArgs& a) {
  const Resolved r = resolve(a.sys);
  sim::SimConfig c;
  c.dt = a.dt;
  c.horizon = a.horizon;
  c.tau = r.system.tau.get_d();
  c.seed = a.seed;
  c.paths = a.paths;
  c.record_every = a.record_every;
  c.noise = !a.no_noise;
  try {
    c.validate();
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::string mode = a.model;
  if (mode == "auto") mode = r.model ? "sme" : "reduced";
  if (mode != "sme" && mode != "reduced") throw InputError("--model must be sme or reduced");
  if (mode == "sme" && !r.model) throw InputError("--model sme needs a built-in spin system");
  if (mode == "reduced" && a.no_control && r.model) throw InputError("--no-control applies to --model sme");

  const int workers = sim::default_workers();
  std::string obs_name;
  sim::PathRun run;
  std::vector<double> x0;
  std::optional<quantum::DensityMatrix> rho0;
  if (mode == "sme") {
    const quantum::SmeModel& m = *r.model;
    rho0 = spin_initial(m, a.initial);
    obs_name = "dist";
    const sim::SmeOptions opts{!a.no_control};
    run = [&, opts](std::uint64_t seed, std::size_t path) {
      sim::SimConfig cc = c;
      cc.seed = seed;
      return sim::simulate_sme_observable(m, cc, *rho0, opts, path,
                                          [&](const quantum::DenseMatrix& rho) { return quantum::dist(m, rho); });
    };
  } else {
    const auto& s = reduced_system(r);
    if (r.model) {
      const auto p = quantum::project_state(spin_initial(*r.model, a.initial).dense(), r.model->target);
      x0 = {p[0], p[1]};
      obs_name = "dist";
    } else {
      x0 = a.initial.empty() ? s.projection_center() : parse_point(a.initial, s.n);
      obs_name = "v_star";
    }
    const FloatPolynomial obs(r.model ? Polynomial::variable(2, 0) : s.v_star);
    run = [&, obs](std::uint64_t seed, std::size_t path) {
      sim::SimConfig cc = c;
      cc.seed = seed;
      const auto tr = sim::simulate_reduced(s, cc, {x0}, path);
      std::vector<double> o;
      for (const auto& x : tr.states) o.push_back(obs(x.data()));
      return o;
    };
  }
  std::vector<std::vector<double>> series;
  try {
    series = sim::run_paths(run, c.paths, c.seed, workers);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto stats = sim::summarize(series);
  const auto times = sim::record_times(c);

  std::filesystem::create_directories(a.out_dir);
  const std::string traj = (std::filesystem::path(a.out_dir) / "trajectory.csv").string();
  const std::string ens = (std::filesystem::path(a.out_dir) / "ensemble.csv").string();
  {
    std::ofstream out(traj);
    if (!out) throw InputError("cannot write '" + traj + "'");
    out << "t," << obs_name << ",path_id\n";
    for (std::size_t p = 0; p < series.size(); ++p)
      for (std::size_t i = 0; i < times.size(); ++i) out << fmt(times[i]) << ',' << fmt(series[p][i]) << ',' << p << '\n';
  }
  {
    std::ofstream out(ens);
    if (!out) throw InputError("cannot write '" + ens + "'");
    out << "t,mean,stderr,min,max\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      out << fmt(times[i]) << ',' << fmt(stats.mean[i]) << ',' << fmt(stats.std_error[i]) << ',' << fmt(stats.min[i])
          << ',' << fmt(stats.max[i]) << '\n';
  }
  json m = manifest_head("simulate", r);
  m["model"] = mode;
  m["initial"] = a.initial.empty() ? std::string("opposite-eigenstate") : a.initial;
  m["dt"] = fmt(c.dt);
  m["horizon"] = fmt(c.horizon);
  m["paths"] = c.paths;
  m["seed"] = c.seed;
  m["record_every"] = c.record_every;
  m["control"] = !a.no_control;
  m["noise"] = c.noise;
  m["trajectory_csv"] = traj;
  m["ensemble_csv"] = ens;
  write_manifest((std::filesystem::path(a.out_dir) / "manifest.json").string(), m);
  std::cout << "final mean " << obs_name << ' ' << fmt(stats.mean.back()) << " (stderr " << fmt(stats.std_error.back())
            << ", " << c.paths << " paths)\n";
  return kOk;
}

// ---- reduce

struct ReduceArgs {
  SystemArgs sys;
  std::string out;
  std::string manifest;
};

int cmd_reduce(const ReduceArgs& a) {
  const Resolved r = resolve(a.sys);
  if (!r.model) throw InputError("reduce needs a built-in spin system (--paper or --spin 2)");
  if (r.model->ops.N != 2) throw InputError("the reduction is available for N = 2 only");
  const std::string text = certifier::format_system_spec({r.system, r.tmpl});
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out);
    if (!out) throw InputError("cannot write '" + a.out + "'");
    out << text;
  }
  json m = manifest_head("reduce", r);
  m["output"] = a.out.empty() ? "stdout" : a.out;
  write_manifest(!a.manifest.empty() ? a.manifest
                 : a.out.empty()     ? std::string("qdelay-reduce.manifest.json")
                                     : a.out + ".manifest.json",
                 m);
  return kOk;
}

// ---- verify-cert

struct VerifyArgs {
  SystemArgs sys;
  std::string cert_path;
  std::string manifest;
};

int cmd_verify(const VerifyArgs& a) {
  certifier::StabilityCertificate cert;
  try {
    cert = certifier::read_certificate(a.cert_path);
  } catch (const std::exception& e) {
    throw InputError(a.cert_path + ": " + e.what());
  }
  SystemArgs sa = a.sys;
  if (sa.tau.empty() && sa.system_file.empty() && !sa.preset) sa.tau = to_string(cert.tau);
  const Resolved r = resolve(sa);
  const auto& s = reduced_system(r);
  const auto check = certifier::verify_stability_certificate(cert, s);
  json m = manifest_head("verify-cert", r);
  m["certificate"] = a.cert_path;
  m["result"] = check.passed ? "verified" : "rejected";
  write_manifest(a.manifest.empty() ? a.cert_path + ".verify.manifest.json" : a.manifest, m);
  if (check.passed) {
    std::cout << "verified (residual " << check.report.residual_inf << ")\n";
    return kOk;
  }
  std::cout << "rejected\n";
  for (const auto& f : check.failures) std::cout << "  " << f << '\n';
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability certificates and simulation for delayed quantum feedback"};
  app.require_subcommand(1);

  CertifyArgs certify_args;
  auto* certify = app.add_subcommand("certify", "search for a stability certificate");
  add_system_options(certify, certify_args.sys);
  certify->add_option("--cert", certify_args.cert_path, "certificate output path");
  certify->add_option("--manifest", certify_args.manifest, "manifest path (default <cert>.manifest.json)");
  certify->add_flag("--skip-validation", certify_args.skip_validation, "skip the sampled system checks");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep-delay", "largest certified delay on a grid");
  add_system_options(sweep, sweep_args.sys, false);
  sweep->add_option("--tau-min", sweep_args.tau_min, "start of the delay range");
  sweep->add_option("--tau-max", sweep_args.tau_max, "end of the delay range");
  sweep->add_option("--tol", sweep_args.tol, "grid resolution");
  sweep->add_option("--csv", sweep_args.csv, "sweep record");
  sweep->add_option("--manifest", sweep_args.manifest, "manifest path (default <csv>.manifest.json)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo ensemble");
  add_system_options(simulate, sim_args.sys);
  simulate->add_option("--model", sim_args.model, "sme or reduced (default: sme for spin systems)");
  simulate->add_option("--initial", sim_args.initial,
                       "spin: up, down, mixed or p = tr(rho0 rho_up); file: comma-separated state");
  simulate->add_option("--dt", sim_args.dt, "step size");
  simulate->add_option("--horizon", sim_args.horizon, "final time");
  simulate->add_option("--paths", sim_args.paths, "ensemble size");
  simulate->add_option("--seed", sim_args.seed, "random seed");
  simulate->add_option("--record-every", sim_args.record_every, "keep every k-th step");
  simulate->add_flag("--no-control", sim_args.no_control, "force u = 0");
  simulate->add_flag("--no-noise", sim_args.no_noise, "drop the diffusion term");
  simulate->add_option("--out-dir", sim_args.out_dir, "directory for CSV files and manifest");

  ReduceArgs reduce_args;
  auto* reduce = app.add_subcommand("reduce", "print the reduced spin-1/2 system as a system file");
  add_system_options(reduce, reduce_args.sys);
  reduce->add_option("--out", reduce_args.out, "output path (default stdout)");
  reduce->add_option("--manifest", reduce_args.manifest, "manifest path (default <out>.manifest.json; qdelay-reduce.manifest.json when printing)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify-cert", "check a certificate against a system");
  add_system_options(verify, verify_args.sys);
  verify->add_option("--cert", verify_args.cert_path, "certificate file")->required();
  verify->add_option("--manifest", verify_args.manifest, "manifest path (default <cert>.verify.manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*certify) return cmd_certify(certify_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*simulate) return cmd_simulate(sim_args);
    if (*reduce) return cmd_reduce(reduce_args);
    if (*verify) return cmd_verify(verify_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
