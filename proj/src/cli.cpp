#include "tricount/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tricount/generators.hpp"
#include "tricount/hybrid.hpp"
#include "tricount/oracle.hpp"
#include "tricount/rng.hpp"
#include "tricount/stream.hpp"

namespace tricount {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Missing inputs are usage errors, not runtime failures.
class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EdgeStream load(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw MissingInput("no such file: " + path);
  return read_stream_file(path);
}

struct GenOptions {
  std::string kind;
  std::uint32_t hubs = 2;
  std::uint32_t spokes = 4;
  std::uint32_t tris = 2;
  std::uint32_t filler = 0;
  bool planted = true;
  std::uint32_t triangles = 1;
  std::uint32_t noise = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  bool shuffle = false;
  std::string output;
};

struct EstimateOptions {
  std::string file;
  std::string mode = "hybrid";
  double epsilon = 0.5;
  double delta = 1.0 / 3.0;
  std::optional<double> t_bound;
  std::optional<double> delta_e_bound;
  std::optional<double> k;
  std::optional<std::size_t> copies;
  std::optional<std::size_t> q_copies;
  std::optional<std::size_t> c_copies;
  std::optional<std::size_t> groups;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::string trace;
  std::string format = "json";
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  GeneratedStream g = [&] {
    if (o.kind == "classical-hard") {
      return gen_classical_hard({o.hubs, o.spokes, o.tris, o.filler, o.planted, o.shuffle, o.seed});
    }
    if (o.kind == "quantum-hard") return gen_quantum_hard({o.triangles, o.noise, o.shuffle, o.seed});
    return gen_random(o.n, o.m, o.seed);
  }();
  std::string params = "gen kind=" + o.kind + " seed=" + std::to_string(o.seed);
  if (o.kind == "classical-hard") {
    params += " hubs=" + std::to_string(o.hubs) + " spokes=" + std::to_string(o.spokes) +
              " tris=" + std::to_string(o.tris) + " filler=" + std::to_string(o.filler) +
              " planted=" + (o.planted ? "1" : "0");
  } else if (o.kind == "quantum-hard") {
    params += " T=" + std::to_string(o.triangles) + " noise=" + std::to_string(o.noise);
  }
  const std::string comments[] = {g.truth.header(), params};
  const std::string text = serialize_stream(g.stream, comments);
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.output);
    f << text;
  }
  return kExitOk;
}

int cmd_oracle(const std::string& file, double k, const std::string& format, std::ostream& out) {
  const EdgeStream stream = load(file);
  const TriangleStats s = triangle_stats(stream, k);
  if (format == "csv") {
    out << "T,deltaE,deltaV,k,T_less_k,T_greater_k\n"
        << s.triangles << ',' << s.delta_e << ',' << s.delta_v << ',' << num(k) << ',' << num(s.t_less_k) << ','
        << num(s.t_greater_k) << '\n';
    return kExitOk;
  }
  Json j;
  j["schema"] = 1;
  j["T"] = s.triangles;
  j["deltaE"] = s.delta_e;
  j["deltaV"] = s.delta_v;
  j["k"] = k;
  j["T_less_k"] = s.t_less_k;
  j["T_greater_k"] = s.t_greater_k;
  out << j.dump() << '\n';
  return kExitOk;
}

// Shared setup for estimate and experiment: config with bounds defaulted from the oracle.
struct Prepared {
  EdgeStream stream;
  TriangleStats truth;  // at k_used
  HybridConfig config;
  bool bounds_from_oracle = false;
  double k_used = 1.0;
};

Prepared prepare(const EstimateOptions& o) {
  static const std::vector<std::string> modes{"quantum", "classical", "hybrid", "exact"};
  if (std::find(modes.begin(), modes.end(), o.mode) == modes.end()) {
    throw ParameterError("unknown mode '" + o.mode + "'");
  }
  EdgeStream stream = load(o.file);
  const TriangleStats base = triangle_stats(stream, 1.0);

  HybridConfig c;
  c.epsilon = o.epsilon;
  c.delta = o.delta;
  c.t_bound = o.t_bound.value_or(base.triangles > 0 ? static_cast<double>(base.triangles) : 1.0);
  c.delta_e_bound = o.delta_e_bound.value_or(static_cast<double>(base.delta_e));
  c.seed = o.seed;
  c.k_override = o.k;
  c.quantum_copies_override = o.q_copies ? o.q_copies : o.copies;
  c.classical_copies_override = o.c_copies ? o.c_copies : o.copies;
  c.groups_override = o.groups;
  c.run_quantum = o.mode != "classical";
  c.run_classical = o.mode != "quantum";
  c.validate();

  const double m = static_cast<double>(stream.m());
  const double k = o.k ? std::min(*o.k, m) : choose_k(stream.m(), c.t_bound, c.delta_e_bound);
  TriangleStats truth = triangle_stats(stream, k);
  return {std::move(stream), std::move(truth), c, !o.t_bound || !o.delta_e_bound, k};
}

EstimateReport run_mode(const Prepared& p, const std::string& mode, const HybridConfig& config) {
  if (mode != "exact") return estimate_triangles(p.stream, config);
  EstimateReport r;
  r.seed = config.seed;
  r.k_used = p.k_used;
  r.q_part = p.truth.t_less_k;
  r.c_part = p.truth.t_greater_k;
  r.estimate = static_cast<double>(p.truth.triangles);
  r.deliveries = 1;
  return r;
}

double target_of(const Prepared& p, const std::string& mode) {
  if (mode == "quantum") return p.truth.t_less_k;
  if (mode == "classical") return p.truth.t_greater_k;
  return static_cast<double>(p.truth.triangles);
}

int cmd_estimate(const EstimateOptions& o, std::ostream& out) {
  Prepared p = prepare(o);
  std::unique_ptr<std::ofstream> q_trace;
  std::unique_ptr<std::ofstream> c_trace;
  HybridConfig config = p.config;
  if (!o.trace.empty() && o.mode != "exact") {
    if (config.run_quantum) {
      q_trace = std::make_unique<std::ofstream>(o.trace + ".quantum.csv");
      *q_trace << "t,f,S,outcome\n";
      config.quantum_trace = q_trace.get();
    }
    if (config.run_classical) {
      c_trace = std::make_unique<std::ofstream>(o.trace + ".classical.csv");
      *c_trace << "t,S,X\n";
      config.classical_trace = c_trace.get();
    }
  }
  const EstimateReport r = run_mode(p, o.mode, config);
  if (o.format == "csv") {
    out << "mode,seed,k,estimate,q_part,c_part,q_copies,c_copies,groups\n"
        << o.mode << ',' << r.seed << ',' << num(r.k_used) << ',' << num(r.estimate) << ',' << num(r.q_part) << ','
        << num(r.c_part) << ',' << r.q_copies << ',' << r.c_copies << ',' << r.groups << '\n';
    return kExitOk;
  }
  Json j = Json::parse(to_json(r));
  j["mode"] = o.mode;
  j["T_bound"] = config.t_bound;
  j["deltaE_bound"] = config.delta_e_bound;
  j["bounds"] = p.bounds_from_oracle ? "oracle" : "given";
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_experiment(const EstimateOptions& o, std::ostream& out) {
  if (o.trials == 0) throw ParameterError("trials must be >= 1");
  const Prepared p = prepare(o);
  const double target = target_of(p, o.mode);
  const double truth = static_cast<double>(p.truth.triangles);
  const double scale = truth > 0 ? truth : p.config.t_bound;

  out << "trial,seed,k,estimate,q_part,c_part,abs_err,rel_err\n";
  double sum_abs = 0.0;
  std::size_t successes = 0;
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    HybridConfig config = p.config;
    config.seed = derive_seed(o.seed, trial);
    const EstimateReport r = run_mode(p, o.mode, config);
    const double abs_err = std::abs(r.estimate - target);
    const double rel_err = abs_err / scale;
    sum_abs += abs_err;
    successes += abs_err <= o.epsilon * scale;
    out << trial << ',' << config.seed << ',' << num(r.k_used) << ',' << num(r.estimate) << ',' << num(r.q_part)
        << ',' << num(r.c_part) << ',' << num(abs_err) << ',' << num(rel_err) << '\n';
  }
  out << "# summary mode=" << o.mode << " trials=" << o.trials << " target=" << num(target)
      << " T=" << p.truth.triangles << " epsilon=" << num(o.epsilon)
      << " mean_abs_err=" << num(sum_abs / static_cast<double>(o.trials))
      << " success_rate=" << num(static_cast<double>(successes) / static_cast<double>(o.trials)) << '\n';
  return kExitOk;
}

void add_estimate_options(CLI::App* cmd, EstimateOptions& o) {
  cmd->add_option("file", o.file, "Edge-list stream file")->required();
  cmd->add_option("--mode", o.mode, "quantum | classical | hybrid | exact")
      ->check(CLI::IsMember({"quantum", "classical", "hybrid", "exact"}));
  cmd->add_option("--epsilon", o.epsilon, "Target relative precision, in (0, 1]");
  cmd->add_option("--delta", o.delta, "Failure probability, in (0, 1]");
  cmd->add_option("--T-bound", o.t_bound, "Advance bound on T (default: oracle value)");
  cmd->add_option("--deltaE-bound", o.delta_e_bound, "Advance bound on DeltaE (default: oracle value)");
  cmd->add_option("--k", o.k, "Override the interference threshold k");
  cmd->add_option("--copies", o.copies, "Copies per group for both estimator families");
  cmd->add_option("--q-copies", o.q_copies, "Quantum copies per group");
  cmd->add_option("--c-copies", o.c_copies, "Classical copies per group");
  cmd->add_option("--groups", o.groups, "Number of median groups");
  cmd->add_option("--seed", o.seed, "Base seed");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming triangle counting: generators, exact oracle, hybrid estimator"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a stream with a ground-truth header");
  gen_cmd->add_option("--kind", gen.kind, "classical-hard | quantum-hard | random")
      ->required()
      ->check(CLI::IsMember({"classical-hard", "quantum-hard", "random"}));
  gen_cmd->add_option("--hubs", gen.hubs);
  gen_cmd->add_option("--spokes", gen.spokes);
  gen_cmd->add_option("--tris", gen.tris);
  gen_cmd->add_option("--filler", gen.filler);
  gen_cmd->add_flag("--planted,!--unplanted", gen.planted);
  gen_cmd->add_option("--T", gen.triangles, "Triangle count (quantum-hard)");
  gen_cmd->add_option("--noise", gen.noise);
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--shuffle", gen.shuffle, "Shuffle arrival order within each phase");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  std::string oracle_file;
  double oracle_k = 1.0;
  std::string oracle_format = "json";
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact triangle statistics");
  oracle_cmd->add_option("file", oracle_file)->required();
  oracle_cmd->add_option("--k", oracle_k, "Interference threshold, >= 1")->required();
  oracle_cmd->add_option("--format", oracle_format)->check(CLI::IsMember({"json", "csv"}));

  EstimateOptions est;
  auto* est_cmd = app.add_subcommand("estimate", "One estimate as a JSON record");
  add_estimate_options(est_cmd, est);
  est_cmd->add_option("--trace", est.trace, "Write per-step traces of copy 0 to <prefix>.{quantum,classical}.csv");
  est_cmd->add_option("--format", est.format)->check(CLI::IsMember({"json", "csv"}));

  EstimateOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Independent trials as CSV with a summary line");
  add_estimate_options(exp_cmd, exp);
  exp_cmd->add_option("--trials", exp.trials, "Number of trials");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_file, oracle_k, oracle_format, out);
    if (est_cmd->parsed()) return cmd_estimate(est, out);
    if (exp_cmd->parsed()) return cmd_experiment(exp, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "invalid stream: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MissingInput& e) {
    err << "missing input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tricount
