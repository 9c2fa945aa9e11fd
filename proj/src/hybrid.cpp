#include "tricount/hybrid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

#include "tricount/classical.hpp"
#include "tricount/quantum_sim.hpp"
#include "tricount/rng.hpp"

namespace tricount {

namespace {

constexpr double kQuantumChebyshev = 16.0;
constexpr double kClassicalChebyshev = 64.0;
constexpr double kMedianGroups = 24.0;

// Seed-derivation tags for the two estimator families.
constexpr std::uint64_t kQuantumFamily = 0x51;
constexpr std::uint64_t kClassicalFamily = 0xC1;

std::size_t ceil_count(double x) {
  // Guard against 16.000000000000004 -> 17 from rounding in the formula.
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, r)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) throw ParameterError(std::string(what) + " must be a positive real");
}

}  // namespace

double choose_k(std::size_t m, double t_bound, double delta_e_bound) {
  if (m == 0) throw ParameterError("m must be >= 1");
  require_positive(t_bound, "T bound");
  require_positive(delta_e_bound, "DeltaE bound");
  const double k = std::pow(t_bound, 0.4) * std::pow(delta_e_bound, 0.4) / std::pow(static_cast<double>(m), 0.2);
  return std::clamp(k, 1.0, static_cast<double>(m));
}

CopyCounts copy_counts(std::size_t m, double k, double t_bound, double delta_e_bound, double epsilon) {
  if (m == 0) throw ParameterError("m must be >= 1");
  require_positive(k, "k");
  require_positive(t_bound, "T bound");
  require_positive(delta_e_bound, "DeltaE bound");
  require_positive(epsilon, "epsilon");
  const double md = static_cast<double>(m);
  const double ratio = k * md / (epsilon * t_bound);
  CopyCounts c;
  c.quantum = std::max<std::size_t>(1, ceil_count(kQuantumChebyshev * ratio * ratio));
  c.classical = std::max<std::size_t>(
      1, ceil_count(kClassicalChebyshev * md * std::sqrt(md) * delta_e_bound /
                    (std::sqrt(k) * t_bound * epsilon * epsilon)));
  return c;
}

std::size_t group_count(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0 || delta > 1.0) throw ParameterError("delta must be in (0, 1]");
  return std::max<std::size_t>(1, ceil_count(kMedianGroups * std::log(2.0 / delta)));
}

double median_of_groups(std::span<const double> group_means) {
  if (group_means.empty()) throw ParameterError("median of an empty list");
  std::vector<double> v(group_means.begin(), group_means.end());
  const std::size_t mid = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

void HybridConfig::validate() const {
  if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon > 1.0) throw ParameterError("epsilon must be in (0, 1]");
  if (!std::isfinite(delta) || delta <= 0.0 || delta > 1.0) throw ParameterError("delta must be in (0, 1]");
  require_positive(t_bound, "T bound");
  if (!std::isfinite(delta_e_bound) || delta_e_bound < 1.0) throw ParameterError("DeltaE bound must be >= 1");
  if (k_override && (!std::isfinite(*k_override) || *k_override < 1.0)) throw ParameterError("k must be >= 1");
  for (const auto& c : {quantum_copies_override, classical_copies_override, groups_override}) {
    if (c && *c == 0) throw ParameterError("copy and group counts must be >= 1");
  }
  if (!run_quantum && !run_classical) throw ParameterError("nothing to run");
}

std::size_t register_width(std::uint64_t n) {
  const std::uint64_t ceil_log2 = n <= 1 ? 0 : std::bit_width(n - 1);
  return static_cast<std::size_t>(2 * ceil_log2 + 1);
}

namespace {

// Counts passes: the orchestrator's own view of the one-pass contract.
class PassCounter : public UpdateConsumer {
 public:
  void on_update(std::size_t t, const Edge&) override {
    if (t == 1) ++passes_;
  }
  std::string name() const override { return "pass-counter"; }
  std::size_t passes() const { return passes_; }

 private:
  std::size_t passes_ = 0;
};

}  // namespace

EstimateReport estimate_triangles(const EdgeStream& stream, const HybridConfig& config) {
  config.validate();
  const std::size_t m = stream.m();
  const double md = static_cast<double>(m);

  EstimateReport r;
  r.seed = config.seed;
  r.k_used = config.k_override ? std::min(*config.k_override, md)
                               : choose_k(m, config.t_bound, config.delta_e_bound);
  const CopyCounts counts = copy_counts(m, r.k_used, config.t_bound, config.delta_e_bound, config.epsilon);
  r.groups = config.groups_override.value_or(group_count(config.delta));
  r.q_copies = config.run_quantum ? config.quantum_copies_override.value_or(counts.quantum) : 0;
  r.c_copies = config.run_classical ? config.classical_copies_override.value_or(counts.classical) : 0;

  // Group g of family F owns copies [g * per_group, (g + 1) * per_group) of a single
  // ensemble whose copy seeds derive from (seed, F).
  std::optional<QuantumEnsemble> quantum;
  std::optional<ClassicalEnsemble> classical;
  PassCounter counter;
  std::vector<UpdateConsumer*> consumers{&counter};
  if (r.q_copies > 0) {
    quantum.emplace(m, r.k_used, r.groups * r.q_copies, derive_seed(config.seed, kQuantumFamily));
    quantum->set_trace(config.quantum_trace);
    consumers.push_back(&*quantum);
  }
  if (r.c_copies > 0) {
    classical.emplace(ClassicalParams::make(r.k_used, m), r.groups * r.c_copies,
                      derive_seed(config.seed, kClassicalFamily));
    classical->set_trace(config.classical_trace);
    consumers.push_back(&*classical);
  }
  push_stream(stream, consumers);
  r.deliveries = counter.passes();

  if (quantum) {
    const auto& outcomes = quantum->outcomes();
    for (std::size_t g = 0; g < r.groups; ++g) {
      std::int64_t sum = 0;
      for (std::size_t i = g * r.q_copies; i < (g + 1) * r.q_copies; ++i) sum += outcomes[i];
      r.q_group_estimates.push_back(r.k_used * md * static_cast<double>(sum) / static_cast<double>(r.q_copies));
    }
    r.q_part = median_of_groups(r.q_group_estimates);
    r.space.q_state_count = r.groups * r.q_copies;
    r.space.qubit_equiv = r.space.q_state_count * register_width(stream.n());
    r.space.q_peak_set_size = quantum->peak_set_size();
  }
  if (classical) {
    const double scale = classical_scale(r.k_used, m);
    for (std::size_t g = 0; g < r.groups; ++g) {
      double sum = 0.0;
      for (std::size_t i = g * r.c_copies; i < (g + 1) * r.c_copies; ++i) sum += classical->x(i);
      r.c_group_estimates.push_back(scale * sum / static_cast<double>(r.c_copies));
    }
    r.c_part = median_of_groups(r.c_group_estimates);
    r.space.c_max_live_edges = classical->max_live_edges();
  }
  r.estimate = r.q_part + r.c_part;
  return r;
}

std::string to_json(const EstimateReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["estimate"] = report.estimate;
  j["q_part"] = report.q_part;
  j["c_part"] = report.c_part;
  j["k_used"] = report.k_used;
  j["q_copies"] = report.q_copies;
  j["c_copies"] = report.c_copies;
  j["groups"] = report.groups;
  j["space"] = {{"q_state_count", report.space.q_state_count},
                {"qubit_equiv", report.space.qubit_equiv},
                {"q_peak_set_size", report.space.q_peak_set_size},
                {"c_max_live_edges", report.space.c_max_live_edges}};
  j["seed"] = report.seed;
  return j.dump();
}

}  // namespace tricount
