#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tricount/stream.hpp"

namespace tricount {

/// k = clamp(T^{2/5} DeltaE^{2/5} / m^{1/5}, 1, m).
double choose_k(std::size_t m, double t_bound, double delta_e_bound);

struct CopyCounts {
  std::size_t quantum = 0;
  std::size_t classical = 0;
};

/// Copies per group so that each half lands within eps*T/2 with probability
/// at least 3/4 (Chebyshev):
///   quantum   = ceil(16 (k m / (eps T))^2)
///   classical = ceil(64 m^{3/2} DeltaE / (sqrt(k) T eps^2))
CopyCounts copy_counts(std::size_t m, double k, double t_bound, double delta_e_bound, double epsilon);

/// ceil(24 ln(2 / delta)).
std::size_t group_count(double delta);

/// Lower median. Throws ParameterError on an empty list.
double median_of_groups(std::span<const double> group_means);

struct HybridConfig {
  double epsilon = 0.5;
  double delta = 1.0 / 3.0;
  double t_bound = 1.0;
  double delta_e_bound = 1.0;
  std::uint64_t seed = 0;
  std::optional<double> k_override;
  std::optional<std::size_t> quantum_copies_override;
  std::optional<std::size_t> classical_copies_override;
  std::optional<std::size_t> groups_override;
  bool run_quantum = true;
  bool run_classical = true;
  // Copy 0 of each family writes its per-step rows here when set.
  std::ostream* quantum_trace = nullptr;
  std::ostream* classical_trace = nullptr;

  /// Throws ParameterError on out-of-range fields.
  void validate() const;
};

struct SpaceReport {
  std::size_t q_state_count = 0;      // quantum registers held during the pass
  std::size_t qubit_equiv = 0;        // q_state_count * (2 ceil(log2 n) + 1)
  std::size_t q_peak_set_size = 0;    // largest simulated |S| in any copy
  std::size_t c_max_live_edges = 0;   // largest classical sample store in any copy
};

struct EstimateReport {
  double estimate = 0.0;
  double q_part = 0.0;
  double c_part = 0.0;
  double k_used = 1.0;
  std::size_t q_copies = 0;  // per group
  std::size_t c_copies = 0;  // per group
  std::size_t groups = 0;
  std::vector<double> q_group_estimates;
  std::vector<double> c_group_estimates;
  SpaceReport space;
  std::size_t deliveries = 0;  // stream passes observed; always 1
  std::uint64_t seed = 0;
};

/// Qubits per quantum register: 2 ceil(log2 n) + 1.
std::size_t register_width(std::uint64_t n);

/// One pass feeding every quantum and classical copy of every group.
/// estimate = q_part + c_part, each the median over groups of its scaled group mean.
EstimateReport estimate_triangles(const EdgeStream& stream, const HybridConfig& config);

/// Single-line JSON record with "schema": 1.
std::string to_json(const EstimateReport& report);

}  // namespace tricount
