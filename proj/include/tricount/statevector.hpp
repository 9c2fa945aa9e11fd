#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "tricount/stream.hpp"

namespace tricount {

/// Basis label: a dummy slot i in [1, 2m] or a directed edge tail -> head.
struct BasisLabel {
  enum class Kind : std::uint8_t { Dummy, Directed };
  Kind kind = Kind::Dummy;
  std::uint64_t a = 0;  // dummy index, or tail
  std::uint64_t b = 0;  // head (directed only)

  static BasisLabel dummy(std::uint64_t i) { return {Kind::Dummy, i, 0}; }
  static BasisLabel directed(VertexId tail, VertexId head) { return {Kind::Directed, tail, head}; }

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

struct OutcomeProbabilities {
  double plus = 0.0;
  double minus = 0.0;
  double zero = 0.0;
};

/// Literal sparse state vector over dummies and directed edges, real amplitudes.
/// Only labels with nonzero amplitude are stored. Desk-scale reference for the
/// quantum simulator; nothing here is optimized.
class StateVector {
 public:
  static constexpr std::size_t kMaxStreamLength = 32;

  /// Uniform 1/sqrt(2m) over dummies 1..2m. Throws ParameterError if m is 0 or
  /// exceeds kMaxStreamLength.
  static StateVector init(std::size_t m);

  /// Arbitrary state, for projector-algebra tests. Not normalized.
  static StateVector from_amplitudes(std::size_t m, std::map<BasisLabel, double> amplitudes);

  std::size_t m() const { return m_; }
  double amplitude(const BasisLabel& label) const;
  const std::map<BasisLabel, double>& amplitudes() const { return amps_; }
  double norm_squared() const;

  /// Directed-edge labels with |amplitude| > tol, sorted.
  std::vector<DirectedEdge> edge_support(double tol = 1e-12) const;
  /// Number of dummy labels with |amplitude| > tol.
  std::size_t dummy_support(double tol = 1e-12) const;

  /// Swaps |2t-1> with |u->v> and |2t> with |v->u> (u < v).
  StateVector apply_swap(std::size_t t, const Edge& e) const;

  /// O_b psi, unnormalized, for b in {-1, 0, +1}. The sums over w run over
  /// every vertex other than u and v.
  StateVector project(const Edge& e, int outcome) const;

  /// ||O_b psi||^2 for the three outcomes.
  OutcomeProbabilities measure_dist(const Edge& e) const;

  /// O_b psi / ||O_b psi||. Throws std::logic_error on a zero-probability outcome.
  StateVector collapse(const Edge& e, int outcome) const;

  /// "label,amplitude" rows.
  void dump_csv(std::ostream& out) const;

 private:
  StateVector(std::size_t m, std::map<BasisLabel, double> amps) : m_(m), amps_(std::move(amps)) {}

  std::size_t m_ = 0;
  std::map<BasisLabel, double> amps_;
};

}  // namespace tricount
