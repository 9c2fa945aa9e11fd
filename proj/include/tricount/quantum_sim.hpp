#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tricount/rng.hpp"
#include "tricount/stream.hpp"

namespace tricount {

/// Outcome distribution of one edge measurement, as exact integer weights over
/// a common denominator 2D, where D = 2m - 2(t-1) + |S_{t-1}|.
///   weight(+1) = 4|W+| + |W-|,  weight(-1) = |W-|,  weight(0) = the rest.
struct MeasureDist {
  std::uint64_t plus_weight = 0;
  std::uint64_t minus_weight = 0;
  std::uint64_t denominator = 1;

  std::uint64_t zero_weight() const { return denominator - plus_weight - minus_weight; }
  double p_plus() const { return static_cast<double>(plus_weight) / static_cast<double>(denominator); }
  double p_minus() const { return static_cast<double>(minus_weight) / static_cast<double>(denominator); }
  double p_zero() const { return static_cast<double>(zero_weight()) / static_cast<double>(denominator); }

  /// Samples an outcome in {-1, 0, +1} with one draw.
  int sample(Rng& rng) const;
};

struct MeasureAnalysis {
  MeasureDist dist;
  std::vector<VertexId> w_plus;   // tails w with both w->u and w->v tracked
  std::vector<VertexId> w_minus;  // tails w with exactly one of them
  std::size_t w_size = 0;         // |W| = 2|W+| + |W-|
};

/// Exact classical stand-in for the quantum estimator's state: a uniform
/// superposition over 2m - 2t dummy slots plus the tracked directed-edge set S.
class QSimState {
 public:
  /// Fresh state over 2m dummies. Throws ParameterError when m == 0.
  static QSimState init(std::size_t m);

  std::size_t m() const { return m_; }
  std::size_t t() const { return t_; }
  std::size_t set_size() const { return by_head_.size(); }
  std::size_t dummy_count() const { return 2 * m_ - 2 * t_; }
  /// Squared norm of the unnormalized state: dummies plus |S|.
  std::size_t denominator() const { return dummy_count() + set_size(); }

  bool terminated() const { return outcome_.has_value(); }
  std::optional<int> outcome() const { return outcome_; }

  bool contains(DirectedEdge d) const { return by_head_.count({d.head, d.tail}) != 0; }
  /// S sorted by (tail, head).
  std::vector<DirectedEdge> edges() const;

  /// Swaps dummies 2t-1, 2t for u->v, v->u. Requires t == this->t() + 1.
  /// Throws std::logic_error if terminated, out of order, or either orientation is present.
  void apply_update(std::size_t t, const Edge& e);

  /// Distribution for measuring with the projectors of the edge just applied.
  MeasureAnalysis analyze(const Edge& e) const;

  /// Samples an outcome and collapses. Returns the outcome.
  int measure(const Edge& e, Rng& rng);

  /// Collapses onto a chosen outcome. Throws std::logic_error if it has zero probability.
  void collapse(const Edge& e, int outcome);

 private:
  explicit QSimState(std::size_t m) : m_(m) {}
  void check_measurable(const Edge& e) const;

  std::size_t m_ = 0;
  std::size_t t_ = 0;
  std::optional<Edge> last_;
  std::set<std::pair<VertexId, VertexId>> by_head_;  // (head, tail)
  std::optional<int> outcome_;
};

/// One run of the quantum estimator over the whole stream. Returns b in {-1, 0, +1}.
/// f(t) ~ Bernoulli(1/k) is drawn from `rng` at step t, followed by one draw per
/// measurement. With `trace`, writes "t,f,S,outcome" rows (no header).
int q_run(const EdgeStream& stream, double k, Rng& rng, std::ostream* trace = nullptr);

/// Many independent quantum-estimator copies fed by a single pass.
///
/// Copy i draws from Rng(derive_seed(base_seed, i)) in exactly the same order as
/// q_run, so its outcome equals q_run with that generator. Each copy stores S as
/// a bitset over the 2m arrival slots; the map from slot to directed edge is the
/// arrived prefix, which is identical for all copies and kept once.
class QuantumEnsemble : public UpdateConsumer {
 public:
  QuantumEnsemble(std::size_t m, double k, std::size_t copies, std::uint64_t base_seed);

  void on_update(std::size_t t, const Edge& e) override;
  std::string name() const override { return "quantum-ensemble"; }

  /// Copy 0 writes "t,f,S,outcome" rows while it is live.
  void set_trace(std::ostream* out) { trace_ = out; }

  std::size_t copies() const { return outcomes_.size(); }
  const std::vector<std::int8_t>& outcomes() const { return outcomes_; }
  /// Largest |S| held by any live copy.
  std::size_t peak_set_size() const { return peak_set_size_; }
  std::size_t measurements() const { return measurements_; }

 private:
  struct Slot {
    VertexId tail;
    std::uint32_t bit;
  };

  std::size_t m_;
  double measure_prob_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;    // copies * words_
  std::vector<std::uint32_t> sizes_;   // |S| per copy
  std::vector<Rng> rngs_;
  std::vector<std::int8_t> outcomes_;
  std::vector<std::uint32_t> live_;    // indices of copies that have not returned

  std::vector<std::vector<Slot>> into_;  // into_[v]: arrived directed edges with head v
  std::vector<std::uint32_t> mark_;      // scratch, tail -> bit + 1
  std::vector<std::uint64_t> word_mask_;
  std::vector<std::uint32_t> touched_;

  std::ostream* trace_ = nullptr;
  std::size_t peak_set_size_ = 0;
  std::size_t measurements_ = 0;
  std::size_t last_t_ = 0;
};

/// km times the mean of b over `copies` single-pass runs. Unbiased for T^{<k}.
double estimate_t_less(const EdgeStream& stream, double k, std::size_t copies, std::uint64_t seed);

}  // namespace tricount
