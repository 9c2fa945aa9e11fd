#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "tricount/rng.hpp"
#include "tricount/stream.hpp"

namespace tricount {

/// g(v) = [((a v + b) mod P) < threshold] over the prime field P = 2^61 - 1.
/// a in [1, P), b in [0, P). Sampling rate threshold / P = floor(P / sqrt(km)) / P.
struct PairwiseHash {
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  std::uint64_t a = 1;
  std::uint64_t b = 0;
  std::uint64_t threshold = 0;

  static std::uint64_t threshold_for(double k, std::size_t m);
  /// Draws a and b from rng (two draws, a first).
  static PairwiseHash draw(double k, std::size_t m, Rng& rng);

  std::uint64_t value(VertexId v) const {
    const unsigned __int128 z = static_cast<unsigned __int128>(a) * v + b;
    std::uint64_t r = static_cast<std::uint64_t>(z & kPrime) + static_cast<std::uint64_t>(z >> 61);
    if (r >= kPrime) r -= kPrime;
    return r;
  }
  bool operator()(VertexId v) const { return value(v) < threshold; }
  double rate() const { return static_cast<double>(threshold) / static_cast<double>(kPrime); }
};

/// Per-pass constants shared by every copy of the classical estimator.
/// The optional overrides replace the hash and the sqrt(k/m) coin; they exist
/// to pin down behaviour in tests.
struct ClassicalParams {
  double k = 1.0;
  std::size_t m = 1;
  double keep_prob = 1.0;  // sqrt(k / m)
  double decay = 0.0;      // 1 - 1/k
  std::function<bool(VertexId)> sampled_override;
  std::function<bool(DirectedEdge)> keep_override;

  /// Throws ParameterError unless 1 <= k <= m.
  static ClassicalParams make(double k, std::size_t m);
};

struct SampledEdge {
  VertexId tail = 0;
  VertexId head = 0;
  std::uint32_t counter = 0;  // updates incident to head since insertion
};

struct SampleSpaceStats {
  std::size_t max_live_edges = 0;
  std::size_t final_live_edges = 0;
  std::size_t insertions = 0;
};

/// State of one classical-estimator copy: its hash, sample store, and accumulator X.
class ClassicalRun {
 public:
  ClassicalRun(const ClassicalParams& params, Rng rng);

  /// One update: closing check, then counter increments, then insertion.
  void update(const Edge& e, const ClassicalParams& params);

  double x() const { return x_; }
  const std::vector<SampledEdge>& store() const { return store_; }
  SampleSpaceStats space() const { return {max_live_, store_.size(), insertions_}; }
  const PairwiseHash& hash() const { return hash_; }

  /// Invoked on every triangle contribution with (apex, closing edge, D sum).
  using ContributionHook = std::function<void(VertexId, const Edge&, std::uint64_t)>;

  void update(const Edge& e, const ClassicalParams& params, const ContributionHook& hook);

 private:
  bool sampled(VertexId v, const ClassicalParams& params) const;
  bool keep(DirectedEdge d, const ClassicalParams& params);

  PairwiseHash hash_;
  Rng rng_;
  double x_ = 0.0;
  std::vector<SampledEdge> store_;
  std::uint32_t max_live_ = 0;
  std::uint32_t insertions_ = 0;
};

struct ClassicalRunResult {
  double x = 0.0;
  SampleSpaceStats space;
};

/// One classical-estimator pass. With `trace`, writes "t,S,X" rows (no header).
ClassicalRunResult c_run(const EdgeStream& stream, const ClassicalParams& params, Rng& rng,
                         std::ostream* trace = nullptr, const ClassicalRun::ContributionHook& hook = {});
ClassicalRunResult c_run(const EdgeStream& stream, double k, Rng& rng, std::ostream* trace = nullptr);

/// Many classical copies fed by a single pass; copy i uses Rng(derive_seed(base_seed, i))
/// and produces what c_run would with that generator (up to summation order).
///
/// Samples are indexed by head vertex rather than by copy. A sample's counter is
/// the number of updates touching its head since it was inserted, so it is kept as
/// a base value of a shared per-vertex incidence count and never updated in place.
class ClassicalEnsemble : public UpdateConsumer {
 public:
  ClassicalEnsemble(ClassicalParams params, std::size_t copies, std::uint64_t base_seed);

  void on_update(std::size_t t, const Edge& e) override;
  std::string name() const override { return "classical-ensemble"; }
  void set_trace(std::ostream* out) { trace_ = out; }

  std::size_t copies() const { return x_.size(); }
  double x(std::size_t i) const { return x_[i]; }
  const std::vector<double>& values() const { return x_; }
  /// Samples are never evicted, so live size, peak and insertions coincide.
  SampleSpaceStats space(std::size_t i) const { return {sizes_[i], sizes_[i], sizes_[i]}; }
  /// Largest sample store held by any copy at any time.
  std::size_t max_live_edges() const;

 private:
  // key = copy << 32 | tail, value = incidence count of the head at insertion
  using HeadIndex = std::unordered_map<std::uint64_t, std::uint32_t>;

  void grow(VertexId v);
  void close(const Edge& e);
  void insert(std::size_t i, DirectedEdge d);

  ClassicalParams params_;
  std::uint64_t threshold_;
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
  std::vector<Rng> rngs_;
  std::vector<double> x_;
  std::vector<std::uint32_t> sizes_;
  std::vector<HeadIndex> by_head_;
  std::vector<std::uint32_t> incidence_;
  std::ostream* trace_ = nullptr;
  std::size_t last_t_ = 0;
};

/// m^{3/2} / sqrt(k) times the mean of X over `copies` runs. Unbiased for T^{>k}.
double estimate_t_greater(const EdgeStream& stream, double k, std::size_t copies, std::uint64_t seed);

/// Scale turning a mean of X into a T^{>k} estimate.
inline double classical_scale(double k, std::size_t m) {
  const double md = static_cast<double>(m);
  return md * std::sqrt(md) / std::sqrt(k);
}

}  // namespace tricount
