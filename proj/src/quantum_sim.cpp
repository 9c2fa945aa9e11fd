#include "tricount/quantum_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tricount {

int MeasureDist::sample(Rng& rng) const {
  const std::uint64_t r = rng.below(denominator);
  if (r < plus_weight) return 1;
  if (r < plus_weight + minus_weight) return -1;
  return 0;
}

QSimState QSimState::init(std::size_t m) {
  if (m == 0) throw ParameterError("quantum state needs m >= 1");
  return QSimState(m);
}

std::vector<DirectedEdge> QSimState::edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(by_head_.size());
  for (auto [head, tail] : by_head_) out.push_back({tail, head});
  std::sort(out.begin(), out.end());
  return out;
}

void QSimState::apply_update(std::size_t t, const Edge& e) {
  if (terminated()) throw std::logic_error("apply_update on a terminated state");
  if (t != t_ + 1 || t > m_) {
    throw std::logic_error("apply_update out of order: expected t=" + std::to_string(t_ + 1) + ", got " +
                           std::to_string(t));
  }
  if (by_head_.count({e.v, e.u}) || by_head_.count({e.u, e.v})) {
    throw std::logic_error("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                           " already tracked (duplicate edge in stream)");
  }
  by_head_.insert({e.v, e.u});
  by_head_.insert({e.u, e.v});
  t_ = t;
  last_ = e;
}

void QSimState::check_measurable(const Edge& e) const {
  if (terminated()) throw std::logic_error("measurement on a terminated state");
  if (!last_ || *last_ != e) throw std::logic_error("measurement edge is not the update just applied");
}

MeasureAnalysis QSimState::analyze(const Edge& e) const {
  check_measurable(e);
  MeasureAnalysis a;
  // Tails pointing into u and into v, excluding the fresh pair.
  std::vector<VertexId> into_u;
  std::vector<VertexId> into_v;
  for (auto it = by_head_.lower_bound({e.u, 0}); it != by_head_.end() && it->first == e.u; ++it) {
    if (it->second != e.v) into_u.push_back(it->second);
  }
  for (auto it = by_head_.lower_bound({e.v, 0}); it != by_head_.end() && it->first == e.v; ++it) {
    if (it->second != e.u) into_v.push_back(it->second);
  }
  std::set_intersection(into_u.begin(), into_u.end(), into_v.begin(), into_v.end(), std::back_inserter(a.w_plus));
  std::set_symmetric_difference(into_u.begin(), into_u.end(), into_v.begin(), into_v.end(),
                                std::back_inserter(a.w_minus));
  a.w_size = into_u.size() + into_v.size();

  const std::uint64_t d = denominator();
  a.dist.denominator = 2 * d;
  a.dist.plus_weight = 4 * a.w_plus.size() + a.w_minus.size();
  a.dist.minus_weight = a.w_minus.size();
  return a;
}

void QSimState::collapse(const Edge& e, int outcome) {
  const MeasureAnalysis a = analyze(e);
  switch (outcome) {
    case 1:
    case -1: {
      const auto weight = outcome == 1 ? a.dist.plus_weight : a.dist.minus_weight;
      if (weight == 0) throw std::logic_error("collapse onto a zero-probability outcome");
      outcome_ = outcome;
      return;
    }
    case 0:
      break;
    default:
      throw std::logic_error("measurement outcome must be -1, 0 or +1");
  }
  for (VertexId head : {e.u, e.v}) {
    const VertexId fresh_tail = head == e.u ? e.v : e.u;
    auto it = by_head_.lower_bound({head, 0});
    while (it != by_head_.end() && it->first == head) {
      it = it->second == fresh_tail ? std::next(it) : by_head_.erase(it);
    }
  }
}

int QSimState::measure(const Edge& e, Rng& rng) {
  const int outcome = analyze(e).dist.sample(rng);
  collapse(e, outcome);
  return outcome;
}

namespace {

void check_k(double k) {
  if (!std::isfinite(k) || k < 1.0) throw ParameterError("k must be a finite real >= 1, got " + std::to_string(k));
}

}  // namespace

int q_run(const EdgeStream& stream, double k, Rng& rng, std::ostream* trace) {
  check_k(k);
  const double p = 1.0 / k;
  QSimState state = QSimState::init(stream.m());
  for (std::size_t t = 1; t <= stream.m(); ++t) {
    const Edge& e = stream.at(t);
    state.apply_update(t, e);
    const bool f = rng.bernoulli(p);
    int b = 0;
    if (f) b = state.measure(e, rng);
    if (trace) *trace << t << ',' << int(f) << ',' << state.set_size() << ',' << b << '\n';
    if (b != 0) return b;
  }
  return 0;
}

QuantumEnsemble::QuantumEnsemble(std::size_t m, double k, std::size_t copies, std::uint64_t base_seed)
    : m_(m), words_((2 * m + 63) / 64) {
  check_k(k);
  if (m == 0) throw ParameterError("quantum ensemble needs m >= 1");
  measure_prob_ = 1.0 / k;
  bits_.assign(copies * words_, 0);
  sizes_.assign(copies, 0);
  outcomes_.assign(copies, 0);
  rngs_.reserve(copies);
  live_.reserve(copies);
  for (std::size_t i = 0; i < copies; ++i) {
    rngs_.emplace_back(derive_seed(base_seed, i));
    live_.push_back(static_cast<std::uint32_t>(i));
  }
  word_mask_.assign(words_, 0);
}

void QuantumEnsemble::on_update(std::size_t t, const Edge& e) {
  if (t != last_t_ + 1 || t > m_) throw std::logic_error("quantum ensemble received t=" + std::to_string(t) + " out of order");
  last_t_ = t;
  const VertexId need = std::max(e.u, e.v) + 1;
  if (into_.size() < need) {
    into_.resize(need);
    mark_.resize(need, 0);
  }

  // Shared measurement geometry for this edge: which slots point into u or v,
  // and which pairs of slots share a tail (a closed wedge).
  touched_.clear();
  for (VertexId head : {e.u, e.v}) {
    for (const Slot& s : into_[head]) {
      const std::uint32_t word = s.bit / 64;
      if (word_mask_[word] == 0) touched_.push_back(word);
      word_mask_[word] |= std::uint64_t{1} << (s.bit % 64);
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wedges;
  for (const Slot& s : into_[e.u]) mark_[s.tail] = s.bit + 1;
  for (const Slot& s : into_[e.v]) {
    if (mark_[s.tail] != 0) wedges.emplace_back(mark_[s.tail] - 1, s.bit);
  }
  for (const Slot& s : into_[e.u]) mark_[s.tail] = 0;

  const auto fresh_uv = static_cast<std::uint32_t>(2 * (t - 1));  // u -> v
  const auto fresh_vu = fresh_uv + 1;                              // v -> u
  const std::uint64_t dummies_before = 2 * m_ - 2 * (t - 1);

  std::size_t write = 0;
  for (std::size_t idx = 0; idx < live_.size(); ++idx) {
    const std::uint32_t c = live_[idx];
    std::uint64_t* s = bits_.data() + static_cast<std::size_t>(c) * words_;
    Rng& rng = rngs_[c];
    const bool f = rng.bernoulli(measure_prob_);
    int outcome = 0;
    if (f) {
      ++measurements_;
      std::uint64_t w_size = 0;
      for (std::uint32_t word : touched_) w_size += std::popcount(s[word] & word_mask_[word]);
      std::uint64_t w_plus = 0;
      for (auto [a, b] : wedges) {
        w_plus += ((s[a / 64] >> (a % 64)) & (s[b / 64] >> (b % 64)) & 1U);
      }
      const std::uint64_t w_minus = w_size - 2 * w_plus;
      MeasureDist dist{4 * w_plus + w_minus, w_minus, 2 * (dummies_before + sizes_[c])};
      outcome = dist.sample(rng);
      if (outcome == 0) {
        for (std::uint32_t word : touched_) s[word] &= ~word_mask_[word];
        sizes_[c] -= static_cast<std::uint32_t>(w_size);
      }
    }
    s[fresh_uv / 64] |= std::uint64_t{1} << (fresh_uv % 64);
    s[fresh_vu / 64] |= std::uint64_t{1} << (fresh_vu % 64);
    sizes_[c] += 2;
    if (c == 0 && trace_) *trace_ << t << ',' << int(f) << ',' << sizes_[c] << ',' << outcome << '\n';
    if (outcome != 0) {
      outcomes_[c] = static_cast<std::int8_t>(outcome);
    } else {
      peak_set_size_ = std::max<std::size_t>(peak_set_size_, sizes_[c]);
      live_[write++] = c;
    }
  }
  live_.resize(write);

  for (std::uint32_t word : touched_) word_mask_[word] = 0;
  into_[e.v].push_back({e.u, fresh_uv});
  into_[e.u].push_back({e.v, fresh_vu});
}

double estimate_t_less(const EdgeStream& stream, double k, std::size_t copies, std::uint64_t seed) {
  if (copies == 0) throw ParameterError("copies must be >= 1");
  QuantumEnsemble ensemble(stream.m(), k, copies, seed);
  UpdateConsumer* consumers[] = {&ensemble};
  push_stream(stream, consumers);
  double sum = 0.0;
  for (auto b : ensemble.outcomes()) sum += b;
  return k * static_cast<double>(stream.m()) * sum / static_cast<double>(copies);
}

}  // namespace tricount
