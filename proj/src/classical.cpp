#include "tricount/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace tricount {

std::uint64_t PairwiseHash::threshold_for(double k, std::size_t m) {
  const long double p = static_cast<long double>(kPrime);
  const long double root = std::sqrt(static_cast<long double>(k) * static_cast<long double>(m));
  return static_cast<std::uint64_t>(std::floor(p / root));
}

PairwiseHash PairwiseHash::draw(double k, std::size_t m, Rng& rng) {
  PairwiseHash h;
  h.a = 1 + rng.below(kPrime - 1);
  h.b = rng.below(kPrime);
  h.threshold = threshold_for(k, m);
  return h;
}

ClassicalParams ClassicalParams::make(double k, std::size_t m) {
  if (m == 0) throw ParameterError("classical estimator needs m >= 1");
  if (!std::isfinite(k) || k < 1.0 || k > static_cast<double>(m)) {
    throw ParameterError("classical estimator needs 1 <= k <= m (k=" + std::to_string(k) +
                         ", m=" + std::to_string(m) + ")");
  }
  ClassicalParams p;
  p.k = k;
  p.m = m;
  p.keep_prob = std::sqrt(k / static_cast<double>(m));
  p.decay = 1.0 - 1.0 / k;
  return p;
}

ClassicalRun::ClassicalRun(const ClassicalParams& params, Rng rng) : rng_(rng) {
  hash_ = PairwiseHash::draw(params.k, params.m, rng_);
}

bool ClassicalRun::sampled(VertexId v, const ClassicalParams& params) const {
  return params.sampled_override ? params.sampled_override(v) : hash_(v);
}

bool ClassicalRun::keep(DirectedEdge d, const ClassicalParams& params) {
  return params.keep_override ? params.keep_override(d) : rng_.bernoulli(params.keep_prob);
}

void ClassicalRun::update(const Edge& e, const ClassicalParams& params) { update(e, params, {}); }

namespace {

double contribution(double decay, std::uint64_t d) {
  return d == 0 ? 0.0 : 1.0 - std::pow(decay, static_cast<double>(d));
}

}  // namespace

void ClassicalRun::update(const Edge& e, const ClassicalParams& params, const ContributionHook& hook) {
  for (const SampledEdge& into_u : store_) {
    if (into_u.head != e.u) continue;
    for (const SampledEdge& into_v : store_) {
      if (into_v.head != e.v || into_v.tail != into_u.tail) continue;
      const std::uint64_t d = std::uint64_t{into_u.counter} + into_v.counter;
      x_ += contribution(params.decay, d);
      if (hook) hook(into_u.tail, e, d);
    }
  }
  for (SampledEdge& s : store_) {
    if (s.head == e.u || s.head == e.v) ++s.counter;
  }
  if (sampled(e.u, params) && keep({e.u, e.v}, params)) {
    store_.push_back({e.u, e.v, 0});
    ++insertions_;
  }
  if (sampled(e.v, params) && keep({e.v, e.u}, params)) {
    store_.push_back({e.v, e.u, 0});
    ++insertions_;
  }
  max_live_ = std::max<std::uint32_t>(max_live_, static_cast<std::uint32_t>(store_.size()));
}

ClassicalRunResult c_run(const EdgeStream& stream, const ClassicalParams& params, Rng& rng, std::ostream* trace,
                         const ClassicalRun::ContributionHook& hook) {
  if (params.m != stream.m()) throw ParameterError("classical params built for a different stream length");
  ClassicalRun run(params, rng);
  for (std::size_t t = 1; t <= stream.m(); ++t) {
    run.update(stream.at(t), params, hook);
    if (trace) *trace << t << ',' << run.store().size() << ',' << run.x() << '\n';
  }
  return {run.x(), run.space()};
}

ClassicalRunResult c_run(const EdgeStream& stream, double k, Rng& rng, std::ostream* trace) {
  return c_run(stream, ClassicalParams::make(k, stream.m()), rng, trace);
}

ClassicalEnsemble::ClassicalEnsemble(ClassicalParams params, std::size_t copies, std::uint64_t base_seed)
    : params_(std::move(params)), threshold_(PairwiseHash::threshold_for(params_.k, params_.m)) {
  if (copies > std::numeric_limits<std::uint32_t>::max()) throw ParameterError("too many classical copies");
  a_.reserve(copies);
  b_.reserve(copies);
  rngs_.reserve(copies);
  for (std::size_t i = 0; i < copies; ++i) {
    Rng rng(derive_seed(base_seed, i));
    const PairwiseHash h = PairwiseHash::draw(params_.k, params_.m, rng);
    a_.push_back(h.a);
    b_.push_back(h.b);
    rngs_.push_back(rng);
  }
  x_.assign(copies, 0.0);
  sizes_.assign(copies, 0);
}

void ClassicalEnsemble::grow(VertexId v) {
  if (v >= by_head_.size()) {
    by_head_.resize(std::size_t{v} + 1);
    incidence_.resize(std::size_t{v} + 1, 0);
  }
}

void ClassicalEnsemble::close(const Edge& e) {
  // Walk the smaller index and probe the other for the same (copy, apex).
  const bool u_small = by_head_[e.u].size() <= by_head_[e.v].size();
  const HeadIndex& small = by_head_[u_small ? e.u : e.v];
  const HeadIndex& large = by_head_[u_small ? e.v : e.u];
  if (small.empty()) return;
  const std::uint32_t inc_small = incidence_[u_small ? e.u : e.v];
  const std::uint32_t inc_large = incidence_[u_small ? e.v : e.u];
  for (const auto& [key, base] : small) {
    const auto hit = large.find(key);
    if (hit == large.end()) continue;
    const std::uint64_t d = std::uint64_t{inc_small - base} + (inc_large - hit->second);
    x_[key >> 32] += contribution(params_.decay, d);
  }
}

void ClassicalEnsemble::insert(std::size_t i, DirectedEdge d) {
  by_head_[d.head].emplace((std::uint64_t{i} << 32) | d.tail, incidence_[d.head]);
  ++sizes_[i];
}

void ClassicalEnsemble::on_update(std::size_t t, const Edge& e) {
  if (t != last_t_ + 1 || t > params_.m) {
    throw std::logic_error("classical ensemble received t=" + std::to_string(t) + " out of order");
  }
  last_t_ = t;
  grow(std::max(e.u, e.v));
  close(e);
  ++incidence_[e.u];
  ++incidence_[e.v];

  const std::size_t copies = x_.size();
  if (params_.sampled_override || params_.keep_override) {
    for (std::size_t i = 0; i < copies; ++i) {
      const PairwiseHash h{a_[i], b_[i], threshold_};
      for (const DirectedEdge d : {DirectedEdge{e.u, e.v}, DirectedEdge{e.v, e.u}}) {
        const bool s = params_.sampled_override ? params_.sampled_override(d.tail) : h(d.tail);
        if (s && (params_.keep_override ? params_.keep_override(d) : rngs_[i].bernoulli(params_.keep_prob))) {
          insert(i, d);
        }
      }
    }
  } else {
    for (std::size_t i = 0; i < copies; ++i) {
      const PairwiseHash h{a_[i], b_[i], threshold_};
      if (h(e.u) && rngs_[i].bernoulli(params_.keep_prob)) insert(i, {e.u, e.v});
      if (h(e.v) && rngs_[i].bernoulli(params_.keep_prob)) insert(i, {e.v, e.u});
    }
  }
  if (trace_ && copies > 0) *trace_ << t << ',' << sizes_[0] << ',' << x_[0] << '\n';
}

std::size_t ClassicalEnsemble::max_live_edges() const {
  std::uint32_t best = 0;
  for (auto v : sizes_) best = std::max(best, v);
  return best;
}

double estimate_t_greater(const EdgeStream& stream, double k, std::size_t copies, std::uint64_t seed) {
  if (copies == 0) throw ParameterError("copies must be >= 1");
  ClassicalEnsemble ensemble(ClassicalParams::make(k, stream.m()), copies, seed);
  UpdateConsumer* consumers[] = {&ensemble};
  push_stream(stream, consumers);
  double sum = 0.0;
  for (const double x : ensemble.values()) sum += x;
  return classical_scale(k, stream.m()) * sum / static_cast<double>(copies);
}

}  // namespace tricount
