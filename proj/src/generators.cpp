#include "tricount/generators.hpp"

#include <limits>
#include <unordered_set>

#include "tricount/oracle.hpp"
#include "tricount/rng.hpp"

namespace tricount {

std::string GroundTruth::header() const {
  return "truth T=" + std::to_string(triangles) + " deltaE=" + std::to_string(delta_e) +
         " deltaV=" + std::to_string(delta_v);
}

namespace {

template <typename T>
void fisher_yates(std::vector<T>& items, Rng& rng, std::size_t first = 0) {
  for (std::size_t i = items.size(); i > first + 1; --i) {
    const std::size_t j = first + rng.below(i - first);
    std::swap(items[i - 1], items[j]);
  }
}

constexpr std::uint64_t kVertexLimit = std::uint64_t{1} << 32;

}  // namespace

GeneratedStream gen_classical_hard(const ClassicalHardParams& p) {
  if (p.hubs < 1) throw ParameterError("classical-hard: hubs must be >= 1");
  if (p.tris_per_hub < 1) throw ParameterError("classical-hard: tris_per_hub must be >= 1");
  if (static_cast<std::uint64_t>(p.spokes_per_hub) < 2ULL * p.tris_per_hub) {
    throw ParameterError("classical-hard: spokes_per_hub (" + std::to_string(p.spokes_per_hub) +
                         ") must be >= 2 * tris_per_hub (" + std::to_string(p.tris_per_hub) + ")");
  }
  const std::uint64_t star_vertices = static_cast<std::uint64_t>(p.hubs) * (p.spokes_per_hub + 1ULL);
  const std::uint64_t matching_edges = static_cast<std::uint64_t>(p.hubs) * p.tris_per_hub + p.filler_edges;
  const std::uint64_t fresh_edges = p.planted ? p.filler_edges : matching_edges;
  if (star_vertices + 2 * fresh_edges > kVertexLimit) {
    throw ParameterError("classical-hard: vertex budget exceeds 2^32");
  }

  Rng rng(derive_seed(p.seed, 0xC1A5));
  std::vector<Edge> stars;
  std::vector<Edge> matching;
  stars.reserve(static_cast<std::size_t>(p.hubs) * p.spokes_per_hub);
  matching.reserve(matching_edges);

  std::uint64_t next_fresh = star_vertices;
  auto take_fresh = [&] { return static_cast<VertexId>(next_fresh++); };

  std::vector<VertexId> spokes(p.spokes_per_hub);
  for (std::uint32_t h = 0; h < p.hubs; ++h) {
    const auto hub = static_cast<VertexId>(static_cast<std::uint64_t>(h) * (p.spokes_per_hub + 1ULL));
    for (std::uint32_t s = 0; s < p.spokes_per_hub; ++s) {
      spokes[s] = hub + 1 + s;
      stars.push_back(Edge{hub, spokes[s]});
    }
    if (p.planted) {
      fisher_yates(spokes, rng);
      for (std::uint32_t i = 0; i < p.tris_per_hub; ++i) {
        matching.push_back(Edge::make(spokes[2 * i], spokes[2 * i + 1]));
      }
    }
  }
  if (!p.planted) {
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(p.hubs) * p.tris_per_hub; ++i) {
      const VertexId a = take_fresh();
      matching.push_back(Edge{a, take_fresh()});
    }
  }
  for (std::uint32_t i = 0; i < p.filler_edges; ++i) {
    const VertexId a = take_fresh();
    matching.push_back(Edge{a, take_fresh()});
  }
  if (p.shuffle_within_phase) {
    fisher_yates(stars, rng);
    fisher_yates(matching, rng);
  }

  std::vector<Edge> edges = std::move(stars);
  edges.insert(edges.end(), matching.begin(), matching.end());

  GroundTruth truth;
  if (p.planted) {
    truth.triangles = static_cast<std::uint64_t>(p.hubs) * p.tris_per_hub;
    truth.delta_v = p.tris_per_hub;
  }
  return {EdgeStream::from_edges(std::move(edges), next_fresh), truth};
}

GeneratedStream gen_quantum_hard(const QuantumHardParams& p) {
  if (p.triangles < 1) throw ParameterError("quantum-hard: T must be >= 1");
  const std::uint64_t n = 2ULL * p.triangles + p.noise + 1;
  if (n > kVertexLimit) throw ParameterError("quantum-hard: vertex budget exceeds 2^32");

  const VertexId u = 0;
  auto w = [](std::uint32_t i) { return static_cast<VertexId>(2 * i - 1); };
  auto v = [](std::uint32_t i) { return static_cast<VertexId>(2 * i); };

  std::vector<Edge> wedges;
  std::vector<Edge> noise;
  std::vector<Edge> closers;
  for (std::uint32_t i = 1; i <= p.triangles; ++i) {
    wedges.push_back(Edge::make(u, w(i)));
    wedges.push_back(Edge::make(w(i), v(i)));
    closers.push_back(Edge::make(u, v(i)));
  }
  for (std::uint32_t j = 1; j <= p.noise; ++j) {
    noise.push_back(Edge::make(u, static_cast<VertexId>(2ULL * p.triangles + j)));
  }
  if (p.shuffle_within_phase) {
    Rng rng(derive_seed(p.seed, 0x0AA5));
    fisher_yates(wedges, rng);
    fisher_yates(noise, rng);
    fisher_yates(closers, rng);
  }

  std::vector<Edge> edges = std::move(wedges);
  edges.insert(edges.end(), noise.begin(), noise.end());
  edges.insert(edges.end(), closers.begin(), closers.end());

  GroundTruth truth;
  truth.triangles = p.triangles;
  truth.delta_e = 1;
  truth.delta_v = p.triangles;
  return {EdgeStream::from_edges(std::move(edges), n), truth};
}

GeneratedStream gen_random(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  if (m == 0) throw ParameterError("random: m must be >= 1");
  if (n < 2 || n > kVertexLimit) throw ParameterError("random: n must be in [2, 2^32]");
  const auto max_edges = static_cast<unsigned __int128>(n) * (n - 1) / 2;
  if (m > max_edges) {
    throw ParameterError("random: m=" + std::to_string(m) + " exceeds n(n-1)/2 = " +
                         std::to_string(static_cast<std::uint64_t>(max_edges)));
  }

  Rng rng(derive_seed(seed, 0x5A4D));
  std::vector<Edge> edges;
  edges.reserve(m);
  if (2 * static_cast<unsigned __int128>(m) <= max_edges) {
    // Sequential rejection sampling; the draw order is already a uniform ordering.
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(m * 2);
    while (edges.size() < m) {
      const auto a = static_cast<VertexId>(rng.below(n));
      const auto b = static_cast<VertexId>(rng.below(n));
      if (a == b) continue;
      const Edge e = Edge::make(a, b);
      if (taken.insert(e.key()).second) edges.push_back(e);
    }
  } else {
    // Dense case: max_edges < 2m, so enumerate and take a uniform ordered prefix.
    std::vector<Edge> all;
    all.reserve(static_cast<std::size_t>(max_edges));
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = a + 1; b < n; ++b) all.push_back(Edge{static_cast<VertexId>(a), static_cast<VertexId>(b)});
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + rng.below(all.size() - i);
      std::swap(all[i], all[j]);
    }
    all.resize(m);
    edges = std::move(all);
  }

  EdgeStream stream = EdgeStream::from_edges(std::move(edges), n);
  const TriangleStats stats = triangle_stats(stream, 1.0);
  GroundTruth truth{stats.triangles, stats.delta_e, stats.delta_v};
  return {std::move(stream), truth};
}

}  // namespace tricount
