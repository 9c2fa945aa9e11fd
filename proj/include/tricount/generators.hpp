#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tricount/stream.hpp"

namespace tricount {

/// Ground truth a generator knows by construction; written as a '#' truth header.
struct GroundTruth {
  std::uint64_t triangles = 0;
  std::uint64_t delta_e = 1;
  std::uint64_t delta_v = 0;

  /// "truth T=<..> deltaE=<..> deltaV=<..>"
  std::string header() const;
};

struct GeneratedStream {
  EdgeStream stream;
  GroundTruth truth;
};

struct ClassicalHardParams {
  std::uint32_t hubs = 1;
  std::uint32_t spokes_per_hub = 2;
  std::uint32_t tris_per_hub = 1;
  std::uint32_t filler_edges = 0;
  bool planted = true;
  bool shuffle_within_phase = false;
  std::uint64_t seed = 0;
};

/// Stars first (hub by hub), then a matching. When planted, each hub gets
/// tris_per_hub matching edges joining disjoint pairs of its spokes; the
/// remaining matching edges sit on fresh vertices. The seed picks which spokes
/// pair up (and the within-phase order when shuffling).
GeneratedStream gen_classical_hard(const ClassicalHardParams& p);

struct QuantumHardParams {
  std::uint32_t triangles = 1;
  std::uint32_t noise = 0;
  bool shuffle_within_phase = false;
  std::uint64_t seed = 0;
};

/// u w_1, w_1 v_1, ..., u w_T, w_T v_T; then u z_1 .. u z_noise; then u v_1 .. u v_T.
/// Vertex ids: u = 0, w_i = 2i - 1, v_i = 2i, z_j = 2T + j.
GeneratedStream gen_quantum_hard(const QuantumHardParams& p);

/// m distinct edges on n vertices drawn uniformly without replacement,
/// in uniformly random arrival order. Truth is computed by the oracle.
GeneratedStream gen_random(std::uint64_t n, std::uint64_t m, std::uint64_t seed);

}  // namespace tricount
