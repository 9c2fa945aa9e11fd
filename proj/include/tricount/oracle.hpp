#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tricount/stream.hpp"

namespace tricount {

/// A triangle with its edges in arrival order e1 = {first, v}, e2 = {first, w},
/// e3 = {v, w}. Arrival indices are 1-based.
///
/// d1 counts edges incident to v arriving strictly between e1 and e3;
/// d2 counts edges incident to w arriving strictly between e2 and e3.
struct OrderedTriangle {
  VertexId first = 0;
  VertexId v = 0;
  VertexId w = 0;
  std::size_t e1 = 0;
  std::size_t e2 = 0;
  std::size_t e3 = 0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;

  std::size_t interference() const { return d1 + d2; }
};

struct TriangleStats {
  double k = 1.0;
  std::size_t triangles = 0;
  std::size_t delta_e = 1;  // max(1, max triangles sharing an edge)
  std::size_t delta_v = 0;
  std::vector<OrderedTriangle> ordered;
  std::vector<double> t_less;  // parallel to `ordered`
  double t_less_k = 0.0;
  double t_greater_k = 0.0;
  std::map<VertexId, double> per_vertex_t_less;  // keyed by first vertex
};

/// Low-interference weight (1 - 1/k)^d with 0^0 = 1. Requires k >= 1.
double low_weight(double k, std::size_t interference);

/// All triangles of the stream's graph with brute-force degb counts.
/// Sorted by closing-edge arrival, then by first vertex.
std::vector<OrderedTriangle> enumerate_triangles(const EdgeStream& stream);

/// Exact statistics at threshold k. Throws ParameterError when k < 1 or k is not finite.
TriangleStats triangle_stats(const EdgeStream& stream, double k);

}  // namespace tricount
