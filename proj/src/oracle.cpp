#include "tricount/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace tricount {

double low_weight(double k, std::size_t interference) {
  if (interference == 0) return 1.0;
  return std::pow(1.0 - 1.0 / k, static_cast<double>(interference));
}

namespace {

// Number of entries of the sorted `times` strictly inside (lo, hi).
std::size_t count_between(const std::vector<std::size_t>& times, std::size_t lo, std::size_t hi) {
  auto a = std::upper_bound(times.begin(), times.end(), lo);
  auto b = std::lower_bound(times.begin(), times.end(), hi);
  return b > a ? static_cast<std::size_t>(b - a) : 0;
}

}  // namespace

std::vector<OrderedTriangle> enumerate_triangles(const EdgeStream& stream) {
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  index_of.reserve(stream.m() * 2);
  std::unordered_map<VertexId, std::vector<std::size_t>> times;      // arrival indices per vertex
  std::unordered_map<VertexId, std::vector<VertexId>> neighbors;     // in arrival order
  for (std::size_t t = 1; t <= stream.m(); ++t) {
    const Edge& e = stream.at(t);
    index_of.emplace(e.key(), t);
    times[e.u].push_back(t);
    times[e.v].push_back(t);
    neighbors[e.u].push_back(e.v);
    neighbors[e.v].push_back(e.u);
  }

  auto arrival = [&](VertexId a, VertexId b) -> std::size_t {
    auto it = index_of.find(Edge::make(a, b).key());
    return it == index_of.end() ? 0 : it->second;
  };

  std::vector<OrderedTriangle> out;
  for (std::size_t t = 1; t <= stream.m(); ++t) {
    const Edge& closing = stream.at(t);
    const VertexId a = closing.u;
    const VertexId b = closing.v;
    const auto& na = neighbors[a];
    const auto& ta = times[a];
    std::vector<OrderedTriangle> found;
    for (std::size_t i = 0; i < na.size() && ta[i] < t; ++i) {
      const VertexId c = na[i];
      const std::size_t t_ca = ta[i];
      const std::size_t t_cb = arrival(c, b);
      if (t_cb == 0 || t_cb > t) continue;
      OrderedTriangle tri;
      tri.first = c;
      tri.e3 = t;
      if (t_ca < t_cb) {
        tri.v = a, tri.w = b, tri.e1 = t_ca, tri.e2 = t_cb;
      } else {
        tri.v = b, tri.w = a, tri.e1 = t_cb, tri.e2 = t_ca;
      }
      tri.d1 = count_between(times[tri.v], tri.e1, tri.e3);
      tri.d2 = count_between(times[tri.w], tri.e2, tri.e3);
      found.push_back(tri);
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

TriangleStats triangle_stats(const EdgeStream& stream, double k) {
  if (!std::isfinite(k) || k < 1.0) {
    throw ParameterError("k must be a finite real >= 1, got " + std::to_string(k));
  }
  TriangleStats s;
  s.k = k;
  s.ordered = enumerate_triangles(stream);
  s.triangles = s.ordered.size();
  s.t_less.reserve(s.ordered.size());

  std::unordered_map<std::uint64_t, std::size_t> per_edge;
  std::unordered_map<VertexId, std::size_t> per_vertex;
  for (const auto& tri : s.ordered) {
    const double w = low_weight(k, tri.interference());
    s.t_less.push_back(w);
    s.t_less_k += w;
    s.t_greater_k += 1.0 - w;
    s.per_vertex_t_less[tri.first] += w;
    for (auto key : {Edge::make(tri.first, tri.v).key(), Edge::make(tri.first, tri.w).key(),
                     Edge::make(tri.v, tri.w).key()}) {
      s.delta_e = std::max(s.delta_e, ++per_edge[key]);
    }
    for (auto x : {tri.first, tri.v, tri.w}) s.delta_v = std::max(s.delta_v, ++per_vertex[x]);
  }
  return s;
}

}  // namespace tricount
