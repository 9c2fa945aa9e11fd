#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tricount/errors.hpp"

namespace tricount {

using VertexId = std::uint32_t;

/// Undirected edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  /// Canonicalizes the endpoint order. Throws ValidationError on a self-loop.
  static Edge make(VertexId a, VertexId b);

  bool touches(VertexId x) const { return u == x || v == x; }
  std::uint64_t key() const { return (static_cast<std::uint64_t>(u) << 32) | v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DirectedEdge {
  VertexId tail = 0;
  VertexId head = 0;

  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Immutable, validated single-pass input: distinct edges, no self-loops, m >= 1.
/// Arrival index t runs over [1, m].
class EdgeStream {
 public:
  /// Validates and takes ownership. `n_hint` raises n above 1 + max id when given.
  static EdgeStream from_edges(std::vector<Edge> edges, std::optional<std::uint64_t> n_hint = std::nullopt);

  /// Convenience for tests and fixtures: {{0,1},{0,2},{1,2}}.
  static EdgeStream from_pairs(std::initializer_list<std::pair<VertexId, VertexId>> pairs);

  std::size_t m() const { return edges_.size(); }
  std::uint64_t n() const { return n_; }

  /// 1-based arrival index.
  const Edge& at(std::size_t t) const { return edges_.at(t - 1); }
  std::span<const Edge> edges() const { return edges_; }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  friend bool operator==(const EdgeStream&, const EdgeStream&) = default;

 private:
  EdgeStream(std::vector<Edge> edges, std::uint64_t n) : edges_(std::move(edges)), n_(n) {}

  std::vector<Edge> edges_;
  std::uint64_t n_ = 0;
};

/// Parses the edge-list format: '#' comments, optional "# n=<int> m=<int>" header,
/// one "<u> <v>" pair per line.
EdgeStream parse_stream(std::string_view text);

/// Reads and parses a file. Throws std::runtime_error if it cannot be opened.
EdgeStream read_stream_file(const std::string& path);

/// Inverse of parse_stream. Emits the "# n= m=" header followed by `extra_comments`
/// (each written as "# <line>").
std::string serialize_stream(const EdgeStream& stream, std::span<const std::string> extra_comments = {});

/// Receiver of a single pass. on_update is called once per arrival, t strictly increasing.
class UpdateConsumer {
 public:
  virtual ~UpdateConsumer() = default;
  virtual void on_update(std::size_t t, const Edge& e) = 0;
  virtual void finalize() {}
  virtual std::string name() const { return "consumer"; }
};

/// Raised by push_stream when a consumer throws. Identifies who failed and when;
/// t = 0 means the failure happened in finalize().
class DeliveryError : public std::runtime_error {
 public:
  DeliveryError(std::size_t consumer_index, std::string consumer_name, std::size_t t, const std::string& cause);

  std::size_t consumer_index() const { return consumer_index_; }
  const std::string& consumer_name() const { return consumer_name_; }
  std::size_t t() const { return t_; }

 private:
  std::size_t consumer_index_;
  std::string consumer_name_;
  std::size_t t_;
};

/// One pass: every consumer sees (t, σ_t) for t = 1..m in order, interleaved
/// update-by-update, then finalize().
void push_stream(const EdgeStream& stream, std::span<UpdateConsumer* const> consumers);

/// Records every delivery; used to assert the one-pass contract.
class CountingConsumer : public UpdateConsumer {
 public:
  void on_update(std::size_t t, const Edge& e) override;
  void finalize() override { finalized_ = true; }
  std::string name() const override { return "counting"; }

  std::size_t calls() const { return seen_.size(); }
  bool strictly_increasing() const { return increasing_; }
  bool finalized() const { return finalized_; }
  const std::vector<std::pair<std::size_t, Edge>>& seen() const { return seen_; }

 private:
  std::vector<std::pair<std::size_t, Edge>> seen_;
  bool increasing_ = true;
  bool finalized_ = false;
};

}  // namespace tricount
