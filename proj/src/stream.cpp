#include "tricount/stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace tricount {

Edge Edge::make(VertexId a, VertexId b) {
  if (a == b) {
    throw ValidationError("self-loop on vertex " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

EdgeStream EdgeStream::from_edges(std::vector<Edge> edges, std::optional<std::uint64_t> n_hint) {
  if (edges.empty()) {
    throw ValidationError("empty stream (m must be at least 1)");
  }
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  first_seen.reserve(edges.size() * 2);
  std::uint64_t max_id = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    e = Edge::make(e.u, e.v);
    auto [it, inserted] = first_seen.emplace(e.key(), i + 1);
    if (!inserted) {
      throw ValidationError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " at positions " +
                            std::to_string(it->second) + " and " + std::to_string(i + 1));
    }
    max_id = std::max<std::uint64_t>(max_id, e.v);
  }
  std::uint64_t n = max_id + 1;
  if (n_hint) {
    if (*n_hint < n) {
      throw ValidationError("header n=" + std::to_string(*n_hint) + " but vertex id " + std::to_string(max_id) +
                            " appears");
    }
    n = *n_hint;
  }
  return EdgeStream(std::move(edges), n);
}

EdgeStream EdgeStream::from_pairs(std::initializer_list<std::pair<VertexId, VertexId>> pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back(Edge{a, b});
  return from_edges(std::move(edges));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

// Splits on spaces/tabs.
std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

// "# n=12 m=30" -> fills n and m. Other comments are ignored.
void parse_header(std::string_view comment, std::size_t line_no, std::optional<std::uint64_t>& n,
                  std::optional<std::uint64_t>& m) {
  for (auto tok : tokens(comment)) {
    for (auto [prefix, slot] : {std::pair{std::string_view("n="), &n}, std::pair{std::string_view("m="), &m}}) {
      if (tok.starts_with(prefix)) {
        auto value = parse_uint(tok.substr(prefix.size()));
        if (!value) throw ParseError(line_no, "bad header field '" + std::string(tok) + "'");
        *slot = value;
      }
    }
  }
}

}  // namespace

EdgeStream parse_stream(std::string_view text) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> header_n;
  std::optional<std::uint64_t> header_m;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("n=") || body.starts_with("m=")) parse_header(body, line_no, header_n, header_m);
      continue;
    }
    auto toks = tokens(line);
    if (toks.size() != 2) {
      throw ParseError(line_no, "expected two vertex ids, got " + std::to_string(toks.size()) + " tokens");
    }
    std::uint64_t ids[2];
    for (int i = 0; i < 2; ++i) {
      auto value = parse_uint(toks[i]);
      if (!value) throw ParseError(line_no, "not a non-negative integer: '" + std::string(toks[i]) + "'");
      if (*value > std::numeric_limits<VertexId>::max()) {
        throw ParseError(line_no, "vertex id out of 32-bit range: " + std::string(toks[i]));
      }
      ids[i] = *value;
    }
    if (ids[0] == ids[1]) {
      throw ValidationError("line " + std::to_string(line_no) + ": self-loop on vertex " + std::to_string(ids[0]));
    }
    edges.push_back(Edge{static_cast<VertexId>(ids[0]), static_cast<VertexId>(ids[1])});
  }
  if (header_m && *header_m != edges.size()) {
    throw ValidationError("header m=" + std::to_string(*header_m) + " but stream has " +
                          std::to_string(edges.size()) + " edges");
  }
  return EdgeStream::from_edges(std::move(edges), header_n);
}

EdgeStream read_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stream(buf.str());
}

std::string serialize_stream(const EdgeStream& stream, std::span<const std::string> extra_comments) {
  std::string out = "# n=" + std::to_string(stream.n()) + " m=" + std::to_string(stream.m()) + "\n";
  for (const auto& c : extra_comments) out += "# " + c + "\n";
  for (const auto& e : stream) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

DeliveryError::DeliveryError(std::size_t consumer_index, std::string consumer_name, std::size_t t,
                             const std::string& cause)
    : std::runtime_error("consumer " + std::to_string(consumer_index) + " (" + consumer_name + ") failed at t=" +
                         std::to_string(t) + ": " + cause),
      consumer_index_(consumer_index),
      consumer_name_(std::move(consumer_name)),
      t_(t) {}

void push_stream(const EdgeStream& stream, std::span<UpdateConsumer* const> consumers) {
  if (consumers.empty()) return;
  for (std::size_t t = 1; t <= stream.m(); ++t) {
    const Edge& e = stream.at(t);
    for (std::size_t i = 0; i < consumers.size(); ++i) {
      try {
        consumers[i]->on_update(t, e);
      } catch (const std::exception& ex) {
        throw DeliveryError(i, consumers[i]->name(), t, ex.what());
      }
    }
  }
  for (std::size_t i = 0; i < consumers.size(); ++i) {
    try {
      consumers[i]->finalize();
    } catch (const std::exception& ex) {
      throw DeliveryError(i, consumers[i]->name(), 0, ex.what());
    }
  }
}

void CountingConsumer::on_update(std::size_t t, const Edge& e) {
  if (!seen_.empty() && t <= seen_.back().first) increasing_ = false;
  seen_.emplace_back(t, e);
}

}  // namespace tricount
