#include "tricount/statevector.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace tricount {

StateVector StateVector::init(std::size_t m) {
  if (m == 0) throw ParameterError("state vector needs m >= 1");
  if (m > kMaxStreamLength) {
    throw ParameterError("state vector reference refuses m=" + std::to_string(m) + " (limit " +
                         std::to_string(kMaxStreamLength) + ")");
  }
  std::map<BasisLabel, double> amps;
  const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(m));
  for (std::size_t i = 1; i <= 2 * m; ++i) amps.emplace(BasisLabel::dummy(i), a);
  return StateVector(m, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::size_t m, std::map<BasisLabel, double> amplitudes) {
  std::erase_if(amplitudes, [](const auto& kv) { return kv.second == 0.0; });
  return StateVector(m, std::move(amplitudes));
}

double StateVector::amplitude(const BasisLabel& label) const {
  auto it = amps_.find(label);
  return it == amps_.end() ? 0.0 : it->second;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& [label, a] : amps_) s += a * a;
  return s;
}

std::vector<DirectedEdge> StateVector::edge_support(double tol) const {
  std::vector<DirectedEdge> out;
  for (const auto& [label, a] : amps_) {
    if (label.kind == BasisLabel::Kind::Directed && std::abs(a) > tol) {
      out.push_back({static_cast<VertexId>(label.a), static_cast<VertexId>(label.b)});
    }
  }
  return out;  // map order on (kind, tail, head) is already (tail, head) order
}

std::size_t StateVector::dummy_support(double tol) const {
  std::size_t n = 0;
  for (const auto& [label, a] : amps_) n += label.kind == BasisLabel::Kind::Dummy && std::abs(a) > tol;
  return n;
}

StateVector StateVector::apply_swap(std::size_t t, const Edge& e) const {
  if (t < 1 || t > m_) throw ParameterError("swap index t=" + std::to_string(t) + " outside [1, m]");
  auto amps = amps_;
  auto swap_labels = [&amps](const BasisLabel& x, const BasisLabel& y) {
    const auto ix = amps.find(x);
    const auto iy = amps.find(y);
    const double ax = ix == amps.end() ? 0.0 : ix->second;
    const double ay = iy == amps.end() ? 0.0 : iy->second;
    amps.erase(x);
    amps.erase(y);
    if (ay != 0.0) amps[x] = ay;
    if (ax != 0.0) amps[y] = ax;
  };
  const Edge c = Edge::make(e.u, e.v);
  swap_labels(BasisLabel::dummy(2 * t - 1), BasisLabel::directed(c.u, c.v));
  swap_labels(BasisLabel::dummy(2 * t), BasisLabel::directed(c.v, c.u));
  return StateVector(m_, std::move(amps));
}

StateVector StateVector::project(const Edge& e, int outcome) const {
  if (outcome < -1 || outcome > 1) throw std::logic_error("measurement outcome must be -1, 0 or +1");
  const VertexId u = e.u;
  const VertexId v = e.v;
  std::set<VertexId> tails;
  for (const auto& [label, a] : amps_) {
    if (label.kind != BasisLabel::Kind::Directed) continue;
    const auto tail = static_cast<VertexId>(label.a);
    const auto head = static_cast<VertexId>(label.b);
    if ((head == u || head == v) && tail != u && tail != v) tails.insert(tail);
  }

  std::map<BasisLabel, double> out;
  if (outcome == 0) {
    out = amps_;
    for (VertexId w : tails) {
      out.erase(BasisLabel::directed(w, u));
      out.erase(BasisLabel::directed(w, v));
    }
  } else {
    const double sign = outcome;
    for (VertexId w : tails) {
      const double au = amplitude(BasisLabel::directed(w, u));
      const double av = amplitude(BasisLabel::directed(w, v));
      // (|wu> + sign |wv>)(<wu| + sign <wv|) / 2
      const double c = (au + sign * av) / 2.0;
      if (c != 0.0) {
        out[BasisLabel::directed(w, u)] = c;
        out[BasisLabel::directed(w, v)] = sign * c;
      }
    }
  }
  return StateVector(m_, std::move(out));
}

OutcomeProbabilities StateVector::measure_dist(const Edge& e) const {
  return {project(e, 1).norm_squared(), project(e, -1).norm_squared(), project(e, 0).norm_squared()};
}

StateVector StateVector::collapse(const Edge& e, int outcome) const {
  StateVector p = project(e, outcome);
  const double norm2 = p.norm_squared();
  if (norm2 <= 1e-300) throw std::logic_error("collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& [label, a] : p.amps_) a *= scale;
  return p;
}

void StateVector::dump_csv(std::ostream& out) const {
  out << "label,amplitude\n";
  for (const auto& [label, a] : amps_) {
    if (label.kind == BasisLabel::Kind::Dummy) {
      out << '#' << label.a;
    } else {
      out << label.a << "->" << label.b;
    }
    out << ',' << a << '\n';
  }
}

}  // namespace tricount
