#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tricount/generators.hpp"
#include "tricount/hybrid.hpp"
#include "tricount/oracle.hpp"

using namespace tricount;

TEST_CASE("choose_k") {
  CHECK(choose_k(1024, 1024, 1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(choose_k(1024, 1e-6, 1) == 1.0);
  CHECK(choose_k(100, 100, 100) == doctest::Approx(std::pow(100.0, 0.6)));
  CHECK(choose_k(3, 1e9, 1e9) == 3.0);
  CHECK_THROWS_AS(choose_k(0, 1, 1), ParameterError);
  CHECK_THROWS_AS(choose_k(10, 0, 1), ParameterError);
}

TEST_CASE("copy_counts") {
  // k m = eps T
  CHECK(copy_counts(10, 0.5, 10, 1, 0.5).quantum == 16);

  const double k = choose_k(60, 6, 1);
  CHECK(k == 1.0);
  const CopyCounts c = copy_counts(60, k, 6, 1, 0.5);
  CHECK(c.quantum == 6400);
  CHECK(c.classical == 19830);

  const CopyCounts half = copy_counts(60, k, 6, 1, 0.25);
  CHECK(half.quantum == 4 * c.quantum);
  CHECK(half.classical == doctest::Approx(4.0 * c.classical).epsilon(1e-3));

  CHECK(copy_counts(66, choose_k(66, 6, 1), 6, 1, 0.5).quantum == 7744);
  CHECK(copy_counts(66, choose_k(66, 6, 1), 6, 1, 0.5).classical == 22878);
  CHECK_THROWS_AS(copy_counts(60, 1, 6, 1, 0), ParameterError);
}

TEST_CASE("group_count") {
  CHECK(group_count(1.0 / 3) == 44);
  CHECK(group_count(0.05) == 89);
  CHECK(group_count(1.0) == 17);
  CHECK_THROWS_AS(group_count(0.0), ParameterError);
  CHECK_THROWS_AS(group_count(1.5), ParameterError);
}

TEST_CASE("median_of_groups") {
  CHECK(median_of_groups(std::vector<double>{1.0}) == 1.0);
  CHECK(median_of_groups(std::vector<double>{1, 2, 100}) == 2.0);
  CHECK(median_of_groups(std::vector<double>{4, 3, 2, 1}) == 2.0);
  CHECK_THROWS_AS(median_of_groups(std::vector<double>{}), ParameterError);
}

TEST_CASE("register width") {
  CHECK(register_width(1) == 1);
  CHECK(register_width(2) == 3);
  CHECK(register_width(61) == 13);
  CHECK(register_width(64) == 13);
  CHECK(register_width(65) == 15);
}

TEST_CASE("config validation") {
  HybridConfig c;
  c.epsilon = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.delta_e_bound = 0.5;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.run_quantum = c.run_classical = false;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = {};
  c.groups_override = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("report arithmetic, one pass, determinism") {
  const EdgeStream s = gen_classical_hard({2, 4, 2, 0, true, false, 1}).stream;
  HybridConfig c;
  c.t_bound = 4;
  c.seed = 5;
  const EstimateReport a = estimate_triangles(s, c);
  CHECK(a.estimate == a.q_part + a.c_part);
  CHECK(a.deliveries == 1);
  CHECK(a.groups == 44);
  CHECK(a.q_group_estimates.size() == 44);
  CHECK(a.c_group_estimates.size() == 44);
  CHECK(a.space.q_state_count == 44 * a.q_copies);
  CHECK(a.space.qubit_equiv == a.space.q_state_count * register_width(s.n()));
  const EstimateReport b = estimate_triangles(s, c);
  CHECK(to_json(a) == to_json(b));
  c.seed = 6;
  CHECK(to_json(estimate_triangles(s, c)) != to_json(a));
  CHECK(to_json(a).rfind("{\"schema\":1,", 0) == 0);
}

TEST_CASE("halves target their own parts") {
  const EdgeStream s = EdgeStream::from_pairs({{0, 1}, {0, 2}, {2, 3}, {1, 2}, {1, 3}});
  const auto stats = triangle_stats(s, 2.0);
  HybridConfig c;
  c.k_override = 2.0;
  c.quantum_copies_override = 20000;
  c.classical_copies_override = 20000;
  c.groups_override = 5;
  c.seed = 3;
  const EstimateReport r = estimate_triangles(s, c);
  CHECK(r.k_used == 2.0);
  CHECK(r.deliveries == 1);
  // per-group sd: km / sqrt(copies) for the quantum half
  CHECK(std::abs(r.q_part - stats.t_less_k) <= 4 * 10.0 / std::sqrt(20000.0));
  CHECK(std::abs(r.c_part - stats.t_greater_k) <= 0.3);
  CHECK(std::abs(r.estimate - static_cast<double>(stats.triangles)) <= 0.5);
}

TEST_CASE("traces go to the streams") {
  const EdgeStream s = EdgeStream::from_pairs({{0, 1}, {0, 2}, {1, 2}});
  std::ostringstream q;
  std::ostringstream cl;
  HybridConfig c;
  c.quantum_copies_override = 3;
  c.classical_copies_override = 3;
  c.groups_override = 1;
  c.quantum_trace = &q;
  c.classical_trace = &cl;
  estimate_triangles(s, c);
  CHECK_FALSE(q.str().empty());
  const std::string rows = cl.str();
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
}

TEST_CASE("single-mode runs report only their half") {
  const EdgeStream s = EdgeStream::from_pairs({{0, 1}, {0, 2}, {1, 2}});
  HybridConfig c;
  c.run_classical = false;
  const EstimateReport r = estimate_triangles(s, c);
  CHECK(r.c_copies == 0);
  CHECK(r.c_part == 0.0);
  CHECK(r.estimate == r.q_part);
}
