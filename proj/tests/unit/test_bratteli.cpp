#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "kneadlab/bratteli.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/checks/oracles.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

using Vertices = std::vector<std::size_t>;

std::size_t count_substr(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("EX1 vertex and edge sets") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 5);
  CHECK(d.levels[1] == Vertices{1, 2});
  CHECK(d.levels[2] == Vertices{2, 3});
  CHECK(d.levels[5] == Vertices{5, 6, 7});

  const std::vector<Edge> into2 = d.incoming(2, 2);
  REQUIRE(into2.size() == 2);
  CHECK(into2[0] == Edge{1, 2, 0});
  CHECK(into2[1] == Edge{2, 2, 1});
  const std::vector<Edge> into3 = d.incoming(2, 3);
  REQUIRE(into3.size() == 1);
  CHECK(into3[0].source == 1);
  CHECK(d.edges[2].size() == 3);
}

TEST_CASE("dead-end vertices are rejected") {
  // Q(3) = 0 after Q(2) = 1 leaves vertex 3 of V_1 without an outgoing edge.
  const KneadingMap q({0, 0, 1, 0, 2, 3, 4, 5}, MapSource::table, 6);
  REQUIRE_ERROR_KIND(build_diagram(q, 4), ErrorKind::invalid_map);
}

TEST_CASE("EX1 path counts") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 5);
  const PathCounts p1 = path_counts(d, 1);
  for (std::size_t v : d.levels[1]) CHECK(p1.at(v) == 1);
  const PathCounts p2 = path_counts(d, 2);
  CHECK(p2.at(2) == 2);
  CHECK(p2.at(3) == 1);
  const PathCounts p3 = path_counts(d, 3);
  CHECK(p3.at(3) == 3);
  CHECK(p3.at(4) == 2);
}

TEST_CASE("EX1 transition matrix M_2") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 2);
  const TransitionMatrices t = transition_matrices(d, 2);
  REQUIRE(t.M.col_labels() == Vertices{2, 3});
  REQUIRE(t.M.row_labels() == Vertices{1, 2});
  CHECK(t.M(0, 0) == rat(1, 2));
  CHECK(t.M(1, 0) == rat(1, 2));
  CHECK(t.M(0, 1) == 1);
  CHECK(t.M(1, 1) == 0);
  CHECK(is_stochastic(t.M));
}

TEST_CASE("single vertex per level gives unit transition matrices") {
  const KneadingMap q({0, 0, 1, 2, 3, 4, 5}, MapSource::table, 6);
  const BratteliDiagram d = build_diagram(q, 5);
  for (std::size_t j = 1; j <= 5; ++j) {
    REQUIRE(d.levels[j].size() == 1);
    const RationalMatrix m = transition_matrices(d, j).M;
    CHECK(m.rows() == 1);
    CHECK(m(0, 0) == 1);
  }
}

TEST_CASE("Vershik successor examples") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 5);
  const FinitePath p = minimal_path(d, 2, 2);
  REQUIRE(p.edges.size() == 2);
  CHECK(p.edges[1] == Edge{1, 2, 0});
  const auto next = vershik_successor(d, p);
  REQUIRE(next);
  CHECK(next->edges[1] == Edge{2, 2, 1});
  CHECK_FALSE(vershik_successor(d, *next));

  // Length-1 paths: the single root edge is both minimal and maximal.
  CHECK_FALSE(vershik_successor(d, minimal_path(d, 1, 1)));
}

TEST_CASE("invalid paths are rejected") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 3);
  FinitePath p{{Edge{0, 1, 0}, Edge{1, 7, 0}}};
  REQUIRE_ERROR_KIND(vershik_successor(d, p), ErrorKind::invalid_path);
}

TEST_CASE("path enumeration sizes") {
  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 5);
  CHECK(enumerate_paths(d, 1).size() == d.levels[1].size());
  CHECK(enumerate_paths(d, 2).size() == 3);
  const std::vector<FinitePath> paths = enumerate_paths(d, 5);
  Integer total = 0;
  const PathCounts c = path_counts(d, 5);
  for (const Integer& x : c.counts) total += x;
  CHECK(Integer(static_cast<unsigned long>(paths.size())) == total);
  std::set<std::vector<std::size_t>> seen;
  for (const FinitePath& p : paths) {
    std::vector<std::size_t> key;
    for (const Edge& e : p.edges) {
      key.push_back(e.target);
      key.push_back(e.rank);
    }
    CHECK(seen.insert(key).second);
  }
}

TEST_CASE("DOT export") {
  const BratteliDiagram d0 = build_diagram(checks::ex1_spec(), 0);
  const std::string dot0 = to_dot(d0);
  CHECK(dot0.rfind("digraph", 0) == 0);
  CHECK(count_substr(dot0, "\"0:0\"") == 1);
  CHECK(count_substr(dot0, "->") == 0);

  const BratteliDiagram d = build_diagram(checks::ex1_spec(), 2);
  const std::string dot = to_dot(d);
  CHECK(count_substr(dot, "->") == 5);
  CHECK(count_substr(dot, "[label=") == 5);
  for (const char* node : {"\"0:0\"", "\"1:1\"", "\"1:2\"", "\"2:2\"", "\"2:3\""}) {
    CHECK(count_substr(dot, node) >= 1);
  }
  CHECK(to_dot(build_diagram(checks::ex1_spec(), 2)) == dot);
}

TEST_CASE("property: path counts agree with the DFS oracle and closed forms") {
  checks::Rng rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const KneadingMap q = checks::random_resonant_map(rng, 30, 11);
    const BratteliDiagram d = build_diagram(q, 12);
    const CuttingTimes s = cutting_times(q, q.depth());
    CAPTURE(trial);
    for (std::size_t j = 1; j <= 12; ++j) {
      const PathCounts c = path_counts(d, j);
      const auto dfs = oracle::dfs_path_counts(q.values(), j);
      REQUIRE(dfs.size() == c.vertices.size());
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        const std::size_t v = c.vertices[i];
        CHECK(c.counts[i] == Integer(static_cast<unsigned long>(dfs.at(v))));
        CHECK(c.counts[i] == (v == j ? s[j - 1] : s[q(v - 1)]));
      }
      if (j >= 2) {
        // s_j = N_j^t s_{j-1}.
        const TransitionMatrices t = transition_matrices(d, j);
        const PathCounts prev = path_counts(d, j - 1);
        for (std::size_t col = 0; col < t.N.cols(); ++col) {
          Integer sum = 0;
          for (std::size_t row = 0; row < t.N.rows(); ++row) sum += t.N(row, col) * prev.counts[row];
          CHECK(sum == c.counts[col]);
        }
        CHECK(is_stochastic(t.M));
      }
    }
  }
}
