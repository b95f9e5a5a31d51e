#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kneadlab/kneading.hpp"
#include "kneadlab/matrix.hpp"

namespace kneadlab {

/// Rank 0 is minimal. Only j-1 -> j (rank 0) and j -> j (rank 1) ever share
/// a target; every other edge is both minimal and maximal.
struct Edge {
  std::size_t source;
  std::size_t target;
  std::size_t rank;

  bool operator==(const Edge&) const = default;
};

struct BratteliDiagram {
  std::vector<std::vector<std::size_t>> levels;  // V_0..V_J, ascending
  std::vector<std::vector<Edge>> edges;          // edges[j] = E_j; edges[0] is empty
  KneadingMap map;

  std::size_t depth() const noexcept { return levels.size() - 1; }
  bool contains(std::size_t j, std::size_t v) const;
  /// Edges of E_j into v, ordered by rank.
  std::vector<Edge> incoming(std::size_t j, std::size_t v) const;
};

/// V_0 = {0}, V_1 = {k >= 1 : Q(k) = 0}, V_j = {k >= j : Q(k-1) <= j-2}.
/// Level j is decidable when Q's tail floor is at least max(1, j-1).
BratteliDiagram build_diagram(const KneadingMap& map, std::size_t J);

/// Compares every level against the closed-form vertex sets of Q_(a,q).
/// Levels whose formula needs data beyond the spec are skipped.
std::optional<std::string> aq_vertex_set_mismatch(const BratteliDiagram& d, const AqSpec& spec);

/// build_diagram for Q_(a,q), cross-checked against the closed forms.
BratteliDiagram build_diagram(const AqSpec& spec, std::size_t J);

struct PathCounts {
  std::vector<std::size_t> vertices;
  std::vector<Integer> counts;

  const Integer& at(std::size_t vertex) const;
};

/// s_j by the recursion s_j(v') = sum over edges v -> v' of s_{j-1}(v).
/// When Q(k) <= max{0, k-2} on the table, also asserts s_j(j) = S_{j-1} and
/// s_j(k) = S_{Q(k-1)}.
PathCounts path_counts(const BratteliDiagram& d, std::size_t j);

struct TransitionMatrices {
  IntegerMatrix N;   // rows V_{j-1}, columns V_j
  RationalMatrix M;  // M(v, v') = s_{j-1}(v) N(v, v') / s_j(v')
};

TransitionMatrices transition_matrices(const BratteliDiagram& d, std::size_t j);

/// M_first ... M_last.
RationalMatrix transition_product(const BratteliDiagram& d, std::size_t first, std::size_t last);

struct FinitePath {
  std::vector<Edge> edges;  // e_1..e_j

  std::size_t length() const noexcept { return edges.size(); }
  std::size_t end() const { return edges.empty() ? 0 : edges.back().target; }
  bool operator==(const FinitePath&) const = default;
};

FinitePath minimal_path(const BratteliDiagram& d, std::size_t j, std::size_t vertex);

/// Next path in the Vershik order, or nullopt when every edge is maximal.
std::optional<FinitePath> vershik_successor(const BratteliDiagram& d, const FinitePath& p);

/// For each v in V_j (ascending), the tower of paths ending at v from its
/// minimal path to its maximal path in successor order.
std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, std::size_t j);

/// Digit x_{l-2} = 1 iff edge e_l is the loop l -> l (for l >= 2).
std::vector<std::size_t> path_digits(const FinitePath& p);

std::string to_dot(const BratteliDiagram& d);

}  // namespace kneadlab
