#include "kneadlab/bratteli.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kneadlab/error.hpp"

namespace kneadlab {

bool BratteliDiagram::contains(std::size_t j, std::size_t v) const {
  const auto& level = levels.at(j);
  return std::binary_search(level.begin(), level.end(), v);
}

std::vector<Edge> BratteliDiagram::incoming(std::size_t j, std::size_t v) const {
  std::vector<Edge> out;
  for (const auto& e : edges.at(j)) {
    if (e.target == v) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.rank < b.rank; });
  return out;
}

BratteliDiagram build_diagram(const KneadingMap& map, std::size_t J) {
  if (auto bad = map.first_invalid_index()) {
    throw Error(ErrorKind::invalid_map, "Q is not a kneading map at index " + std::to_string(*bad));
  }
  const std::size_t need = std::max<std::size_t>(1, J >= 1 ? J - 1 : 0);
  if (J >= 1 && map.tail_floor() < need) {
    throw Error(ErrorKind::insufficient_depth,
                "level " + std::to_string(J) + " needs Q >= " + std::to_string(need) +
                    " beyond index " + std::to_string(map.depth()) + ", tail floor is " +
                    std::to_string(map.tail_floor()));
  }
  BratteliDiagram d{{{0}}, {{}}, map};
  const std::size_t K = map.depth();
  for (std::size_t j = 1; j <= J; ++j) {
    std::vector<std::size_t> level;
    if (j == 1) {
      for (std::size_t k = 1; k <= K; ++k) {
        if (map(k) == 0) level.push_back(k);
      }
    } else {
      for (std::size_t k = j; k <= K + 1; ++k) {
        if (map(k - 1) + 2 <= j) level.push_back(k);
      }
    }
    const auto& prev = d.levels[j - 1];
    std::vector<Edge> edges;
    for (std::size_t k : level) {
      const bool old = std::binary_search(prev.begin(), prev.end(), k);
      if (k == j) {
        edges.push_back({j - 1, j, 0});
        if (old) edges.push_back({j, j, 1});
      } else if (old) {
        edges.push_back({k, k, 0});
      } else {
        edges.push_back({j - 1, k, 0});
      }
    }
    for (std::size_t v : prev) {
      const bool has_out = std::any_of(edges.begin(), edges.end(),
                                       [v](const Edge& e) { return e.source == v; });
      if (!has_out) {
        throw Error(ErrorKind::invalid_map,
                    "vertex " + std::to_string(v) + " of level " + std::to_string(j - 1) +
                        " has no outgoing edge");
      }
    }
    d.levels.push_back(std::move(level));
    d.edges.push_back(std::move(edges));
  }
  return d;
}

namespace {

using Range = std::pair<Integer, Integer>;

std::vector<std::size_t> materialize(const std::vector<Range>& ranges) {
  std::set<std::size_t> out;
  for (const auto& [lo, hi] : ranges) {
    for (Integer k = lo; k <= hi; ++k) out.insert(to_size(k));
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::optional<std::string> aq_vertex_set_mismatch(const BratteliDiagram& d, const AqSpec& spec) {
  const auto& q = spec.q;
  const std::size_t R = q.size() - 1;
  const BlockIndex idx = block_index(spec);
  // Expected V_j for every j covered by a formula whose ingredients exist.
  std::vector<std::optional<std::vector<Range>>> expected(d.levels.size());
  if (R >= 2 && d.levels.size() > 1) expected[1] = std::vector<Range>{{1, q[2]}};
  if (R >= 2) {
    for (Integer j = 2; j <= q[1] + 1 && j < Integer(d.levels.size()); ++j) {
      expected[to_size(j)] = std::vector<Range>{{j, q[2] + 1}};
    }
  }
  for (std::size_t n = 0;; ++n) {
    const std::size_t rn = triangular_index(n);
    const std::size_t rn1 = triangular_index(n + 1);
    const std::size_t rn2 = triangular_index(n + 2);
    if (rn + 1 > R || q[rn] + 2 >= Integer(d.levels.size())) break;
    if (rn1 - 1 > R || n + 1 >= idx.I_parts.size() || idx.I_parts[n + 1].empty()) break;
    for (std::size_t m = 0; m <= n; ++m) {
      if (rn + m + 1 > R || idx.J_parts[n + 1].size() <= m) break;
      for (Integer j = q[rn + m] + 2; j <= q[rn + m + 1] + 1 && j < Integer(d.levels.size()); ++j) {
        std::vector<Range> v{{j, q[rn1 - 1] + 1}};
        for (std::size_t i = 0; i <= m; ++i) {
          v.push_back({idx.I_parts[n + 1][i].lo + 1, idx.I_parts[n + 1][i].hi + 1});
          v.push_back({idx.J_parts[n + 1][i].lo + 1, idx.J_parts[n + 1][i].hi + 1});
        }
        expected[to_size(j)] = v;
      }
    }
    if (rn2 - 1 > R) break;
    for (Integer j = q[rn1 - 1] + 2; j <= q[rn1] + 1 && j < Integer(d.levels.size()); ++j) {
      expected[to_size(j)] = std::vector<Range>{{j, q[rn2 - 1] + 1}};
    }
  }
  for (std::size_t j = 1; j < d.levels.size(); ++j) {
    if (!expected[j]) continue;
    if (materialize(*expected[j]) != d.levels[j]) {
      return "V_" + std::to_string(j) + " differs from its closed form";
    }
  }
  return std::nullopt;
}

BratteliDiagram build_diagram(const AqSpec& spec, std::size_t J) {
  const Integer depth = covered_depth(spec);
  // V_j needs Q up to max V_j - 1; the tail floor decides the rest.
  const std::size_t K = to_size(depth);
  BratteliDiagram d = build_diagram(build_q_aq(spec, K), J);
  if (auto why = aq_vertex_set_mismatch(d, spec)) throw Error(ErrorKind::internal, *why);
  return d;
}

const Integer& PathCounts::at(std::size_t vertex) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), vertex);
  if (it == vertices.end() || *it != vertex) {
    throw Error(ErrorKind::invalid_input, "vertex " + std::to_string(vertex) + " is not on this level");
  }
  return counts[static_cast<std::size_t>(it - vertices.begin())];
}

namespace {

TransitionMatrices transition_from_counts(const BratteliDiagram& d, std::size_t j,
                                          const PathCounts& below, const PathCounts& above) {
  const auto& rows = d.levels[j - 1];
  const auto& cols = d.levels[j];
  TransitionMatrices t{IntegerMatrix(rows, cols), RationalMatrix(rows, cols)};
  auto position = [](const std::vector<std::size_t>& v, std::size_t x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  for (const auto& e : d.edges[j]) t.N(position(rows, e.source), position(cols, e.target)) += 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (t.N(r, c) == 0) continue;
      Rational x(below.counts[r] * t.N(r, c), above.counts[c]);
      x.canonicalize();
      t.M(r, c) = x;
    }
  }
  if (auto why = stochastic_violation(t.M)) {
    throw Error(ErrorKind::internal, "M_" + std::to_string(j) + " is not stochastic: " + *why);
  }
  return t;
}

// s_{j} from s_{j-1} without re-running the closed-form assertion.
PathCounts advance(const BratteliDiagram& d, std::size_t j, const PathCounts& cur) {
  PathCounts next{d.levels[j], std::vector<Integer>(d.levels[j].size(), 0)};
  for (const auto& e : d.edges[j]) {
    const auto pos = std::lower_bound(next.vertices.begin(), next.vertices.end(), e.target) -
                     next.vertices.begin();
    next.counts[static_cast<std::size_t>(pos)] += cur.at(e.source);
  }
  return next;
}

}  // namespace

PathCounts path_counts(const BratteliDiagram& d, std::size_t j) {
  if (j > d.depth()) {
    throw Error(ErrorKind::depth_exceeded, "diagram has depth " + std::to_string(d.depth()));
  }
  PathCounts cur{{0}, {Integer(1)}};
  for (std::size_t l = 1; l <= j; ++l) cur = advance(d, l, cur);
  const auto& map = d.map;
  bool resonant = true;
  for (std::size_t k = 0; k <= map.depth() && resonant; ++k) {
    resonant = map(k) <= (k >= 2 ? k - 2 : 0);
  }
  if (resonant && j >= 1) {
    const CuttingTimes s = cutting_times(map, map.depth());
    for (std::size_t i = 0; i < cur.vertices.size(); ++i) {
      const std::size_t k = cur.vertices[i];
      const Integer& want = k == j ? s.at(j - 1) : s.at(map(k - 1));
      if (cur.counts[i] != want) {
        throw Error(ErrorKind::internal, "s_" + std::to_string(j) + "(" + std::to_string(k) +
                                             ") disagrees with the path-count recurrence");
      }
    }
  }
  return cur;
}

TransitionMatrices transition_matrices(const BratteliDiagram& d, std::size_t j) {
  if (j == 0 || j > d.depth()) {
    throw Error(ErrorKind::depth_exceeded, "no transition matrix at level " + std::to_string(j));
  }
  return transition_from_counts(d, j, path_counts(d, j - 1), path_counts(d, j));
}

RationalMatrix transition_product(const BratteliDiagram& d, std::size_t first, std::size_t last) {
  if (first == 0 || first > last || last > d.depth()) {
    throw Error(ErrorKind::depth_exceeded, "levels [" + std::to_string(first) + ", " +
                                               std::to_string(last) + "] are not in the diagram");
  }
  PathCounts below = path_counts(d, first - 1);
  PathCounts above = advance(d, first, below);
  RationalMatrix p = transition_from_counts(d, first, below, above).M;
  for (std::size_t j = first + 1; j <= last; ++j) {
    below = std::move(above);
    above = advance(d, j, below);
    p = multiply(p, transition_from_counts(d, j, below, above).M);
  }
  return p;
}

FinitePath minimal_path(const BratteliDiagram& d, std::size_t j, std::size_t vertex) {
  if (j > d.depth() || !d.contains(j, vertex)) {
    throw Error(ErrorKind::invalid_path, "vertex " + std::to_string(vertex) + " is not in V_" +
                                             std::to_string(j));
  }
  FinitePath p;
  p.edges.resize(j);
  std::size_t v = vertex;
  for (std::size_t l = j; l >= 1; --l) {
    const auto in = d.incoming(l, v);
    p.edges[l - 1] = in.front();
    v = in.front().source;
  }
  return p;
}

namespace {

void check_path(const BratteliDiagram& d, const FinitePath& p) {
  if (p.length() > d.depth()) throw Error(ErrorKind::invalid_path, "path is longer than the diagram");
  std::size_t v = 0;
  for (std::size_t l = 1; l <= p.length(); ++l) {
    const Edge& e = p.edges[l - 1];
    if (e.source != v) throw Error(ErrorKind::invalid_path, "edges do not compose at level " + std::to_string(l));
    const auto& level = d.edges[l];
    if (std::find(level.begin(), level.end(), e) == level.end()) {
      throw Error(ErrorKind::invalid_path, "edge is not in E_" + std::to_string(l));
    }
    v = e.target;
  }
}

}  // namespace

std::optional<FinitePath> vershik_successor(const BratteliDiagram& d, const FinitePath& p) {
  check_path(d, p);
  for (std::size_t l = 1; l <= p.length(); ++l) {
    const Edge& e = p.edges[l - 1];
    const auto in = d.incoming(l, e.target);
    if (e.rank + 1 >= in.size()) continue;
    const Edge next = in[e.rank + 1];
    FinitePath q = minimal_path(d, l - 1, next.source);
    q.edges.push_back(next);
    q.edges.insert(q.edges.end(), p.edges.begin() + static_cast<std::ptrdiff_t>(l), p.edges.end());
    return q;
  }
  return std::nullopt;
}

std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, std::size_t j) {
  const PathCounts counts = path_counts(d, j);
  std::vector<FinitePath> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < counts.vertices.size(); ++i) {
    std::optional<FinitePath> p = minimal_path(d, j, counts.vertices[i]);
    Integer visited = 0;
    while (p) {
      std::vector<std::size_t> key;
      for (const auto& e : p->edges) key.push_back(e.target);
      if (!seen.insert(key).second || ++visited > counts.counts[i]) {
        throw Error(ErrorKind::cycle_detected, "successor iteration revisited a path");
      }
      out.push_back(*p);
      p = vershik_successor(d, *p);
    }
    if (visited != counts.counts[i]) {
      throw Error(ErrorKind::internal, "tower of vertex " + std::to_string(counts.vertices[i]) +
                                           " has " + to_string(visited) + " paths, expected " +
                                           to_string(counts.counts[i]));
    }
  }
  return out;
}

std::vector<std::size_t> path_digits(const FinitePath& p) {
  std::vector<std::size_t> digits;
  for (std::size_t l = 2; l <= p.length(); ++l) {
    if (p.edges[l - 1].rank == 1) digits.push_back(l - 2);
  }
  return digits;
}

std::string to_dot(const BratteliDiagram& d) {
  std::ostringstream out;
  out << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t j = 0; j < d.levels.size(); ++j) {
    out << "  { rank=same;";
    for (std::size_t v : d.levels[j]) out << " \"" << j << ':' << v << '"';
    out << " }\n";
  }
  for (std::size_t j = 1; j < d.edges.size(); ++j) {
    for (const auto& e : d.edges[j]) {
      out << "  \"" << j - 1 << ':' << e.source << "\" -> \"" << j << ':' << e.target
          << "\" [label=\"" << e.rank << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace kneadlab
