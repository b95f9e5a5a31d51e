#include "kneadlab/checks/oracles.hpp"

#include <algorithm>
#include <functional>

#include "kneadlab/error.hpp"

namespace kneadlab::oracle {

std::vector<Integer> cutting_times(std::span<const std::size_t> q) {
  std::vector<Integer> s(q.size());
  s[0] = 1;
  for (std::size_t k = 1; k < q.size(); ++k) s[k] = s[k - 1] + s[q[k]];
  return s;
}

TopDominantExpander::TopDominantExpander(const std::vector<Integer>& s, std::size_t limit) {
  for (const Integer& x : s) {
    if (x > Integer(static_cast<unsigned long>(limit))) break;
    s_.push_back(x.get_ui());
  }
  reach_.assign(s_.size() + 1, std::vector<char>(limit + 1, 0));
  reach_[0][0] = 1;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    for (std::size_t m = 0; m <= limit; ++m) {
      reach_[i + 1][m] = reach_[i][m] || (m >= s_[i] && reach_[i][m - s_[i]]);
    }
  }
}

std::vector<std::size_t> TopDominantExpander::expand(std::size_t n) const {
  if (n >= reach_[0].size() || !reach_[s_.size()][n]) {
    throw Error(ErrorKind::not_found, std::to_string(n) + " is not a subset sum");
  }
  std::vector<std::size_t> digits;
  std::size_t m = n;
  for (std::size_t i = s_.size(); i-- > 0;) {
    // Set digit i whenever the lower digits can still complete the sum.
    if (m >= s_[i] && reach_[i][m - s_[i]]) {
      digits.push_back(i);
      m -= s_[i];
    }
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

bool in_omega(std::span<const std::size_t> q, const std::vector<std::size_t>& digits) {
  std::vector<char> x(q.size() + 1, 0);
  for (std::size_t k : digits) {
    if (k + 1 >= q.size()) throw Error(ErrorKind::depth_exceeded, "Q(k+1) is not tabulated");
    x[k] = 1;
  }
  for (std::size_t k : digits) {
    for (std::size_t j = q[k + 1]; j < k; ++j) {
      if (x[j]) return false;
    }
  }
  return true;
}

std::map<std::size_t, EnumeratedSums> enumerate_sums(std::span<const std::size_t> q,
                                                     const std::vector<Integer>& s, std::size_t count,
                                                     std::size_t limit) {
  std::map<std::size_t, EnumeratedSums> out;
  // Highest differing index decides; the set holding it is larger.
  auto greater = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    auto ia = a.rbegin(), ib = b.rbegin();
    while (ia != a.rend() && ib != b.rend() && *ia == *ib) {
      ++ia;
      ++ib;
    }
    if (ia == a.rend()) return false;
    if (ib == b.rend()) return true;
    return *ia > *ib;
  };
  for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
    Integer sum = 0;
    std::vector<std::size_t> digits;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask >> i & 1U) {
        sum += s[i];
        digits.push_back(i);
      }
    }
    if (sum >= Integer(static_cast<unsigned long>(limit))) continue;
    auto [it, fresh] = out.try_emplace(sum.get_ui());
    if (fresh || greater(digits, it->second.top_dominant_max)) it->second.top_dominant_max = digits;
    if (in_omega(q, digits)) it->second.omega_solutions.push_back(digits);
  }
  return out;
}

std::map<std::size_t, std::size_t> dfs_path_counts(std::span<const std::size_t> q, std::size_t j) {
  const std::size_t K = q.size() - 1;
  auto in_level = [&](std::size_t level, std::size_t k) {
    if (level == 0) return k == 0;
    if (level == 1) return k >= 1 && k <= K && q[k] == 0;
    return k >= level && k <= K + 1 && q[k - 1] + 2 <= level;
  };
  // Outgoing edges of vertex v at level l - 1 into level l.
  auto successors = [&](std::size_t l, std::size_t v) {
    std::vector<std::size_t> out;
    if (v == l - 1) {
      if (in_level(l, l)) out.push_back(l);
      for (std::size_t k = l + 1; k <= K + 1; ++k) {
        if (in_level(l, k) && !in_level(l - 1, k)) out.push_back(k);
      }
    }
    if (v != 0 && in_level(l, v) && in_level(l - 1, v)) out.push_back(v);
    return out;
  };
  std::map<std::size_t, std::size_t> counts;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t l, std::size_t v) {
    if (l == j) {
      ++counts[v];
      return;
    }
    for (std::size_t w : successors(l + 1, v)) walk(l + 1, w);
  };
  walk(0, 0);
  return counts;
}

std::size_t rational_rank(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) a[i][k] = m(i, k);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && a[pivot][c] == 0) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(a[pivot], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < m.cols(); ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<ContinuantPair> continuants(const std::vector<std::size_t>& a) {
  // p_{-1} = 1, p_0 = 0, q_{-1} = 0, q_0 = 1 for [0; a_1, ...].
  Integer p2 = 1, p1 = 0, q2 = 0, q1 = 1;
  std::vector<ContinuantPair> out;
  for (std::size_t ai : a) {
    const Integer p = Integer(static_cast<unsigned long>(ai)) * p1 + p2;
    const Integer q = Integer(static_cast<unsigned long>(ai)) * q1 + q2;
    out.push_back({p, q});
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
  }
  return out;
}

bool brackets_sqrt2_minus_1(const Rational& x, const Rational& r) {
  const Rational lo = x + 1 - r;
  const Rational hi = x + 1 + r;
  return lo > 0 && lo * lo <= 2 && hi * hi >= 2;
}

RationalMatrix permute(const RationalMatrix& b, const std::vector<std::size_t>& row_sigma,
                       const std::vector<std::size_t>& col_sigma) {
  RationalMatrix a(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t k = 0; k < b.cols(); ++k) a(row_sigma[i], col_sigma[k]) = b(i, k);
  }
  return a;
}

}  // namespace kneadlab::oracle
