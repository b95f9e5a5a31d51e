#include "kneadlab/odometer.hpp"

#include <algorithm>

#include "kneadlab/error.hpp"

namespace kneadlab {

namespace {

bool strictly_ascending(std::span<const std::size_t> support) {
  return std::adjacent_find(support.begin(), support.end(),
                            [](std::size_t a, std::size_t b) { return a >= b; }) == support.end();
}

std::vector<std::size_t> above(const std::vector<std::size_t>& support, std::size_t p) {
  return {std::upper_bound(support.begin(), support.end(), p), support.end()};
}

Integer sum_below(const std::vector<std::size_t>& support, std::size_t p, const CuttingTimes& s) {
  Integer total = 0;
  for (std::size_t k : support) {
    if (k >= p) break;
    total += s.at(k);
  }
  return total;
}

// Index of the 1-digit added by T; the digits below it are cleared.
std::size_t carry_index(const OdometerPoint& x, const KneadingMap& map, const CuttingTimes& s) {
  const auto& sup = x.support;
  const std::size_t limit = x.depth ? *x.depth : s.depth();
  Integer below = 0;
  std::size_t next = 0;  // position in sup of the first index >= p
  for (std::size_t p = 0; p <= limit; ++p) {
    while (next < sup.size() && sup[next] < p) below += s.at(sup[next++]);
    if (next < sup.size() && sup[next] == p) continue;
    if (below != s.at(p) - 1) continue;
    if (next < sup.size()) {
      const std::size_t t = sup[next];
      if (t + 1 <= map.depth()) {
        if (p >= map(t + 1)) continue;
      } else if (p >= map.tail_floor()) {
        throw Error(ErrorKind::insufficient_depth,
                    "Q(" + std::to_string(t + 1) + ") needed to place the carry at " +
                        std::to_string(p));
      }
    } else if (x.depth) {
      // A later 1 at k > depth is compatible with the prefix iff Q(k+1) > top;
      // it would forbid the carry at p iff additionally Q(k+1) <= p.
      const std::size_t z = sup.empty() ? 0 : sup.back() + 1;
      for (std::size_t k1 = *x.depth + 2; k1 <= map.depth(); ++k1) {
        if (z <= map(k1) && map(k1) <= p) {
          throw Error(ErrorKind::insufficient_depth,
                      "carry at " + std::to_string(p) + " depends on digit " +
                          std::to_string(k1 - 1) + " beyond the cylinder");
        }
      }
      if (map.tail_floor() <= p) {
        throw Error(ErrorKind::insufficient_depth,
                    "carry at " + std::to_string(p) + " depends on digits beyond Q's depth");
      }
    }
    return p;
  }
  if (x.depth) {
    throw Error(ErrorKind::insufficient_depth, "carry leaves the cylinder of depth " +
                                                   std::to_string(*x.depth));
  }
  throw Error(ErrorKind::depth_exceeded, "carry leaves the cutting-time table");
}

}  // namespace

std::optional<std::string> omega_violation(const KneadingMap& map,
                                           std::span<const std::size_t> support) {
  if (!strictly_ascending(support)) return "support is not strictly ascending";
  for (std::size_t i = 1; i < support.size(); ++i) {
    const std::size_t j = support[i - 1];
    const std::size_t k = support[i];
    if (k + 1 <= map.depth()) {
      if (j >= map(k + 1)) {
        return "digit " + std::to_string(j) + " lies in [Q(" + std::to_string(k + 1) + "), " +
               std::to_string(k - 1) + "]";
      }
    } else if (j >= map.tail_floor()) {
      return "Q(" + std::to_string(k + 1) + ") is beyond the table";
    }
  }
  return std::nullopt;
}

Integer support_sum(std::span<const std::size_t> support, const CuttingTimes& s) {
  Integer total = 0;
  for (std::size_t k : support) total += s.at(k);
  return total;
}

Expansion expand(const Integer& n, const KneadingMap& map, const CuttingTimes& s) {
  if (n < 0) throw Error(ErrorKind::invalid_input, "negative n");
  if (s[s.depth()] <= n) {
    throw Error(ErrorKind::depth_exceeded,
                "S_" + std::to_string(s.depth()) + " = " + to_string(s[s.depth()]) +
                    " does not exceed n = " + to_string(n));
  }
  if (map.depth() < s.depth()) {
    throw Error(ErrorKind::invalid_input, "kneading map shallower than the cutting times");
  }
  const auto values = s.values();
  std::vector<std::size_t> support;
  Integer rest = n;
  while (rest > 0) {
    const auto it = std::upper_bound(values.begin(), values.end(), rest) - 1;
    const auto k = static_cast<std::size_t>(it - values.begin());
    support.push_back(k);
    rest -= *it;
  }
  std::reverse(support.begin(), support.end());
  if (support_sum(support, s) != n) throw Error(ErrorKind::internal, "expansion sum mismatch");
  if (auto why = omega_violation(map, support)) {
    throw Error(ErrorKind::internal, "greedy expansion of " + to_string(n) + " left Omega_Q: " + *why);
  }
  return {n, std::move(support)};
}

Expansion step(const Expansion& x, const KneadingMap& map, const CuttingTimes& s) {
  Expansion y = expand(x.n + 1, map, s);
  const std::size_t p = y.support.front();
  const bool consistent = !std::binary_search(x.support.begin(), x.support.end(), p) &&
                          above(x.support, p) == above(y.support, p) &&
                          sum_below(x.support, p, s) == s.at(p) - 1;
  if (!consistent) {
    throw Error(ErrorKind::internal, "step from " + to_string(x.n) +
                                         " disagrees with the carry rule at index " +
                                         std::to_string(p));
  }
  return y;
}

std::optional<std::size_t> q_index(const OdometerPoint& x) {
  if (x.support.empty()) return std::nullopt;
  return x.support.front();
}

QSigma q_and_sigma(const OdometerPoint& x, std::size_t n, const CuttingTimes& s) {
  if (x.support.empty()) {
    if (x.depth) {
      throw Error(ErrorKind::insufficient_depth,
                  "q lies beyond the cylinder of depth " + std::to_string(*x.depth));
    }
    throw Error(ErrorKind::zero_point, "q is undefined on <0>");
  }
  if (x.depth && n > *x.depth) {
    throw Error(ErrorKind::depth_exceeded, "sigma(x|" + std::to_string(n) +
                                               ") needs digits beyond depth " +
                                               std::to_string(*x.depth));
  }
  if (n > s.depth()) {
    throw Error(ErrorKind::depth_exceeded, "S_" + std::to_string(n) + " is not available");
  }
  Integer sigma = 0;
  for (std::size_t k : x.support) {
    if (k > n) break;
    sigma += s[k];
  }
  return {x.support.front(), sigma};
}

OdometerPoint forward(const OdometerPoint& x, const KneadingMap& map, const CuttingTimes& s) {
  if (!strictly_ascending(x.support)) throw Error(ErrorKind::invalid_input, "unsorted support");
  const std::size_t p = carry_index(x, map, s);
  OdometerPoint y{{p}, x.depth};
  const auto rest = above(x.support, p);
  y.support.insert(y.support.end(), rest.begin(), rest.end());
  return y;
}

OdometerPoint backward(const OdometerPoint& x, const KneadingMap& map, const CuttingTimes& s) {
  if (!strictly_ascending(x.support)) throw Error(ErrorKind::invalid_input, "unsorted support");
  if (x.support.empty()) {
    if (x.depth) {
      throw Error(ErrorKind::insufficient_depth,
                  "no 1-digit within the cylinder of depth " + std::to_string(*x.depth));
    }
    throw Error(ErrorKind::zero_point, "<0> has no preimage");
  }
  const std::size_t p = x.support.front();
  Expansion low = expand(s.at(p) - 1, map, s);
  OdometerPoint y{std::move(low.support), x.depth};
  y.support.insert(y.support.end(), x.support.begin() + 1, x.support.end());
  return y;
}

namespace {

// Lazily extended two-sided orbit of a point; stops at the first step whose
// image is not determined.
class Orbit {
 public:
  Orbit(OdometerPoint start, const KneadingMap& map, const CuttingTimes& s)
      : map_(map), s_(s) {
    fwd_.push_back(start);
    bwd_.push_back(std::move(start));
  }

  const OdometerPoint* at(std::int64_t m) {
    const bool ahead = m >= 0;
    auto& chain = ahead ? fwd_ : bwd_;
    bool& stopped = ahead ? fwd_stopped_ : bwd_stopped_;
    const auto i = static_cast<std::size_t>(ahead ? m : -m);
    while (chain.size() <= i && !stopped) {
      try {
        chain.push_back(ahead ? forward(chain.back(), map_, s_) : backward(chain.back(), map_, s_));
      } catch (const Error&) {
        stopped = true;
        escaped = true;
      }
    }
    return i < chain.size() ? &chain[i] : nullptr;
  }

  bool escaped = false;

 private:
  const KneadingMap& map_;
  const CuttingTimes& s_;
  std::vector<OdometerPoint> fwd_;
  std::vector<OdometerPoint> bwd_;
  bool fwd_stopped_ = false;
  bool bwd_stopped_ = false;
};

}  // namespace

Separation find_separating_time(const OdometerPoint& x, const OdometerPoint& x_prime,
                                const KneadingMap& map, const CuttingTimes& s, std::size_t K,
                                std::size_t search_bound) {
  if (x == x_prime) throw Error(ErrorKind::invalid_input, "the two points are identical");
  Orbit ox(x, map, s);
  Orbit oy(x_prime, map, s);
  auto next_value = [&](std::size_t q) -> std::optional<std::size_t> {
    if (q + 1 > map.depth()) return std::nullopt;
    return map(q + 1);
  };
  // Returns the q pair at time m when both criteria hold there.
  auto separated = [&](std::int64_t m) -> std::optional<std::pair<std::size_t, std::size_t>> {
    const OdometerPoint* a = ox.at(m);
    const OdometerPoint* b = oy.at(m);
    if (!a || !b) return std::nullopt;
    const auto qa = q_index(*a);
    const auto qb = q_index(*b);
    if (!qa || !qb || std::max(*qa, *qb) < K) return std::nullopt;
    const auto va = next_value(*qa);
    const auto vb = next_value(*qb);
    if (!va || !vb || *va == *vb) return std::nullopt;
    return std::pair{*qa, *qb};
  };
  const auto bound = static_cast<std::int64_t>(search_bound);
  for (std::int64_t t = 0; t <= 2 * bound; ++t) {
    const std::int64_t mp = t == 0 ? 0 : (t % 2 == 1 ? (t + 1) / 2 : -(t / 2));
    const OdometerPoint* a = ox.at(mp);
    const OdometerPoint* b = oy.at(mp);
    if (!a || !b) continue;
    const auto qa = q_index(*a);
    const auto qb = q_index(*b);
    if (!qa || !qb || *qa == *qb || std::max(*qa, *qb) < K) continue;
    if (auto hit = separated(mp)) return {mp, mp, "direct", hit->first, hit->second};
    const Integer shift = s.at(std::min(*qa, *qb));
    const Integer m = Integer(static_cast<long>(mp)) - shift;
    if (abs(m) > Integer(static_cast<long>(bound))) continue;
    const auto mi = static_cast<std::int64_t>(m.get_si());
    if (auto hit = separated(mi)) return {mi, mp, "shift", hit->first, hit->second};
  }
  if (ox.escaped || oy.escaped) {
    throw Error(ErrorKind::insufficient_depth,
                "orbit left the cylinders before a separating time was found");
  }
  throw Error(ErrorKind::not_found,
              "no separating time with |m| <= " + std::to_string(search_bound));
}

}  // namespace kneadlab
