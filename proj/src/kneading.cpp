#include "kneadlab/kneading.hpp"

#include <algorithm>

#include "kneadlab/error.hpp"

namespace kneadlab {

std::string_view to_string(MapSource source) {
  switch (source) {
    case MapSource::table: return "table";
    case MapSource::aq: return "aq";
    case MapSource::cf: return "cf";
    case MapSource::tent: return "tent";
  }
  return "table";
}

MapSource parse_map_source(std::string_view text) {
  if (text == "table") return MapSource::table;
  if (text == "aq") return MapSource::aq;
  if (text == "cf") return MapSource::cf;
  if (text == "tent") return MapSource::tent;
  throw Error(ErrorKind::parse_error, "unknown map source \"" + std::string(text) + "\"");
}

KneadingMap::KneadingMap(std::vector<std::size_t> values, MapSource source, std::size_t tail_floor)
    : values_(std::move(values)), source_(source), tail_floor_(tail_floor) {
  if (values_.empty()) throw Error(ErrorKind::invalid_map, "kneading map needs at least Q(0)");
}

std::size_t KneadingMap::operator()(std::size_t k) const {
  if (k >= values_.size()) {
    throw Error(ErrorKind::depth_exceeded,
                "Q(" + std::to_string(k) + ") beyond depth " + std::to_string(depth()));
  }
  return values_[k];
}

std::optional<std::size_t> KneadingMap::first_invalid_index() const {
  if (values_[0] != 0) return 0;
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] > k - 1) return k;
  }
  return std::nullopt;
}

const Integer& CuttingTimes::at(std::size_t k) const {
  if (k >= values_.size()) {
    throw Error(ErrorKind::depth_exceeded,
                "S_" + std::to_string(k) + " beyond depth " + std::to_string(depth()));
  }
  return values_[k];
}

CuttingTimes cutting_times(const KneadingMap& map, std::size_t depth) {
  if (depth > map.depth()) {
    throw Error(ErrorKind::depth_exceeded, "requested S up to " + std::to_string(depth) +
                                               " but Q has depth " + std::to_string(map.depth()));
  }
  if (map(0) != 0) throw Error(ErrorKind::invalid_map, "Q(0) = " + std::to_string(map(0)));
  std::vector<Integer> s;
  s.reserve(depth + 1);
  s.emplace_back(1);
  for (std::size_t k = 1; k <= depth; ++k) {
    const std::size_t qk = map(k);
    if (qk > k - 1) {
      throw Error(ErrorKind::invalid_map,
                  "Q(" + std::to_string(k) + ") = " + std::to_string(qk) + " exceeds k - 1");
    }
    s.push_back(s[k - 1] + s[qk]);
  }
  return CuttingTimes(std::move(s));
}

AdmissibilityVerdict check_admissible(const KneadingMap& map, std::size_t depth_bound) {
  using Status = AdmissibilityVerdict::Status;
  if (const auto bad = map.first_invalid_index()) {
    const std::size_t k = *bad;
    return {Status::violation, k,
            k == 0 ? "Q(0) != 0"
                   : "Q(" + std::to_string(k) + ") = " + std::to_string(map(k)) + " > k - 1"};
  }
  const std::size_t depth = map.depth();
  for (std::size_t k = 1; k <= depth; ++k) {
    const std::size_t base = map(map(map(k)));
    std::size_t j = 1;
    for (; j <= depth_bound; ++j) {
      if (k + j > depth || base + j > depth) break;
      const std::size_t lhs = map(k + j);
      const std::size_t rhs = map(base + j);
      if (lhs > rhs) break;
      if (lhs < rhs) {
        return {Status::violation, k,
                "Q(" + std::to_string(k + j) + ") = " + std::to_string(lhs) + " < Q(" +
                    std::to_string(base + j) + ") = " + std::to_string(rhs)};
      }
    }
    if (j > depth_bound) {
      return {Status::undetermined, k,
              "tails agree on " + std::to_string(depth_bound) + " terms at k = " + std::to_string(k)};
    }
  }
  return {Status::admissible, 0, {}};
}

std::size_t complete_levels(const AqSpec& spec) {
  std::size_t n = 0;
  while (triangular_index(n + 1) < spec.q.size()) ++n;
  return n;
}

void validate(const AqSpec& spec) {
  auto fail = [](const std::string& field, const std::string& detail) {
    throw Error(ErrorKind::invariant_violation, "\"" + field + "\": " + detail);
  };
  if (spec.q.empty() || spec.q[0] != 0) fail("q0", "q must start with q_0 = 0");
  for (std::size_t r = 1; r < spec.q.size(); ++r) {
    if (spec.q[r] <= spec.q[r - 1]) {
      fail("q increasing", "q_" + std::to_string(r) + " <= q_" + std::to_string(r - 1));
    }
  }
  for (std::size_t n = 1; n <= spec.a.size(); ++n) {
    const auto& an = spec.a[n - 1];
    if (an.size() != n + 1) {
      fail("a[n] length", "a_" + std::to_string(n) + " has " + std::to_string(an.size()) +
                              " entries, expected " + std::to_string(n + 1));
    }
    for (std::size_t i = 0; i < an.size(); ++i) {
      if (an[i] < 1) {
        fail("a[n][i] ≥ 1", "a_" + std::to_string(n) + "," + std::to_string(i) + " = " +
                                 to_string(an[i]));
      }
    }
  }
  const std::size_t levels = complete_levels(spec);
  for (std::size_t n = 1; n <= levels; ++n) {
    if (n > spec.a.size()) {
      fail("a missing", "q reaches r_" + std::to_string(n) + " but a_" + std::to_string(n) +
                            " is not given");
    }
    const std::size_t r = triangular_index(n);
    Integer sum = 0;
    for (const auto& x : spec.a[n - 1]) sum += x;
    if (spec.q[r] - spec.q[r - 1] != sum) {
      fail("jump", "q_" + std::to_string(r) + " - q_" + std::to_string(r - 1) + " = " +
                       to_string(Integer(spec.q[r] - spec.q[r - 1])) + " but a_" +
                       std::to_string(n) + " sums to " + to_string(sum));
    }
  }
}

BlockIndex block_index(const AqSpec& spec) {
  validate(spec);
  BlockIndex idx;
  const std::size_t R = spec.q.size() - 1;
  const auto& q = spec.q;
  for (std::size_t n = 0;; ++n) {
    const std::size_t rn = triangular_index(n);
    if (rn - 1 > R) break;
    idx.I.push_back(rn <= R ? std::optional<Interval>(Interval{q[rn - 1] + 1, q[rn]}) : std::nullopt);
    const std::size_t rnext = triangular_index(n + 1);
    idx.J.push_back(rnext - 1 <= R ? std::optional<Interval>(Interval{q[rn] + 1, q[rnext - 1]})
                                   : std::nullopt);
    idx.I_parts.emplace_back();
    idx.J_parts.emplace_back();
    if (n == 0 || rn > R) continue;
    Integer lo = q[rn - 1] + 1;
    for (std::size_t m = 0; m <= n; ++m) {
      Integer hi = lo + spec.a[n - 1][m] - 1;
      idx.I_parts[n].push_back(Interval{lo, hi});
      lo = hi + 1;
    }
    for (std::size_t m = 0; m <= n && rn + m + 1 <= R; ++m) {
      idx.J_parts[n].push_back(Interval{q[rn + m] + 1, q[rn + m + 1]});
    }
  }
  return idx;
}

Integer covered_depth(const AqSpec& spec) {
  validate(spec);
  return spec.q.back();
}

Integer aq_tail_floor(const AqSpec& spec, const Integer& depth) {
  std::size_t best = 0;
  for (std::size_t n = 1; triangular_index(n) - 1 < spec.q.size(); ++n) {
    if (spec.q[triangular_index(n) - 1] <= depth) best = n;
  }
  return best == 0 ? Integer(0) : spec.q[triangular_index(best - 1)];
}

KneadingMap build_q_aq(const AqSpec& spec, std::size_t depth) {
  validate(spec);
  const Integer K = depth;
  if (K > spec.q.back()) {
    throw Error(ErrorKind::insufficient_spec,
                "index " + std::to_string(depth) + " lies beyond q_" +
                    std::to_string(spec.q.size() - 1) + " = " + to_string(spec.q.back()));
  }
  std::vector<std::size_t> values(depth + 1, 0);
  const BlockIndex idx = block_index(spec);
  auto fill = [&](const Interval& iv, std::size_t value) {
    if (iv.lo > K) return;
    const std::size_t lo = to_size(iv.lo);
    const std::size_t hi = to_size(iv.hi < K ? iv.hi : K);
    std::fill(values.begin() + lo, values.begin() + hi + 1, value);
  };
  for (std::size_t n = 1; n < idx.I_parts.size(); ++n) {
    const std::size_t base = triangular_index(n - 1);
    for (std::size_t m = 0; m < idx.I_parts[n].size(); ++m) {
      fill(idx.I_parts[n][m], to_size(spec.q[base + m]));
    }
    for (std::size_t m = 0; m < idx.J_parts[n].size(); ++m) {
      fill(idx.J_parts[n][m], to_size(spec.q[base + m]));
    }
  }
  return KneadingMap(std::move(values), MapSource::aq, to_size(aq_tail_floor(spec, K)));
}

AqCuttingTimes::AqCuttingTimes(const AqSpec& spec) {
  validate(spec);
  const auto& q = spec.q;
  const std::size_t R = q.size() - 1;
  s_at_q_.emplace_back(1);
  // Q vanishes on [1, q_2], so S_k = k + 1 there.
  const std::size_t zero_end = std::min<std::size_t>(R, 2);
  if (zero_end >= 1) {
    segments_.push_back(Segment{1, q[zero_end], 1, 1});
    for (std::size_t r = 1; r <= zero_end; ++r) s_at_q_.push_back(q[r] + 1);
  }
  Integer current = zero_end >= 1 ? s_at_q_.back() : Integer(1);
  auto push = [&](const Interval& iv, const Integer& step) {
    segments_.push_back(Segment{iv.lo, iv.hi, step, current});
    current += iv.length() * step;
    return current;
  };
  for (std::size_t n = 1; triangular_index(n) <= R; ++n) {
    const std::size_t rn = triangular_index(n);
    const std::size_t base = triangular_index(n - 1);
    Integer lo = q[rn - 1] + 1;
    Integer end_value;
    for (std::size_t m = 0; m <= n; ++m) {
      Interval iv{lo, lo + spec.a[n - 1][m] - 1};
      end_value = push(iv, s_at_q_[base + m]);
      lo = iv.hi + 1;
    }
    s_at_q_.push_back(end_value);  // S_{q_{r_n}}
    for (std::size_t m = 0; m <= n && rn + m + 1 <= R; ++m) {
      s_at_q_.push_back(push(Interval{q[rn + m] + 1, q[rn + m + 1]}, s_at_q_[base + m]));
    }
  }
}

const Integer& AqCuttingTimes::at_q(std::size_t r) const {
  if (r >= s_at_q_.size()) {
    throw Error(ErrorKind::insufficient_spec, "S at q_" + std::to_string(r) + " is not covered");
  }
  return s_at_q_[r];
}

Integer AqCuttingTimes::at(const Integer& k) const {
  if (k < 0) throw Error(ErrorKind::invalid_input, "negative index " + to_string(k));
  if (k == 0) return 1;
  auto it = std::lower_bound(segments_.begin(), segments_.end(), k,
                             [](const Segment& s, const Integer& v) { return s.last < v; });
  if (it == segments_.end()) {
    throw Error(ErrorKind::insufficient_spec, "S_" + to_string(k) + " is not covered");
  }
  return it->s_before + (k - it->first + 1) * it->step;
}

DoublyResonantReport check_doubly_resonant(const KneadingMap& map, const Integer& q5) {
  DoublyResonantReport rep;
  const std::size_t depth = map.depth();
  for (std::size_t k = 0; k <= depth; ++k) {
    const std::size_t bound = k >= 2 ? k - 2 : 0;
    if (map(k) > bound) {
      rep.part1_pass = false;
      rep.part1_counterexample = k;
      break;
    }
  }
  rep.part2_first = q5 + 1 > Integer(depth) ? depth + 1 : to_size(q5 + 1);
  // Part 2 needs Q(Q(Q(k)) + 1) inside the table; with part 1 failing that
  // is not guaranteed, so indices leaving the table are skipped.
  for (std::size_t k = rep.part2_first; k + 1 <= depth; ++k) {
    const std::size_t inner = map(map(k));
    if (inner >= depth) continue;
    if (map(k + 1) < map(inner + 1) + 2) {
      rep.part2_pass = false;
      rep.part2_counterexample = k;
      break;
    }
  }
  return rep;
}

DoublyResonantReport check_doubly_resonant(const AqSpec& spec, std::size_t depth) {
  validate(spec);
  if (spec.q.size() <= 5) throw Error(ErrorKind::insufficient_spec, "q_5 is not defined");
  return check_doubly_resonant(build_q_aq(spec, depth), spec.q[5]);
}

}  // namespace kneadlab
