#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kneadlab/numeric.hpp"

namespace kneadlab {

enum class MapSource { table, aq, cf, tent };

std::string_view to_string(MapSource source);
MapSource parse_map_source(std::string_view text);

/// Finite truncation Q(0..K) of a kneading map.
///
/// `tail_floor` is a lower bound for Q(k) at every k > K. Generated maps know
/// it from their generator; for plain tables it is whatever the caller
/// asserts (0 when nothing is known). Level sets of the Bratteli diagram
/// beyond the truncation are decided with it.
///
/// The constructor does not enforce the kneading-map inequalities, so that
/// invalid tables can be diagnosed; see first_invalid_index().
class KneadingMap {
 public:
  explicit KneadingMap(std::vector<std::size_t> values, MapSource source = MapSource::table,
                       std::size_t tail_floor = 0);

  std::size_t depth() const noexcept { return values_.size() - 1; }
  std::size_t operator()(std::size_t k) const;
  std::span<const std::size_t> values() const noexcept { return values_; }
  MapSource source() const noexcept { return source_; }
  std::size_t tail_floor() const noexcept { return tail_floor_; }

  /// Smallest k breaking Q(0) = 0 or Q(k) <= k - 1.
  std::optional<std::size_t> first_invalid_index() const;

  bool operator==(const KneadingMap&) const = default;

 private:
  std::vector<std::size_t> values_;
  MapSource source_;
  std::size_t tail_floor_;
};

/// S_0..S_K with S_0 = 1 and S_k = S_{k-1} + S_{Q(k)}.
class CuttingTimes {
 public:
  CuttingTimes() = default;
  explicit CuttingTimes(std::vector<Integer> values) : values_(std::move(values)) {}

  std::size_t depth() const noexcept { return values_.size() - 1; }
  const Integer& operator[](std::size_t k) const { return values_[k]; }
  const Integer& at(std::size_t k) const;
  std::span<const Integer> values() const noexcept { return values_; }

 private:
  std::vector<Integer> values_;
};

CuttingTimes cutting_times(const KneadingMap& map, std::size_t depth);

struct AdmissibilityVerdict {
  enum class Status { admissible, violation, undetermined };
  Status status = Status::admissible;
  std::size_t index = 0;  // offending k for violation / undetermined
  std::string detail;
};

/// Truncated lexicographic test of {Q(k+j)}_{j>=1} >= {Q(Q(Q(k))+j)}_{j>=1}
/// (index 0 dominant) for every k in [1, depth].
///
/// Each comparison stops at the first strict difference, after `depth_bound`
/// terms, or when one of the two sequences leaves the truncation. Running
/// out of table is accepted; running out of `depth_bound` with all terms
/// equal is reported as undetermined.
AdmissibilityVerdict check_admissible(const KneadingMap& map, std::size_t depth_bound);

/// The pair (a, q) generating Q_(a,q). a[n-1] holds the vector a_n of length n+1.
struct AqSpec {
  std::vector<Integer> q;
  std::vector<std::vector<Integer>> a;

  bool operator==(const AqSpec&) const = default;
};

/// r_n = (n+1)(n+2)/2.
constexpr std::size_t triangular_index(std::size_t n) { return (n + 1) * (n + 2) / 2; }

/// Largest n >= 1 with r_n <= R for the defined q_0..q_R (0 if none).
std::size_t complete_levels(const AqSpec& spec);

/// Throws Error(invariant_violation) naming the violated field:
/// "q0", "q increasing", "a[n][i] ≥ 1", "a[n] length", "jump", "a missing".
void validate(const AqSpec& spec);

struct Interval {
  Integer lo;
  Integer hi;

  bool contains(const Integer& k) const { return lo <= k && k <= hi; }
  Integer length() const { return hi - lo + 1; }
  bool operator==(const Interval&) const = default;
};

/// The block intervals I_n, J_n, I_{n,m}, J_{n,m}. Entries are present only
/// when the spec determines them completely.
struct BlockIndex {
  std::vector<std::optional<Interval>> I;
  std::vector<std::optional<Interval>> J;
  std::vector<std::vector<Interval>> I_parts;  // [n][m], n >= 1; empty row when undetermined
  std::vector<std::vector<Interval>> J_parts;  // [n][m], determined prefix of m
};

BlockIndex block_index(const AqSpec& spec);

/// Q_(a,q)(0..K). Throws insufficient-spec if some k <= K is not covered.
KneadingMap build_q_aq(const AqSpec& spec, std::size_t depth);

/// Largest K such that every index in [0, K] is covered by the spec.
Integer covered_depth(const AqSpec& spec);

/// Lower bound of Q_(a,q) beyond index K (the block value floor q_{r_{n-1}}).
Integer aq_tail_floor(const AqSpec& spec, const Integer& depth);

/// Cutting times of Q_(a,q) evaluated block by block, so that the q_r may be
/// astronomically large. Q is constant on each I_{n,m} and J_{n,m}, and its
/// value there is some earlier q_r, which makes S linear on every block.
class AqCuttingTimes {
 public:
  explicit AqCuttingTimes(const AqSpec& spec);

  /// S_{q_r}; throws insufficient-spec if q_r is not covered.
  const Integer& at_q(std::size_t r) const;

  /// S_k for any covered index k.
  Integer at(const Integer& k) const;

  std::size_t defined_q() const noexcept { return s_at_q_.size(); }

 private:
  struct Segment {
    Integer first;
    Integer last;
    Integer step;        // S_{Q(k)} on the segment
    Integer s_before;    // S_{first - 1}
  };
  std::vector<Segment> segments_;
  std::vector<Integer> s_at_q_;
};

struct DoublyResonantReport {
  bool part1_pass = true;  // Q(k) <= max{0, k-2} for k <= K
  std::optional<std::size_t> part1_counterexample;
  bool part2_pass = true;  // Q(k+1) >= Q(Q(Q(k))+1) + 2 for k in [q_5+1, K-1]
  std::optional<std::size_t> part2_counterexample;
  std::size_t part2_first = 0;

  bool pass() const { return part1_pass && part2_pass; }
};

DoublyResonantReport check_doubly_resonant(const KneadingMap& map, const Integer& q5);
DoublyResonantReport check_doubly_resonant(const AqSpec& spec, std::size_t depth);

}  // namespace kneadlab
