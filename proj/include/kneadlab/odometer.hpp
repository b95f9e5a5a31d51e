#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kneadlab/kneading.hpp"
#include "kneadlab/numeric.hpp"

namespace kneadlab {

/// A point of the generalized odometer given by the ascending indices of its
/// 1-digits. With `depth` set it is a cylinder: digits 0..depth are as given
/// and later digits are unspecified. Without it the point has finite support.
struct OdometerPoint {
  std::vector<std::size_t> support;
  std::optional<std::size_t> depth;

  bool operator==(const OdometerPoint&) const = default;
};

/// The expansion <n>: the finite-support point with sum of S_k over its
/// support equal to n.
struct Expansion {
  Integer n;
  std::vector<std::size_t> support;

  bool operator==(const Expansion&) const = default;
};

/// Checks x_k = 1 => x_j = 0 for j in [Q(k+1), k-1], i.e. every support index
/// is below Q(k+1) of the next one. Returns a diagnostic when violated or not
/// decidable from the table and its tail floor.
std::optional<std::string> omega_violation(const KneadingMap& map,
                                           std::span<const std::size_t> support);

Integer support_sum(std::span<const std::size_t> support, const CuttingTimes& s);

Expansion expand(const Integer& n, const KneadingMap& map, const CuttingTimes& s);

/// <n> -> <n+1>, cross-checked against the carry rule at q(<n+1>).
Expansion step(const Expansion& x, const KneadingMap& map, const CuttingTimes& s);

struct QSigma {
  std::size_t q_index;
  Integer sigma;
};

/// q(x) and sigma(x|n). zero-point for <0>; insufficient-depth when q lies in
/// the unspecified tail of a cylinder; depth-exceeded when n is beyond S or
/// beyond the cylinder.
QSigma q_and_sigma(const OdometerPoint& x, std::size_t n, const CuttingTimes& s);

std::optional<std::size_t> q_index(const OdometerPoint& x);

/// T_Q and its inverse on points and cylinders. A cylinder image is returned
/// only when every completion of the cylinder carries at the same index
/// inside the prefix; otherwise insufficient-depth.
OdometerPoint forward(const OdometerPoint& x, const KneadingMap& map, const CuttingTimes& s);
OdometerPoint backward(const OdometerPoint& x, const KneadingMap& map, const CuttingTimes& s);

struct Separation {
  std::int64_t m = 0;
  std::int64_t m_prime = 0;
  std::string branch;  // "direct" or "shift"
  std::size_t q_x = 0;
  std::size_t q_x_prime = 0;
};

/// Bounded search for m with max{q(T^m x), q(T^m x')} >= K and
/// Q(q(T^m x)+1) != Q(q(T^m x')+1). Candidates m' are scanned as 0, 1, -1,
/// 2, ...; once q values differ with max >= K either m' itself works or the
/// shifted time m' - S_{min q} is tried.
Separation find_separating_time(const OdometerPoint& x, const OdometerPoint& x_prime,
                                const KneadingMap& map, const CuttingTimes& s, std::size_t K,
                                std::size_t search_bound);

}  // namespace kneadlab
