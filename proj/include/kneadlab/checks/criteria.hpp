#pragma once

// Acceptance checks shared by the test suite and `kneadlab verify`. Each
// single-instance check returns one CheckRecord; each suite fuzzes inputs
// from a seed and returns one record per instance.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kneadlab/cfexample.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/report.hpp"
#include "kneadlab/towers.hpp"

namespace kneadlab::checks {

using Rng = std::mt19937_64;

// Fixed inputs.
AqSpec ex1_spec();
AqSpec ex1x_spec();
/// EX1 followed by all-ones weight vectors, q at minimal increments, until
/// S at the covered depth exceeds `bound`.
AqSpec ex1_extended(const Integer& bound);
/// Q(k) = max{0, k-2} on [0, K].
KneadingMap fibonacci_map(std::size_t K);

// Fuzz generators.
/// Weight vectors a_1..a_levels with entries in [1, amax]; q_1 = 1, unit
/// increments off the triangular indices, q defined up to r_{levels+1} - 1.
AqSpec random_aq_spec(Rng& rng, std::size_t levels, unsigned amax);
/// Table on [0, K] with Q(k) <= max{0, k-2} whose zeros form an initial
/// segment; `tail` is the claimed lower bound for Q beyond K.
KneadingMap random_resonant_map(Rng& rng, std::size_t K, std::size_t tail);
RationalVector random_simplex_point(Rng& rng, std::size_t dim, unsigned denominator);
/// A_1..A_depth, each containing every unit column.
Tower random_surjective_tower(Rng& rng, std::size_t depth);
/// Strictly positive column-stochastic tower.
Tower random_positive_tower(Rng& rng, std::size_t depth);
/// Moves mass so that column_distance(A_k, B_k) = 2^{-k} exactly.
Tower perturb_tower(Rng& rng, const Tower& a);

// Single-instance checks.
CheckRecord check_full_block(const AqSpec& spec, std::size_t n);
/// Compares a supplied matrix against the computed block product.
CheckRecord check_full_block_against(const AqSpec& spec, std::size_t n, const RationalMatrix& claimed);
CheckRecord check_path_counts(const KneadingMap& map, std::size_t max_level);
CheckRecord check_realization(const TargetColumns& targets, const Integer& q1);
CheckRecord check_proof_matrices(const AqSpec& spec, std::size_t n);
CheckRecord check_odometer(const std::string& name, const KneadingMap& map, std::size_t expand_below,
                           std::size_t step_below);
CheckRecord check_vershik(const KneadingMap& map, std::size_t depth);
CheckRecord check_equivalence(const Tower& a, const Tower& b, std::size_t n, std::size_t m,
                              const RationalVector& x_top);
/// With a tolerance, the error bound at n must not exceed it.
CheckRecord check_cf(const CfSpec& spec, std::size_t n, const std::optional<Rational>& tolerance = std::nullopt);
CheckRecord check_tent_zero(std::size_t K);
CheckRecord check_tent_fit(const KneadingMap& target, std::size_t K, std::size_t max_iter);
CheckRecord check_normalization(const Tower& tower);

struct Criterion {
  std::string id;
  std::string title;
  std::string budget;  // stated runtime budget
};

/// The ten acceptance criteria in order.
const std::vector<Criterion>& criteria();

/// Runs the suite for `id` and returns its records; throws invalid_input
/// for an unknown id.
std::vector<CheckRecord> run_suite(std::string_view id, std::uint64_t seed);

}  // namespace kneadlab::checks
