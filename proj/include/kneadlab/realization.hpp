#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kneadlab/bratteli.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/matrix.hpp"
#include "kneadlab/towers.hpp"

namespace kneadlab {

/// y[n-1] = y_n in Delta_[0,n].
struct TargetColumns {
  std::vector<RationalVector> y;
};

/// Throws invalid-targets unless every y_n has n+1 entries and lies in the simplex.
void validate(const TargetColumns& targets);

struct GrowthCheck {
  std::size_t r;
  Rational ratio;  // S_{q_{r-1}} / S_{q_r}
  Rational bound;  // 1 / r^2
};

struct LevelReport {
  std::size_t n = 0;
  std::vector<Integer> zeta;
  RationalVector zeta_normalized;
  Rational l1_error;        // ||[[zeta]] - y_n||_1
  Rational l1_bound;        // 1 / n^2
  Rational max_coordinate;  // max_j |[[zeta]]_j - y_j|
  Rational coordinate_bound;  // 1 / (n+2)^3
  std::vector<GrowthCheck> growth;
  bool xi_matches = false;  // Xi_n(., n+1) == [[zeta]]
  bool pass = false;
};

struct Realization {
  AqSpec spec;
  std::vector<LevelReport> levels;

  bool pass() const;
};

/// The constructive induction. Off the triangular indices q sits at the
/// growth-rule lower bound; a_n comes from the rounded targets zeta and fixes
/// q_{r_n} through the jump condition. Every bound is re-checked per level.
Realization approximate_targets(const TargetColumns& targets, const Integer& q1);

/// Xi_n: e_m-fixing columns plus the column given by S-weighted a_n.
RationalMatrix xi_matrix(const AqSpec& spec, std::size_t n);
RationalMatrix xi_matrix(const AqSpec& spec, const AqCuttingTimes& s, std::size_t n);
Tower xi_tower(const AqSpec& spec);

/// Q_(a,q), its cutting times and diagram, for specs small enough to tabulate.
struct AqTables {
  AqSpec spec;
  KneadingMap map;
  CuttingTimes s;
  BratteliDiagram diagram;

  AqTables(const AqSpec& spec, std::size_t levels);
};

struct FullBlock {
  std::size_t n = 0;
  std::size_t first_level = 0;  // q_{r_n} + 2
  std::size_t last_level = 0;   // q_{r_{n+1}} + 1
  RationalMatrix product;
  RationalMatrix closed_form;
  std::size_t rank = 0;
  std::optional<std::pair<std::size_t, std::size_t>> first_mismatch;

  bool pass() const { return !first_mismatch && rank == n + 2; }
};

/// v(k) on V_{q_{r_n}+1}, indexed like its row labels.
RationalVector block_vector(const AqTables& t, std::size_t n, std::size_t k);

/// Diagram depth needed by full_block_product(spec, n).
std::size_t full_block_levels(const AqSpec& spec, std::size_t n);

FullBlock full_block_product(const AqSpec& spec, std::size_t n);
FullBlock full_block_product(const AqTables& t, std::size_t n);

/// Assembles the closed form of the full block from S, Q and a alone.
RationalMatrix full_block_closed_form(const AqTables& t, std::size_t n);

struct ProofMatrices {
  std::size_t n = 0;
  RationalMatrix pi_n;
  RationalMatrix pi_prev;
  RationalMatrix a_n;
  RationalMatrix xi_n;
  RationalMatrix lhs;  // Pi_{n-1} * block
  RationalMatrix rhs;  // A_n * Pi_n
  std::optional<std::pair<std::size_t, std::size_t>> intertwining_mismatch;
  bool w_closed_form = false;       // Pi_n(v(.)) equals the displayed w_n
  bool a_stochastic = false;
  std::vector<Rational> column_norms;        // ||A_n(.,m0) - Xi_n(.,m0)||_1, m0 < n
  std::vector<Rational> column_norm_closed;  // 2 S_{q_{r_{n-1}+n-m0-1}} / S_{q_{r_{n-1}+n-m0}}
  bool column_n_equal = false;
  Rational last_column_norm;
  Rational last_column_bound;

  bool pass() const;
};

/// Pi_n sums x_k over k - 1 in J_{n,n-i} into coordinate i and keeps
/// x_{q_{r_n}+1} as coordinate n+1.
RationalMatrix pi_matrix(const AqTables& t, std::size_t n);

/// w_n(m0) from its displayed closed form.
RationalVector w_vector(const AqTables& t, std::size_t n, std::size_t m0);

RationalMatrix a_matrix(const AqTables& t, std::size_t n);

ProofMatrices proof_matrices(const AqSpec& spec, std::size_t n);

/// Diagram depth needed by proof_matrices(spec, n).
std::size_t proof_levels(const AqSpec& spec, std::size_t n);

struct SummabilityReport {
  Rational distance_sum;  // sum over n of column_distance(A_n, Xi_n)
  Rational ratio_sum;     // 2 * sum over non-triangular r of S_{q_{r-1}} / S_{q_r}
  bool pass() const { return distance_sum <= ratio_sum; }
};

/// Levels n in [2, last] of the end-to-end tower comparison.
SummabilityReport summability(const AqSpec& spec, std::size_t last);

}  // namespace kneadlab
