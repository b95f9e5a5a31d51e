#include "kneadlab/realization.hpp"

#include <algorithm>

#include "kneadlab/error.hpp"

namespace kneadlab {

void validate(const TargetColumns& targets) {
  if (targets.y.empty()) throw Error(ErrorKind::invalid_targets, "no target columns");
  for (std::size_t n = 1; n <= targets.y.size(); ++n) {
    const auto& y = targets.y[n - 1];
    if (y.size() != n + 1) {
      throw Error(ErrorKind::invalid_targets, "y_" + std::to_string(n) + " has " +
                                                  std::to_string(y.size()) + " entries, expected " +
                                                  std::to_string(n + 1));
    }
    if (!in_simplex(y)) {
      throw Error(ErrorKind::invalid_targets, "y_" + std::to_string(n) + " is not in the simplex");
    }
  }
}

bool Realization::pass() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelReport& l) { return l.pass; });
}

namespace {

Rational ratio(const Integer& num, const Integer& den) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

Integer pow_int(std::size_t base, unsigned long exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

}  // namespace

Realization approximate_targets(const TargetColumns& targets, const Integer& q1) {
  validate(targets);
  if (q1 < 1) throw Error(ErrorKind::invalid_targets, "q_1 must be positive");
  Realization out;
  AqSpec& spec = out.spec;
  spec.q = {Integer(0), q1};
  for (std::size_t n = 1; n <= targets.y.size(); ++n) {
    const std::size_t base = triangular_index(n - 1);
    for (std::size_t r = base + 1; r <= base + n; ++r) {
      Integer prod = 1;
      for (std::size_t s = 0; s + 2 <= r; ++s) prod *= 1 + spec.q[s + 1] + spec.q[s];
      spec.q.push_back(spec.q[r - 1] + Integer(static_cast<unsigned long>(r * r)) * prod);
    }
    LevelReport level;
    level.n = n;
    const AqCuttingTimes s(spec);
    for (std::size_t r = base + 1; r <= base + n; ++r) {
      level.growth.push_back({r, ratio(s.at_q(r - 1), s.at_q(r)),
                              Rational(1, static_cast<unsigned long>(r * r))});
    }
    Integer N = 1;
    for (std::size_t j = 0; j <= n; ++j) N *= s.at_q(base + j);
    const Integer k = pow_int(n + 2, 4);
    const auto& y = targets.y[n - 1];
    for (std::size_t j = 0; j <= n; ++j) level.zeta.push_back(N * (floor_of(Rational(k) * y[j]) + 1));
    std::vector<Integer> a(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      const Integer& sj = s.at_q(base + j);
      const Integer& z = level.zeta[n - j];
      if (!mpz_divisible_p(z.get_mpz_t(), sj.get_mpz_t())) {
        throw Error(ErrorKind::internal, "zeta_" + std::to_string(n - j) + " not divisible by S");
      }
      a[j] = z / sj;
    }
    a[n] -= 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (a[j] < 1) {
        throw Error(ErrorKind::internal,
                    "a_" + std::to_string(n) + "," + std::to_string(j) + " < 1 in the construction");
      }
    }
    Integer jump = 0;
    for (const auto& x : a) jump += x;
    spec.q.push_back(spec.q.back() + jump);
    spec.a.push_back(std::move(a));

    Integer total = 0;
    for (const auto& z : level.zeta) total += z;
    level.l1_bound = Rational(1, static_cast<unsigned long>(n * n));
    level.coordinate_bound = ratio(1, pow_int(n + 2, 3));
    level.l1_error = 0;
    level.max_coordinate = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      level.zeta_normalized.push_back(ratio(level.zeta[j], total));
      const Rational d = abs(level.zeta_normalized[j] - y[j]);
      level.l1_error += d;
      level.max_coordinate = std::max(level.max_coordinate, d);
    }
    const AqCuttingTimes s_full(spec);
    level.xi_matches = xi_matrix(spec, s_full, n).column(n + 1) == level.zeta_normalized;
    level.pass = level.xi_matches && level.l1_error <= level.l1_bound &&
                 level.max_coordinate <= level.coordinate_bound &&
                 std::all_of(level.growth.begin(), level.growth.end(),
                             [](const GrowthCheck& g) { return g.ratio <= g.bound; });
    out.levels.push_back(std::move(level));
  }
  validate(spec);
  return out;
}

RationalMatrix xi_matrix(const AqSpec& spec, const AqCuttingTimes& s, std::size_t n) {
  if (n == 0 || n > spec.a.size() || triangular_index(n) >= spec.q.size()) {
    throw Error(ErrorKind::insufficient_spec, "Xi_" + std::to_string(n) + " needs q_{r_" +
                                                  std::to_string(n) + "} and a_" + std::to_string(n));
  }
  const std::size_t rn = triangular_index(n);
  const std::size_t base = triangular_index(n - 1);
  const auto& a = spec.a[n - 1];
  const Integer& top = s.at_q(rn);
  RationalMatrix xi(n + 1, n + 2);
  for (std::size_t m = 0; m <= n; ++m) xi(m, m) = 1;
  xi(0, n + 1) = ratio(s.at_q(rn - 1) * (1 + a[n]), top);
  for (std::size_t m = 1; m <= n; ++m) xi(m, n + 1) = ratio(s.at_q(base + n - m) * a[n - m], top);
  // S_{q_{r_n}} = S_{q_{r_n - 1}} + sum_m a_{n,m} S_{q_{r_{n-1}+m}} makes the column stochastic.
  if (auto why = stochastic_violation(xi)) {
    throw Error(ErrorKind::internal, "Xi_" + std::to_string(n) + ": " + *why);
  }
  return xi;
}

RationalMatrix xi_matrix(const AqSpec& spec, std::size_t n) {
  return xi_matrix(spec, AqCuttingTimes(spec), n);
}

Tower xi_tower(const AqSpec& spec) {
  const AqCuttingTimes s(spec);
  Tower t;
  for (std::size_t n = 1; n <= complete_levels(spec); ++n) t.matrices.push_back(xi_matrix(spec, s, n));
  t.normalized = true;
  return t;
}

AqTables::AqTables(const AqSpec& spec_in, std::size_t levels)
    : spec(spec_in),
      map(build_q_aq(spec_in, to_size(covered_depth(spec_in)))),
      s(cutting_times(map, map.depth())),
      diagram(build_diagram(map, levels)) {
  if (auto why = aq_vertex_set_mismatch(diagram, spec)) throw Error(ErrorKind::internal, *why);
}

namespace {

std::size_t qs(const AqSpec& spec, std::size_t r) {
  if (r >= spec.q.size()) {
    throw Error(ErrorKind::insufficient_spec, "q_" + std::to_string(r) + " is not defined");
  }
  return to_size(spec.q[r]);
}

void require(const AqSpec& spec, std::size_t last_q, std::size_t last_a) {
  if (last_q >= spec.q.size() || last_a > spec.a.size()) {
    throw Error(ErrorKind::insufficient_spec,
                "needs q up to index " + std::to_string(last_q) + " and a up to a_" +
                    std::to_string(last_a));
  }
}

std::size_t label_index(const std::vector<std::size_t>& labels, std::size_t label) {
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) {
    throw Error(ErrorKind::internal, "label " + std::to_string(label) + " missing");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::size_t> interval_labels(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

}  // namespace

std::size_t full_block_levels(const AqSpec& spec, std::size_t n) {
  require(spec, triangular_index(n + 2) - 1, n + 1);
  return qs(spec, triangular_index(n + 1)) + 1;
}

RationalVector block_vector(const AqTables& t, std::size_t n, std::size_t k) {
  const std::size_t lo = qs(t.spec, triangular_index(n));
  const std::size_t hi = qs(t.spec, triangular_index(n + 1) - 1);
  if (k < lo || k > hi) throw Error(ErrorKind::invalid_input, "v(k) needs k in [q_{r_n}, q_{r_{n+1}-1}]");
  RationalVector v(hi - lo + 1);
  const Integer& sk = t.s.at(k);
  v[0] = ratio(t.s.at(lo), sk);
  for (std::size_t i = lo + 1; i <= k; ++i) v[i + 1 - (lo + 1)] += ratio(t.s.at(t.map(i)), sk);
  return v;
}

RationalMatrix full_block_closed_form(const AqTables& t, std::size_t n) {
  const auto& spec = t.spec;
  full_block_levels(spec, n);
  const std::size_t rn = triangular_index(n);
  const std::size_t rn1 = triangular_index(n + 1);
  const std::size_t rn2 = triangular_index(n + 2);
  const auto rows = interval_labels(qs(spec, rn) + 1, qs(spec, rn1 - 1) + 1);
  const auto cols = interval_labels(qs(spec, rn1) + 1, qs(spec, rn2 - 1) + 1);
  RationalMatrix c(rows, cols);
  auto set_column = [&](std::size_t col, const RationalVector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) c(i, col) = v[i];
  };
  const auto& a = spec.a[n];  // a_{n+1}
  const Integer& top = t.s.at(qs(spec, rn1));
  RationalVector first = block_vector(t, n, qs(spec, rn1 - 1));
  for (auto& x : first) x *= ratio(t.s.at(qs(spec, rn1 - 1)), top);
  for (std::size_t m = 0; m <= n + 1; ++m) {
    const std::size_t k = qs(spec, rn + m);
    const Rational w = ratio(t.s.at(k) * a[m], top);
    const RationalVector v = block_vector(t, n, k);
    for (std::size_t i = 0; i < v.size(); ++i) first[i] += w * v[i];
  }
  set_column(0, first);
  for (std::size_t m = 0; m <= n + 1; ++m) {
    const RationalVector v = block_vector(t, n, qs(spec, rn + m));
    for (std::size_t k1 = qs(spec, rn1 + m) + 1; k1 <= qs(spec, rn1 + m + 1); ++k1) {
      set_column(label_index(cols, k1 + 1), v);
    }
  }
  return c;
}

FullBlock full_block_product(const AqTables& t, std::size_t n) {
  FullBlock fb;
  fb.n = n;
  fb.first_level = qs(t.spec, triangular_index(n)) + 2;
  fb.last_level = full_block_levels(t.spec, n);
  fb.product = transition_product(t.diagram, fb.first_level, fb.last_level);
  fb.closed_form = full_block_closed_form(t, n);
  if (fb.product.row_labels() != fb.closed_form.row_labels() ||
      fb.product.col_labels() != fb.closed_form.col_labels()) {
    throw Error(ErrorKind::internal, "full block vertex sets differ from their closed forms");
  }
  fb.first_mismatch = first_difference(fb.product, fb.closed_form);
  fb.rank = rank(fb.product);
  return fb;
}

FullBlock full_block_product(const AqSpec& spec, std::size_t n) {
  return full_block_product(AqTables(spec, full_block_levels(spec, n)), n);
}

RationalMatrix pi_matrix(const AqTables& t, std::size_t n) {
  const auto& spec = t.spec;
  const std::size_t rn = triangular_index(n);
  require(spec, triangular_index(n + 1) - 1, n);
  const auto cols = interval_labels(qs(spec, rn) + 1, qs(spec, triangular_index(n + 1) - 1) + 1);
  RationalMatrix pi(interval_labels(0, n + 1), cols);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t k = qs(spec, rn + n - i) + 2; k <= qs(spec, rn + n - i + 1) + 1; ++k) {
      pi(i, label_index(cols, k)) = 1;
    }
  }
  pi(n + 1, 0) = 1;
  return pi;
}

RationalVector w_vector(const AqTables& t, std::size_t n, std::size_t m0) {
  const auto& spec = t.spec;
  const std::size_t rn = triangular_index(n);
  if (m0 > n + 1) throw Error(ErrorKind::invalid_input, "m0 out of range");
  const Integer& den = t.s.at(qs(spec, rn + n + 1 - m0));
  RationalVector w(n + 2);
  for (std::size_t m = m0; m <= n; ++m) {
    w[m] = ratio(t.s.at(qs(spec, rn + n + 1 - m)) - t.s.at(qs(spec, rn + n - m)), den);
  }
  w[n + 1] = ratio(t.s.at(qs(spec, rn)), den);
  return w;
}

RationalMatrix a_matrix(const AqTables& t, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::invalid_input, "A_n is defined for n >= 2");
  const auto& spec = t.spec;
  require(spec, triangular_index(n), n);
  const std::size_t rn = triangular_index(n);
  const std::size_t base = triangular_index(n - 1);
  const auto& a = spec.a[n - 1];
  const Integer& top = t.s.at(qs(spec, rn));
  RationalMatrix out(n + 1, n + 2);
  std::vector<RationalVector> w;
  for (std::size_t m = 0; m <= n; ++m) w.push_back(w_vector(t, n - 1, m));
  for (std::size_t m = 0; m <= n; ++m) {
    for (std::size_t i = 0; i <= n; ++i) out(i, m) = w[m][i];
  }
  for (std::size_t i = 0; i <= n; ++i) {
    Rational x = ratio(t.s.at(qs(spec, rn - 1)), top) * w[0][i];
    for (std::size_t m = 0; m <= n; ++m) {
      x += ratio(t.s.at(qs(spec, base + n - m)) * a[n - m], top) * w[m][i];
    }
    out(i, n + 1) = x;
  }
  return out;
}

std::size_t proof_levels(const AqSpec& spec, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::invalid_input, "proof matrices need n >= 2");
  return full_block_levels(spec, n - 1);
}

bool ProofMatrices::pass() const {
  return !intertwining_mismatch && w_closed_form && a_stochastic && column_n_equal &&
         column_norms == column_norm_closed && last_column_norm <= last_column_bound;
}

ProofMatrices proof_matrices(const AqSpec& spec, std::size_t n) {
  const AqTables t(spec, proof_levels(spec, n));
  ProofMatrices pm;
  pm.n = n;
  const FullBlock block = full_block_product(t, n - 1);
  pm.pi_n = pi_matrix(t, n);
  pm.pi_prev = pi_matrix(t, n - 1);
  pm.a_n = a_matrix(t, n);
  pm.xi_n = xi_matrix(spec, n);
  pm.lhs = multiply(pm.pi_prev, block.product);
  pm.rhs = multiply(pm.a_n, pm.pi_n);
  pm.intertwining_mismatch = first_difference(pm.lhs, pm.rhs);
  pm.a_stochastic = is_stochastic(pm.a_n);

  pm.w_closed_form = true;
  for (std::size_t level : {n - 1, n}) {
    const std::size_t rl = triangular_index(level);
    const RationalMatrix pi = pi_matrix(t, level);
    for (std::size_t m0 = 0; m0 <= level + 1; ++m0) {
      const RationalVector v = block_vector(t, level, qs(spec, rl + level + 1 - m0));
      if (kneadlab::apply(pi, v) != w_vector(t, level, m0)) pm.w_closed_form = false;
    }
  }

  const AqCuttingTimes s(spec);
  const std::size_t base = triangular_index(n - 1);
  for (std::size_t m0 = 0; m0 < n; ++m0) {
    pm.column_norms.push_back(one_norm(subtract(pm.a_n.column(m0), pm.xi_n.column(m0))));
    pm.column_norm_closed.push_back(2 * ratio(s.at_q(base + n - m0 - 1), s.at_q(base + n - m0)));
  }
  pm.column_n_equal = pm.a_n.column(n) == pm.xi_n.column(n);
  pm.last_column_norm = one_norm(subtract(pm.a_n.column(n + 1), pm.xi_n.column(n + 1)));
  pm.last_column_bound = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    pm.last_column_bound += 2 * ratio(s.at_q(base + m - 1), s.at_q(base + m));
  }
  return pm;
}

SummabilityReport summability(const AqSpec& spec, std::size_t last) {
  const AqTables t(spec, proof_levels(spec, last));
  const AqCuttingTimes s(spec);
  SummabilityReport rep;
  for (std::size_t n = 2; n <= last; ++n) {
    rep.distance_sum += column_distance(a_matrix(t, n), xi_matrix(spec, s, n));
  }
  for (std::size_t r = triangular_index(1) + 1; r < triangular_index(last); ++r) {
    bool triangular = false;
    for (std::size_t n = 0; triangular_index(n) <= r; ++n) triangular |= triangular_index(n) == r;
    if (!triangular) rep.ratio_sum += 2 * ratio(s.at_q(r - 1), s.at_q(r));
  }
  return rep;
}

}  // namespace kneadlab
