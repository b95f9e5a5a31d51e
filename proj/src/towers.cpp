#include "kneadlab/towers.hpp"

namespace kneadlab {

const RationalMatrix& Tower::at(std::size_t n) const {
  if (n == 0 || n > matrices.size()) {
    throw Error(ErrorKind::depth_exceeded, "tower has no level " + std::to_string(n));
  }
  return matrices[n - 1];
}

void validate(const Tower& tower) {
  for (std::size_t n = 1; n <= tower.levels(); ++n) {
    const auto& a = tower.at(n);
    if (a.rows() != n + 1 || a.cols() != n + 2) {
      throw Error(ErrorKind::dimension_mismatch,
                  "A_" + std::to_string(n) + " is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", expected " + std::to_string(n + 1) + "x" +
                      std::to_string(n + 2));
    }
    if (auto why = stochastic_violation(a)) {
      throw Error(ErrorKind::invariant_violation, "A_" + std::to_string(n) + ": " + *why);
    }
  }
}

namespace {

bool column_is_unit(const RationalMatrix& a, std::size_t col, std::size_t j) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, col) != (i == j ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace

bool is_normalized(const Tower& tower) {
  for (std::size_t n = 1; n <= tower.levels(); ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (!column_is_unit(tower.at(n), j, j)) return false;
    }
  }
  return true;
}

RationalMatrix compose(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c = multiply(a, b);
  if (is_stochastic(a) && is_stochastic(b)) {
    if (auto why = stochastic_violation(c)) {
      throw Error(ErrorKind::internal, "product of stochastic matrices is not stochastic: " + *why);
    }
  }
  return c;
}

NormReport one_norm_contraction_check(const RationalMatrix& a, const RationalVector& w,
                                      const RationalVector& w_prime) {
  if (!in_simplex(w) || !in_simplex(w_prime)) {
    throw Error(ErrorKind::not_in_simplex, "arguments must lie in the unit simplex");
  }
  if (auto why = stochastic_violation(a)) throw Error(ErrorKind::invalid_input, *why);
  NormReport rep{one_norm(subtract(kneadlab::apply(a, w), kneadlab::apply(a, w_prime))), one_norm(subtract(w, w_prime))};
  if (rep.lhs > rep.rhs) throw Error(ErrorKind::internal, "stochastic map expanded the l1 norm");
  return rep;
}

RationalMatrix conjugate(const RationalMatrix& b, const Permutation& row_sigma,
                         const Permutation& col_sigma) {
  if (row_sigma.size() != b.rows() || col_sigma.size() != b.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "permutation sizes do not match the matrix");
  }
  RationalMatrix a(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t k = 0; k < b.cols(); ++k) a(row_sigma[i], col_sigma[k]) = b(i, k);
  }
  return a;
}

RationalMatrix unconjugate(const RationalMatrix& a, const Permutation& row_sigma,
                           const Permutation& col_sigma) {
  if (row_sigma.size() != a.rows() || col_sigma.size() != a.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "permutation sizes do not match the matrix");
  }
  RationalMatrix b(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) b(i, k) = a(row_sigma[i], col_sigma[k]);
  }
  return b;
}

NormalizedTower normalize_tower(const Tower& tower) {
  validate(tower);
  NormalizedTower out;
  Permutation sigma{0, 1};
  out.sigma.push_back(sigma);
  for (std::size_t n = 1; n <= tower.levels(); ++n) {
    const auto& a = tower.at(n);
    std::vector<std::size_t> iota(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      std::size_t col = 0;
      while (col < a.cols() && !column_is_unit(a, col, j)) ++col;
      if (col == a.cols()) {
        throw Error(ErrorKind::not_surjective,
                    "no column of A_" + std::to_string(n) + " equals e_" + std::to_string(j));
      }
      iota[j] = col;
    }
    Permutation next(n + 2, n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      next[iota[j]] = sigma[j];
    }
    // iota is injective, so exactly one column index is left for n + 1.
    out.tower.matrices.push_back(conjugate(a, sigma, next));
    out.iota.push_back(std::move(iota));
    out.sigma.push_back(next);
    sigma = std::move(next);
  }
  out.tower.normalized = true;
  if (!is_normalized(out.tower)) throw Error(ErrorKind::internal, "normalization failed");
  return out;
}

Rational column_distance(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "column_distance needs equal shapes");
  }
  Rational best = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational d = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) d += abs(a(i, j) - b(i, j));
    if (d > best) best = d;
  }
  return best;
}

ConjugacyEstimate conjugacy_estimate(const Tower& a, const Tower& b, std::size_t n, std::size_t m,
                                     const RationalVector& x_top) {
  if (n == 0 || m < n || m > a.levels() || m > b.levels()) {
    throw Error(ErrorKind::dimension_mismatch, "levels [" + std::to_string(n) + ", " +
                                                   std::to_string(m) + "] are not in both towers");
  }
  if (!in_simplex(x_top)) throw Error(ErrorKind::not_in_simplex, "x_{m+1} is not in the simplex");
  ConjugacyEstimate est;
  est.x_n = x_top;
  est.x_nm = x_top;
  est.bound = 0;
  for (std::size_t k = m; k >= n; --k) {
    est.x_n = kneadlab::apply(a.at(k), est.x_n);
    est.x_nm = kneadlab::apply(b.at(k), est.x_nm);
    est.bound += column_distance(a.at(k), b.at(k));
  }
  est.deviation = one_norm(subtract(est.x_n, est.x_nm));
  if (est.deviation > est.bound) {
    throw Error(ErrorKind::internal, "finite-stage deviation exceeds the summed column distances");
  }
  return est;
}

}  // namespace kneadlab
