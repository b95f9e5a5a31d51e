#include "kneadlab/cfexample.hpp"

#include "kneadlab/bratteli.hpp"
#include "kneadlab/error.hpp"

namespace kneadlab {

void validate(const CfSpec& spec) {
  if (spec.k < 2) throw Error(ErrorKind::invariant_violation, "\"k\": must be at least 2");
  for (std::size_t i = 0; i < spec.a.size(); ++i) {
    if (spec.a[i] < 1) {
      throw Error(ErrorKind::invariant_violation, "\"a[i] ≥ 1\": a_" + std::to_string(i + 1) + " = 0");
    }
  }
}

std::size_t cf_covered_depth(const CfSpec& spec) {
  validate(spec);
  std::size_t end = spec.k;
  for (std::size_t x : spec.a) end += x;
  return end;
}

KneadingMap build_cf_q(const CfSpec& spec, std::size_t depth) {
  const std::size_t covered = cf_covered_depth(spec);
  if (depth > covered) {
    throw Error(ErrorKind::insufficient_spec, "index " + std::to_string(depth) +
                                                  " lies beyond the blocks, which end at " +
                                                  std::to_string(covered));
  }
  std::vector<std::size_t> values(depth + 1, 0);
  std::size_t start = spec.k + 1;
  std::size_t value = spec.k - 1;
  for (std::size_t i = 0; i < spec.a.size() && start <= depth; ++i) {
    for (std::size_t l = start; l < start + spec.a[i] && l <= depth; ++l) values[l] = value;
    start += spec.a[i];
    value += spec.a[i];
  }
  // Q is non-decreasing and the block after index depth starts no lower.
  const std::size_t floor = depth + 1 < start ? values[depth] : value;
  KneadingMap map(std::move(values), MapSource::cf, floor);
  for (std::size_t l = 1; l <= depth; ++l) {
    if (map(l) < map(l - 1) || map(l) > l - 1) {
      throw Error(ErrorKind::internal, "continued-fraction map malformed at " + std::to_string(l));
    }
  }
  return map;
}

Matrix2 mul(const Matrix2& x, const Matrix2& y) {
  Matrix2 z;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  }
  return z;
}

Integer det(const Matrix2& x) { return x[0][0] * x[1][1] - x[0][1] * x[1][0]; }

ContinuantProducts continuant_products(const CfSpec& spec, std::size_t n) {
  validate(spec);
  if (n > spec.a.size()) {
    throw Error(ErrorKind::insufficient_spec, "only " + std::to_string(spec.a.size()) +
                                                  " partial quotients given");
  }
  auto factor = [](const Integer& x) { return Matrix2{{{x, 1}, {1, 0}}}; };
  ContinuantProducts out;
  out.factors.push_back(factor(Integer(static_cast<unsigned long>(spec.k - 1))));
  out.cumulative.push_back(Matrix2{{{1, 0}, {0, 1}}});
  for (std::size_t i = 1; i <= n; ++i) {
    out.factors.push_back(factor(Integer(static_cast<unsigned long>(spec.a[i - 1]))));
    out.cumulative.push_back(mul(out.cumulative.back(), out.factors.back()));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const Matrix2& p = out.cumulative[i];
    Convergent c{i, p[1][0], p[0][0], Rational(p[1][0], p[0][0]), 0};
    c.value.canonicalize();
    if (i < spec.a.size()) {
      // q_{i+1} = a_{i+1} q_i + q_{i-1}
      const Integer next = Integer(static_cast<unsigned long>(spec.a[i])) * p[0][0] + p[0][1];
      c.error_bound = Rational(1, p[0][0] * next);
      c.error_bound.canonicalize();
    }
    out.convergents.push_back(std::move(c));
  }
  return out;
}

std::vector<Integer> partial_quotients(const Rational& x) {
  if (x < 0) throw Error(ErrorKind::invalid_input, "partial quotients need a non-negative input");
  std::vector<Integer> out;
  Integer num = x.get_num();
  Integer den = x.get_den();
  while (den != 0) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(q);
    Integer r = num - q * den;
    num = den;
    den = r;
  }
  return out;
}

IntegerMatrix cf_block_incidence(const CfSpec& spec, std::size_t n) {
  validate(spec);
  if (n == 0 || n > spec.a.size()) {
    throw Error(ErrorKind::insufficient_spec,
                "block " + std::to_string(n) + " needs a_1..a_" + std::to_string(n));
  }
  std::size_t first = spec.k + 1;
  for (std::size_t i = 0; i + 1 < n; ++i) first += spec.a[i];
  const std::size_t last = first + spec.a[n - 1] - 1;
  const BratteliDiagram d = build_diagram(build_cf_q(spec, cf_covered_depth(spec)), last);
  IntegerMatrix p = transition_matrices(d, first).N;
  for (std::size_t j = first + 1; j <= last; ++j) p = multiply(p, transition_matrices(d, j).N);
  return p;
}

}  // namespace kneadlab
