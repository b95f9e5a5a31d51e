#include "kneadlab/unimodal.hpp"

#include <algorithm>

#include "kneadlab/error.hpp"

namespace kneadlab {

TentMap::TentMap(Rational slope) : slope_(std::move(slope)) {
  slope_.canonicalize();
  if (slope_ <= 1 || slope_ > 2) {
    throw Error(ErrorKind::precondition_violation,
                "tent slope " + to_string(slope_) + " is outside (1, 2]");
  }
  const Rational c = critical_point();
  const Rational c1 = (*this)(c);
  if (!((*this)(c1) < c && c < c1)) {
    throw Error(ErrorKind::precondition_violation, "f^2(c) < c < f(c) fails");
  }
}

Rational TentMap::operator()(const Rational& x) const {
  return x <= critical_point() ? Rational(slope_ * x) : Rational(slope_ * (1 - x));
}

namespace {

ClosedInterval hull(const Rational& a, const Rational& b) {
  return a <= b ? ClosedInterval{a, b} : ClosedInterval{b, a};
}

// Advances one step of the orbit and the interval chain.
void extend(const TentMap& f, CuttingTimeRun& run) {
  const Rational c = TentMap::critical_point();
  const std::size_t n = run.orbit.size();  // index of the new point
  run.orbit.push_back(f(run.orbit.back()));
  ClosedInterval next;
  if (n == 1) {
    next = hull(c, run.orbit[1]);
  } else {
    const ClosedInterval& prev = run.chain.back();
    next = prev.contains(c) ? hull(run.orbit[n], run.orbit[1]) : hull(f(prev.lo), f(prev.hi));
  }
  if (next.lo != run.orbit[n] && next.hi != run.orbit[n]) {
    throw Error(ErrorKind::internal, "c_" + std::to_string(n) + " is not an endpoint of D_n");
  }
  run.chain.push_back(next);
  if (next.contains(c)) run.cutting_times.push_back(n);
}

}  // namespace

CuttingTimeRun cutting_times_tent(const Rational& slope, std::size_t N) {
  const TentMap f(slope);
  CuttingTimeRun run;
  run.orbit.push_back(TentMap::critical_point());
  while (run.orbit.size() <= N) extend(f, run);
  return run;
}

std::vector<Integer> tent_cutting_times(const Rational& slope, std::size_t K, std::size_t orbit_cap) {
  const TentMap f(slope);
  CuttingTimeRun run;
  run.orbit.push_back(TentMap::critical_point());
  while (run.cutting_times.size() < K + 1) {
    if (run.orbit.size() > orbit_cap) {
      throw Error(ErrorKind::depth_exceeded, "fewer than " + std::to_string(K + 1) +
                                                 " cutting times within " +
                                                 std::to_string(orbit_cap) + " iterates");
    }
    extend(f, run);
  }
  std::vector<Integer> s;
  for (std::size_t i = 0; i <= K; ++i) s.emplace_back(static_cast<unsigned long>(run.cutting_times[i]));
  return s;
}

KneadingMap kneading_prefix(const Rational& slope, std::size_t K) {
  const std::vector<Integer> s = tent_cutting_times(slope, K);
  if (s[0] != 1) throw Error(ErrorKind::inconsistent_differences, "first cutting time is not 1");
  std::vector<std::size_t> q(K + 1, 0);
  for (std::size_t k = 1; k <= K; ++k) {
    const Integer diff = s[k] - s[k - 1];
    const auto it = std::lower_bound(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), diff);
    if (it == s.begin() + static_cast<std::ptrdiff_t>(k) || *it != diff) {
      throw Error(ErrorKind::inconsistent_differences,
                  "S_" + std::to_string(k) + " - S_" + std::to_string(k - 1) + " = " +
                      to_string(diff) + " is not an earlier cutting time");
    }
    q[k] = static_cast<std::size_t>(it - s.begin());
  }
  return KneadingMap(std::move(q), MapSource::tent, 0);
}

PrefixComparison compare_prefix(const Rational& slope, const std::vector<Integer>& target_s) {
  const TentMap f(slope);
  const std::size_t horizon = to_size(target_s.back());
  CuttingTimeRun run;
  run.orbit.push_back(TentMap::critical_point());
  while (run.orbit.size() <= horizon) extend(f, run);
  for (std::size_t k = 0; k < target_s.size(); ++k) {
    if (k >= run.cutting_times.size()) return {k, true};
    const Integer sk(static_cast<unsigned long>(run.cutting_times[k]));
    if (sk != target_s[k]) return {k, sk > target_s[k]};
  }
  return {std::nullopt, false};
}

SlopeFit fit_slope(const KneadingMap& target, std::size_t K, std::size_t max_iter) {
  if (K > target.depth()) {
    throw Error(ErrorKind::depth_exceeded, "target has depth " + std::to_string(target.depth()));
  }
  for (std::size_t k = 0; k <= K; ++k) {
    if (target(k) > (k >= 2 ? k - 2 : 0)) {
      throw Error(ErrorKind::precondition_violation,
                  "Q(" + std::to_string(k) + ") = " + std::to_string(target(k)) +
                      " exceeds max{0, k-2}");
    }
  }
  const CuttingTimes cs = cutting_times(target, K);
  const std::vector<Integer> target_s(cs.values().begin(), cs.values().end());
  SlopeFit fit{Rational(1), Rational(2), Rational(2), false, 0, std::nullopt, {}};
  // s = 2 realizes the densest prefix; test it first so Q = 0 is found at once.
  if (!compare_prefix(fit.hi, target_s).first_difference) {
    fit.matched = true;
    fit.lo = fit.hi;
    return fit;
  }
  while (fit.iterations < max_iter) {
    ++fit.iterations;
    fit.mid = (fit.lo + fit.hi) / 2;
    const PrefixComparison cmp = compare_prefix(fit.mid, target_s);
    if (!cmp.first_difference) {
      fit.matched = true;
      fit.mismatch_index.reset();
      return fit;
    }
    fit.mismatch_index = cmp.first_difference;
    if (cmp.slope_sparser) {
      fit.lo = fit.mid;
    } else {
      fit.hi = fit.mid;
    }
  }
  fit.diagnostics = "no matching slope after " + std::to_string(max_iter) +
                    " bisection steps; last midpoint differs at S_" +
                    std::to_string(fit.mismatch_index.value_or(0));
  return fit;
}

}  // namespace kneadlab
