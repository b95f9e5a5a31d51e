#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "kneadlab/error.hpp"
#include "kneadlab/numeric.hpp"

namespace kneadlab::test {

// Runs `stmt` and requires an Error of the given kind.
#define REQUIRE_ERROR_KIND(stmt, expected_kind)                          \
  do {                                                                   \
    bool kneadlab_thrown = false;                                        \
    try {                                                                \
      stmt;                                                              \
    } catch (const ::kneadlab::Error& e) {                               \
      kneadlab_thrown = true;                                            \
      CHECK_MESSAGE(e.kind() == (expected_kind), e.what());              \
    }                                                                    \
    CHECK_MESSAGE(kneadlab_thrown, "expected an error from " #stmt);     \
  } while (0)

inline std::vector<Integer> ints(std::initializer_list<long> values) {
  std::vector<Integer> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

inline Rational rat(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace kneadlab::test
