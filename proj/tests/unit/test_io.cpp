#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "kneadlab/checks/criteria.hpp"
#include "kneadlab/io.hpp"
#include "kneadlab/report.hpp"

using namespace kneadlab;
using kneadlab::test::rat;

namespace {

const std::string kData = KNEADLAB_TEST_DATA;

std::string error_text(const std::string& file) {
  try {
    io::aq_spec_from(io::load_json(kData + "/" + file));
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("EX1 loads as a valid spec") {
  CHECK(io::aq_spec_from(io::load_json(kData + "/ex1.json")) == checks::ex1_spec());
  CHECK(io::aq_spec_from(io::load_json(kData + "/ex1x.json")) == checks::ex1x_spec());
}

TEST_CASE("spec field violations are named") {
  REQUIRE_ERROR_KIND(io::aq_spec_from(io::load_json(kData + "/bad_q0.json")),
                     ErrorKind::invariant_violation);
  CHECK(error_text("bad_q0.json").find("q0") != std::string::npos);
  CHECK(error_text("bad_a_zero.json").find("a[n][i] ≥ 1") != std::string::npos);
  CHECK(error_text("bad_q0.json").rfind("invariant-violation: ", 0) == 0);
  CHECK(error_text("bad_q0.json").find("invariant-violation", 5) == std::string::npos);
}

TEST_CASE("malformed and missing inputs") {
  REQUIRE_ERROR_KIND(io::load_json(kData + "/malformed.json"), ErrorKind::parse_error);
  REQUIRE_ERROR_KIND(io::load_json(kData + "/does_not_exist.json"), ErrorKind::parse_error);
  REQUIRE_ERROR_KIND(io::parse_json("{\"q\": [0, 1,", "inline"), ErrorKind::parse_error);
}

TEST_CASE("integers switch to strings above 2^53") {
  const Integer small = Integer(1) << 52;
  const Integer big = (Integer(1) << 80) + 7;
  CHECK(io::to_json(small).is_number_integer());
  CHECK(io::to_json(big).is_string());
  io::Json j;
  j["x"] = io::to_json(big);
  j["y"] = io::to_json(small);
  CHECK(io::integer_from(j["x"], "x") == big);
  CHECK(io::integer_from(j["y"], "y") == small);
}

TEST_CASE("rationals round trip as p/q strings") {
  io::Json j;
  j["r"] = io::to_json(rat(-6, 8));
  CHECK(j["r"] == "-3/4");
  CHECK(io::rational_from(j["r"], "r") == rat(-3, 4));
  j["r"] = io::to_json(Rational(5));
  CHECK(io::rational_from(j["r"], "r") == 5);
}

TEST_CASE("property: specs, towers, targets and points round trip") {
  checks::Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const AqSpec spec = checks::random_aq_spec(rng, 3, 3);
    CHECK(io::aq_spec_from(io::to_json(spec)) == spec);

    const Tower t = checks::random_surjective_tower(rng, 3);
    CHECK(io::tower_from(io::to_json(t)).matrices == t.matrices);

    TargetColumns targets;
    for (std::size_t n = 1; n <= 3; ++n) targets.y.push_back(checks::random_simplex_point(rng, n + 1, 7));
    CHECK(io::targets_from(io::to_json(targets)).y == targets.y);

    io::Json m;
    m["matrix"] = io::to_json(t.matrices[1]);
    CHECK(io::matrix_from(m["matrix"], "matrix") == t.matrices[1]);
  }
  const CfSpec cf{3, {1, 2, 5}};
  const CfSpec back = io::cf_spec_from(io::to_json(cf));
  CHECK(back.k == cf.k);
  CHECK(back.a == cf.a);

  const OdometerPoint p{{1, 4, 9}, 12};
  CHECK(io::point_from(io::to_json(p)) == p);
  const OdometerPoint finite{{0, 3}, std::nullopt};
  CHECK(io::point_from(io::to_json(finite)) == finite);
}

TEST_CASE("CSV carries labels and exact entries") {
  RationalMatrix m({5, 6}, {12, 13});
  m(0, 0) = rat(1, 2);
  m(1, 0) = rat(1, 2);
  m(0, 1) = 1;
  const std::string csv = io::to_csv(m);
  CHECK(csv.find("\"\",12,13") == 0);
  CHECK(csv.find("5,\"1/2\",\"1\"") != std::string::npos);
  CHECK(csv.find("6,\"1/2\",\"0\"") != std::string::npos);
}

TEST_CASE("SHA-256 of a known string") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reports carry tool metadata and per-check status") {
  RunReport r;
  r.command = "verify cf";
  r.input_digest = sha256_hex("x");
  r.add(CheckRecord{"a", "anchor a", true, io::Json::object()});
  CHECK(r.pass());
  r.add(CheckRecord{"b", "anchor b", false, io::Json::object()});
  CHECK_FALSE(r.pass());
  const io::Json j = r.to_json();
  CHECK(j["tool"] == "kneadlab");
  CHECK(j["version"] == std::string(kToolVersion));
  CHECK(j["pass"] == false);
  CHECK(j["checks"][1]["status"] == "fail");
}

TEST_CASE("reports are byte-deterministic") {
  auto render = [] {
    RunReport r;
    r.command = "verify cf";
    r.input_digest = sha256_hex("seed");
    for (CheckRecord& c : checks::run_suite("cf", 5)) r.add(std::move(c));
    for (CheckRecord& c : checks::run_suite("normalization", 5)) r.add(std::move(c));
    return io::dump(r.to_json());
  };
  const std::string first = render();
  CHECK(first == render());
  CHECK(first.back() == '\n');
}

TEST_CASE("unknown suites are rejected") {
  REQUIRE_ERROR_KIND(checks::run_suite("nope", 1), ErrorKind::invalid_input);
}
