#include "kneadlab/numeric.hpp"

#include <limits>

#include "kneadlab/error.hpp"

namespace kneadlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::depth_exceeded: return "depth-exceeded";
    case ErrorKind::invalid_map: return "invalid-map";
    case ErrorKind::insufficient_spec: return "insufficient-spec";
    case ErrorKind::insufficient_depth: return "insufficient-depth";
    case ErrorKind::zero_point: return "zero-point";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::invalid_path: return "invalid-path";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::not_in_simplex: return "not-in-simplex";
    case ErrorKind::not_surjective: return "not-surjective";
    case ErrorKind::invalid_targets: return "invalid-targets";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::inconsistent_differences: return "inconsistent-differences";
    case ErrorKind::invariant_violation: return "invariant-violation";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::cycle_detected: return "cycle-detected";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw Error(ErrorKind::parse_error, "not an integer: \"" + std::string(text) + "\"");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::parse_error, "zero denominator: \"" + std::string(text) + "\"");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

std::size_t to_size(const Integer& value) {
  if (sgn(value) < 0 || !value.fits_ulong_p() ||
      value.get_ui() > std::numeric_limits<std::size_t>::max()) {
    throw Error(ErrorKind::invalid_input, "value does not fit a machine index: " + value.get_str());
  }
  return static_cast<std::size_t>(value.get_ui());
}

Integer floor_of(const Rational& value) {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

}  // namespace kneadlab
