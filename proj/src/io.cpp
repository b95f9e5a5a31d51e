#include "kneadlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "kneadlab/error.hpp"

namespace kneadlab::io {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::parse_error, "field \"" + field + "\": " + what);
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) bad_field(key, "enclosing value is not an object");
  const auto it = j.find(key);
  if (it == j.end()) bad_field(key, "missing");
  return *it;
}

const Json& array_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) bad_field(key, "expected an array");
  return v;
}

[[noreturn]] void as_invariant_violation(const Error& e) {
  if (e.kind() == ErrorKind::invariant_violation) throw e;
  throw Error(ErrorKind::invariant_violation, e.what());
}

std::string indexed(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

template <class T>
Json integer_matrix_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
std::string csv(const Matrix<T>& m) {
  std::ostringstream out;
  out << "\"\"";
  for (const std::size_t c : m.col_labels()) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << m.row_labels()[i];
    for (std::size_t k = 0; k < m.cols(); ++k) out << ",\"" << to_string(m(i, k)) << '"';
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorKind::invalid_input, "write to " + path.string() + " failed");
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line number for the diagnostic.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::parse_error,
                origin + ":" + std::to_string(line) + ": " + std::string(e.what()));
  }
}

Json load_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Integer& value) {
  static const Integer limit = Integer(1) << 53;
  if (abs(value) < limit) return Json(value.get_si());
  return Json(value.get_str());
}

Json to_json(const Rational& value) { return Json(to_string(value)); }

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RationalMatrix& m) { return integer_matrix_json(m); }
Json to_json(const IntegerMatrix& m) { return integer_matrix_json(m); }

Json to_json(const Matrix2& m) {
  return Json::array({Json::array({to_json(m[0][0]), to_json(m[0][1])}),
                      Json::array({to_json(m[1][0]), to_json(m[1][1])})});
}

Json to_json(const AqSpec& spec) {
  Json q = Json::array();
  for (const Integer& x : spec.q) q.push_back(to_json(x));
  Json a = Json::array();
  for (const auto& row : spec.a) {
    Json r = Json::array();
    for (const Integer& x : row) r.push_back(to_json(x));
    a.push_back(std::move(r));
  }
  return Json{{"q", std::move(q)}, {"a", std::move(a)}};
}

Json to_json(const KneadingMap& map) {
  return Json{{"values", map.values()},
              {"source", std::string(to_string(map.source()))},
              {"tail_floor", map.tail_floor()}};
}

Json to_json(const Expansion& x) { return Json{{"n", to_json(x.n)}, {"support", x.support}}; }

Json to_json(const OdometerPoint& x) {
  Json out{{"support", x.support}};
  out["depth"] = x.depth ? Json(*x.depth) : Json(nullptr);
  return out;
}

Json to_json(const Tower& tower) {
  Json ms = Json::array();
  for (const auto& m : tower.matrices) ms.push_back(to_json(m));
  return Json{{"matrices", std::move(ms)}};
}

Json to_json(const TargetColumns& targets) {
  Json ys = Json::array();
  for (const auto& y : targets.y) ys.push_back(to_json(y));
  return Json{{"targets", std::move(ys)}};
}

Json to_json(const CfSpec& spec) { return Json{{"k", spec.k}, {"a", spec.a}}; }

Json to_json(const FinitePath& path) {
  Json edges = Json::array();
  for (const Edge& e : path.edges) edges.push_back(Json::array({e.source, e.target, e.rank}));
  return edges;
}

Integer integer_from(const Json& j, const std::string& field) {
  try {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) return parse_integer(j.get<std::string>());
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
  bad_field(field, "expected an integer or a decimal string");
}

Rational rational_from(const Json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return Rational(integer_from(j, field));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
  bad_field(field, "expected a \"p/q\" string or an integer");
}

std::size_t size_from(const Json& j, const std::string& field) {
  const Integer v = integer_from(j, field);
  if (v < 0 || v > Integer(std::to_string(std::numeric_limits<std::size_t>::max()))) {
    bad_field(field, "out of range");
  }
  return to_size(v);
}

RationalVector vector_from(const Json& j, const std::string& field) {
  if (!j.is_array()) bad_field(field, "expected an array");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from(j[i], indexed(field, i)));
  return v;
}

RationalMatrix matrix_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad_field(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) bad_field(indexed(field, 0), "expected a non-empty row");
  const std::size_t cols = j[0].size();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_field = indexed(field, i);
    if (!j[i].is_array() || j[i].size() != cols) bad_field(row_field, "ragged row");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from(j[i][k], indexed(row_field, k));
  }
  return m;
}

AqSpec aq_spec_from(const Json& j) {
  AqSpec spec;
  const Json& q = array_member(j, "q");
  for (std::size_t i = 0; i < q.size(); ++i) spec.q.push_back(integer_from(q[i], indexed("q", i)));
  const Json& a = array_member(j, "a");
  for (std::size_t n = 0; n < a.size(); ++n) {
    const std::string row = indexed("a", n);
    if (!a[n].is_array()) bad_field(row, "expected an array");
    std::vector<Integer> r;
    for (std::size_t i = 0; i < a[n].size(); ++i) r.push_back(integer_from(a[n][i], indexed(row, i)));
    spec.a.push_back(std::move(r));
  }
  try {
    validate(spec);
  } catch (const Error& e) {
    as_invariant_violation(e);
  }
  return spec;
}

KneadingMap kneading_map_from(const Json& j) {
  const Json& values = array_member(j, "values");
  std::vector<std::size_t> q;
  for (std::size_t i = 0; i < values.size(); ++i) q.push_back(size_from(values[i], indexed("values", i)));
  MapSource source = MapSource::table;
  if (const auto it = j.find("source"); it != j.end()) {
    if (!it->is_string()) bad_field("source", "expected a string");
    try {
      source = parse_map_source(it->get<std::string>());
    } catch (const Error& e) {
      bad_field("source", e.what());
    }
  }
  std::size_t tail = 0;
  if (const auto it = j.find("tail_floor"); it != j.end()) tail = size_from(*it, "tail_floor");
  try {
    return KneadingMap(std::move(q), source, tail);
  } catch (const Error& e) {
    as_invariant_violation(e);
  }
}

Expansion expansion_from(const Json& j) {
  Expansion x;
  x.n = integer_from(member(j, "n"), "n");
  const Json& s = array_member(j, "support");
  for (std::size_t i = 0; i < s.size(); ++i) x.support.push_back(size_from(s[i], indexed("support", i)));
  return x;
}

OdometerPoint point_from(const Json& j) {
  OdometerPoint x;
  const Json& s = array_member(j, "support");
  for (std::size_t i = 0; i < s.size(); ++i) x.support.push_back(size_from(s[i], indexed("support", i)));
  if (const auto it = j.find("depth"); it != j.end() && !it->is_null()) x.depth = size_from(*it, "depth");
  return x;
}

Tower tower_from(const Json& j) {
  const Json& ms = array_member(j, "matrices");
  Tower t;
  for (std::size_t n = 0; n < ms.size(); ++n) t.matrices.push_back(matrix_from(ms[n], indexed("matrices", n)));
  try {
    validate(t);
  } catch (const Error& e) {
    as_invariant_violation(e);
  }
  t.normalized = is_normalized(t);
  return t;
}

TargetColumns targets_from(const Json& j) {
  const Json& ys = array_member(j, "targets");
  TargetColumns t;
  for (std::size_t n = 0; n < ys.size(); ++n) t.y.push_back(vector_from(ys[n], indexed("targets", n)));
  try {
    validate(t);
  } catch (const Error& e) {
    as_invariant_violation(e);
  }
  return t;
}

CfSpec cf_spec_from(const Json& j) {
  CfSpec spec;
  if (const auto it = j.find("k"); it != j.end()) spec.k = size_from(*it, "k");
  const Json& a = array_member(j, "a");
  for (std::size_t i = 0; i < a.size(); ++i) spec.a.push_back(size_from(a[i], indexed("a", i)));
  try {
    validate(spec);
  } catch (const Error& e) {
    as_invariant_violation(e);
  }
  return spec;
}

std::string to_csv(const RationalMatrix& m) { return csv(m); }
std::string to_csv(const IntegerMatrix& m) { return csv(m); }

}  // namespace kneadlab::io
