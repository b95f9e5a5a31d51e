#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kneadlab/bratteli.hpp"
#include "kneadlab/cfexample.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/matrix.hpp"
#include "kneadlab/odometer.hpp"
#include "kneadlab/realization.hpp"
#include "kneadlab/towers.hpp"
#include "kneadlab/unimodal.hpp"

namespace kneadlab::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; parse_error carries the byte position.
Json load_json(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin = "<input>");
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Integers serialize as JSON numbers when they fit in 53 bits, else as strings.
Json to_json(const Integer& value);
Json to_json(const Rational& value);
Json to_json(const RationalVector& v);
Json to_json(const RationalMatrix& m);
Json to_json(const IntegerMatrix& m);
Json to_json(const Matrix2& m);
Json to_json(const AqSpec& spec);
Json to_json(const KneadingMap& map);
Json to_json(const Expansion& x);
Json to_json(const OdometerPoint& x);
Json to_json(const Tower& tower);
Json to_json(const TargetColumns& targets);
Json to_json(const CfSpec& spec);
Json to_json(const FinitePath& path);

// Readers name the offending field in their diagnostics.
Integer integer_from(const Json& j, const std::string& field);
Rational rational_from(const Json& j, const std::string& field);
std::size_t size_from(const Json& j, const std::string& field);
RationalVector vector_from(const Json& j, const std::string& field);
RationalMatrix matrix_from(const Json& j, const std::string& field);

AqSpec aq_spec_from(const Json& j);
KneadingMap kneading_map_from(const Json& j);
Expansion expansion_from(const Json& j);
OdometerPoint point_from(const Json& j);
Tower tower_from(const Json& j);
TargetColumns targets_from(const Json& j);
CfSpec cf_spec_from(const Json& j);

/// CSV with one row per matrix row, entries as "p/q" strings; the first
/// row and column carry the vertex labels.
std::string to_csv(const RationalMatrix& m);
std::string to_csv(const IntegerMatrix& m);

/// Deterministic text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace kneadlab::io
