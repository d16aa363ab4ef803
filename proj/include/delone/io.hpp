#pragma once

// JSON forms of the persisted artifacts. Rationals are [numerator, denominator]
// pairs in lowest terms; an entry that does not fit in 64 bits is written as a
// decimal string. Every document carries "schema_version" and "kind".

#include "delone/bijection.hpp"
#include "delone/geometry.hpp"
#include "delone/hierarchy.hpp"
#include "delone/partition.hpp"
#include "delone/tiling.hpp"

#include <json.hpp>

#include <string>

namespace delone::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const RationalVec& v);
RationalVec vec_from_json(const Json& j);
Json to_json(const Box& b);
Box box_from_json(const Json& j);

Json point_set_to_json(const DeloneWindow& w);
DeloneWindow point_set_from_json(const Json& j);

Json tiling_to_json(const CubeTiling& t);
CubeTiling tiling_from_json(const Json& j);

Json bijection_to_json(const Bijection& f);
Bijection bijection_from_json(const Json& j);

Json partition_to_json(const VoxelPartition& vp);
VoxelPartition partition_from_json(const Json& j);

/// Point-set document with an extra "family" object holding the placement data.
Json family_to_json(const FamilyWindow& fw);
FamilyWindow family_from_json(const Json& j);

/// Checks schema_version and, when `kind` is nonempty, the kind tag.
void require_schema(const Json& j, const std::string& kind);

Json read_json_file(const std::string& path);
/// Writes `j` with one-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);
std::string dump(const Json& j);

}  // namespace delone::io
