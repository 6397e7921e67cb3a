#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "latforge/ground_set.hpp"
#include "latforge/relation.hpp"

namespace latforge {

// Text format for a single relation (".rel"):
//
//   # optional comments
//   ground <n>
//   label <i> <name>        (optional, any subset of indices)
//   pair <i> <j>            (0-based, unordered, duplicates ignored)
//
// Emission is canonical (ground, labels ascending, pairs row-major), so a
// parse/emit round trip is bit-exact.

struct NamedRelation {
  GroundSet ground;
  Relation relation;
};

NamedRelation read_rel(std::istream& in, const std::string& source = "<stream>");
NamedRelation read_rel_file(const std::string& path);

void write_rel(std::ostream& out, const GroundSet& ground, const Relation& r);
void write_rel_file(const std::string& path, const GroundSet& ground, const Relation& r);

std::string to_rel_string(const GroundSet& ground, const Relation& r);

}  // namespace latforge
