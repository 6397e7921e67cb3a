#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latforge/ground_set.hpp"
#include "latforge/relation.hpp"

namespace latforge {

// Builders for the colored-graph configurations: the ladder F_n, gluings of
// several ladders, and one-point extensions, each yielding a labeled ground
// set together with the path equivalences alpha, beta, gamma of its colored
// edges.
//
// F_n has vertices a0..an (one chain) and b0..b(n-1) (a second chain) and
// solid edges
//   alpha: (a_{i-1}, a_i) for i = 1..n and (b_{j-1}, b_j) for j = 1..n-1
//   beta:  (a_i, b_i)     for i = 0..n-1
//   gamma: (a_i, b_{i-1}) for i = 1..n
// so beta pairs each a_i with the b below it and gamma slants one step back:
// the left end gives (a1, b0) with a0 left uncovered by gamma, the right end
// gives (an, b(n-1)) with no gamma edge at b's past the chain. This is the
// orientation under which the block and meet identities of the delta
// augmentation come out true; it is validated by the test suite rather than
// assumed.

enum class EdgeColor : std::uint8_t { Alpha, Beta, Gamma };

const char* edge_color_name(EdgeColor c);
EdgeColor edge_color_from_name(const std::string& s);

struct ColoredEdge {
  int u, v;
  EdgeColor color;
};

struct Config {
  GroundSet ground;
  Relation alpha, beta, gamma;
  std::vector<ColoredEdge> edges;

  int rank = 0;                  // plain F_n (0 when glued)
  std::vector<int> block_ranks;  // glued configurations
  int extension_vertex = -1;     // index of x, or -1

  // Vertex indices of a plain (single-block) configuration.
  int a(int i) const;
  int b(int j) const;

  const Relation& color(EdgeColor c) const;
};

Config build_zadori(int n);  // n >= 2 so every color has an edge

// A quasiorder given as a QUO-join of equivalence/quasiorder atoms; vertex
// names are resolved against the configuration's labels.
struct AtomSpec {
  Family family;  // Equ or Quo
  std::string u, v;
};

struct DeltaSpec {
  std::vector<AtomSpec> atoms;
};

// equ(a0,an) + equ(b0,b(n-1)) + quo(a2,a4); needs rank >= 4.
DeltaSpec default_delta(int rank);

Relation build_delta(const Config& config, const DeltaSpec& spec);
std::string delta_spec_to_string(const DeltaSpec& spec);

// Gluing: disjoint blocks F_{r0}, F_{r1}, ... with block-local edges plus
// the listed extra edges joining them. Vertices are labeled a<k>_<i> and
// b<k>_<j> for block k. The concrete cross-block edge set beyond the one
// documented gamma edge (b0_9, a1_11) is conjectural and must be validated
// downstream, never assumed.
struct GlueEdge {
  std::string u, v;
  EdgeColor color;
};

struct GluingSpec {
  std::vector<int> block_ranks;
  std::vector<GlueEdge> extra_edges;
};

GluingSpec default_gluing(int t);  // blocks [13, t], t > 13
Config build_glued(const GluingSpec& spec);

// One-point extension: a fresh vertex x attached to the named vertices by
// colored edges; alpha, beta, gamma are regenerated over the grown graph.
struct ExtensionEdge {
  std::string vertex;
  EdgeColor color;
};

// The conjectural default {(a0, beta), (an, gamma)}.
std::vector<ExtensionEdge> default_extension_edges(const Config& base);

Config build_one_point_extension(const Config& base,
                                 const std::vector<ExtensionEdge>& edges);

// Configuration files (".cfg"):
//   zadori <n>                     (exactly one of zadori/glue)
//   glue <r0> <r1> ...
//   edge <v1> <v2> <color>         (glue cross edges)
//   extend <vertex> <color>        (one-point extension edges)
//   delta atom <equ|quo> <v1> <v2>
struct CfgFile {
  std::optional<int> zadori_rank;
  std::optional<GluingSpec> glue;
  std::vector<ExtensionEdge> extend;
  std::optional<DeltaSpec> delta;
};

CfgFile parse_cfg(std::istream& in, const std::string& source = "<stream>");
CfgFile parse_cfg_file(const std::string& path);

struct BuiltConfig {
  Config config;
  std::optional<Relation> delta;
};

BuiltConfig build_from_cfg(const CfgFile& cfg);

}  // namespace latforge
