#include "latforge/zadori.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latforge {

const char* edge_color_name(EdgeColor c) {
  switch (c) {
    case EdgeColor::Alpha: return "alpha";
    case EdgeColor::Beta: return "beta";
    case EdgeColor::Gamma: return "gamma";
  }
  return "?";
}

EdgeColor edge_color_from_name(const std::string& s) {
  if (s == "alpha" || s == "a") return EdgeColor::Alpha;
  if (s == "beta" || s == "b") return EdgeColor::Beta;
  if (s == "gamma" || s == "g") return EdgeColor::Gamma;
  throw std::invalid_argument("unknown edge color '" + s + "'");
}

int Config::a(int i) const {
  if (rank < 1 || i < 0 || i > rank)
    throw std::out_of_range("config: a-index out of range");
  return i;
}

int Config::b(int j) const {
  if (rank < 1 || j < 0 || j > rank - 1)
    throw std::out_of_range("config: b-index out of range");
  return rank + 1 + j;
}

const Relation& Config::color(EdgeColor c) const {
  switch (c) {
    case EdgeColor::Alpha: return alpha;
    case EdgeColor::Beta: return beta;
    case EdgeColor::Gamma: return gamma;
  }
  return alpha;
}

namespace {

Relation equivalence_of_edges(int n, const std::vector<ColoredEdge>& edges,
                              EdgeColor color) {
  Relation r = Relation::diagonal(n);
  for (const ColoredEdge& e : edges) {
    if (e.color != color) continue;
    r.set(e.u, e.v);
    r.set(e.v, e.u);
  }
  return r.transitive_closure();
}

Config finish_config(GroundSet ground, std::vector<ColoredEdge> edges) {
  const int n = ground.size();
  Config cfg{.ground = std::move(ground),
             .alpha = equivalence_of_edges(n, edges, EdgeColor::Alpha),
             .beta = equivalence_of_edges(n, edges, EdgeColor::Beta),
             .gamma = equivalence_of_edges(n, edges, EdgeColor::Gamma),
             .edges = std::move(edges)};
  return cfg;
}

}  // namespace

Config build_zadori(int n) {
  if (n < 2)
    throw std::invalid_argument("build_zadori: rank must be >= 2 so that every "
                                "color has at least one edge");
  if (2 * n + 1 > kMaxGround)
    throw std::invalid_argument("build_zadori: ground set would exceed the cap");

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int i = 0; i <= n; ++i) labels.push_back("a" + std::to_string(i));
  for (int j = 0; j < n; ++j) labels.push_back("b" + std::to_string(j));
  GroundSet ground(2 * n + 1, std::move(labels));

  const auto a = [&](int i) { return i; };
  const auto b = [&](int j) { return n + 1 + j; };

  std::vector<ColoredEdge> edges;
  for (int i = 1; i <= n; ++i) edges.push_back({a(i - 1), a(i), EdgeColor::Alpha});
  for (int j = 1; j <= n - 1; ++j) edges.push_back({b(j - 1), b(j), EdgeColor::Alpha});
  for (int i = 0; i <= n - 1; ++i) edges.push_back({a(i), b(i), EdgeColor::Beta});
  for (int i = 1; i <= n; ++i) edges.push_back({a(i), b(i - 1), EdgeColor::Gamma});

  Config cfg = finish_config(std::move(ground), std::move(edges));
  cfg.rank = n;
  cfg.block_ranks = {n};
  return cfg;
}

DeltaSpec default_delta(int rank) {
  if (rank < 4)
    throw std::invalid_argument("default_delta: needs rank >= 4 for the quo(a2,a4) leg");
  return DeltaSpec{{
      {Family::Equ, "a0", "a" + std::to_string(rank)},
      {Family::Equ, "b0", "b" + std::to_string(rank - 1)},
      {Family::Quo, "a2", "a4"},
  }};
}

Relation build_delta(const Config& config, const DeltaSpec& spec) {
  if (spec.atoms.empty()) throw std::invalid_argument("build_delta: empty atom list");
  const int n = config.ground.size();
  std::vector<Relation> parts;
  parts.reserve(spec.atoms.size());
  for (const AtomSpec& atom : spec.atoms) {
    if (atom.family != Family::Equ && atom.family != Family::Quo)
      throw std::invalid_argument(
          "build_delta: atoms must be equ or quo (members of Quo)");
    const int u = config.ground.index_of(atom.u);
    const int v = config.ground.index_of(atom.v);
    parts.push_back(Relation::atom(atom.family, n, u, v));
  }
  return Relation::join(Family::Quo, parts);
}

std::string delta_spec_to_string(const DeltaSpec& spec) {
  std::ostringstream os;
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    if (i) os << " + ";
    const AtomSpec& a = spec.atoms[i];
    os << family_name(a.family) << '(' << a.u << ',' << a.v << ')';
  }
  return os.str();
}

GluingSpec default_gluing(int t) {
  if (t <= 13) throw std::invalid_argument("default_gluing: needs t > 13");
  // Only the gamma edge (b0_9, a1_11) is documented; the rest of the
  // cross-block edge set is unknown and left to explicit specs.
  return GluingSpec{{13, t}, {{"b0_9", "a1_11", EdgeColor::Gamma}}};
}

Config build_glued(const GluingSpec& spec) {
  if (spec.block_ranks.empty())
    throw std::invalid_argument("build_glued: no blocks");
  int total = 0;
  for (const int r : spec.block_ranks) {
    if (r < 2) throw std::invalid_argument("build_glued: block rank must be >= 2");
    total += 2 * r + 1;
  }
  if (total > kMaxGround)
    throw std::invalid_argument("build_glued: ground set would exceed the cap");

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(total));
  std::vector<int> offsets;
  int at = 0;
  for (std::size_t k = 0; k < spec.block_ranks.size(); ++k) {
    offsets.push_back(at);
    const int r = spec.block_ranks[k];
    for (int i = 0; i <= r; ++i)
      labels.push_back("a" + std::to_string(k) + "_" + std::to_string(i));
    for (int j = 0; j < r; ++j)
      labels.push_back("b" + std::to_string(k) + "_" + std::to_string(j));
    at += 2 * r + 1;
  }
  GroundSet ground(total, std::move(labels));

  std::vector<ColoredEdge> edges;
  for (std::size_t k = 0; k < spec.block_ranks.size(); ++k) {
    const int r = spec.block_ranks[k];
    const int base = offsets[k];
    const auto a = [&](int i) { return base + i; };
    const auto b = [&](int j) { return base + r + 1 + j; };
    for (int i = 1; i <= r; ++i) edges.push_back({a(i - 1), a(i), EdgeColor::Alpha});
    for (int j = 1; j <= r - 1; ++j) edges.push_back({b(j - 1), b(j), EdgeColor::Alpha});
    for (int i = 0; i <= r - 1; ++i) edges.push_back({a(i), b(i), EdgeColor::Beta});
    for (int i = 1; i <= r; ++i) edges.push_back({a(i), b(i - 1), EdgeColor::Gamma});
  }
  for (const GlueEdge& e : spec.extra_edges)
    edges.push_back({ground.index_of(e.u), ground.index_of(e.v), e.color});

  Config cfg = finish_config(std::move(ground), std::move(edges));
  cfg.block_ranks = spec.block_ranks;
  if (spec.block_ranks.size() == 1) cfg.rank = spec.block_ranks[0];
  return cfg;
}

std::vector<ExtensionEdge> default_extension_edges(const Config& base) {
  if (base.rank < 2)
    throw std::invalid_argument("default_extension_edges: needs a plain F_n base");
  return {{"a0", EdgeColor::Beta}, {"a" + std::to_string(base.rank), EdgeColor::Gamma}};
}

Config build_one_point_extension(const Config& base,
                                 const std::vector<ExtensionEdge>& edges) {
  if (base.extension_vertex >= 0)
    throw std::invalid_argument("build_one_point_extension: base is already extended");
  const int n = base.ground.size();
  if (n + 1 > kMaxGround)
    throw std::invalid_argument("build_one_point_extension: ground set would exceed the cap");

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) labels.push_back(base.ground.label(i));
  labels.push_back("x");
  GroundSet ground(n + 1, std::move(labels));

  std::vector<ColoredEdge> all_edges = base.edges;
  for (const ExtensionEdge& e : edges)
    all_edges.push_back({base.ground.index_of(e.vertex), n, e.color});

  Config cfg = finish_config(std::move(ground), std::move(all_edges));
  cfg.rank = base.rank;
  cfg.block_ranks = base.block_ranks;
  cfg.extension_vertex = n;
  return cfg;
}

// ---------------------------------------------------------------------------
// .cfg files

CfgFile parse_cfg(std::istream& in, const std::string& source) {
  CfgFile out;
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;
    if (key == "zadori") {
      int n;
      if (!(line >> n)) fail("zadori: expected a rank");
      if (out.zadori_rank || out.glue) fail("duplicate structure line");
      out.zadori_rank = n;
    } else if (key == "glue") {
      if (out.zadori_rank || out.glue) fail("duplicate structure line");
      GluingSpec spec;
      int r;
      while (line >> r) spec.block_ranks.push_back(r);
      if (spec.block_ranks.empty()) fail("glue: expected block ranks");
      out.glue = std::move(spec);
    } else if (key == "edge") {
      std::string u, v, color;
      if (!(line >> u >> v >> color)) fail("edge: expected '<v1> <v2> <color>'");
      if (!out.glue) fail("edge: only valid after a glue line");
      try {
        out.glue->extra_edges.push_back({u, v, edge_color_from_name(color)});
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (key == "extend") {
      std::string vertex, color;
      if (!(line >> vertex >> color)) fail("extend: expected '<vertex> <color>'");
      try {
        out.extend.push_back({vertex, edge_color_from_name(color)});
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (key == "delta") {
      std::string sub, fam, u, v;
      if (!(line >> sub >> fam >> u >> v) || sub != "atom")
        fail("delta: expected 'atom <equ|quo> <v1> <v2>'");
      if (!out.delta) out.delta = DeltaSpec{};
      try {
        out.delta->atoms.push_back({family_from_name(fam), u, v});
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  if (!out.zadori_rank && !out.glue)
    throw std::runtime_error(source + ": missing 'zadori <n>' or 'glue ...' line");
  return out;
}

CfgFile parse_cfg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_cfg(in, path);
}

BuiltConfig build_from_cfg(const CfgFile& cfg) {
  Config base = cfg.zadori_rank ? build_zadori(*cfg.zadori_rank) : build_glued(*cfg.glue);
  if (!cfg.extend.empty()) base = build_one_point_extension(base, cfg.extend);
  BuiltConfig out{std::move(base), std::nullopt};
  if (cfg.delta) out.delta = build_delta(out.config, *cfg.delta);
  return out;
}

}  // namespace latforge
