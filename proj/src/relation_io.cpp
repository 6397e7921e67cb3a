#include "latforge/relation_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace latforge {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

NamedRelation read_rel(std::istream& in, const std::string& source) {
  std::optional<int> n;
  std::vector<std::pair<int, std::string>> labels;
  std::vector<std::pair<int, int>> pairs;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;
    if (key == "ground") {
      int v;
      if (!(line >> v)) fail(source, lineno, "ground: expected a size");
      if (n) fail(source, lineno, "duplicate ground line");
      n = v;
    } else if (key == "label") {
      int i;
      std::string name;
      if (!(line >> i >> name)) fail(source, lineno, "label: expected '<i> <name>'");
      labels.emplace_back(i, name);
    } else if (key == "pair") {
      int i, j;
      if (!(line >> i >> j)) fail(source, lineno, "pair: expected '<i> <j>'");
      pairs.emplace_back(i, j);
    } else {
      fail(source, lineno, "unknown directive '" + key + "'");
    }
  }
  if (!n) fail(source, lineno, "missing 'ground <n>' line");

  auto make_ground = [&]() -> GroundSet {
    if (labels.empty()) return GroundSet(*n);
    std::vector<std::string> names(*n);
    for (int i = 0; i < *n; ++i) names[i] = "x" + std::to_string(i);
    for (const auto& [i, name] : labels) {
      if (i < 0 || i >= *n) fail(source, lineno, "label index out of range");
      names[i] = name;
    }
    return GroundSet(*n, std::move(names));
  };

  GroundSet ground = make_ground();
  Relation r(*n);
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= *n || j < 0 || j >= *n)
      fail(source, lineno, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                               ") out of range");
    r.set(i, j);
  }
  return NamedRelation{std::move(ground), std::move(r)};
}

NamedRelation read_rel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_rel(in, path);
}

void write_rel(std::ostream& out, const GroundSet& ground, const Relation& r) {
  if (ground.size() != r.size())
    throw std::invalid_argument("write_rel: ground size != relation size");
  out << "ground " << ground.size() << "\n";
  if (ground.has_labels())
    for (int i = 0; i < ground.size(); ++i)
      out << "label " << i << " " << ground.label(i) << "\n";
  for (const auto& [i, j] : r.pairs()) out << "pair " << i << " " << j << "\n";
}

void write_rel_file(const std::string& path, const GroundSet& ground, const Relation& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_rel(out, ground, r);
}

std::string to_rel_string(const GroundSet& ground, const Relation& r) {
  std::ostringstream os;
  write_rel(os, ground, r);
  return os.str();
}

}  // namespace latforge
