#include "latforge/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "latforge/bitops.hpp"
#include "latforge/version.hpp"

namespace latforge {

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["value"] = value;
  j["provenance"] = provenance;
  if (contradiction) j["contradiction"] = true;
  if (unknown) j["unknown"] = true;
  if (!detail.is_null()) j["detail"] = detail;
  return j;
}

Verdict& Report::add(const std::string& name, const std::string& value,
                     const std::string& provenance) {
  verdicts.push_back(Verdict{name, value, provenance, false, false, {}});
  return verdicts.back();
}

Verdict& Report::add_check(const std::string& name, bool pass,
                           const std::string& provenance) {
  Verdict& v = add(name, pass ? "PASS" : "FAIL", provenance);
  if (!pass) {
    if (provenance == "paper-identity" || provenance == "oracle")
      v.contradiction = true;
    else
      v.unknown = true;  // conjectural/unvalidated failures are not contradictions
  }
  return v;
}

bool Report::any_unknown() const {
  for (const Verdict& v : verdicts)
    if (v.unknown || v.value == "UNKNOWN") return true;
  return false;
}

bool Report::any_contradiction() const {
  for (const Verdict& v : verdicts)
    if (v.contradiction) return true;
  return false;
}

int Report::exit_code() const {
  if (any_contradiction()) return 3;
  if (any_unknown()) return 2;
  return 0;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["experiment"] = experiment;
  j["params"] = params;
  j["seed"] = seed;
  j["kernels"] = kernels.empty() ? kernels::active().name : kernels;
  nlohmann::json vs = nlohmann::json::array();
  for (const Verdict& v : verdicts) vs.push_back(v.to_json());
  j["verdicts"] = std::move(vs);
  j["steps"] = steps;
  if (!budget.is_null()) j["budget"] = budget;
  j["witness_files"] = witness_files;
  j["inputs"] = inputs;
  j["exit_code"] = exit_code();
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  Report r;
  r.experiment = j.at("experiment").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("kernels")) r.kernels = j["kernels"].get<std::string>();
  for (const auto& v : j.at("verdicts")) {
    Verdict verdict;
    verdict.name = v.at("name").get<std::string>();
    verdict.value = v.at("value").get<std::string>();
    verdict.provenance = v.at("provenance").get<std::string>();
    verdict.contradiction = v.value("contradiction", false);
    verdict.unknown = v.value("unknown", false);
    if (v.contains("detail")) verdict.detail = v["detail"];
    r.verdicts.push_back(std::move(verdict));
  }
  if (j.contains("steps")) r.steps = j["steps"].get<std::vector<nlohmann::json>>();
  if (j.contains("budget")) r.budget = j["budget"];
  if (j.contains("witness_files"))
    r.witness_files = j["witness_files"].get<std::vector<std::string>>();
  if (j.contains("inputs")) r.inputs = j["inputs"].get<std::vector<nlohmann::json>>();
  return r;
}

void Report::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report " + path);
  out << to_json().dump(2) << "\n";
}

Report Report::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

void Report::note_input(const std::string& path) {
  nlohmann::json j;
  j["path"] = path;
  j["fnv64"] = hex64(fnv64_file(path));
  inputs.push_back(std::move(j));
}

void Report::print_summary(std::ostream& os) const {
  os << experiment;
  if (!params.is_null() && !params.empty()) os << " " << params.dump();
  os << "\n";
  for (const Verdict& v : verdicts) {
    os << "  [" << v.value << "] " << v.name << " (" << v.provenance << ")";
    if (v.contradiction) os << "  ** CONTRADICTION **";
    os << "\n";
  }
}

std::uint64_t fnv64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
    if (!in) break;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// Closure dumps

namespace {

void write_dump_impl(const std::string& base_path, Family family, bool involution,
                     const char* status, int ground,
                     const std::vector<Relation>& elements,
                     const std::vector<Witness>& witnesses,
                     const std::vector<std::uint32_t>& generator_ids,
                     const nlohmann::json& stats, const std::string& claim) {
  {
    std::ofstream out(base_path + ".rels");
    if (!out) throw std::runtime_error("cannot write " + base_path + ".rels");
    out << "family " << family_name(family) << "\n";
    out << "involution " << (involution ? 1 : 0) << "\n";
    out << "status " << status << "\n";
    out << "ground " << ground << "\n";
    out << "count " << elements.size() << "\n";
    for (std::size_t i = 0; i < elements.size(); ++i) {
      out << "rel " << i << "\n";
      for (const auto& [a, b] : elements[i].pairs())
        out << "pair " << a << " " << b << "\n";
    }
  }
  {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = family_name(family);
    j["involution"] = involution;
    j["status"] = status;
    j["count"] = elements.size();
    j["generators"] = generator_ids;
    if (!claim.empty()) j["claim"] = claim;
    nlohmann::json ws = nlohmann::json::array();
    for (const Witness& w : witnesses)
      ws.push_back({witness_op_name(w.op), w.lhs, w.rhs});
    j["witnesses"] = std::move(ws);
    j["stats"] = stats;
    std::ofstream out(base_path + ".witness.json");
    if (!out) throw std::runtime_error("cannot write " + base_path + ".witness.json");
    out << j.dump() << "\n";
  }
}

nlohmann::json stats_json(const ClosureStats& s) {
  return {{"elements", s.elements},
          {"combinations", s.combinations},
          {"word_ops", s.word_ops},
          {"max_depth", s.max_depth},
          {"elapsed_ms", s.elapsed_ms}};
}

}  // namespace

void write_closure_dump(const std::string& base_path, const ClosureResult& result) {
  std::vector<Relation> elements;
  elements.reserve(result.elements.size());
  for (std::uint32_t i = 0; i < result.elements.size(); ++i)
    elements.push_back(result.elements.get(i));
  write_dump_impl(base_path, result.family, result.with_involution,
                  closure_status_name(result.status), result.elements.ground_size(),
                  elements, result.witnesses, result.generator_ids,
                  stats_json(result.stats), "");
}

void write_generation_certificate(const std::string& base_path,
                                  const ClosureResult& result,
                                  const std::vector<Relation>& targets) {
  const auto count = static_cast<std::uint32_t>(result.elements.size());
  std::vector<bool> keep(count, false);
  std::vector<std::uint32_t> work;
  for (const Relation& t : targets) {
    const std::uint32_t id = result.elements.find(t);
    if (id == ElementPool::npos)
      throw std::invalid_argument("certificate: a target is missing from the closure");
    work.push_back(id);
  }
  for (const std::uint32_t g : result.generator_ids)
    if (g != ElementPool::npos) work.push_back(g);
  while (!work.empty()) {
    const std::uint32_t id = work.back();
    work.pop_back();
    if (keep[id]) continue;
    keep[id] = true;
    const Witness& w = result.witnesses[id];
    if (w.op != WitnessOp::Generator) {
      work.push_back(w.lhs);
      work.push_back(w.rhs);
    }
  }
  // Ascending original ids are already a valid derivation order.
  std::vector<std::uint32_t> remap(count, ElementPool::npos);
  std::vector<Relation> elements;
  std::vector<Witness> witnesses;
  for (std::uint32_t id = 0; id < count; ++id) {
    if (!keep[id]) continue;
    remap[id] = static_cast<std::uint32_t>(elements.size());
    elements.push_back(result.elements.get(id));
    Witness w = result.witnesses[id];
    if (w.op != WitnessOp::Generator) {
      w.lhs = remap[w.lhs];
      w.rhs = remap[w.rhs];
    } else {
      w.lhs = w.rhs = 0;
    }
    witnesses.push_back(w);
  }
  std::vector<std::uint32_t> generators;
  for (const std::uint32_t g : result.generator_ids)
    if (g != ElementPool::npos) generators.push_back(remap[g]);
  write_dump_impl(base_path, result.family, result.with_involution,
                  closure_status_name(result.status), result.elements.ground_size(),
                  elements, witnesses, generators, stats_json(result.stats),
                  "atoms-covered");
}

ClosureDump read_closure_dump(const std::string& base_path) {
  ClosureDump dump;
  std::ifstream in(base_path + ".rels");
  if (!in) throw std::runtime_error("cannot open " + base_path + ".rels");
  std::string key;
  int ground = 0;
  std::size_t count = 0;
  long long current = -1;
  std::vector<std::pair<int, int>> pairs;
  auto flush = [&]() {
    if (current < 0) return;
    if (static_cast<std::size_t>(current) != dump.elements.size())
      throw std::runtime_error("closure dump: ids must be dense and ascending");
    dump.elements.push_back(Relation::from_pairs(ground, pairs));
    pairs.clear();
  };
  while (in >> key) {
    if (key == "family") {
      std::string name;
      in >> name;
      dump.family = family_from_name(name);
    } else if (key == "involution") {
      int v;
      in >> v;
      dump.with_involution = v != 0;
    } else if (key == "status") {
      in >> dump.status;
    } else if (key == "ground") {
      in >> ground;
      dump.ground = ground;
    } else if (key == "count") {
      in >> count;
    } else if (key == "rel") {
      flush();
      in >> current;
    } else if (key == "pair") {
      int a, b;
      in >> a >> b;
      pairs.emplace_back(a, b);
    } else {
      throw std::runtime_error("closure dump: unknown directive '" + key + "'");
    }
  }
  flush();
  if (dump.elements.size() != count)
    throw std::runtime_error("closure dump: count mismatch");

  std::ifstream jin(base_path + ".witness.json");
  if (!jin) throw std::runtime_error("cannot open " + base_path + ".witness.json");
  nlohmann::json j;
  jin >> j;
  dump.claim = j.value("claim", "");
  dump.generator_ids = j.at("generators").get<std::vector<std::uint32_t>>();
  for (const auto& w : j.at("witnesses")) {
    const std::string op = w.at(0).get<std::string>();
    Witness witness;
    witness.lhs = w.at(1).get<std::uint32_t>();
    witness.rhs = w.at(2).get<std::uint32_t>();
    if (op == "gen") witness.op = WitnessOp::Generator;
    else if (op == "meet") witness.op = WitnessOp::Meet;
    else if (op == "join") witness.op = WitnessOp::Join;
    else if (op == "inv") witness.op = WitnessOp::Inv;
    else throw std::runtime_error("closure dump: unknown witness op '" + op + "'");
    dump.witnesses.push_back(witness);
  }
  return dump;
}

std::string validate_closure_dump(const std::string& base_path) {
  ClosureDump dump;
  try {
    dump = read_closure_dump(base_path);
  } catch (const std::exception& e) {
    return e.what();
  }
  if (dump.witnesses.size() != dump.elements.size())
    return "witness count != element count";
  for (std::uint32_t i = 0; i < dump.elements.size(); ++i) {
    const Witness& w = dump.witnesses[i];
    if (w.op == WitnessOp::Generator) continue;
    if (w.lhs >= i || w.rhs >= i) return "witness parents must precede the element";
    const Relation& value = dump.elements[i];
    bool ok = false;
    switch (w.op) {
      case WitnessOp::Meet:
        ok = dump.elements[w.lhs].meet(dump.elements[w.rhs]) == value;
        break;
      case WitnessOp::Join:
        ok = Relation::join(dump.family, {dump.elements[w.lhs], dump.elements[w.rhs]}) ==
             value;
        break;
      case WitnessOp::Inv:
        ok = dump.elements[w.lhs].transpose() == value;
        break;
      case WitnessOp::Generator:
        ok = true;
        break;
    }
    if (!ok)
      return "witness replay mismatch at element " + std::to_string(i);
  }
  // Elements must be pairwise distinct.
  std::unordered_set<Relation> seen;
  seen.reserve(dump.elements.size() * 2);
  for (std::size_t i = 0; i < dump.elements.size(); ++i)
    if (!seen.insert(dump.elements[i]).second)
      return "duplicate element at id " + std::to_string(i);
  if (dump.claim == "atoms-covered") {
    for (const Relation& atom : family_atoms(dump.family, dump.ground))
      if (!seen.contains(atom)) return "claimed atom coverage is incomplete";
  } else if (!dump.claim.empty()) {
    return "unknown claim '" + dump.claim + "'";
  }
  return "";
}

}  // namespace latforge
