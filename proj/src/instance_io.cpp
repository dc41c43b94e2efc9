#include "orbits/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace orbits {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw IoError(what + ": parse error at line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + e.what());
  }
}

std::int64_t as_id(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw IoError(where + ": fact ids must be integers");
  return value.get<std::int64_t>();
}

const json& array_field(const json& doc, const char* key, const std::string& what) {
  static const json empty = json::array();
  auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_array()) throw IoError(what + ": \"" + key + "\" must be an array");
  return *it;
}

}  // namespace

LoadedInstance parse_instance(const std::string& kb_text, const std::string& answers_text) {
  const json kb = parse_json(kb_text, "kb");
  const json ans = parse_json(answers_text, "answers");
  if (!kb.is_object()) throw IoError("kb: top level must be an object");
  if (!ans.is_object()) throw IoError("answers: top level must be an object");

  std::vector<FactInfo> facts;
  std::map<std::int64_t, FactId> dense;
  const bool explicit_facts = kb.contains("facts");
  if (explicit_facts) {
    for (const json& f : array_field(kb, "facts", "kb")) {
      if (!f.is_object() || !f.contains("id")) throw IoError("kb: each fact needs an \"id\"");
      const std::int64_t id = as_id(f["id"], "kb facts");
      if (dense.contains(id)) throw InstanceError("duplicate fact id " + std::to_string(id));
      FactInfo info{id, {}};
      if (f.contains("label")) {
        if (!f["label"].is_string()) throw IoError("kb: labels must be strings");
        info.label = f["label"].get<std::string>();
      }
      dense[id] = static_cast<FactId>(facts.size());
      facts.push_back(std::move(info));
    }
  } else {
    std::set<std::int64_t> ids;
    for (const char* key : {"conflicts", "priority"})
      for (const json& row : array_field(kb, key, "kb"))
        if (row.is_array())
          for (const json& v : row) ids.insert(as_id(v, std::string("kb ") + key));
    for (const json& a : array_field(ans, "answers", "answers"))
      if (a.is_object() && a.contains("causes") && a["causes"].is_array())
        for (const json& c : a["causes"])
          if (c.is_array())
            for (const json& v : c) ids.insert(as_id(v, "answers causes"));
    for (std::int64_t id : ids) {
      dense[id] = static_cast<FactId>(facts.size());
      facts.push_back({id, {}});
    }
  }
  auto resolve = [&](const json& value, const std::string& where) {
    const std::int64_t id = as_id(value, where);
    auto it = dense.find(id);
    if (it == dense.end()) {
      throw InstanceError(where + " refers to unknown fact " + std::to_string(id));
    }
    return it->second;
  };

  ConflictSet conflicts;
  for (const json& row : array_field(kb, "conflicts", "kb")) {
    if (!row.is_array() || row.empty() || row.size() > 2) {
      throw IoError("kb: conflicts must be arrays of one or two fact ids");
    }
    if (row.size() == 1) {
      conflicts.add_self_inconsistent(resolve(row[0], "conflict"));
    } else {
      const FactId a = resolve(row[0], "conflict");
      const FactId b = resolve(row[1], "conflict");
      if (a == b) throw InstanceError("conflict pairs a fact with itself: " + row.dump());
      conflicts.add(a, b);
    }
  }
  conflicts.normalize();

  PriorityRelation priority;
  for (const json& row : array_field(kb, "priority", "kb")) {
    if (!row.is_array() || row.size() != 2) throw IoError("kb: priority entries must be pairs");
    priority.add(resolve(row[0], "priority"), resolve(row[1], "priority"));
  }
  priority.normalize();
  const PriorityReport check = validate_priority(conflicts, priority);
  if (!check.ok()) {
    std::string witness;
    for (FactId f : check.witness) witness += " " + std::to_string(facts[f].external_id);
    throw InstanceError("invalid priority relation: " + check.message() + " (fact ids:" +
                        witness + ")");
  }

  LoadedInstance out;
  if (ans.contains("query")) {
    if (!ans["query"].is_string()) throw IoError("answers: \"query\" must be a string");
    out.query = ans["query"].get<std::string>();
  }
  std::vector<PotentialAnswer> answers;
  std::set<std::string> answer_ids;
  for (const json& a : array_field(ans, "answers", "answers")) {
    if (!a.is_object() || !a.contains("id") || !a["id"].is_string()) {
      throw IoError("answers: each answer needs a string \"id\"");
    }
    PotentialAnswer pa{a["id"].get<std::string>(), {}};
    if (!answer_ids.insert(pa.id).second) throw InstanceError("duplicate answer id " + pa.id);
    if (!a.contains("causes") || !a["causes"].is_array()) {
      throw IoError("answers: answer " + pa.id + " needs a \"causes\" array");
    }
    for (const json& c : a["causes"]) {
      if (!c.is_array()) throw IoError("answers: causes must be arrays of fact ids");
      std::vector<FactId> cause;
      for (const json& v : c) cause.push_back(resolve(v, "cause of " + pa.id));
      pa.causes.push_back(make_fact_set(std::move(cause)));
    }
    answers.push_back(std::move(pa));
  }
  out.instance = PrioritizedInstance(std::move(facts), std::move(conflicts), std::move(priority),
                                     std::move(answers));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

LoadedInstance load_instance(const std::string& kb_path, const std::string& answers_path) {
  return parse_instance(read_text_file(kb_path), read_text_file(answers_path));
}

namespace {

json kb_document(const PrioritizedInstance& instance) {
  auto ext = [&](FactId f) { return instance.facts()[f].external_id; };
  json facts = json::array();
  for (const FactInfo& f : instance.facts()) {
    json entry{{"id", f.external_id}};
    if (!f.label.empty()) entry["label"] = f.label;
    facts.push_back(std::move(entry));
  }
  json conflicts = json::array();
  for (const FactPair& p : instance.conflicts().pairs) conflicts.push_back({ext(p.lo), ext(p.hi)});
  for (FactId f : instance.conflicts().self_inconsistent) conflicts.push_back({ext(f)});
  json priority = json::array();
  for (const PriorityEdge& e : instance.priority().edges)
    priority.push_back({ext(e.winner), ext(e.loser)});
  return json{{"facts", facts}, {"conflicts", conflicts}, {"priority", priority}};
}

}  // namespace

std::string kb_to_json(const PrioritizedInstance& instance) {
  return kb_document(instance).dump(2) + "\n";
}

std::string kb_to_json_with_structure(const PrioritizedInstance& instance) {
  json doc = kb_document(instance);
  doc["score_structured"] = is_score_structured(instance.conflicts(), instance.priority());
  return doc.dump(2) + "\n";
}

std::string answers_to_json(const PrioritizedInstance& instance, const std::string& query) {
  json answers = json::array();
  for (const PotentialAnswer& a : instance.answers()) {
    json causes = json::array();
    for (const FactSet& c : a.causes) {
      json cause = json::array();
      for (FactId f : c) cause.push_back(instance.facts()[f].external_id);
      causes.push_back(std::move(cause));
    }
    answers.push_back({{"id", a.id}, {"causes", std::move(causes)}});
  }
  return json{{"query", query}, {"answers", std::move(answers)}}.dump(2) + "\n";
}

std::string result_to_json(const FilterReport& report, const EncodingSpec& spec,
                           Algorithm algorithm) {
  json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["semantics"] = std::string(to_string(spec.sem));
  doc["repair"] = std::string(to_string(spec.repair));
  doc["encoding"] = {{"max", std::string(to_string(spec.max))},
                     {"neg", std::string(to_string(spec.neg))}};
  doc["algorithm"] = std::string(to_string(algorithm));
  doc["trivial"] = report.trivial;
  doc["answers"] = report.answers;
  doc["complete"] = report.complete;
  if (!report.note.empty()) doc["note"] = report.note;
  doc["removed_self_inconsistent"] = report.removed_self_inconsistent.size();
  doc["timings_ms"] = {{"preprocess", report.preprocess_ms}, {"filter", report.filter_ms}};
  doc["solver_stats"] = {{"solver_calls", report.stats.solver_calls},
                         {"decisions", report.stats.decisions},
                         {"conflicts", report.stats.conflicts},
                         {"propagations", report.stats.propagations},
                         {"variables", report.stats.variables},
                         {"clauses", report.stats.clauses}};
  return doc.dump(2) + "\n";
}

}  // namespace orbits
