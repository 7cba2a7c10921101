#include "jrp/instance_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jrp/errors.hpp"

namespace jrp {

using json = nlohmann::ordered_json;

namespace {

const json& field(const json& object, const char* key, const std::string& where) {
  if (!object.is_object()) throw InputError(where + ": expected an object");
  auto it = object.find(key);
  if (it == object.end()) throw InputError(where + "." + key + ": missing field");
  return *it;
}

std::string string_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_string()) throw InputError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

double number_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (!v.is_number()) throw InputError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::uint64_t count_field(const json& object, const char* key, const std::string& where) {
  const json& v = field(object, key, where);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw InputError(where + "." + key + ": expected a non-negative integer");
}

const json& array_field(const json& object, const char* key) {
  const json& v = field(object, key, "$");
  if (!v.is_array()) throw InputError(std::string(key) + ": expected an array");
  return v;
}

}  // namespace

JrpInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("$: expected an object");

  const auto mode_text = string_field(doc, "priority_mode", "$");
  const auto mode = parse_priority_mode(mode_text);
  if (!mode) {
    throw InputError("priority_mode: expected \"discrete\" or \"continuous\", got \"" +
                     mode_text + "\"");
  }

  const json& w = field(doc, "weights", "$");
  const Weights weights{number_field(w, "c_priority", "weights"),
                        number_field(w, "c_affinity", "weights")};

  std::vector<AssignedJob> assigned;
  const json& assigned_doc = array_field(doc, "assigned");
  for (std::size_t n = 0; n < assigned_doc.size(); ++n) {
    const std::string where = "assigned[" + std::to_string(n) + "]";
    assigned.push_back({JobId{string_field(assigned_doc[n], "job", where)},
                        AgentId{string_field(assigned_doc[n], "agent", where)},
                        number_field(assigned_doc[n], "priority", where)});
  }

  std::vector<VacantJob> vacants;
  const json& vacants_doc = array_field(doc, "vacants");
  for (std::size_t n = 0; n < vacants_doc.size(); ++n) {
    const std::string where = "vacants[" + std::to_string(n) + "]";
    vacants.push_back({JobId{string_field(vacants_doc[n], "job", where)},
                       number_field(vacants_doc[n], "priority", where)});
  }

  AffinityTable table;
  if (doc.contains("affinity_counts")) {
    const json& counts = array_field(doc, "affinity_counts");
    for (std::size_t n = 0; n < counts.size(); ++n) {
      const std::string where = "affinity_counts[" + std::to_string(n) + "]";
      const JobId job{string_field(counts[n], "job", where)};
      const AgentId agent{string_field(counts[n], "agent", where)};
      if (table.counts().contains({job, agent})) {
        throw InputError(where + ": duplicate pair (" + job.value + ", " + agent.value + ")");
      }
      table.set_count(job, agent, count_field(counts[n], "count", where));
    }
  }

  return JrpInstance(std::move(assigned), std::move(vacants), std::move(table), weights,
                     *mode);
}

JrpInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string serialize_instance(const JrpInstance& instance) {
  json doc;
  doc["priority_mode"] = to_string(instance.mode());
  doc["weights"] = {{"c_priority", instance.weights().priority},
                    {"c_affinity", instance.weights().affinity}};
  doc["assigned"] = json::array();
  for (const auto& a : instance.assigned()) {
    doc["assigned"].push_back(
        {{"job", a.job.value}, {"agent", a.agent.value}, {"priority", a.priority}});
  }
  doc["vacants"] = json::array();
  for (const auto& v : instance.vacants()) {
    doc["vacants"].push_back({{"job", v.job.value}, {"priority", v.priority}});
  }
  doc["affinity_counts"] = json::array();
  for (const auto& [key, count] : instance.affinities().counts()) {
    doc["affinity_counts"].push_back(
        {{"job", key.first.value}, {"agent", key.second.value}, {"count", count}});
  }
  return doc.dump(2) + "\n";
}

void save_instance(const std::filesystem::path& path, const JrpInstance& instance) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << serialize_instance(instance);
}

std::string serialize_report(const PipelineReport& report, const JrpInstance& instance) {
  json doc;
  doc["agents"] = instance.agent_count();
  doc["initial_vacants"] = instance.vacant_count();
  doc["bands"] = json::array();
  for (const auto& b : report.per_band) {
    doc["bands"].push_back({{"band", b.band},
                            {"vacants_considered", b.vacants_considered},
                            {"agents_considered", b.agents_considered},
                            {"variables", b.variables},
                            {"pruned_negative_gain", b.pruned_negative_gain},
                            {"pruned_negative_score", b.pruned_negative_score},
                            {"penalty", b.penalty},
                            {"energy", b.energy},
                            {"moves_applied", b.moves_applied},
                            {"vacants_filled", b.vacants_filled},
                            {"repaired", b.repaired}});
  }
  doc["moves"] = json::array();
  for (const auto& m : report.moves) {
    doc["moves"].push_back({{"band", m.move.band},
                            {"vacant", m.move.vacant.value},
                            {"agent", m.move.agent.value},
                            {"vacated", m.move.vacated.value},
                            {"score", m.score},
                            {"priority_gain", m.priority_gain}});
  }
  doc["final_assigned"] = json::array();
  for (const auto& a : report.final_assigned) {
    doc["final_assigned"].push_back(
        {{"job", a.job.value}, {"agent", a.agent.value}, {"priority", a.priority}});
  }
  auto vacancy_list = [](const std::vector<VacantJob>& jobs) {
    json out = json::array();
    for (const auto& v : jobs) out.push_back({{"job", v.job.value}, {"priority", v.priority}});
    return out;
  };
  doc["unfilled"] = vacancy_list(report.unfilled);
  doc["dropped"] = vacancy_list(report.dropped);
  doc["alpha_estimate"] = report.alpha_estimate;
  doc["total_variables"] = report.total_variables;
  doc["largest_subproblem"] = report.largest_subproblem;
  doc["total_score"] = report.total_score;
  return doc.dump(2) + "\n";
}

}  // namespace jrp
