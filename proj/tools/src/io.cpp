#include "mms_cli/io.hpp"

#include "mms/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mms::cli {

namespace {

constexpr std::int64_t kSafeInteger = std::int64_t{1} << 53;

auto fail(std::string const& where, std::string const& what) -> input_error {
  return input_error(where + ": " + what);
}

auto as_index(Json const& j, std::string const& where) -> std::size_t {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

auto index_list(Json const& j, std::string const& where) -> std::vector<std::size_t> {
  if (!j.is_array()) throw fail(where, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_index(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

auto rationals(std::vector<Rational> const& v) -> Json {
  auto arr = Json::array();
  for (auto const& r : v) arr.push_back(rational_to_json(r));
  return arr;
}

void pretty(std::ostream& os, Json const& j, int indent) {
  auto flat = [](Json const& v) {
    return std::all_of(v.begin(), v.end(), [](Json const& e) { return e.is_primitive(); });
  };
  if (!j.is_structured() || j.empty() || (j.is_array() && flat(j))) {
    os << j.dump();
    return;
  }
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  os << (j.is_array() ? '[' : '{') << '\n';
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) os << ",\n";
    first = false;
    os << pad;
    if (j.is_object()) os << Json(it.key()).dump() << ": ";
    pretty(os, *it, indent + 2);
  }
  os << '\n' << std::string(static_cast<std::size_t>(indent), ' ') << (j.is_array() ? ']' : '}');
}

auto require(Json const& j, char const* key, std::string const& where) -> Json const& {
  if (!j.is_object() || !j.contains(key)) throw fail(where, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

auto rational_to_json(Rational const& r) -> Json {
  if (r.is_integer() && r.num() < kSafeInteger && r.num() > -kSafeInteger) return r.num();
  return r.to_string();
}

auto rational_from_json(Json const& j) -> Rational {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      throw input_error("integer out of range");
    }
    return Rational{j.get<std::int64_t>()};
  }
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (std::exception const& e) {
      throw input_error(e.what());
    }
  }
  if (j.is_number_float()) throw input_error("floating-point utility; write exact values as \"p/q\" strings");
  throw input_error("expected an integer or a \"p/q\" string");
}

auto instance_to_json(Instance const& inst) -> Json {
  Json rows = Json::array();
  for (AgentIndex i = 0; i < inst.num_agents(); ++i) {
    std::vector<Rational> row(inst.row(i).begin(), inst.row(i).end());
    rows.push_back(rationals(row));
  }
  return Json{{"agents", inst.num_agents()}, {"items", inst.num_items()}, {"utilities", rows}};
}

auto instance_from_json(Json const& j) -> Instance {
  if (!j.is_object()) throw input_error("instance: expected a JSON object");
  auto n = as_index(require(j, "agents", "instance"), "agents");
  auto m = as_index(require(j, "items", "instance"), "items");
  if (n == 0) throw fail("agents", "need at least one agent");
  auto const& rows = require(j, "utilities", "instance");
  if (!rows.is_array() || rows.size() != n) {
    throw fail("utilities", "expected an array of " + std::to_string(n) + " rows");
  }
  Instance inst(n, m);
  for (AgentIndex i = 0; i < n; ++i) {
    auto where = "utilities[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != m) {
      throw fail(where, "expected " + std::to_string(m) + " entries");
    }
    for (ItemIndex k = 0; k < m; ++k) {
      try {
        inst.set_utility(i, k, rational_from_json(rows[i][k]));
      } catch (input_error const& e) {
        throw fail(where + "[" + std::to_string(k) + "]", e.what());
      }
    }
  }
  return inst;
}

auto allocation_to_json(Allocation const& alloc) -> Json {
  Json bundles = Json::array();
  for (auto const& b : alloc) bundles.push_back(b.items());
  return Json{{"bundles", bundles}};
}

auto allocation_from_json(Json const& j) -> Allocation {
  auto const& bundles = require(j, "bundles", "allocation");
  if (!bundles.is_array()) throw fail("bundles", "expected an array of bundles");
  Allocation alloc;
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    auto where = "bundles[" + std::to_string(k) + "]";
    try {
      alloc.emplace_back(index_list(bundles[k], where));
    } catch (std::invalid_argument const& e) {
      throw fail(where, e.what());
    }
  }
  return alloc;
}

auto step_to_json(ReductionStep const& step) -> Json {
  Json assignment = Json::object();
  for (auto const& [agent, bundle] : step.assignment) assignment[std::to_string(agent)] = bundle.items();
  Json j{
      {"ruleId", to_string(step.rule)},
      {"removedAgents", step.removed_agents},
      {"removedItems", step.removed_items},
      {"assignment", assignment},
      {"caseAnnotation", step.annotation},
      {"inputAgents", step.input_agents},
      {"inputItems", step.input_items},
  };
  switch (step.rule) {
    case RuleId::dummy_pad: j["dummyCount"] = step.dummy_count; break;
    case RuleId::sop: j["sopPerms"] = step.sop_perms; break;
    case RuleId::mimic:
      j["mimicPivot"] = step.mimic_pivot;
      j["mimicReplaced"] = step.mimic_replaced;
      j["mimicGuarantees"] = rationals(step.mimic_guarantees);
      break;
    default:
      j["agentMap"] = step.agent_map;
      j["itemMap"] = step.item_map;
      break;
  }
  return j;
}

auto step_from_json(Json const& j) -> ReductionStep {
  ReductionStep s;
  try {
    s.rule = rule_from_string(require(j, "ruleId", "record").get<std::string>());
  } catch (std::exception const& e) {
    throw fail("ruleId", e.what());
  }
  s.input_agents = as_index(require(j, "inputAgents", "record"), "inputAgents");
  s.input_items = as_index(require(j, "inputItems", "record"), "inputItems");
  s.removed_agents = index_list(require(j, "removedAgents", "record"), "removedAgents");
  s.removed_items = index_list(require(j, "removedItems", "record"), "removedItems");
  auto const& assignment = require(j, "assignment", "record");
  if (!assignment.is_object()) throw fail("assignment", "expected an object");
  for (auto const& [key, items] : assignment.items()) {
    std::size_t agent = 0;
    try {
      agent = std::stoul(key);
    } catch (std::exception const&) {
      throw fail("assignment", "agent key '" + key + "' is not an index");
    }
    s.assignment.emplace(agent, Bundle(index_list(items, "assignment." + key)));
  }
  if (j.contains("caseAnnotation")) s.annotation = j.at("caseAnnotation").get<std::string>();
  if (j.contains("dummyCount")) s.dummy_count = as_index(j.at("dummyCount"), "dummyCount");
  if (j.contains("sopPerms")) {
    for (auto const& p : j.at("sopPerms")) s.sop_perms.push_back(index_list(p, "sopPerms"));
  }
  if (j.contains("mimicPivot")) s.mimic_pivot = as_index(j.at("mimicPivot"), "mimicPivot");
  if (j.contains("mimicReplaced")) s.mimic_replaced = index_list(j.at("mimicReplaced"), "mimicReplaced");
  if (j.contains("mimicGuarantees")) {
    for (auto const& g : j.at("mimicGuarantees")) s.mimic_guarantees.push_back(rational_from_json(g));
  }
  if (j.contains("agentMap")) s.agent_map = index_list(j.at("agentMap"), "agentMap");
  if (j.contains("itemMap")) s.item_map = index_list(j.at("itemMap"), "itemMap");
  return s;
}

auto trace_to_json(SolveOutcome const& out) -> Json {
  Json records = Json::array();
  for (auto const& e : out.trace) {
    if (e.step) {
      records.push_back(step_to_json(*e.step));
    } else {
      records.push_back(Json{{"ruleId", nullptr},
                             {"removedAgents", Json::array()},
                             {"removedItems", Json::array()},
                             {"assignment", Json::object()},
                             {"caseAnnotation", e.annotation}});
    }
  }
  Json j{
      {"status", to_string(out.status)},
      {"coveredBy", to_string(out.covered_by)},
      {"nonexistenceProven", out.nonexistence_proven},
      {"records", records},
  };
  if (out.status == SolveStatus::solved) {
    j["tail"] = allocation_to_json(out.tail)["bundles"];
    j["allocation"] = allocation_to_json(out.allocation)["bundles"];
  }
  return j;
}

auto replay_trace(Instance const& inst, Json const& trace) -> Allocation {
  auto const& records = require(trace, "records", "trace");
  std::vector<ReductionStep> steps;
  Instance current = inst;
  for (auto const& r : records) {
    if (r.at("ruleId").is_null()) continue;
    auto step = replay_step(current, step_from_json(r));
    current = step.result_instance;
    steps.push_back(std::move(step));
  }
  Json tail{{"bundles", require(trace, "tail", "trace")}};
  return compose(inst, steps, allocation_from_json(tail));
}

auto parse_json(std::string_view text, std::string const& source) -> Json {
  try {
    return Json::parse(text);
  } catch (Json::parse_error const& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < upto; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string reason = e.what();
    if (auto pos = reason.find("syntax error"); pos != std::string::npos) reason = reason.substr(pos);
    throw input_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + reason);
  }
}

auto read_json_file(std::string const& path) -> Json {
  std::ifstream in(path);
  if (!in) throw input_error(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path);
}

auto format_json(Json const& j) -> std::string {
  std::ostringstream os;
  pretty(os, j, 0);
  os << '\n';
  return os.str();
}

void write_json_file(std::string const& path, Json const& j) {
  std::ofstream out(path);
  if (!out) throw input_error(path + ": cannot write file");
  out << format_json(j);
}

}  // namespace mms::cli
