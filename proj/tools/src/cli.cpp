#include "mms_cli/cli.hpp"

#include "mms/generate.hpp"
#include "mms/oracle.hpp"
#include "mms/solver.hpp"
#include "mms/verify.hpp"
#include "mms_cli/io.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <optional>
#include <ostream>

namespace mms::cli {

namespace {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

auto load_instance(std::string const& path) -> Instance {
  try {
    return instance_from_json(read_json_file(path));
  } catch (input_error const& e) {
    auto msg = std::string(e.what());
    if (msg.rfind(path, 0) == 0) throw;
    throw input_error(path + ": " + msg);
  }
}

auto load_allocation(std::string const& path) -> Allocation {
  try {
    return allocation_from_json(read_json_file(path));
  } catch (input_error const& e) {
    auto msg = std::string(e.what());
    if (msg.rfind(path, 0) == 0) throw;
    throw input_error(path + ": " + msg);
  }
}

void emit(Streams s, std::string const& path, Json const& j) {
  if (path.empty() || path == "-") {
    s.out << format_json(j);
  } else {
    write_json_file(path, j);
  }
}

struct GuaranteeArgs {
  std::string input;
  std::optional<std::size_t> agent;
  std::uint64_t budget = SearchBudget{}.max_nodes;
};

auto cmd_guarantee(GuaranteeArgs const& a, Streams s) -> int {
  auto inst = load_instance(a.input);
  SearchBudget budget{a.budget};
  std::vector<AgentIndex> agents;
  if (a.agent) {
    if (*a.agent >= inst.num_agents()) throw input_error("agent " + std::to_string(*a.agent) + " out of range");
    agents.push_back(*a.agent);
  } else {
    for (AgentIndex i = 0; i < inst.num_agents(); ++i) agents.push_back(i);
  }
  s.out << std::left << std::setw(7) << "agent" << std::setw(12) << "guarantee" << "witness\n";
  for (auto i : agents) {
    auto cert = mms_guarantee(inst, i, budget);
    s.out << std::setw(7) << i << std::setw(12) << cert.guarantee.to_string() << cert.witness << '\n';
  }
  return kOk;
}

struct SolveArgs {
  std::string input;
  std::string out;
  std::string trace;
  bool paranoid = false;
  bool allow_fallback = false;
  std::uint64_t budget = SearchBudget{}.max_nodes;
};

auto cmd_solve(SolveArgs const& a, Streams s) -> int {
  auto inst = load_instance(a.input);
  SolveOptions opts;
  opts.budget.max_nodes = a.budget;
  opts.paranoid = a.paranoid;
  opts.allow_fallback = a.allow_fallback;
  auto const n = inst.num_agents();
  auto const m = inst.num_items();
  SolveOutcome result;
  if (m > n + 5) {
    if (!a.allow_fallback) {
      s.err << "error: the constructive solver requires m <= n+5 (n = " << n << ", m = " << m
            << "); pass --allow-fallback to search exhaustively\n";
      return kInputError;
    }
    result = fallback_search(inst, opts);
  } else {
    result = solve(inst, opts);
  }
  if (!a.trace.empty()) write_json_file(a.trace, trace_to_json(result));
  switch (result.status) {
    case SolveStatus::solved:
      emit(s, a.out, allocation_to_json(result.allocation));
      s.err << "SOLVED via " << to_string(result.covered_by) << '\n';
      return kOk;
    case SolveStatus::budget_exceeded:
      s.err << "BUDGET_EXCEEDED: raise --budget\n";
      return kBudget;
    case SolveStatus::unknown_uncovered_case:
      s.err << "UNKNOWN_UNCOVERED_CASE";
      if (result.nonexistence_proven) s.err << ": exhaustive search found no MMS allocation";
      s.err << '\n';
      return kUnknown;
  }
  return kUnknown;
}

struct VerifyArgs {
  std::string instance;
  std::string allocation;
  std::uint64_t budget = SearchBudget{}.max_nodes;
};

auto cmd_verify(VerifyArgs const& a, Streams s) -> int {
  auto inst = load_instance(a.instance);
  auto alloc = load_allocation(a.allocation);
  VerificationReport report;
  try {
    report = verify_mms(inst, alloc, SearchBudget{a.budget});
  } catch (std::invalid_argument const& e) {
    throw input_error(a.allocation + ": " + e.what());
  }
  s.out << std::left << std::setw(7) << "agent" << std::setw(10) << "utility" << std::setw(12) << "guarantee"
        << std::setw(9) << "margin" << "satisfied\n";
  for (AgentIndex i = 0; i < report.per_agent.size(); ++i) {
    auto const& r = report.per_agent[i];
    s.out << std::setw(7) << i << std::setw(10) << r.utility.to_string() << std::setw(12) << r.guarantee.to_string()
          << std::setw(9) << r.margin().to_string() << (r.satisfied ? "yes" : "NO") << '\n';
  }
  s.out << (report.overall ? "MMS allocation\n" : "NOT an MMS allocation\n");
  return report.overall ? kOk : kVerifyFailed;
}

struct GenerateArgs {
  std::size_t agents = 3;
  std::size_t items = 6;
  std::string profile = "mixed";
  std::string range = "-9:9";
  std::uint64_t seed = 0;
  std::string out;
};

auto parse_range(std::string const& text) -> std::pair<std::int64_t, std::int64_t> {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw input_error("--range expects LO:HI, got '" + text + "'");
  try {
    std::size_t used = 0;
    auto lo = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing text");
    auto rest = text.substr(colon + 1);
    auto hi = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing text");
    return {lo, hi};
  } catch (std::logic_error const&) {
    throw input_error("--range expects LO:HI, got '" + text + "'");
  }
}

auto cmd_generate(GenerateArgs const& a, Streams s) -> int {
  GenSpec spec;
  spec.num_agents = a.agents;
  spec.num_items = a.items;
  try {
    spec.profile = profile_from_string(a.profile);
  } catch (std::invalid_argument const& e) {
    throw input_error(e.what());
  }
  std::tie(spec.min_value, spec.max_value) = parse_range(a.range);
  spec.seed = a.seed;
  Instance inst;
  try {
    inst = generate(spec);
  } catch (std::invalid_argument const& e) {
    throw input_error(e.what());
  } catch (generation_error const& e) {
    throw input_error(e.what());
  }
  emit(s, a.out, instance_to_json(inst));
  return kOk;
}

}  // namespace

auto run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int {
  Streams s{out, err};
  CLI::App app{"Exact maximin-share allocation solver"};
  app.require_subcommand(1);

  GuaranteeArgs ga;
  auto* guarantee = app.add_subcommand("guarantee", "Print each agent's MMS guarantee and a witness partition");
  guarantee->add_option("input", ga.input, "Instance file")->required();
  guarantee->add_option("--agent", ga.agent, "Only this agent (0-based)");
  guarantee->add_option("--budget", ga.budget, "Search node limit");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "Construct an MMS allocation");
  solve_cmd->add_option("input", sa.input, "Instance file")->required();
  solve_cmd->add_option("-o,--out", sa.out, "Allocation output file (default: stdout)");
  solve_cmd->add_option("--trace", sa.trace, "Write the reduction trace here");
  solve_cmd->add_flag("--paranoid", sa.paranoid, "Oracle-check every reduction step");
  solve_cmd->add_option("--budget", sa.budget, "Search node limit");
  solve_cmd->add_flag("--allow-fallback", sa.allow_fallback,
                      "Search exhaustively when no constructive path applies or m > n+5");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check that an allocation is MMS");
  verify->add_option("instance", va.instance, "Instance file")->required();
  verify->add_option("allocation", va.allocation, "Allocation file")->required();
  verify->add_option("--budget", va.budget, "Search node limit");

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random instance");
  generate_cmd->add_option("--agents", gen.agents, "Number of agents")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--items", gen.items, "Number of items");
  generate_cmd->add_option("--profile", gen.profile,
                           "goods, chores, mixed, negative-mixed-only or with-nonnegative-agent");
  generate_cmd->add_option("--range", gen.range, "Utility range LO:HI")->allow_extra_args(false);
  generate_cmd->add_option("--seed", gen.seed, "Random seed");
  generate_cmd->add_option("-o,--out", gen.out, "Output file (default: stdout)");

  std::vector<char const*> argv;
  for (auto const& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::ParseError const& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (guarantee->parsed()) return cmd_guarantee(ga, s);
    if (solve_cmd->parsed()) return cmd_solve(sa, s);
    if (verify->parsed()) return cmd_verify(va, s);
    if (generate_cmd->parsed()) return cmd_generate(gen, s);
  } catch (input_error const& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (budget_exceeded const& e) {
    err << "error: " << e.what() << "; raise --budget\n";
    return kBudget;
  } catch (std::invalid_argument const& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace mms::cli
