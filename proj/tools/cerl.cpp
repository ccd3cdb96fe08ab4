// cerl: run, trace and compare Core Erlang programs on the frame stack machine.
//
// Exit codes: run 0/2/3 (completed/out of fuel/stuck), equiv 0/1/2
// (equivalent/inequivalent/unknown), check 0/1, usage 64, parse 65.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cerl/equiv.hpp"
#include "cerl/frontend.hpp"
#include "cerl/props.hpp"
#include "cerl/report.hpp"

namespace {

constexpr int kUsage = 64;
constexpr int kParse = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

cerl::SourceUnit load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return cerl::parse_unit(text);
  } catch (cerl::ParseError& e) {
    throw cerl::ParseError(e.pos, path + ": " + e.message, e.expected);
  }
}

std::vector<cerl::ValuePtr> parse_args(const std::vector<std::string>& args) {
  std::vector<cerl::ValuePtr> out;
  for (const auto& a : args) out.push_back(cerl::parse_value(a));
  return out;
}

std::optional<cerl::FunId> parse_entry(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto id = cerl::parse_funid(text);
  if (!id) throw UsageError("--entry expects f/k, got " + text);
  return id;
}

cerl::ExprPtr program(const std::string& file, const std::vector<std::string>& args, const std::string& entry) {
  cerl::SourceUnit unit = load(file);
  try {
    return unit.entry_expr(parse_args(args), parse_entry(entry));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run_exit(const cerl::RunOutcome& o) {
  if (std::holds_alternative<cerl::run::Completed>(o)) return 0;
  if (std::holds_alternative<cerl::run::OutOfFuel>(o)) return 2;
  return 3;
}

int cmd_run(const std::string& file, const std::vector<std::string>& args, std::size_t fuel,
            const std::string& entry) {
  cerl::RunOutcome o = cerl::eval_star({cerl::FrameStack{}, program(file, args, entry)}, fuel);
  if (const auto* c = std::get_if<cerl::run::Completed>(&o)) {
    std::cout << cerl::print(c->result) << "\n";
  } else if (const auto* f = std::get_if<cerl::run::OutOfFuel>(&o)) {
    std::cerr << "out of fuel after " << f->steps << " steps\n";
    std::cout << cerl::print(f->at) << "\n";
  } else {
    const auto& s = std::get<cerl::run::Stuck>(o);
    std::cerr << "stuck after " << s.steps << " steps: " << s.reason << "\n";
    std::cout << cerl::print(s.at) << "\n";
  }
  return run_exit(o);
}

int cmd_trace(const std::string& file, const std::vector<std::string>& args, std::size_t fuel,
              const std::string& entry, const std::string& format) {
  cerl::Trace trace;
  cerl::RunOutcome o = cerl::eval_star({cerl::FrameStack{}, program(file, args, entry)}, fuel, &trace);
  if (format == "json") {
    for (const auto& e : trace) std::cout << cerl::to_json(e).dump() << "\n";
    std::cout << cerl::final_record(o).dump() << "\n";
  } else {
    for (const auto& e : trace) {
      std::cout << e.index << "\t" << cerl::rule_name(e.rule) << "\t" << e.before.stack.size() << "\t"
                << cerl::print(e.before.redex) << "\n";
    }
    nlohmann::json last = cerl::final_record(o);
    std::cout << last["step"].get<std::size_t>() << "\t" << last["outcome"].get<std::string>() << "\t"
              << last["stack_depth"].get<std::size_t>() << "\t" << last["redex_text"].get<std::string>() << "\n";
  }
  return run_exit(o);
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// A file of definitions is compared through its entry function applied to
// free variables; a bare expression is compared as is.
cerl::ExprPtr equiv_side(const cerl::SourceUnit& unit, const std::vector<std::string>& free, const std::string& entry,
                         cerl::NameSet& gamma) {
  if (!unit.has_definitions()) {
    if (!entry.empty()) throw UsageError("--entry needs a file of definitions");
    if (free.empty()) {
      for (const auto& n : cerl::free_names(*unit.expression)) gamma.insert(n);
    }
    return unit.expression;
  }
  auto id = parse_entry(entry).value_or(unit.definitions.back().def.id);
  std::vector<std::string> names = free;
  if (names.empty()) {
    for (std::size_t i = 1; i <= id.arity; ++i) names.push_back("_A" + std::to_string(i));
  }
  if (names.size() != id.arity) {
    throw UsageError("--free lists " + std::to_string(names.size()) + " names but the entry takes " +
                     std::to_string(id.arity) + " arguments");
  }
  std::vector<cerl::ValuePtr> args;
  for (const auto& n : names) {
    args.push_back(cerl::val::var(n));
    gamma.insert(cerl::Var{n});
  }
  try {
    return unit.entry_expr(args, id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_equiv(const std::string& f1, const std::string& f2, const std::string& free, const std::string& entry,
              const cerl::EquivConfig& cfg) {
  std::vector<std::string> names = split_names(free);
  cerl::NameSet gamma;
  for (const auto& n : names) gamma.insert(cerl::Var{n});
  cerl::ExprPtr left = equiv_side(load(f1), names, entry, gamma);
  cerl::ExprPtr right = equiv_side(load(f2), names, entry, gamma);
  cerl::EquivVerdict v = cerl::ciu_equiv(left, right, gamma, cfg);
  std::cout << cerl::to_json(v).dump(2) << "\n";
  switch (v.kind) {
    case cerl::VerdictKind::Equivalent: return 0;
    case cerl::VerdictKind::Inequivalent: return 1;
    case cerl::VerdictKind::Unknown: return 2;
  }
  return 2;
}

int cmd_check(const std::string& which) {
  int failed = 0;
  for (const auto& suite : cerl::props::suites(which)) {
    cerl::props::CheckResult r = suite.run();
    std::printf("[%s] %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame stack semantics for sequential Core Erlang"};
  app.require_subcommand(1);

  std::string file, file2, entry, format = "text", free, suite = "all";
  std::vector<std::string> args;
  std::size_t fuel = 100000;
  cerl::EquivConfig cfg;

  auto* run = app.add_subcommand("run", "Evaluate a program and print its result");
  run->add_option("FILE", file, "Source file")->required();
  run->add_option("--arg", args, "Argument value for the entry function (repeatable)")->allow_extra_args(false);
  run->add_option("--fuel", fuel, "Maximum number of steps");
  run->add_option("--entry", entry, "Entry definition f/k (default: the last one)");

  auto* trace = app.add_subcommand("trace", "Print every reduction step");
  trace->add_option("FILE", file, "Source file")->required();
  trace->add_option("--arg", args, "Argument value for the entry function (repeatable)")->allow_extra_args(false);
  trace->add_option("--fuel", fuel, "Maximum number of steps");
  trace->add_option("--entry", entry, "Entry definition f/k (default: the last one)");
  trace->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* equiv = app.add_subcommand("equiv", "Compare two programs by bounded CIU testing");
  equiv->add_option("FILE1", file, "First source file")->required();
  equiv->add_option("FILE2", file2, "Second source file")->required();
  equiv->add_option("--free", free, "Comma-separated free variables");
  equiv->add_option("--entry", entry, "Entry definition f/k in both files");
  equiv->add_option("--fuel", cfg.fuel, "Step limit per run");
  equiv->add_option("--stacks", cfg.num_stacks, "Random stacks per substitution");
  equiv->add_option("--substs", cfg.num_substitutions, "Closing substitutions");
  equiv->add_option("--seed", cfg.seed, "Random seed");

  auto* check = app.add_subcommand("check", "Run the property and golden-trace checks");
  check->add_option("--suite", suite, "Which checks")->check(CLI::IsMember({"props", "golden", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(file, args, fuel, entry);
    if (trace->parsed()) return cmd_trace(file, args, fuel, entry, format);
    if (equiv->parsed()) return cmd_equiv(file, file2, free, entry, cfg);
    if (check->parsed()) return cmd_check(suite);
  } catch (const cerl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
