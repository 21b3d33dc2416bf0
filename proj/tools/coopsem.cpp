// coopsem: command line front end.
//
// Exit codes: 0 pass/equal, 1 difference found, 2 error or inconclusive.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coopsem/algebra.hpp"
#include "coopsem/config.hpp"
#include "coopsem/denot.hpp"
#include "coopsem/emit.hpp"
#include "coopsem/harness.hpp"
#include "coopsem/lang.hpp"
#include "coopsem/opsem.hpp"

using namespace coopsem;

namespace {

constexpr int kPass = 0;
constexpr int kDiff = 1;
constexpr int kError = 2;

struct Common {
  ConfigArgs args;
  std::optional<std::string> config_file;
  bool json = false;
  bool inline_text = false;
};

void add_common(CLI::App* app, Common& c, bool with_bound = true) {
  app->add_option("--vars", c.args.vars, "Comma separated variables (default x)");
  app->add_option("--mod", c.args.k, "Value modulus k (default 2)");
  if (with_bound) app->add_option("--bound", c.args.bound, "Trace length bound L (default 3)");
  app->add_option("--config", c.config_file, "key=value configuration file");
  app->add_option("--ext", c.args.ext, "Extensions to enable: rfork,or,finish,par");
  app->add_option("--active-budget", c.args.active_budget, "Active steps per segment (0 = automatic)");
  app->add_flag("--json", c.json, "Machine readable output");
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CmdPtr load_program(const std::string& arg, const Common& c, const RunConfig& rc) {
  const std::string text = c.inline_text ? arg : slurp(arg);
  try {
    return parse(text, rc.cfg, ParseOptions{true});
  } catch (const ParseError& e) {
    throw Error((c.inline_text ? std::string("<inline>") : arg) + ":" + std::to_string(e.line()) + ":" +
                std::to_string(e.column()) + ": " + e.what());
  }
}

RunConfig resolve(Common& c, const std::string& command) {
  c.args.command = command;
  return load_config(c.args, c.config_file);
}

Format fmt(const Common& c) { return c.json ? Format::Json : Format::Text; }

void print(const std::string& s) {
  std::cout << s;
  if (s.empty() || s.back() != '\n') std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace semantics workbench for cooperative threads"};
  app.require_subcommand(1);
  std::function<int()> action;

  // parse
  Common parse_c;
  std::string parse_file;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a program and print it back");
  add_common(parse_cmd, parse_c, false);
  parse_cmd->add_option("FILE", parse_file, "Program file, or - for stdin")->required();
  parse_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(parse_c, "parse");
      const CmdPtr c = load_program(parse_file, parse_c, rc);
      if (parse_c.json) {
        std::cout << "{\"program\":\"";
        for (char ch : pretty(c)) {
          if (ch == '"' || ch == '\\') std::cout << '\\';
          std::cout << ch;
        }
        std::cout << "\",\"depth\":" << c->depth + 1 << ",\"size\":" << c->size << "}\n";
      } else {
        print(pretty(c));
      }
      return kPass;
    };
  });

  // denote
  Common den_c;
  std::string den_file;
  bool den_stats = false;
  auto* den_cmd = app.add_subcommand("denote", "Print the truncated denotation of a program");
  add_common(den_cmd, den_c);
  den_cmd->add_flag("--stats", den_stats, "Cardinalities per length instead of the set");
  den_cmd->add_option("FILE", den_file, "Program file, or - for stdin")->required();
  den_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(den_c, "denote");
      const CmdPtr c = load_program(den_file, den_c, rc);
      Denoter den(rc.cfg, rc.bound);
      const TraceSet& p = den.denote(c);
      print(den_stats ? emit_stats(p, fmt(den_c)) : emit_set(p, den.space(), fmt(den_c)));
      return kPass;
    };
  });

  // run
  Common run_c;
  std::string run_file;
  bool trace_oracle = false;
  auto* run_cmd = app.add_subcommand("run", "Execute a program on the abstract machine");
  add_common(run_cmd, run_c, false);
  run_cmd->add_option("--segments", run_c.args.segments, "Number of segments (default 3)");
  run_cmd->add_flag("--trace-oracle", trace_oracle, "Print the operational trace set instead of runs");
  run_cmd->add_option("FILE", run_file, "Program file, or - for stdin")->required();
  run_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(run_c, "run");
      const CmdPtr c = load_program(run_file, run_c, rc);
      Explorer ex(rc.cfg, ExecOptions{rc.active_budget});
      // Runs and trace sets are machine output; JSON unless text is asked for.
      const Format f = Format::Json;
      ExecReport report;
      if (trace_oracle) {
        const ExecTraces t = ex.traces({}, c, rc.segments);
        report = t.report;
        print(emit_set(t.traces, ex.space(), f));
      } else {
        const ExecRuns r = ex.runs({}, c, rc.segments);
        report = r.report;
        print(emit_runs(r.runs, ex.space(), f));
      }
      if (!report.complete()) {
        std::cerr << "warning: active-step budget exhausted " << report.budget_cuts << " time(s); output incomplete\n";
        return kError;
      }
      return kPass;
    };
  });

  // equiv
  Common eq_c;
  std::string eq_a, eq_b;
  auto* eq_cmd = app.add_subcommand("equiv", "Compare the denotations of two programs");
  add_common(eq_cmd, eq_c);
  eq_cmd->add_flag("--inline", eq_c.inline_text, "Treat A and B as program text");
  eq_cmd->add_option("A", eq_a)->required();
  eq_cmd->add_option("B", eq_b)->required();
  eq_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(eq_c, "equiv");
      const CmdPtr a = load_program(eq_a, eq_c, rc);
      const CmdPtr b = load_program(eq_b, eq_c, rc);
      Denoter den(rc.cfg, rc.bound);
      const Verdict v = equiv(den, a, b);
      print(emit_verdict(v, den.space(), fmt(eq_c)));
      return v.relation == SetRelation::Equal ? kPass : kDiff;
    };
  });

  // adequacy
  Common ad_c;
  int ad_depth = 2;
  std::size_t ad_sample = 0;
  auto* ad_cmd = app.add_subcommand("adequacy", "Cross-check the machine against the denotation over a corpus");
  add_common(ad_cmd, ad_c);
  ad_cmd->add_option("--depth", ad_depth, "Corpus depth (default 2)");
  ad_cmd->add_option("--sample", ad_sample, "Check this many seeded commands of exactly the given depth instead");
  ad_cmd->add_option("--seed", ad_c.args.seed, "Seed for --sample");
  ad_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(ad_c, "adequacy");
      const std::vector<CmdPtr> cmds = ad_sample ? sample_corpus(ad_depth, ad_sample, rc.seed, rc.cfg, rc.ext)
                                                 : corpus(ad_depth, rc.cfg, rc.ext);
      std::vector<AdequacyEntry> entries;
      for (const CmdPtr& c : cmds) entries.push_back({{}, c});
      const AdequacyReport r = adequacy_check(entries, rc.cfg, rc.bound, ExecOptions{rc.active_budget});
      std::string out = emit_adequacy(r, fmt(ad_c));
      if (r.first_bad && !ad_c.json) out += "command: " + pretty(cmds[*r.first_bad]) + "\n";
      print(out);
      if (r.failed) return kDiff;
      return r.inconclusive ? kError : kPass;
    };
  });

  // laws
  Common law_c;
  std::optional<std::string> law_name;
  std::size_t law_samples = 200;
  bool law_list = false;
  auto* law_cmd = app.add_subcommand("laws", "Check the algebraic laws of the trace models");
  add_common(law_cmd, law_c, false);
  law_cmd->add_option("--law", law_name, "Check only this law");
  law_cmd->add_option("--samples", law_samples, "Random operand tuples per law (default 200)");
  law_cmd->add_option("--seed", law_c.args.seed, "Sampling seed (COOPSEM_SEED overrides)");
  law_cmd->add_flag("--list", law_list, "List the registry and exit");
  law_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(law_c, "laws");
      if (law_list) {
        for (const Law& l : law_registry())
          std::cout << l.name << "  [" << l.group << "]  " << l.statement
                    << (l.expect == Expectation::Fails ? "  (expected to fail)" : "") << '\n';
        return kPass;
      }
      LawOptions opts;
      opts.samples = law_samples;
      opts.seed = rc.seed;
      std::vector<LawReport> reports;
      if (law_name) {
        reports.push_back(check_law(*law_name, rc.cfg, opts));
      } else {
        for (const Law& l : law_registry()) reports.push_back(check_law(l.name, rc.cfg, opts));
      }
      print(emit_law_reports(reports, StoreSpace(rc.cfg), fmt(law_c)));
      for (const LawReport& r : reports)
        if (!r.passed()) return kDiff;
      return kPass;
    };
  });

  // distinguish
  Common dist_c;
  std::string dist_a, dist_b;
  auto* dist_cmd = app.add_subcommand("distinguish", "Build a context whose runs separate A from B");
  add_common(dist_cmd, dist_c);
  dist_cmd->add_flag("--inline", dist_c.inline_text, "Treat A and B as program text");
  dist_cmd->add_option("A", dist_a)->required();
  dist_cmd->add_option("B", dist_b)->required();
  dist_cmd->callback([&] {
    action = [&] {
      const RunConfig rc = resolve(dist_c, "distinguish");
      const CmdPtr a = load_program(dist_a, dist_c, rc);
      const CmdPtr b = load_program(dist_b, dist_c, rc);
      const auto d = distinguish(a, b, rc.cfg, rc.bound);
      print(emit_distinction(d, StoreSpace(rc.cfg), fmt(dist_c)));
      return d ? kDiff : kPass;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }
  try {
    return action();
  } catch (const FreshStoreError& e) {
    std::cerr << "error: " << e.what() << " (required k = " << e.required_k() << ")\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
