#include "cse/analyses.hpp"
#include "cse/config.hpp"
#include "cse/syntax.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace cse;

namespace {

enum Exit { kOk = 0, kFindings = 1, kUsage = 2, kLimit = 3 };

struct Options {
  std::string cmd;
  std::vector<std::string> files;
  std::string mode, solver, config;
  std::optional<int> fuel, unfold_depth;
  std::optional<std::size_t> branch_limit;
  std::optional<unsigned> jobs;
  bool json = false, trace = false, dump_plans = false, dump_consume = false;
  bool coalesce = false, inline_only = false, spec_only = false;
  std::vector<std::string> specs, fns;
  std::string pre;
};

Program load(const std::vector<std::string>& files) {
  Program out;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Program p;
    try {
      p = parse_program(ss.str());
    } catch (const ParseError& e) {
      throw ConfigError(path + ":" + std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + e.what());
    }
    for (auto& f : p.functions) {
      if (out.find_function(f.name)) throw ConfigError("duplicate function " + f.name);
      out.functions.push_back(std::move(f));
    }
    for (auto& d : p.preds) {
      if (out.find_pred(d.name)) throw ConfigError("duplicate predicate " + d.name);
      out.preds.push_back(std::move(d));
    }
    for (auto& s : p.specs) {
      if (out.find_spec(s.name)) throw ConfigError("duplicate spec " + s.name);
      out.specs.push_back(std::move(s));
    }
    if (p.main) {
      if (out.main) throw ConfigError("more than one main");
      out.main = p.main;
    }
  }
  return out;
}

Settings settings_for(const Options& o) {
  SettingsLayer flags;
  if (!o.mode.empty()) {
    auto m = mode_from_name(o.mode);
    if (!m) throw ConfigError("--mode: expected ox, ux or ex");
    flags.mode = *m;
  }
  flags.fuel = o.fuel;
  flags.unfold_depth = o.unfold_depth;
  flags.branch_limit = o.branch_limit;
  if (!o.solver.empty()) flags.solver = o.solver;
  flags.jobs = o.jobs;
  if (o.coalesce) flags.coalesce = true;
  if (o.inline_only) flags.inline_only = true;
  if (o.spec_only) flags.spec_only = true;

  std::vector<SettingsLayer> layers{flags, config_from_process_env()};
  if (!o.config.empty()) layers.push_back(config_from_file(o.config));
  else if (std::filesystem::exists("cse.toml")) layers.push_back(config_from_file("cse.toml"));
  Settings s = resolve(layers);

  Mode want = o.cmd == "test" ? Mode::EX : o.cmd == "verify" ? Mode::OX : Mode::UX;
  if (o.cmd != "run") {
    if (flags.mode && *flags.mode != want)
      throw ConfigError(o.cmd + " runs in " + mode_name(want) + " mode only");
    s.engine.mode = want;
  }
  s.engine.trace = o.trace;
  if (s.engine.inline_only && s.engine.spec_only) throw ConfigError("--inline-only and --spec-only conflict");
  return s;
}

void dump(const Options& o, const Dumps& d) {
  if (o.trace)
    for (const auto& l : d.trace) std::cerr << l << "\n";
  if (o.dump_plans)
    for (const auto& l : d.plans) std::cerr << "plan " << l << "\n";
  if (o.dump_consume)
    for (const auto& l : d.consumes) std::cerr << "consume " << l << "\n";
}

int diag_exit(bool incomplete) { return incomplete ? kLimit : kOk; }

int cmd_run(const Options& o, const Program& prog, Solver& solver, const Settings& st) {
  FreshGen fresh(prog.identifiers());
  Engine eng(prog, solver, st.engine, fresh);
  std::vector<SymState> starts;
  Cmd body;
  if (!o.fns.empty()) {
    const FunctionDef* f = prog.find_function(o.fns.front());
    if (!f) throw ConfigError("no function " + o.fns.front());
    starts = function_start(prog, *f, o.pre.empty() ? as::emp() : parse_asrt(o.pre), fresh, solver);
    body = cmd::seq(f->body, cmd::assign("ret", f->ret));
  } else {
    if (!prog.main) throw ConfigError("program has no main; use --fn");
    starts = {main_start(prog.main)};
    body = prog.main;
  }
  std::vector<SymLeaf> leaves;
  for (const auto& s : starts) {
    auto ls = eng.exec(s, body);
    leaves.insert(leaves.end(), ls.begin(), ls.end());
  }
  dump(o, {eng.trace(), eng.plan_trace(), eng.consume_trace()});
  if (o.json) {
    nlohmann::json j;
    j["analysis"] = "run";
    j["mode"] = mode_name(st.engine.mode);
    j["leaves"] = nlohmann::json::array();
    for (const auto& l : leaves)
      j["leaves"].push_back({{"outcome", outcome_name(l.outcome)}, {"state", to_string(l.state)}});
    j["incomplete"] = eng.incomplete();
    j["diagnostics"] = eng.diagnostics();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& l : leaves) std::cout << outcome_name(l.outcome) << ": " << to_string(l.state) << "\n";
    for (const auto& d : eng.diagnostics()) std::cout << "note: " << d << "\n";
    std::cout << leaves.size() << " leaves" << (eng.incomplete() ? " (incomplete)" : "") << "\n";
  }
  return diag_exit(eng.incomplete());
}

int cmd_test(const Options& o, const Program& prog, Solver& solver, const Settings& st) {
  auto r = symtest(prog, solver, st.engine);
  dump(o, r.dumps);
  if (o.json) {
    std::cout << test_json(r).dump(2) << "\n";
  } else {
    for (const auto& v : r.violations) {
      std::cout << "assertion violated: " << v.assertion << "\n  pc: " << to_string(v.pc) << "\n";
      if (v.witness) {
        std::cout << "  witness:";
        for (const auto& [k, x] : *v.witness) std::cout << " " << k << "=" << x.to_string();
        std::cout << "\n";
      }
    }
    for (const auto& d : r.diagnostics) std::cout << "note: " << d << "\n";
    std::cout << r.violations.size() << " violation(s), " << r.leaves << " leaves"
              << (r.incomplete ? " (incomplete)" : "") << "\n";
  }
  if (!r.violations.empty()) return kFindings;
  return diag_exit(r.incomplete);
}

int cmd_verify(const Options& o, const Program& prog, Solver& solver, const Settings& st) {
  std::vector<const Spec*> todo;
  for (const auto& s : prog.specs) {
    if (s.mode != Mode::OX) continue;
    if (!o.specs.empty() && std::find(o.specs.begin(), o.specs.end(), s.name) == o.specs.end()) continue;
    if (!o.fns.empty() && std::find(o.fns.begin(), o.fns.end(), s.fname) == o.fns.end()) continue;
    todo.push_back(&s);
  }
  for (const auto& n : o.specs) {
    const Spec* s = prog.find_spec(n);
    if (!s) throw ConfigError("no spec " + n);
    if (s->mode != Mode::OX) throw ConfigError("spec " + n + " is not an OX spec");
  }
  std::vector<VerifyReport> reports(todo.size());
  auto one = [&](std::size_t i) {
    const FunctionDef* f = prog.find_function(todo[i]->fname);
    if (!f) throw ConfigError("spec " + todo[i]->name + ": no function " + todo[i]->fname);
    reports[i] = verify_ox(prog, *f, *todo[i], solver, st.engine);
  };
  for (std::size_t i = 0; i < todo.size(); i += st.jobs) {
    std::vector<std::future<void>> fs;
    for (std::size_t k = i; k < std::min(todo.size(), i + st.jobs); ++k)
      fs.push_back(std::async(st.jobs > 1 ? std::launch::async : std::launch::deferred, one, k));
    for (auto& f : fs) f.get();
  }
  bool failed = false, incomplete = false;
  nlohmann::json j;
  j["analysis"] = "verify";
  j["results"] = nlohmann::json::array();
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const auto& r = reports[i];
    dump(o, r.dumps);
    failed |= !r.verified && !r.incomplete;
    incomplete |= r.incomplete;
    if (o.json) {
      j["results"].push_back(verify_json(r, *todo[i]));
    } else if (r.verified) {
      std::cout << todo[i]->name << ": verified (" << r.leaves << " leaves)\n";
    } else {
      std::cout << todo[i]->name << ": failed at step " << r.step << ": " << r.reason << "\n";
      if (r.leaf) std::cout << "  leaf " << outcome_name(r.leaf->outcome) << ": " << to_string(r.leaf->state) << "\n";
    }
  }
  if (o.json) std::cout << j.dump(2) << "\n";
  if (todo.empty() && !o.json) std::cout << "no OX specs to verify\n";
  if (failed) return kFindings;
  return diag_exit(incomplete);
}

int cmd_synth(const Options& o, const Program& prog, Solver& solver, const Settings& st) {
  std::vector<SynthReport> rs;
  if (!o.pre.empty()) {
    if (o.fns.size() != 1) throw ConfigError("--pre needs exactly one --fn");
    const FunctionDef* f = prog.find_function(o.fns.front());
    if (!f) throw ConfigError("no function " + o.fns.front());
    Asrt p = parse_asrt(o.pre);
    if (!asrt_pv(p).empty()) throw ConfigError("--pre may not mention program variables");
    rs.push_back(synthesise(prog, *f, p, solver, st.engine, st.coalesce));
  } else {
    for (const auto& n : o.fns)
      if (!prog.find_function(n)) throw ConfigError("no function " + n);
    rs = synthesise_all(prog, solver, st.engine, st.coalesce, o.fns);
  }
  bool incomplete = false;
  for (const auto& r : rs) {
    dump(o, r.dumps);
    incomplete |= r.incomplete;
  }
  if (o.json) {
    std::cout << synth_json(rs).dump(2) << "\n";
  } else {
    for (const auto& r : rs) {
      std::cout << "// " << r.function << ": " << r.specs.size() << " spec(s), " << r.fixes << " fix(es)"
                << (r.incomplete ? ", incomplete" : "") << "\n";
      for (const auto& s : r.specs) {
        if (!is_emp_asrt(s.anti)) std::cout << "// anti-frame: " << print_asrt(s.anti) << "\n";
        if (s.manifest_candidate) std::cout << "// manifest candidate\n";
        std::cout << print_spec(s.spec) << "\n";
      }
      for (const auto& d : r.diagnostics) std::cout << "// note: " << d << "\n";
    }
  }
  return diag_exit(incomplete);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cse: symbolic execution for a small heap language"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("files", o.files, "program files")->required()->check(CLI::ExistingFile);
    s->add_option("--mode", o.mode, "ox, ux or ex");
    s->add_option("--fuel", o.fuel, "call depth bound");
    s->add_option("--unfold-depth", o.unfold_depth, "predicate unfolding bound");
    s->add_option("--branch-limit", o.branch_limit, "maximum number of leaves");
    s->add_option("--solver", o.solver, "internal or smt:<path>");
    s->add_option("--jobs", o.jobs, "worker count")->check(CLI::PositiveNumber);
    s->add_option("--config", o.config, "key=value settings file");
    s->add_flag("--json", o.json, "machine-readable output");
    s->add_flag("--trace", o.trace, "rule trace on stderr");
    s->add_flag("--dump-plans", o.dump_plans, "matching plans on stderr");
    s->add_flag("--dump-consume", o.dump_consume, "consume steps on stderr");
    s->add_flag("--coalesce", o.coalesce, "merge specs with the same pre");
    s->add_flag("--inline-only", o.inline_only, "ignore specs at call sites");
    s->add_flag("--spec-only", o.spec_only, "never inline callees");
    s->add_option("--spec", o.specs, "spec to verify");
    s->add_option("--fn", o.fns, "function to analyse");
    s->add_option("--pre", o.pre, "candidate pre-condition");
  };
  for (auto [name, help] : {std::pair{"run", "explore main or a function"},
                            std::pair{"test", "symbolic testing of main"},
                            std::pair{"verify", "verify OX specs"},
                            std::pair{"synth", "synthesise UX specs"}}) {
    auto* s = app.add_subcommand(name, help);
    common(s);
    s->callback([&o, name = std::string(name)] { o.cmd = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    Settings st = settings_for(o);
    Program prog = load(o.files);
    auto solver = make_solver(st.solver);
    if (o.cmd == "run") return cmd_run(o, prog, *solver, st);
    if (o.cmd == "test") return cmd_test(o, prog, *solver, st);
    if (o.cmd == "verify") return cmd_verify(o, prog, *solver, st);
    return cmd_synth(o, prog, *solver, st);
  } catch (const ConfigError& e) {
    std::cerr << "cse: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "cse: " << e.line << ":" << e.col << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "cse: " << e.what() << "\n";
    return kUsage;
  }
}
