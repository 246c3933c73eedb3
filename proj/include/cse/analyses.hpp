#pragma once

#include "cse/biab.hpp"
#include "cse/speclang.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cse {

// Values tried when looking for a concrete witness of a pc.
std::vector<Value> witness_domain();
// emp, true, or a *-conjunction of those
bool is_emp_asrt(const Asrt& p);
std::optional<Model> find_witness(const Term& pc, const std::vector<Value>& domain = witness_domain());

// ---- symbolic testing

// engine traces, kept for the dump flags
struct Dumps {
  std::vector<std::string> trace;
  std::vector<std::string> plans;
  std::vector<std::string> consumes;
};

struct Violation {
  std::string assertion;
  Term pc;
  std::optional<Model> witness;
  SymState state;
};

struct TestReport {
  std::vector<Violation> violations;
  std::size_t leaves = 0;
  std::size_t ok = 0;
  std::size_t errors = 0;  // other than assert failures
  std::size_t misses = 0;
  bool incomplete = false;
  std::vector<std::string> diagnostics;
  Dumps dumps;
};

// Start state: every program variable of main is nil, the heap is empty.
SymState main_start(const Cmd& main);
TestReport symtest(const Program& prog, Solver& solver, EngineConfig cfg);

// ---- OX verification

struct VerifyReport {
  bool verified = false;
  std::string step;  // "3a", "3c" or "3d" on failure
  std::string reason;
  std::optional<SymLeaf> leaf;
  std::size_t leaves = 0;
  bool incomplete = false;
  std::vector<std::string> diagnostics;
  Dumps dumps;
};

// Gamma is the program's specs, minus those of f.
VerifyReport verify_ox(const Program& prog, const FunctionDef& f, const Spec& t, Solver& solver,
                       EngineConfig cfg);

// ---- UX synthesis

struct SynthSpec {
  Spec spec;
  Outcome outcome = Outcome::Ok;
  Asrt anti;                       // anti-frame part of the pre
  bool manifest_candidate = false;  // err spec with emp pre and emp anti-frame
};

struct SynthReport {
  std::string function;
  std::vector<SynthSpec> specs;
  std::size_t fixes = 0;
  std::size_t cuts = 0;
  std::size_t dropped = 0;  // leaves without a model at the unfolding bound
  bool incomplete = false;
  std::vector<std::string> diagnostics;
  Dumps dumps;
};

// Start state for a function with candidate pre P: params bound to
// symbolic variables of the same name, locals nil, P produced.
std::vector<SymState> function_start(const Program& prog, const FunctionDef& f, const Asrt& p,
                                     FreshGen& fresh, Solver& solver);

SynthReport synthesise(const Program& prog, const FunctionDef& f, const Asrt& p, Solver& solver,
                       EngineConfig cfg, bool coalesce = false);

// Callees first; the specs of each function join the context of its callers.
std::vector<SynthReport> synthesise_all(const Program& prog, Solver& solver, EngineConfig cfg,
                                        bool coalesce = false, const std::vector<std::string>& only = {});

// Functions ordered callees first; members of a cycle keep source order.
std::vector<std::string> bottom_up_order(const Program& prog);

// Conjunct-level clean-up of a pc for presentation; every rule is an
// equivalence under the cells given.
std::vector<Term> simplify_pc(const Term& pc, const std::vector<SymCell>& heap);

// Structural equality up to a bijective renaming of logical variables, with
// * taken as a multiset and == as symmetric. Pairs share one renaming.
bool alpha_equivalent(const std::vector<std::pair<Asrt, Asrt>>& pairs);
bool alpha_equivalent(const Asrt& a, const Asrt& b);

nlohmann::json test_json(const TestReport& r);
nlohmann::json verify_json(const VerifyReport& r, const Spec& t);
nlohmann::json synth_json(const std::vector<SynthReport>& rs);

}  // namespace cse
