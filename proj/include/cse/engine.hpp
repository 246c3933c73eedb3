#pragma once

#include "cse/consprod.hpp"
#include "cse/symeval.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cse {

struct EngineConfig {
  Mode mode = Mode::UX;  // EX: core engine, no specs, fold/unfold are no-ops
  int fuel = 8;
  int unfold_depth = 3;
  std::size_t branch_limit = 10000;
  bool inline_only = false;
  bool spec_only = false;
  bool trace = false;
};

struct SymLeaf {
  Outcome outcome;
  SymState state;
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of splitting on an if condition.
struct IfSplit {
  std::vector<SymLeaf> errors;
  std::vector<std::pair<SymState, Cmd>> branches;
};

class Engine {
 public:
  Engine(const Program& prog, Solver& solver, EngineConfig cfg, FreshGen& fresh);

  // Every leaf of C from s, depth-first in rule order.
  std::vector<SymLeaf> exec(const SymState& s, const Cmd& c);
  std::vector<SymLeaf> exec(const SymState& s, const Cmd& c, int fuel);
  IfSplit split_if(const SymState& s, const Cmd& c);

  // UX end-of-run check: some bounded unfolding of the predicates leaves a
  // satisfiable pc.
  bool finalize_ux(const SymState& s);

  // Branch limit hit, fuel ran out or a spec was missing: OX coverage is
  // not complete.
  bool incomplete() const { return incomplete_; }
  void mark_incomplete(const std::string& why);
  const std::vector<std::string>& diagnostics() const { return diags_; }
  // JSON lines.
  const std::vector<std::string>& trace() const { return trace_; }
  std::vector<std::string>& consume_trace() { return consume_trace_; }
  std::vector<std::string>& plan_trace() { return plan_trace_; }

  const EngineConfig& config() const { return cfg_; }
  Policy policy() const { return pol_; }
  ConsProd& consprod() { return cp_; }
  FreshGen& fresh() { return fresh_; }
  const Program& program() const { return prog_; }

 private:
  using Out = std::vector<SymLeaf>;
  void run(const SymState& s, const Cmd& c, int fuel, Out& out);
  void call(const SymState& s, const Cmd& c, int fuel, Out& out);
  void call_spec(const SymState& s, const Cmd& c, const Spec& spec, const std::vector<Term>& args,
                 const Term& pc, Out& out);
  void call_inline(const SymState& s, const Cmd& c, const FunctionDef& f, const std::vector<Term>& args,
                   const Term& pc, int fuel, Out& out);
  void fold(const SymState& s, const Cmd& c, Out& out);
  void unfold(const SymState& s, const Cmd& c, Out& out);
  bool unfold_sat(const SymState& s, int depth);

  void emit(Outcome o, SymState s, const std::string& rule, const Term& before, Out& out);
  void fail(const SymState& s, const Term& pc, const Term& err, const std::string& rule, Out& out,
            Outcome o = Outcome::Err);
  bool room(const Out& out);

  const Program& prog_;
  EngineConfig cfg_;
  Policy pol_;
  FreshGen& fresh_;
  ConsProd cp_;
  bool incomplete_ = false;
  std::size_t leaves_ = 0;
  std::vector<std::string> diags_;
  std::vector<std::string> trace_;
  std::vector<std::string> consume_trace_;
  std::vector<std::string> plan_trace_;
};

// Error values as terms.
namespace errterm {
Term expr_eval(const Term& e);
Term type(const Term& e, const Term& v, Type t);
Term missing_cell(const Term& e, const Term& v);
Term use_after_free(const Term& e, const Term& v);
Term error(const Term& v);
Term param_count(const std::string& f);
Term no_func(const std::string& f);
Term assert_fail(const Term& e);
}  // namespace errterm

// Store for the callee: params bound, locals nil.
SymStore callee_store(const FunctionDef& f, const std::vector<Term>& args);

// Leaves in a stable order (outcome, then printed state).
void sort_leaves(std::vector<SymLeaf>& leaves);

}  // namespace cse
