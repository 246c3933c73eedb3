#pragma once

#include "cse/concrete.hpp"
#include "cse/solver.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cse {

struct SymCell {
  Term addr;
  std::optional<Term> val;  // nullopt: freed
};

struct PredInst {
  std::string name;
  std::vector<Term> ins;
  std::vector<Term> outs;
};

using SymStore = std::map<std::string, Term>;

struct SymState {
  SymStore store;
  std::vector<SymCell> heap;  // insertion order drives branch order
  std::vector<PredInst> preds;
  Term pc = f::tt();
};

// Anti-frame collected by bi-abduction: missing cells, predicates and their
// typing constraints.
struct AntiFrame {
  std::vector<SymCell> heap;
  std::vector<PredInst> preds;
  Term pc = f::tt();

  bool empty() const { return heap.empty() && preds.empty(); }
};

std::string to_string(const SymCell& c);
std::string to_string(const PredInst& p);
std::string to_string(const SymState& s);

void sym_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> sv(const SymState& s);  // store, heap and preds
std::set<std::string> sv(const AntiFrame& b);
std::set<std::string> sv_pc(const SymState& s);

// a is not any address of h.
Term not_in_dom(const Term& a, const std::vector<SymCell>& h);
// Typing and disjointness of the cells added to an existing heap.
Term wfc(const std::vector<SymCell>& existing, const std::vector<SymCell>& added);

struct WfReport {
  bool ok = true;
  std::string reason;
};
WfReport wf_check(const SymState& s, Solver& solver);

// sigma * (B, pi): heap and predicate union, pc extended with pi and the
// typing and disjointness constraints of the added cells.
SymState compose_sym(const SymState& s, const AntiFrame& b);

// Instantiates store and heap under a model; nullopt if the pc does not hold
// or the heap collapses. Predicates are ignored.
std::optional<CState> instantiate(const SymState& s, const Model& m);
// Model with every symbolic variable of t bound?
bool model_covers(const Term& t, const Model& m);

class FreshGen {
 public:
  FreshGen() = default;
  explicit FreshGen(std::set<std::string> reserved) : reserved_(std::move(reserved)) {}
  void reserve(const std::string& n) { reserved_.insert(n); }
  void reserve(const std::set<std::string>& ns) { reserved_.insert(ns.begin(), ns.end()); }
  std::string name(const std::string& tag);
  Term sym(const std::string& tag) { return Term::svar(name(tag)); }

 private:
  std::set<std::string> reserved_;
  std::map<std::string, int> counters_;
};

// Feasibility under a mode: UX keeps only Sat, OX and EX also keep Unknown.
struct Policy {
  Solver* solver = nullptr;
  Mode mode = Mode::UX;

  bool feasible(const Term& pc) const;
  Sat entails(const Term& pc, const Term& phi) const { return solver->entails(pc, phi); }
};

}  // namespace cse
