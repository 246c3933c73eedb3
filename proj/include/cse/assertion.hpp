#pragma once

#include "cse/ast.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cse {

struct AsrtNode;
using Asrt = std::shared_ptr<const AsrtNode>;

enum class AsrtKind : std::uint8_t {
  Pure, False, Impl, Or, Exists, Emp, Cell, Freed, Star, Pred,
};

struct AsrtNode {
  AsrtKind kind = AsrtKind::Emp;
  Term e1, e2;                    // Pure: e1. Cell: e1 -> e2. Freed: e1.
  Asrt a, b;                      // Impl, Or, Star; Exists body in a
  std::vector<std::string> vars;  // Exists binders
  std::string name;               // Pred
  std::vector<Term> ins, outs;    // Pred
};

namespace as {
Asrt pure(Term e);
Asrt ff();
Asrt emp();
Asrt impl(Asrt a, Asrt b);
Asrt disj(Asrt a, Asrt b);
Asrt exists(std::vector<std::string> vars, Asrt body);
Asrt cell(Term a, Term v);
Asrt freed(Term a);
Asrt star(Asrt a, Asrt b);
// Emp for an empty list.
Asrt star(const std::vector<Asrt>& xs);
Asrt pred(std::string name, std::vector<Term> ins, std::vector<Term> outs);
}  // namespace as

bool asrt_equal(const Asrt& a, const Asrt& b);

// Splits * (and top-level && inside pure atoms), dropping emp.
void star_atoms(const Asrt& p, std::vector<Asrt>& out);
std::vector<Asrt> star_atoms(const Asrt& p);
// Splits top-level ||.
std::vector<Asrt> disjuncts(const Asrt& p);
// Strips one outer exists.
std::pair<std::vector<std::string>, Asrt> open_exists(const Asrt& p);

bool is_simple(const Asrt& p);
// Only *, simple atoms and emp.
bool is_star_of_simple(const Asrt& p);

// Variables of kind k; lv for logical variables (exists-bound ones removed).
void asrt_vars(const Asrt& p, VarKind k, std::set<std::string>& out);
std::set<std::string> lv(const Asrt& p);
std::set<std::string> asrt_pv(const Asrt& p);

Asrt asrt_map(const Asrt& p, const std::function<Term(const Term&)>& fn);
// Substitutes free variables; exists binders shadow.
Asrt asrt_subst(const Asrt& p, VarKind k, const std::map<std::string, Term>& m);

struct PredDisjunct {
  std::vector<std::string> exists;
  Asrt body;  // star of simple assertions
};

struct PredDef {
  std::string name;
  std::vector<std::string> ins;
  std::vector<std::string> outs;
  std::vector<PredDisjunct> disjuncts;
  bool exact = false;

  std::size_t arity() const { return ins.size() + outs.size(); }
};

enum class Mode : std::uint8_t { OX, UX, EX };
const char* mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& s);

struct Spec {
  std::string name;
  Mode mode = Mode::UX;
  std::string fname;
  std::vector<std::string> params;
  Asrt pre;  // over logical variables; params are implicit x = x
  Asrt ok;   // may mention ret; False when absent
  Asrt err;  // may mention err; False when absent
};

struct Program {
  std::vector<FunctionDef> functions;
  std::vector<PredDef> preds;
  std::vector<Spec> specs;
  Cmd main;

  const FunctionDef* find_function(const std::string& name) const;
  const PredDef* find_pred(const std::string& name) const;
  std::vector<const Spec*> specs_for(const std::string& fname, Mode m) const;
  const Spec* find_spec(const std::string& name) const;
  // Every identifier appearing anywhere, for fresh-name avoidance.
  std::set<std::string> identifiers() const;
};

}  // namespace cse
