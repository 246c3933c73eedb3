#pragma once

#include "cse/value.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cse {

// One term type serves program expressions, logical expressions and
// symbolic values; the variable kind tells them apart.
enum class Op : std::uint8_t {
  Lit, Var,
  Not, Len, Hd, Tl, IsType, NotTrue,
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq,
  And, Or,
  Cons, List,
};

enum class VarKind : std::uint8_t { Prog, Logic, Sym, Hole };

class Term;
struct TermNode;

class Term {
 public:
  Term() = default;

  static Term lit(Value v);
  static Term nat(std::uint64_t n) { return lit(Value::nat(n)); }
  static Term nat(const Nat& n) { return lit(Value::nat(n)); }
  static Term boolean(bool b) { return lit(Value::boolean(b)); }
  static Term str(std::string s) { return lit(Value::str(std::move(s))); }
  static Term nil() { return lit(Value::nil()); }

  static Term var(VarKind k, std::string name);
  static Term pvar(std::string n) { return var(VarKind::Prog, std::move(n)); }
  static Term lvar(std::string n) { return var(VarKind::Logic, std::move(n)); }
  static Term svar(std::string n) { return var(VarKind::Sym, std::move(n)); }
  // Placeholder for matching plans: "O" for a cell, "O1".."On" for predicate outs.
  static Term hole(int i);

  // Builders fold ground subterms whose evaluation is defined.
  static Term unary(Op op, Term a);
  static Term binary(Op op, Term a, Term b);
  static Term is_type(Term a, Type t);
  static Term list(std::vector<Term> items);
  static Term not_true(Term a) { return unary(Op::NotTrue, std::move(a)); }
  // No folding; keeps source expressions as written.
  static Term node(Op op, std::vector<Term> args, Type ty = Type::Val);

  explicit operator bool() const { return static_cast<bool>(p_); }
  Op op() const;
  VarKind var_kind() const;
  const std::string& name() const;
  Type type() const;
  const Value& value() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }

  bool is_lit() const { return p_ && op() == Op::Lit; }
  bool is_var() const { return p_ && op() == Op::Var; }
  bool is_var(VarKind k) const { return is_var() && var_kind() == k; }
  bool is_true() const;
  bool is_false() const;

  std::size_t hash() const;
  // Canonical printed form; memoised.
  const std::string& key() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

 private:
  explicit Term(std::shared_ptr<const TermNode> p) : p_(std::move(p)) {}
  static Term make(Op op, VarKind vk, Type ty, Value lit, std::string name,
                   std::vector<Term> args);
  std::shared_ptr<const TermNode> p_;
};

struct TermNode {
  Op op;
  VarKind vk = VarKind::Prog;
  Type ty = Type::Val;
  Value lit;
  std::string name;
  std::vector<Term> args;
  std::size_t hash = 0;
  mutable std::once_flag key_once;
  mutable std::string key;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Variable lookup for evaluation.
class Env {
 public:
  virtual ~Env() = default;
  virtual const Value* lookup(VarKind k, const std::string& name) const = 0;
};

class EmptyEnv : public Env {
 public:
  const Value* lookup(VarKind, const std::string&) const override { return nullptr; }
};

// Looks up one variable kind in a map; other kinds are absent.
class MapEnv : public Env {
 public:
  MapEnv(VarKind k, const std::map<std::string, Value>& m) : k_(k), m_(m) {}
  const Value* lookup(VarKind k, const std::string& name) const override;

 private:
  VarKind k_;
  const std::map<std::string, Value>& m_;
};

// Program variables from a store, logical variables from a substitution.
class StoreSubstEnv : public Env {
 public:
  StoreSubstEnv(const std::map<std::string, Value>& store,
                const std::map<std::string, Value>& theta)
      : store_(store), theta_(theta) {}
  const Value* lookup(VarKind k, const std::string& name) const override;

 private:
  const std::map<std::string, Value>& store_;
  const std::map<std::string, Value>& theta_;
};

// Undefined results are std::nullopt. && and || are evaluated left to right
// and short-circuit; every other operator is strict.
std::optional<Value> eval(const Term& t, const Env& env);

// Does the term evaluate to true?
bool holds(const Term& t, const Env& env);

std::string to_string(const Term& t);
// Assertion-context printing: multiplication and top-level || are parenthesised.
std::string to_string_asrt(const Term& t);

void collect_vars(const Term& t, VarKind k, std::set<std::string>& out);
std::set<std::string> vars_of(const Term& t, VarKind k);
bool has_vars(const Term& t);
bool mentions_var(const Term& t, VarKind k, const std::string& name);

using VarMap = std::function<std::optional<Term>(VarKind, const std::string&)>;
Term substitute(const Term& t, const VarMap& f);
Term substitute(const Term& t, VarKind k, const std::map<std::string, Term>& m);

// Operators that never fault once their variables are bound.
bool is_total(const Term& t);
// Top operator always produces a Bool when defined.
bool bool_sorted(const Term& t);

// Formula-level builders with light simplification; arguments are assumed
// to be boolean-sorted.
namespace f {
Term tt();
Term ff();
Term conj(const Term& a, const Term& b);
Term conj(const std::vector<Term>& xs);
Term disj(const Term& a, const Term& b);
Term neg(const Term& a);
Term eq(const Term& a, const Term& b);
Term neq(const Term& a, const Term& b);
Term in(const Term& a, Type t);
Term not_in(const Term& a, Type t);
// Flattens top-level conjunctions, dropping trivially true parts.
void flatten(const Term& t, std::vector<Term>& out);
}  // namespace f

// Convenience operator builders.
Term operator+(const Term& a, const Term& b);
Term operator-(const Term& a, const Term& b);

}  // namespace cse
