#pragma once

#include "cse/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cse {

struct CmdNode;
using Cmd = std::shared_ptr<const CmdNode>;

enum class CmdKind : std::uint8_t {
  Skip, Assign, Nondet, Sym, Error, Lookup, Mutate, New, Free,
  Seq, If, Call, Fold, Unfold, Assume, Assert,
};

struct CmdNode {
  CmdKind kind = CmdKind::Skip;
  std::string x;          // target variable; callee or predicate name for Call/Fold/Unfold
  std::string fname;
  Term e1, e2;
  std::vector<Term> args;
  Nat n;                  // New size
  Cmd c1, c2;
};

namespace cmd {
Cmd skip();
Cmd assign(std::string x, Term e);
Cmd nondet(std::string x);
Cmd sym(std::string x);
Cmd error(Term e);
Cmd lookup(std::string x, Term e);
Cmd mutate(Term a, Term v);
Cmd alloc(std::string x, Nat n);
Cmd dealloc(Term e);
Cmd seq(Cmd a, Cmd b);
Cmd seq(const std::vector<Cmd>& cs);
Cmd ite(Term e, Cmd a, Cmd b);
Cmd call(std::string y, std::string f, std::vector<Term> args);
Cmd fold(std::string p, std::vector<Term> args);
Cmd unfold(std::string p, std::vector<Term> args);
Cmd assume(Term e);
Cmd assert_(Term e);
}  // namespace cmd

bool operator==(const CmdNode& a, const CmdNode& b);
bool cmd_equal(const Cmd& a, const Cmd& b);

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Cmd body;
  Term ret;
};

// Program variables of expressions and commands.
std::set<std::string> pv(const Term& e);
std::set<std::string> pv(const Cmd& c);
// Variables written by Assign, Nondet, Sym, Lookup, New and FCall.
std::set<std::string> mod(const Cmd& c);
// Locals of a function: pv(body) minus the parameters, in sorted order.
std::vector<std::string> locals_of(const FunctionDef& f);

// Number of non-Seq commands.
std::size_t cmd_size(const Cmd& c);

}  // namespace cse
