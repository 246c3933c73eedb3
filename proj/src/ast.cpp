#include "cse/ast.hpp"

#include <algorithm>

namespace cse {

namespace {

Cmd mk(CmdNode n) { return std::make_shared<const CmdNode>(std::move(n)); }

}  // namespace

namespace cmd {

Cmd skip() { return mk({}); }

Cmd assign(std::string x, Term e) {
  CmdNode n;
  n.kind = CmdKind::Assign;
  n.x = std::move(x);
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Cmd nondet(std::string x) {
  CmdNode n;
  n.kind = CmdKind::Nondet;
  n.x = std::move(x);
  return mk(std::move(n));
}

Cmd sym(std::string x) {
  CmdNode n;
  n.kind = CmdKind::Sym;
  n.x = std::move(x);
  return mk(std::move(n));
}

Cmd error(Term e) {
  CmdNode n;
  n.kind = CmdKind::Error;
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Cmd lookup(std::string x, Term e) {
  CmdNode n;
  n.kind = CmdKind::Lookup;
  n.x = std::move(x);
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Cmd mutate(Term a, Term v) {
  CmdNode n;
  n.kind = CmdKind::Mutate;
  n.e1 = std::move(a);
  n.e2 = std::move(v);
  return mk(std::move(n));
}

Cmd alloc(std::string x, Nat size) {
  CmdNode n;
  n.kind = CmdKind::New;
  n.x = std::move(x);
  n.n = std::move(size);
  return mk(std::move(n));
}

Cmd dealloc(Term e) {
  CmdNode n;
  n.kind = CmdKind::Free;
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Cmd seq(Cmd a, Cmd b) {
  CmdNode n;
  n.kind = CmdKind::Seq;
  n.c1 = std::move(a);
  n.c2 = std::move(b);
  return mk(std::move(n));
}

Cmd seq(const std::vector<Cmd>& cs) {
  if (cs.empty()) return skip();
  Cmd acc = cs.back();
  for (std::size_t i = cs.size() - 1; i-- > 0;) acc = seq(cs[i], acc);
  return acc;
}

Cmd ite(Term e, Cmd a, Cmd b) {
  CmdNode n;
  n.kind = CmdKind::If;
  n.e1 = std::move(e);
  n.c1 = std::move(a);
  n.c2 = std::move(b);
  return mk(std::move(n));
}

Cmd call(std::string y, std::string f, std::vector<Term> args) {
  CmdNode n;
  n.kind = CmdKind::Call;
  n.x = std::move(y);
  n.fname = std::move(f);
  n.args = std::move(args);
  return mk(std::move(n));
}

Cmd fold(std::string p, std::vector<Term> args) {
  CmdNode n;
  n.kind = CmdKind::Fold;
  n.fname = std::move(p);
  n.args = std::move(args);
  return mk(std::move(n));
}

Cmd unfold(std::string p, std::vector<Term> args) {
  CmdNode n;
  n.kind = CmdKind::Unfold;
  n.fname = std::move(p);
  n.args = std::move(args);
  return mk(std::move(n));
}

Cmd assume(Term e) {
  CmdNode n;
  n.kind = CmdKind::Assume;
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Cmd assert_(Term e) {
  CmdNode n;
  n.kind = CmdKind::Assert;
  n.e1 = std::move(e);
  return mk(std::move(n));
}

}  // namespace cmd

namespace {

bool term_eq(const Term& a, const Term& b) {
  if (!a || !b) return !a && !b;
  return a == b;
}

}  // namespace

bool operator==(const CmdNode& a, const CmdNode& b) {
  if (a.kind != b.kind || a.x != b.x || a.fname != b.fname || a.n != b.n) return false;
  if (!term_eq(a.e1, b.e1) || !term_eq(a.e2, b.e2)) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!term_eq(a.args[i], b.args[i])) return false;
  return cmd_equal(a.c1, b.c1) && cmd_equal(a.c2, b.c2);
}

bool cmd_equal(const Cmd& a, const Cmd& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

std::set<std::string> pv(const Term& e) { return vars_of(e, VarKind::Prog); }

namespace {

void pv_into(const Cmd& c, std::set<std::string>& out) {
  if (!c) return;
  if (!c->x.empty() && c->kind != CmdKind::Fold && c->kind != CmdKind::Unfold) out.insert(c->x);
  if (c->e1) collect_vars(c->e1, VarKind::Prog, out);
  if (c->e2) collect_vars(c->e2, VarKind::Prog, out);
  for (const auto& a : c->args) collect_vars(a, VarKind::Prog, out);
  pv_into(c->c1, out);
  pv_into(c->c2, out);
}

void mod_into(const Cmd& c, std::set<std::string>& out) {
  if (!c) return;
  switch (c->kind) {
    case CmdKind::Assign: case CmdKind::Nondet: case CmdKind::Sym:
    case CmdKind::Lookup: case CmdKind::New: case CmdKind::Call:
      out.insert(c->x);
      break;
    default: break;
  }
  mod_into(c->c1, out);
  mod_into(c->c2, out);
}

}  // namespace

std::set<std::string> pv(const Cmd& c) {
  std::set<std::string> out;
  pv_into(c, out);
  return out;
}

std::set<std::string> mod(const Cmd& c) {
  std::set<std::string> out;
  mod_into(c, out);
  return out;
}

std::vector<std::string> locals_of(const FunctionDef& f) {
  std::vector<std::string> out;
  for (const auto& x : pv(f.body))
    if (std::find(f.params.begin(), f.params.end(), x) == f.params.end()) out.push_back(x);
  return out;
}

std::size_t cmd_size(const Cmd& c) {
  if (!c) return 0;
  switch (c->kind) {
    case CmdKind::Seq: return cmd_size(c->c1) + cmd_size(c->c2);
    case CmdKind::If: return 1 + cmd_size(c->c1) + cmd_size(c->c2);
    default: return 1;
  }
}

}  // namespace cse
