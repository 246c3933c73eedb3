#include "cse/assertion.hpp"

#include <algorithm>

namespace cse {

namespace {

Asrt mk(AsrtNode n) { return std::make_shared<const AsrtNode>(std::move(n)); }

bool terms_eq(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace

namespace as {

Asrt pure(Term e) {
  AsrtNode n;
  n.kind = AsrtKind::Pure;
  n.e1 = std::move(e);
  return mk(std::move(n));
}

Asrt ff() {
  AsrtNode n;
  n.kind = AsrtKind::False;
  return mk(std::move(n));
}

Asrt emp() { return mk({}); }

Asrt impl(Asrt a, Asrt b) {
  AsrtNode n;
  n.kind = AsrtKind::Impl;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

Asrt disj(Asrt a, Asrt b) {
  AsrtNode n;
  n.kind = AsrtKind::Or;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

Asrt exists(std::vector<std::string> vars, Asrt body) {
  if (vars.empty()) return body;
  AsrtNode n;
  n.kind = AsrtKind::Exists;
  n.vars = std::move(vars);
  n.a = std::move(body);
  return mk(std::move(n));
}

Asrt cell(Term a, Term v) {
  AsrtNode n;
  n.kind = AsrtKind::Cell;
  n.e1 = std::move(a);
  n.e2 = std::move(v);
  return mk(std::move(n));
}

Asrt freed(Term a) {
  AsrtNode n;
  n.kind = AsrtKind::Freed;
  n.e1 = std::move(a);
  return mk(std::move(n));
}

Asrt star(Asrt a, Asrt b) {
  AsrtNode n;
  n.kind = AsrtKind::Star;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}

Asrt star(const std::vector<Asrt>& xs) {
  if (xs.empty()) return emp();
  Asrt acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = star(acc, xs[i]);
  return acc;
}

Asrt pred(std::string name, std::vector<Term> ins, std::vector<Term> outs) {
  AsrtNode n;
  n.kind = AsrtKind::Pred;
  n.name = std::move(name);
  n.ins = std::move(ins);
  n.outs = std::move(outs);
  return mk(std::move(n));
}

}  // namespace as

bool asrt_equal(const Asrt& a, const Asrt& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AsrtKind::Pure: return a->e1 == b->e1;
    case AsrtKind::False: case AsrtKind::Emp: return true;
    case AsrtKind::Cell: return a->e1 == b->e1 && a->e2 == b->e2;
    case AsrtKind::Freed: return a->e1 == b->e1;
    case AsrtKind::Pred:
      return a->name == b->name && terms_eq(a->ins, b->ins) && terms_eq(a->outs, b->outs);
    case AsrtKind::Exists:
      return a->vars == b->vars && asrt_equal(a->a, b->a);
    default:
      return asrt_equal(a->a, b->a) && asrt_equal(a->b, b->b);
  }
}

namespace {

void split_pure(const Term& t, std::vector<Asrt>& out) {
  if (t.op() == Op::And && bool_sorted(t.arg(0)) && bool_sorted(t.arg(1))) {
    split_pure(t.arg(0), out);
    split_pure(t.arg(1), out);
    return;
  }
  if (t.is_true()) return;
  out.push_back(as::pure(t));
}

}  // namespace

void star_atoms(const Asrt& p, std::vector<Asrt>& out) {
  switch (p->kind) {
    case AsrtKind::Emp: return;
    case AsrtKind::Star:
      star_atoms(p->a, out);
      star_atoms(p->b, out);
      return;
    case AsrtKind::Pure: split_pure(p->e1, out); return;
    default: out.push_back(p);
  }
}

std::vector<Asrt> star_atoms(const Asrt& p) {
  std::vector<Asrt> out;
  star_atoms(p, out);
  return out;
}

std::vector<Asrt> disjuncts(const Asrt& p) {
  if (p->kind != AsrtKind::Or) return {p};
  auto l = disjuncts(p->a);
  auto r = disjuncts(p->b);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

std::pair<std::vector<std::string>, Asrt> open_exists(const Asrt& p) {
  if (p->kind == AsrtKind::Exists) return {p->vars, p->a};
  return {{}, p};
}

bool is_simple(const Asrt& p) {
  switch (p->kind) {
    case AsrtKind::Pure: case AsrtKind::Cell: case AsrtKind::Freed: case AsrtKind::Pred:
    case AsrtKind::False:
      return true;
    default: return false;
  }
}

bool is_star_of_simple(const Asrt& p) {
  if (p->kind == AsrtKind::Emp) return true;
  if (p->kind == AsrtKind::Star) return is_star_of_simple(p->a) && is_star_of_simple(p->b);
  return is_simple(p);
}

void asrt_vars(const Asrt& p, VarKind k, std::set<std::string>& out) {
  switch (p->kind) {
    case AsrtKind::Pure: case AsrtKind::Freed: collect_vars(p->e1, k, out); return;
    case AsrtKind::Cell:
      collect_vars(p->e1, k, out);
      collect_vars(p->e2, k, out);
      return;
    case AsrtKind::Pred:
      for (const auto& t : p->ins) collect_vars(t, k, out);
      for (const auto& t : p->outs) collect_vars(t, k, out);
      return;
    case AsrtKind::Exists: {
      std::set<std::string> inner;
      asrt_vars(p->a, k, inner);
      if (k == VarKind::Logic)
        for (const auto& v : p->vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case AsrtKind::Impl: case AsrtKind::Or: case AsrtKind::Star:
      asrt_vars(p->a, k, out);
      asrt_vars(p->b, k, out);
      return;
    default: return;
  }
}

std::set<std::string> lv(const Asrt& p) {
  std::set<std::string> out;
  asrt_vars(p, VarKind::Logic, out);
  return out;
}

std::set<std::string> asrt_pv(const Asrt& p) {
  std::set<std::string> out;
  asrt_vars(p, VarKind::Prog, out);
  return out;
}

Asrt asrt_map(const Asrt& p, const std::function<Term(const Term&)>& fn) {
  AsrtNode n = *p;
  switch (p->kind) {
    case AsrtKind::Pure: case AsrtKind::Freed: n.e1 = fn(p->e1); break;
    case AsrtKind::Cell:
      n.e1 = fn(p->e1);
      n.e2 = fn(p->e2);
      break;
    case AsrtKind::Pred:
      for (auto& t : n.ins) t = fn(t);
      for (auto& t : n.outs) t = fn(t);
      break;
    case AsrtKind::Exists: n.a = asrt_map(p->a, fn); break;
    case AsrtKind::Impl: case AsrtKind::Or: case AsrtKind::Star:
      n.a = asrt_map(p->a, fn);
      n.b = asrt_map(p->b, fn);
      break;
    default: break;
  }
  return mk(std::move(n));
}

Asrt asrt_subst(const Asrt& p, VarKind k, const std::map<std::string, Term>& m) {
  if (p->kind == AsrtKind::Exists && k == VarKind::Logic) {
    auto inner = m;
    for (const auto& v : p->vars) inner.erase(v);
    return as::exists(p->vars, asrt_subst(p->a, k, inner));
  }
  switch (p->kind) {
    case AsrtKind::Impl: case AsrtKind::Or: case AsrtKind::Star: {
      AsrtNode n = *p;
      n.a = asrt_subst(p->a, k, m);
      n.b = asrt_subst(p->b, k, m);
      return mk(std::move(n));
    }
    case AsrtKind::Exists: return as::exists(p->vars, asrt_subst(p->a, k, m));
    default:
      return asrt_map(p, [&](const Term& t) { return substitute(t, k, m); });
  }
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::OX: return "ox";
    case Mode::UX: return "ux";
    case Mode::EX: return "ex";
  }
  return "?";
}

std::optional<Mode> mode_from_name(const std::string& s) {
  if (s == "ox" || s == "OX") return Mode::OX;
  if (s == "ux" || s == "UX") return Mode::UX;
  if (s == "ex" || s == "EX") return Mode::EX;
  return std::nullopt;
}

const FunctionDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const PredDef* Program::find_pred(const std::string& name) const {
  for (const auto& p : preds)
    if (p.name == name) return &p;
  return nullptr;
}

std::vector<const Spec*> Program::specs_for(const std::string& fname, Mode m) const {
  std::vector<const Spec*> out;
  for (const auto& s : specs)
    if (s.fname == fname && s.mode == m) out.push_back(&s);
  return out;
}

const Spec* Program::find_spec(const std::string& name) const {
  for (const auto& s : specs)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

void all_vars(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (t.op() == Op::Var) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) all_vars(a, out);
}

void all_vars(const Cmd& c, std::set<std::string>& out) {
  if (!c) return;
  if (!c->x.empty()) out.insert(c->x);
  all_vars(c->e1, out);
  all_vars(c->e2, out);
  for (const auto& a : c->args) all_vars(a, out);
  all_vars(c->c1, out);
  all_vars(c->c2, out);
}

void all_vars(const Asrt& p, std::set<std::string>& out) {
  if (!p) return;
  all_vars(p->e1, out);
  all_vars(p->e2, out);
  for (const auto& t : p->ins) all_vars(t, out);
  for (const auto& t : p->outs) all_vars(t, out);
  out.insert(p->vars.begin(), p->vars.end());
  all_vars(p->a, out);
  all_vars(p->b, out);
}

}  // namespace

std::set<std::string> Program::identifiers() const {
  std::set<std::string> out;
  for (const auto& f : functions) {
    out.insert(f.name);
    out.insert(f.params.begin(), f.params.end());
    all_vars(f.body, out);
    all_vars(f.ret, out);
  }
  for (const auto& p : preds) {
    out.insert(p.name);
    out.insert(p.ins.begin(), p.ins.end());
    out.insert(p.outs.begin(), p.outs.end());
    for (const auto& d : p.disjuncts) {
      out.insert(d.exists.begin(), d.exists.end());
      all_vars(d.body, out);
    }
  }
  for (const auto& s : specs) {
    out.insert(s.params.begin(), s.params.end());
    all_vars(s.pre, out);
    all_vars(s.ok, out);
    all_vars(s.err, out);
  }
  all_vars(main, out);
  return out;
}

}  // namespace cse
