#include "cse/matchplan.hpp"

#include "cse/syntax.hpp"

namespace cse {

namespace {

std::set<std::string> unknown_in(const Term& t, const std::set<std::string>& known) {
  std::set<std::string> out;
  for (const auto& v : vars_of(t, VarKind::Logic))
    if (!known.count(v)) out.insert(v);
  return out;
}

bool covered(const Term& t, const std::set<std::string>& known) { return unknown_in(t, known).empty(); }

}  // namespace

std::optional<Learn> invert(const Term& t, const Term& target, const std::set<std::string>& known) {
  if (t.is_var(VarKind::Logic) && !known.count(t.name())) return Learn{t.name(), target};
  if (t.op() != Op::Add && t.op() != Op::Sub) return std::nullopt;
  const Term& a = t.arg(0);
  const Term& b = t.arg(1);
  bool in_a = !covered(a, known);
  bool in_b = !covered(b, known);
  if (in_a == in_b) return std::nullopt;
  if (t.op() == Op::Add) {
    if (in_a) return invert(a, Term::binary(Op::Sub, target, b), known);
    return invert(b, Term::binary(Op::Sub, target, a), known);
  }
  if (in_a) return invert(a, Term::binary(Op::Add, target, b), known);
  return invert(b, Term::binary(Op::Sub, a, target), known);
}

std::optional<std::vector<Learn>> ins_outs_learn(const std::set<std::string>& known, const Asrt& p) {
  switch (p->kind) {
    case AsrtKind::Pure: {
      if (covered(p->e1, known)) return std::vector<Learn>{};
      if (p->e1.op() != Op::Eq) return std::nullopt;
      for (int side = 0; side < 2; ++side) {
        const Term& k = p->e1.arg(side);
        const Term& u = p->e1.arg(1 - side);
        if (!covered(k, known) || unknown_in(u, known).size() != 1) continue;
        if (auto l = invert(u, k, known)) return std::vector<Learn>{*l};
      }
      return std::nullopt;
    }
    case AsrtKind::Freed:
      if (covered(p->e1, known)) return std::vector<Learn>{};
      return std::nullopt;
    case AsrtKind::Cell: {
      if (!covered(p->e1, known)) return std::nullopt;
      if (covered(p->e2, known)) return std::vector<Learn>{};
      if (unknown_in(p->e2, known).size() != 1) return std::nullopt;
      if (auto l = invert(p->e2, Term::hole(0), known)) return std::vector<Learn>{*l};
      return std::nullopt;
    }
    case AsrtKind::Pred: {
      for (const auto& e : p->ins)
        if (!covered(e, known)) return std::nullopt;
      std::set<std::string> k = known;
      std::vector<Learn> outs;
      for (std::size_t i = 0; i < p->outs.size(); ++i) {
        const Term& e = p->outs[i];
        if (covered(e, k)) continue;
        if (unknown_in(e, k).size() != 1) return std::nullopt;
        auto l = invert(e, Term::hole(static_cast<int>(i) + 1), k);
        if (!l) return std::nullopt;
        k.insert(l->var);
        outs.push_back(*l);
      }
      return outs;
    }
    case AsrtKind::Emp: return std::vector<Learn>{};
    default: return std::nullopt;
  }
}

MatchingPlan plan_atoms(const std::set<std::string>& known, const std::vector<Asrt>& atoms) {
  std::set<std::string> k = known;
  std::vector<Asrt> todo = atoms;
  MatchingPlan mp;
  while (!todo.empty()) {
    bool found = false;
    for (std::size_t i = 0; i < todo.size(); ++i) {
      auto outs = ins_outs_learn(k, todo[i]);
      if (!outs) continue;
      for (const auto& l : *outs) k.insert(l.var);
      mp.push_back({todo[i], std::move(*outs)});
      todo.erase(todo.begin() + static_cast<std::ptrdiff_t>(i));
      found = true;
      break;
    }
    if (!found) {
      std::string rest;
      for (const auto& a : todo) rest += (rest.empty() ? "" : " * ") + print_asrt(a);
      throw PlanError("no matching plan for " + rest);
    }
  }
  return mp;
}

MatchingPlan plan(const std::set<std::string>& known, const Asrt& p) {
  if (!is_star_of_simple(p)) throw PlanError("not a star of simple assertions: " + print_asrt(p));
  return plan_atoms(known, star_atoms(p));
}

std::string to_string(const MatchingPlan& mp) {
  std::string out = "[";
  for (std::size_t i = 0; i < mp.size(); ++i) {
    if (i) out += ", ";
    out += "(" + print_asrt(mp[i].atom) + ", [";
    for (std::size_t j = 0; j < mp[i].outs.size(); ++j) {
      if (j) out += ", ";
      out += "(" + mp[i].outs[j].var + ", " + to_string_asrt(mp[i].outs[j].expr) + ")";
    }
    out += "])";
  }
  return out + "]";
}

}  // namespace cse
