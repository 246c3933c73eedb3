#include "cse/symstate.hpp"

namespace cse {

std::string to_string(const SymCell& c) {
  return to_string(c.addr) + " -> " + (c.val ? to_string(*c.val) : std::string("freed"));
}

namespace {

std::string join(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ts[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const PredInst& p) {
  return p.name + "(" + join(p.ins) + "; " + join(p.outs) + ")";
}

std::string to_string(const SymState& s) {
  std::string out = "store {";
  bool first = true;
  for (const auto& [k, v] : s.store) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + to_string(v);
  }
  out += "} heap {";
  first = true;
  for (const auto& c : s.heap) {
    if (!first) out += ", ";
    first = false;
    out += to_string(c);
  }
  out += "} preds {";
  first = true;
  for (const auto& p : s.preds) {
    if (!first) out += ", ";
    first = false;
    out += to_string(p);
  }
  return out + "} pc " + to_string(s.pc);
}

void sym_vars(const Term& t, std::set<std::string>& out) { collect_vars(t, VarKind::Sym, out); }

namespace {

void heap_vars(const std::vector<SymCell>& h, std::set<std::string>& out) {
  for (const auto& c : h) {
    sym_vars(c.addr, out);
    if (c.val) sym_vars(*c.val, out);
  }
}

void pred_vars(const std::vector<PredInst>& ps, std::set<std::string>& out) {
  for (const auto& p : ps) {
    for (const auto& t : p.ins) sym_vars(t, out);
    for (const auto& t : p.outs) sym_vars(t, out);
  }
}

}  // namespace

std::set<std::string> sv(const SymState& s) {
  std::set<std::string> out;
  for (const auto& [k, v] : s.store) sym_vars(v, out);
  heap_vars(s.heap, out);
  pred_vars(s.preds, out);
  return out;
}

std::set<std::string> sv(const AntiFrame& b) {
  std::set<std::string> out;
  heap_vars(b.heap, out);
  pred_vars(b.preds, out);
  return out;
}

std::set<std::string> sv_pc(const SymState& s) { return vars_of(s.pc, VarKind::Sym); }

Term not_in_dom(const Term& a, const std::vector<SymCell>& h) {
  Term out = f::tt();
  for (const auto& c : h) out = f::conj(out, f::neq(a, c.addr));
  return out;
}

Term wfc(const std::vector<SymCell>& existing, const std::vector<SymCell>& added) {
  Term out = f::tt();
  std::vector<SymCell> seen = existing;
  for (const auto& c : added) {
    out = f::conj(out, f::in(c.addr, Type::Nat));
    if (c.val) out = f::conj(out, f::in(*c.val, Type::Val));
    out = f::conj(out, not_in_dom(c.addr, seen));
    seen.push_back(c);
  }
  return out;
}

WfReport wf_check(const SymState& s, Solver& solver) {
  if (solver.sat(s.pc) == Sat::Unsat) return {false, "pc unsatisfiable"};
  auto pcv = sv_pc(s);
  for (const auto& v : sv(s))
    if (!pcv.count(v)) return {false, "variable " + v + " not constrained by pc"};
  Term req = f::tt();
  for (const auto& [k, v] : s.store) req = f::conj(req, f::in(v, Type::Val));
  req = f::conj(req, wfc({}, s.heap));
  for (const auto& p : s.preds) {
    for (const auto& t : p.ins) req = f::conj(req, f::in(t, Type::Val));
    for (const auto& t : p.outs) req = f::conj(req, f::in(t, Type::Val));
  }
  Sat e = solver.entails(s.pc, req);
  if (e == Sat::Unsat) return {false, "pc does not entail well-formedness"};
  if (e == Sat::Unknown) return {false, "well-formedness undecided"};
  return {};
}

SymState compose_sym(const SymState& s, const AntiFrame& b) {
  SymState out = s;
  out.pc = f::conj(out.pc, b.pc);
  out.pc = f::conj(out.pc, wfc(s.heap, b.heap));
  out.heap.insert(out.heap.end(), b.heap.begin(), b.heap.end());
  out.preds.insert(out.preds.end(), b.preds.begin(), b.preds.end());
  return out;
}

bool model_covers(const Term& t, const Model& m) {
  for (const auto& v : vars_of(t, VarKind::Sym))
    if (!m.count(v)) return false;
  return true;
}

std::optional<CState> instantiate(const SymState& s, const Model& m) {
  MapEnv env(VarKind::Sym, m);
  if (!holds(s.pc, env)) return std::nullopt;
  CState out;
  for (const auto& [k, v] : s.store) {
    auto x = eval(v, env);
    if (!x) return std::nullopt;
    out.store[k] = *x;
  }
  for (const auto& c : s.heap) {
    auto a = eval(c.addr, env);
    if (!a || !a->is_nat()) return std::nullopt;
    std::optional<Value> v;
    if (c.val) {
      auto x = eval(*c.val, env);
      if (!x) return std::nullopt;
      v = *x;
    }
    if (!out.heap.emplace(a->as_nat(), v).second) return std::nullopt;
  }
  return out;
}

std::string FreshGen::name(const std::string& tag) {
  while (true) {
    std::string n = tag + std::to_string(++counters_[tag]);
    if (!reserved_.count(n)) {
      reserved_.insert(n);
      return n;
    }
  }
}

bool Policy::feasible(const Term& pc) const {
  if (pc.is_false()) return false;
  Sat s = solver->sat(pc);
  if (s == Sat::Sat) return true;
  if (s == Sat::Unsat) return false;
  return mode != Mode::UX;
}

}  // namespace cse
