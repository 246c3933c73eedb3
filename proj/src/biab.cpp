#include "cse/biab.hpp"

namespace cse {

namespace {

std::vector<Term> items(const Term& t) {
  std::vector<Term> out;
  if (!t) return out;
  if (t.op() == Op::List) return t.args();
  if (t.is_lit() && t.value().is_list())
    for (const auto& v : t.value().as_list()) out.push_back(Term::lit(v));
  return out;
}

bool scoped(const Term& t, const std::set<std::string>& vars) {
  for (const auto& v : vars_of(t, VarKind::Sym))
    if (!vars.count(v)) return false;
  return true;
}

std::set<std::string> all_vars(const SymState& s) {
  auto out = sv(s);
  auto p = sv_pc(s);
  out.insert(p.begin(), p.end());
  return out;
}

}  // namespace

std::set<std::string> anti_domain(const AntiFrame& b) {
  std::set<std::string> out;
  for (const auto& c : b.heap) sym_vars(c.addr, out);
  for (const auto& p : b.preds)
    for (const auto& t : p.ins) sym_vars(t, out);
  return out;
}

AntiFrame merge(const AntiFrame& a, const AntiFrame& b) {
  AntiFrame out = a;
  out.heap.insert(out.heap.end(), b.heap.begin(), b.heap.end());
  out.preds.insert(out.preds.end(), b.preds.begin(), b.preds.end());
  out.pc = f::conj(a.pc, b.pc);
  return out;
}

std::optional<AntiFrame> fix_for(const SymLeaf& leaf, const SymState& pre, FreshGen& fresh,
                                 const Program& prog) {
  auto it = leaf.state.store.find("err");
  if (it == leaf.state.store.end()) return std::nullopt;
  auto xs = items(it->second);
  if (xs.empty() || !xs[0].is_lit() || !xs[0].value().is_str()) return std::nullopt;
  const std::string tag = xs[0].value().as_str();
  auto scope = all_vars(pre);
  AntiFrame b;
  if (leaf.outcome == Outcome::Miss) {
    if (tag != "MissingCell" || xs.size() != 3) return std::nullopt;
    const Term& a = xs[2];
    if (!scoped(a, scope)) return std::nullopt;
    Term w = fresh.sym("v");
    b.heap.push_back({a, w});
    b.pc = f::in(w, Type::Val);
    return b;
  }
  if (leaf.outcome != Outcome::Abort) return std::nullopt;
  if (tag == "MissingCell" || tag == "MissingNegCell") {
    if (xs.size() != 3) return std::nullopt;
    const Term& a = xs[1];
    if (!scoped(a, scope)) return std::nullopt;
    if (tag == "MissingNegCell") {
      b.heap.push_back({a, std::nullopt});
      return b;
    }
    Term w = fresh.sym("v");
    b.heap.push_back({a, w});
    b.pc = f::in(w, Type::Val);
    return b;
  }
  if (tag == "Pred") {
    if (xs.size() != 4 || !xs[1].is_lit() || !xs[1].value().is_str()) return std::nullopt;
    const std::string name = xs[1].value().as_str();
    const PredDef* def = prog.find_pred(name);
    if (!def) return std::nullopt;
    auto ins = items(xs[2]);
    if (ins.size() != def->ins.size()) return std::nullopt;
    for (const auto& v : ins)
      if (!scoped(v, scope)) return std::nullopt;
    PredInst p{name, ins, {}};
    Term pc = f::tt();
    for (const auto& v : ins) pc = f::conj(pc, f::in(v, Type::Val));
    for (const auto& o : def->outs) {
      Term w = fresh.sym(o);
      p.outs.push_back(w);
      pc = f::conj(pc, f::in(w, Type::Val));
    }
    // keep the new instance apart from the ones already present
    for (const auto& q : pre.preds) {
      if (q.name != name || q.ins.size() != ins.size()) continue;
      Term same = f::tt();
      for (std::size_t i = 0; i < ins.size(); ++i) same = f::conj(same, f::eq(ins[i], q.ins[i]));
      pc = f::conj(pc, f::neg(same));
    }
    b.preds.push_back(std::move(p));
    b.pc = pc;
    return b;
  }
  return std::nullopt;
}

Biab::Biab(Engine& eng, BiabConfig cfg) : eng_(eng), cfg_(cfg) {
  if (eng.config().mode != Mode::UX) throw EngineError("bi-abduction runs on the UX engine");
}

std::vector<BiabLeaf> Biab::exec(const SymState& s, const Cmd& c) {
  std::vector<BiabLeaf> out;
  run(s, c, out);
  return out;
}

void Biab::run(const SymState& s, const Cmd& c, std::vector<BiabLeaf>& out) {
  switch (c->kind) {
    case CmdKind::Seq: {
      std::vector<BiabLeaf> first;
      run(s, c->c1, first);
      for (auto& l : first) {
        if (l.outcome != Outcome::Ok) {
          out.push_back(std::move(l));
          continue;
        }
        std::vector<BiabLeaf> second;
        run(l.state, c->c2, second);
        std::set<std::string> born = sv(l.state);
        for (const auto& v : sv(s)) born.erase(v);
        for (auto& r : second) {
          // the second anti-frame may not sit on resource made by the first command
          bool clash = false;
          for (const auto& v : anti_domain(r.anti)) clash |= born.count(v) > 0;
          if (clash) {
            ++cuts_;
            continue;
          }
          out.push_back({r.outcome, std::move(r.state), merge(l.anti, r.anti)});
        }
      }
      return;
    }
    case CmdKind::If: {
      auto sp = eng_.split_if(s, c);
      for (auto& [t, sub] : sp.branches) run(t, sub, out);
      for (auto& e : sp.errors) out.push_back({e.outcome, std::move(e.state), {}});
      return;
    }
    default:
      atomic(s, c, 0, out);
  }
}

void Biab::atomic(const SymState& s, const Cmd& c, std::size_t fixes, std::vector<BiabLeaf>& out) {
  for (auto& l : eng_.exec(s, c)) {
    if (l.outcome == Outcome::Ok || l.outcome == Outcome::Err) {
      out.push_back({l.outcome, std::move(l.state), {}});
      continue;
    }
    if (fixes >= cfg_.max_fixes_per_cmd) {
      ++cuts_;
      diags_.push_back("fix limit reached");
      continue;
    }
    auto fx = fix_for(l, s, eng_.fresh(), eng_.program());
    if (!fx) {
      ++cuts_;
      continue;
    }
    SymState t = compose_sym(s, *fx);
    if (!eng_.policy().feasible(t.pc)) {
      ++cuts_;
      continue;
    }
    ++fixes_;
    std::vector<BiabLeaf> rec;
    atomic(t, c, fixes + 1, rec);
    for (auto& r : rec) out.push_back({r.outcome, std::move(r.state), merge(*fx, r.anti)});
  }
}

}  // namespace cse
