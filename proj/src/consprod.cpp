#include "cse/consprod.hpp"

#include "cse/syntax.hpp"

namespace cse {

std::string to_string(const SymSubst& th) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : th) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + to_string(v);
  }
  return out + "}";
}

Term apply(const SymSubst& th, const Term& t, const std::map<std::string, Term>& holes) {
  return substitute(t, [&](VarKind k, const std::string& n) -> std::optional<Term> {
    if (k == VarKind::Logic) {
      auto it = th.find(n);
      if (it != th.end()) return it->second;
    } else if (k == VarKind::Hole) {
      auto it = holes.find(n);
      if (it != holes.end()) return it->second;
    }
    return std::nullopt;
  });
}

namespace aborts {

Term cons_pure(const Term& phi, const Term& pc) { return Term::list({Term::str("consPure"), phi, pc}); }
Term missing_cell(const Term& a, const Term& pc) { return Term::list({Term::str("MissingCell"), a, pc}); }
Term missing_neg_cell(const Term& a, const Term& pc) {
  return Term::list({Term::str("MissingNegCell"), a, pc});
}
Term cons_error(const Term& pc) { return Term::list({Term::str("consError"), pc}); }
Term pred(const std::string& name, const std::vector<Term>& ins, const Term& pc) {
  return Term::list({Term::str("Pred"), Term::str(name), Term::list(ins), pc});
}

std::string tag(const Term& err) {
  if (!err) return "";
  if (err.op() == Op::List && !err.args().empty() && err.arg(0).is_lit() && err.arg(0).value().is_str())
    return err.arg(0).value().as_str();
  if (err.is_lit() && err.value().is_list() && !err.value().as_list().empty() &&
      err.value().as_list()[0].is_str())
    return err.value().as_list()[0].as_str();
  return "";
}

}  // namespace aborts

namespace {

bool trivially_val(const Term& t, const Term& pc) {
  if (t.is_lit()) return true;
  if (t.is_var(VarKind::Sym)) return mentions_var(pc, VarKind::Sym, t.name());
  return false;
}

Term val_typing(const std::vector<Term>& ts, const Term& pc) {
  Term out = f::tt();
  for (const auto& t : ts)
    if (!trivially_val(t, pc)) out = f::conj(out, f::in(t, Type::Val));
  return out;
}

Term all_eq(const std::vector<Term>& a, const std::vector<Term>& b) {
  Term out = f::tt();
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) out = f::conj(out, f::eq(a[i], b[i]));
  return out;
}

}  // namespace

void close_typing(SymState& s) {
  auto in_pc = sv_pc(s);
  for (const auto& v : sv(s))
    if (!in_pc.count(v)) s.pc = f::conj(s.pc, f::in(Term::svar(v), Type::Val));
}

void ConsProd::note(const std::string& rule, const Asrt& atom, const Term& before, const Term& after) {
  if (!trace_) return;
  std::vector<Term> a, b;
  f::flatten(before, b);
  f::flatten(after, a);
  std::set<std::string> old;
  for (const auto& t : b) old.insert(t.key());
  std::string delta;
  for (const auto& t : a)
    if (!old.count(t.key())) delta += (delta.empty() ? "" : " && ") + to_string(t);
  trace_->push_back(rule + " " + (atom ? print_asrt(atom) : std::string("-")) +
                    " | pc += " + (delta.empty() ? "true" : delta));
}

PureResult ConsProd::cons_pure(Mode m, const Term& pc, const Term& phi) {
  if (phi.is_true()) return {PureStatus::Ok, pc};
  if (!phi.is_false()) {
    Sat e = pol_.solver->entails(pc, phi);
    if (e == Sat::Sat) return {PureStatus::Ok, pc};
    if (m == Mode::UX) {
      Term pc2 = f::conj(pc, phi);
      if (pol_.solver->sat(pc2) == Sat::Sat) return {PureStatus::Ok, pc2};
      return {PureStatus::Cut, pc};
    }
    return {PureStatus::Abort, pc};
  }
  return {m == Mode::UX ? PureStatus::Cut : PureStatus::Abort, pc};
}

std::vector<ConsProd::CellMatch> ConsProd::cons_cell(const Term& a, const SymState& s,
                                                      std::optional<Term>* missing_pc) {
  std::vector<CellMatch> out;
  for (std::size_t j = 0; j < s.heap.size(); ++j) {
    Term pc = f::conj(s.pc, f::eq(a, s.heap[j].addr));
    if (!pol_.feasible(pc)) continue;
    SymState t = s;
    t.heap.erase(t.heap.begin() + static_cast<std::ptrdiff_t>(j));
    t.pc = pc;
    out.push_back({s.heap[j].val, std::move(t)});
  }
  if (missing_pc) {
    Term pc = f::conj(s.pc, not_in_dom(a, s.heap));
    if (pol_.feasible(pc)) *missing_pc = pc;
    else missing_pc->reset();
  }
  return out;
}

std::vector<ConsProd::PredMatch> ConsProd::cons_pred(const std::string& name, const std::vector<Term>& ins,
                                                      const SymState& s, std::optional<Term>* missing_pc) {
  std::vector<PredMatch> out;
  Term all = f::tt();
  bool any = false;
  for (std::size_t j = 0; j < s.preds.size(); ++j) {
    const auto& p = s.preds[j];
    if (p.name != name || p.ins.size() != ins.size()) continue;
    Term eqs = all_eq(ins, p.ins);
    all = f::conj(all, eqs);
    any = true;
    Term pc = f::conj(s.pc, eqs);
    if (!pol_.feasible(pc)) continue;
    SymState t = s;
    t.preds.erase(t.preds.begin() + static_cast<std::ptrdiff_t>(j));
    t.pc = pc;
    out.push_back({p.outs, std::move(t)});
  }
  if (missing_pc) {
    // no instance at all: always missing
    Term pc = any ? f::conj(s.pc, f::neg(all)) : s.pc;
    if (pol_.feasible(pc)) *missing_pc = pc;
    else missing_pc->reset();
  }
  return out;
}

std::vector<ConsumeBranch> ConsProd::consume(Mode m, const Asrt& p, const SymSubst& theta, const SymState& s) {
  if (!is_star_of_simple(p)) throw UnsupportedAssertion("consume: not a star of simple assertions: " + print_asrt(p));
  std::set<std::string> known;
  for (const auto& [k, v] : theta) known.insert(k);
  auto mp = plan_atoms(known, star_atoms(p));
  if (plans_) plans_->push_back(to_string(mp));
  return consume_plan(m, mp, theta, s);
}

std::vector<ConsumeBranch> ConsProd::consume_plan(Mode m, const MatchingPlan& mp, const SymSubst& theta,
                                                  const SymState& s) {
  std::vector<ConsumeBranch> out;
  mac(m, mp, 0, theta, s, out);
  return out;
}

void ConsProd::mac(Mode m, const MatchingPlan& mp, std::size_t i, const SymSubst& th, const SymState& s,
                   std::vector<ConsumeBranch>& out) {
  if (i == mp.size()) {
    out.push_back({false, th, s, Term()});
    return;
  }
  const PlanStep& step = mp[i];
  const Asrt& atom = step.atom;
  auto abort = [&](const Term& pc, Term err) {
    SymState t = s;
    t.pc = pc;
    note("Abort", atom, s.pc, pc);
    out.push_back({true, th, std::move(t), std::move(err)});
  };
  auto learn = [&](const std::map<std::string, Term>& holes) {
    SymSubst t = th;
    for (const auto& l : step.outs) t[l.var] = cse::apply(th, l.expr, holes);
    return t;
  };
  switch (atom->kind) {
    case AsrtKind::Emp:
      mac(m, mp, i + 1, th, s, out);
      return;
    case AsrtKind::False:
    case AsrtKind::Pure: {
      SymSubst t = learn({});
      Term phi = atom->kind == AsrtKind::False ? f::ff() : cse::apply(t, atom->e1);
      auto r = cons_pure(m, s.pc, phi);
      if (r.status == PureStatus::Cut) {
        note("Pure-cut", atom, s.pc, s.pc);
        return;
      }
      if (r.status == PureStatus::Abort) return abort(s.pc, aborts::cons_pure(phi, s.pc));
      note("Pure", atom, s.pc, r.pc);
      SymState s2 = s;
      s2.pc = r.pc;
      mac(m, mp, i + 1, t, s2, out);
      return;
    }
    case AsrtKind::Cell:
    case AsrtKind::Freed: {
      Term a = cse::apply(th, atom->e1);
      bool pos = atom->kind == AsrtKind::Cell;
      auto r = cons_pure(m, s.pc, f::in(a, Type::Nat));
      if (r.status == PureStatus::Cut) return;
      if (r.status == PureStatus::Abort) return abort(s.pc, aborts::cons_pure(f::in(a, Type::Nat), s.pc));
      SymState s1 = s;
      s1.pc = r.pc;
      std::optional<Term> missing;
      auto matches = cons_cell(a, s1, &missing);
      for (auto& cm : matches) {
        if (!pos) {
          if (cm.val) {
            if (m != Mode::UX) {
              SymState t = cm.state;
              note("CellError4", atom, s.pc, t.pc);
              out.push_back({true, th, t, aborts::cons_error(t.pc)});
            }
            continue;
          }
          note("CellNeg", atom, s.pc, cm.state.pc);
          mac(m, mp, i + 1, th, cm.state, out);
          continue;
        }
        if (!cm.val) {
          if (m != Mode::UX) {
            note("CellError3", atom, s.pc, cm.state.pc);
            out.push_back({true, th, cm.state, aborts::cons_error(cm.state.pc)});
          }
          continue;
        }
        SymSubst t = learn({{"O", *cm.val}});
        Term phi = f::eq(cse::apply(t, atom->e2), *cm.val);
        auto pr = cons_pure(m, cm.state.pc, phi);
        if (pr.status == PureStatus::Cut) continue;
        if (pr.status == PureStatus::Abort) {
          note("CellError2", atom, s.pc, cm.state.pc);
          out.push_back({true, th, cm.state, aborts::cons_pure(phi, cm.state.pc)});
          continue;
        }
        SymState s2 = cm.state;
        s2.pc = pr.pc;
        note("CellPos", atom, s.pc, s2.pc);
        mac(m, mp, i + 1, t, s2, out);
      }
      if (missing) {
        SymState t = s1;
        t.pc = *missing;
        note(pos ? "Points2Error1" : "Points2Error2", atom, s.pc, *missing);
        out.push_back({true, th, t,
                       pos ? aborts::missing_cell(a, *missing) : aborts::missing_neg_cell(a, *missing)});
      }
      return;
    }
    case AsrtKind::Pred: {
      std::vector<Term> ins;
      for (const auto& e : atom->ins) ins.push_back(cse::apply(th, e));
      Term typing = f::tt();
      for (const auto& v : ins) typing = f::conj(typing, f::in(v, Type::Val));
      auto r = cons_pure(m, s.pc, typing);
      if (r.status == PureStatus::Cut) return;
      if (r.status == PureStatus::Abort) return abort(s.pc, aborts::cons_error(s.pc));
      SymState s1 = s;
      s1.pc = r.pc;
      std::optional<Term> missing;
      auto matches = cons_pred(atom->name, ins, s1, &missing);
      for (auto& pm : matches) {
        std::map<std::string, Term> holes;
        for (std::size_t k = 0; k < pm.outs.size(); ++k) holes["O" + std::to_string(k + 1)] = pm.outs[k];
        SymSubst t = learn(holes);
        std::vector<Term> mine;
        for (const auto& e : atom->outs) mine.push_back(cse::apply(t, e));
        Term phi = all_eq(mine, pm.outs);
        auto pr = cons_pure(m, pm.state.pc, phi);
        if (pr.status == PureStatus::Cut) continue;
        if (pr.status == PureStatus::Abort) {
          note("PredError", atom, s.pc, pm.state.pc);
          out.push_back({true, th, pm.state, aborts::cons_error(pm.state.pc)});
          continue;
        }
        SymState s2 = pm.state;
        s2.pc = pr.pc;
        note("ConsPred", atom, s.pc, s2.pc);
        mac(m, mp, i + 1, t, s2, out);
      }
      if (missing) {
        SymState t = s1;
        t.pc = *missing;
        note("PredError1", atom, s.pc, *missing);
        out.push_back({true, th, t, aborts::pred(atom->name, ins, *missing)});
      }
      return;
    }
    default:
      throw UnsupportedAssertion("consume: " + print_asrt(atom));
  }
}

SymState ConsProd::prod_cell(const Term& a, const std::optional<Term>& v, const SymState& s, bool* ok) {
  SymState t = s;
  Term c = f::in(a, Type::Nat);
  if (v && !trivially_val(*v, s.pc)) c = f::conj(c, f::in(*v, Type::Val));
  c = f::conj(c, not_in_dom(a, s.heap));
  t.pc = f::conj(s.pc, c);
  t.heap.push_back({a, v});
  *ok = pol_.feasible(t.pc);
  return t;
}

std::vector<SymState> ConsProd::produce(const Asrt& q, const SymSubst& theta, const SymState& s) {
  std::vector<SymState> out;
  prod(q, theta, s, out);
  for (auto& t : out) close_typing(t);
  return out;
}

void ConsProd::prod(const Asrt& q, const SymSubst& th, const SymState& s, std::vector<SymState>& out) {
  auto bound = [&](const Term& t) {
    for (const auto& v : vars_of(t, VarKind::Logic))
      if (!th.count(v)) throw UnsupportedAssertion("produce: unbound logical variable " + v);
    return cse::apply(th, t);
  };
  switch (q->kind) {
    case AsrtKind::False: return;
    case AsrtKind::Emp: out.push_back(s); return;
    case AsrtKind::Impl: throw UnsupportedAssertion("produce: implication " + print_asrt(q));
    case AsrtKind::Pure: {
      Term phi = bound(q->e1);
      SymState t = s;
      t.pc = f::conj(s.pc, phi);
      note("Produce-Pure", q, s.pc, t.pc);
      if (pol_.feasible(t.pc)) out.push_back(std::move(t));
      return;
    }
    case AsrtKind::Cell:
    case AsrtKind::Freed: {
      Term a = bound(q->e1);
      std::optional<Term> v;
      if (q->kind == AsrtKind::Cell) v = bound(q->e2);
      bool ok = false;
      SymState t = prod_cell(a, v, s, &ok);
      note("Produce-Cell", q, s.pc, t.pc);
      if (ok) out.push_back(std::move(t));
      return;
    }
    case AsrtKind::Pred: {
      PredInst p{q->name, {}, {}};
      for (const auto& e : q->ins) p.ins.push_back(bound(e));
      for (const auto& e : q->outs) p.outs.push_back(bound(e));
      SymState t = s;
      t.pc = f::conj(s.pc, f::conj(val_typing(p.ins, s.pc), val_typing(p.outs, s.pc)));
      t.preds.push_back(std::move(p));
      note("Produce-Pred", q, s.pc, t.pc);
      if (pol_.feasible(t.pc)) out.push_back(std::move(t));
      return;
    }
    case AsrtKind::Star: {
      std::vector<SymState> left;
      prod(q->a, th, s, left);
      for (const auto& l : left) prod(q->b, th, l, out);
      return;
    }
    case AsrtKind::Or:
      prod(q->a, th, s, out);
      prod(q->b, th, s, out);
      return;
    case AsrtKind::Exists: {
      SymSubst t = th;
      for (const auto& x : q->vars) t[x] = fresh_.sym(x);
      prod(q->a, t, s, out);
      return;
    }
  }
}

}  // namespace cse
