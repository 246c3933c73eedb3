#include "cse/engine.hpp"

#include "cse/syntax.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace cse {

namespace errterm {

Term expr_eval(const Term& e) { return Term::lit(errval::expr_eval(e)); }
Term type(const Term& e, const Term& v, Type t) {
  return Term::list({Term::str("Type"), Term::str(to_string(e)), v, Term::str(type_name(t))});
}
Term missing_cell(const Term& e, const Term& v) {
  return Term::list({Term::str("MissingCell"), Term::str(to_string(e)), v});
}
Term use_after_free(const Term& e, const Term& v) {
  return Term::list({Term::str("UseAfterFree"), Term::str(to_string(e)), v});
}
Term error(const Term& v) { return Term::list({Term::str("Error"), v}); }
Term param_count(const std::string& f) { return Term::lit(errval::param_count(f)); }
Term no_func(const std::string& f) { return Term::lit(errval::no_func(f)); }
Term assert_fail(const Term& e) { return Term::lit(errval::assert_fail(e)); }

}  // namespace errterm

SymStore callee_store(const FunctionDef& f, const std::vector<Term>& args) {
  SymStore st;
  for (const auto& z : locals_of(f)) st[z] = Term::nil();
  for (std::size_t i = 0; i < f.params.size() && i < args.size(); ++i) st[f.params[i]] = args[i];
  return st;
}

void sort_leaves(std::vector<SymLeaf>& leaves) {
  std::stable_sort(leaves.begin(), leaves.end(), [](const SymLeaf& a, const SymLeaf& b) {
    if (a.outcome != b.outcome) return a.outcome < b.outcome;
    return to_string(a.state) < to_string(b.state);
  });
}

namespace {

Term falsy(const Term& v) {
  if (bool_sorted(v)) return f::neg(v);
  return f::conj(f::in(v, Type::Bool), f::neg(v));
}

Term truthy(const Term& v) {
  if (bool_sorted(v)) return v;
  return f::eq(v, Term::boolean(true));
}

const Term kFoldErr = Term::str("fold/unfold");

std::string pc_delta(const Term& before, const Term& after) {
  std::vector<Term> a, b;
  f::flatten(before, b);
  f::flatten(after, a);
  std::set<std::string> old;
  for (const auto& t : b) old.insert(t.key());
  std::string out;
  for (const auto& t : a)
    if (!old.count(t.key())) out += (out.empty() ? "" : " && ") + to_string(t);
  return out.empty() ? "true" : out;
}

}  // namespace

Engine::Engine(const Program& prog, Solver& solver, EngineConfig cfg, FreshGen& fresh)
    : prog_(prog), cfg_(cfg), pol_{&solver, cfg.mode}, fresh_(fresh), cp_(prog, pol_, fresh) {
  if (cfg_.fuel < 0 || cfg_.unfold_depth < 0 || cfg_.branch_limit == 0)
    throw EngineError("engine bounds must be positive");
  cp_.set_trace(&consume_trace_);
  cp_.set_plan_trace(&plan_trace_);
}

void Engine::mark_incomplete(const std::string& why) {
  incomplete_ = true;
  if (std::find(diags_.begin(), diags_.end(), why) == diags_.end()) diags_.push_back(why);
}

bool Engine::room(const Out&) {
  if (leaves_ < cfg_.branch_limit) return true;
  mark_incomplete("branch limit reached");
  return false;
}

void Engine::emit(Outcome o, SymState s, const std::string& rule, const Term& before, Out& out) {
  if (!room(out)) return;
  ++leaves_;
  if (cfg_.trace) {
    nlohmann::json j;
    j["rule"] = rule;
    j["pc_delta"] = pc_delta(before, s.pc);
    j["outcome"] = outcome_name(o);
    trace_.push_back(j.dump());
  }
  out.push_back({o, std::move(s)});
}

void Engine::fail(const SymState& s, const Term& pc, const Term& err, const std::string& rule, Out& out,
                  Outcome o) {
  SymState t = s;
  t.pc = pc;
  t.store["err"] = err;
  emit(o, std::move(t), rule, s.pc, out);
}

std::vector<SymLeaf> Engine::exec(const SymState& s, const Cmd& c) { return exec(s, c, cfg_.fuel); }

std::vector<SymLeaf> Engine::exec(const SymState& s, const Cmd& c, int fuel) {
  Out out;
  run(s, c, fuel, out);
  return out;
}

IfSplit Engine::split_if(const SymState& s, const Cmd& c) {
  IfSplit r;
  for (auto& b : sym_eval(s.store, s.pc, c->e1, pol_)) {
    if (!b.value) {
      fail(s, b.pc, errterm::expr_eval(c->e1), "If-Err-Val", r.errors);
      continue;
    }
    const Term& v = *b.value;
    Term pt = f::conj(b.pc, truthy(v));
    if (pol_.feasible(pt)) {
      SymState t = s;
      t.pc = pt;
      r.branches.emplace_back(std::move(t), c->c1);
    }
    Term pe = f::conj(b.pc, falsy(v));
    if (pol_.feasible(pe)) {
      SymState t = s;
      t.pc = pe;
      r.branches.emplace_back(std::move(t), c->c2);
    }
    if (!bool_sorted(v)) {
      Term pty = f::conj(b.pc, f::not_in(v, Type::Bool));
      if (pol_.feasible(pty)) fail(s, pty, errterm::type(c->e1, v, Type::Bool), "If-Err-Type", r.errors);
    }
  }
  return r;
}

void Engine::run(const SymState& s, const Cmd& c, int fuel, Out& out) {
  if (!room(out)) return;
  switch (c->kind) {
    case CmdKind::Skip: return emit(Outcome::Ok, s, "Skip", s.pc, out);
    case CmdKind::Assign: {
      for (auto& b : sym_eval(s.store, s.pc, c->e1, pol_)) {
        if (!b.value) {
          fail(s, b.pc, errterm::expr_eval(c->e1), "Assign-Err", out);
          continue;
        }
        SymState t = s;
        t.store[c->x] = *b.value;
        t.pc = b.pc;
        emit(Outcome::Ok, std::move(t), "Assign", s.pc, out);
      }
      return;
    }
    case CmdKind::Nondet:
    case CmdKind::Sym: {
      bool nd = c->kind == CmdKind::Nondet;
      Term r = fresh_.sym(nd ? "r" : "s");
      SymState t = s;
      t.store[c->x] = r;
      t.pc = f::conj(s.pc, f::in(r, nd ? Type::Nat : Type::Val));
      return emit(Outcome::Ok, std::move(t), nd ? "Nondet" : "Sym", s.pc, out);
    }
    case CmdKind::Error: {
      for (auto& b : sym_eval(s.store, s.pc, c->e1, pol_)) {
        if (!b.value) fail(s, b.pc, errterm::expr_eval(c->e1), "Error-Err", out);
        else fail(s, b.pc, errterm::error(*b.value), "Error", out);
      }
      return;
    }
    case CmdKind::Lookup:
    case CmdKind::Mutate:
    case CmdKind::Free: {
      const char* name = c->kind == CmdKind::Lookup ? "Lookup" : c->kind == CmdKind::Mutate ? "Mutate" : "Free";
      auto rule = [&](const char* suffix) { return std::string(name) + suffix; };
      for (auto& b : sym_eval(s.store, s.pc, c->e1, pol_)) {
        if (!b.value) {
          fail(s, b.pc, errterm::expr_eval(c->e1), rule("-Err-Val"), out);
          continue;
        }
        const Term& a = *b.value;
        for (std::size_t j = 0; j < s.heap.size(); ++j) {
          const SymCell& cell = s.heap[j];
          Term pc = f::conj(b.pc, f::eq(cell.addr, a));
          if (!cell.val) {
            Term pu = c->kind == CmdKind::Mutate ? pc : f::conj(b.pc, f::conj(f::in(a, Type::Nat), f::eq(cell.addr, a)));
            if (pol_.feasible(pu)) fail(s, pu, errterm::use_after_free(c->e1, a), rule("-Err-Use-After-Free"), out);
            continue;
          }
          if (!pol_.feasible(pc)) continue;
          if (c->kind == CmdKind::Lookup) {
            SymState t = s;
            t.store[c->x] = *cell.val;
            t.pc = pc;
            emit(Outcome::Ok, std::move(t), "Lookup", s.pc, out);
          } else if (c->kind == CmdKind::Free) {
            SymState t = s;
            t.heap[j].val.reset();
            t.pc = pc;
            emit(Outcome::Ok, std::move(t), "Free", s.pc, out);
          } else {
            for (auto& b2 : sym_eval(s.store, pc, c->e2, pol_)) {
              if (!b2.value) {
                fail(s, b2.pc, errterm::expr_eval(c->e2), "Mutate-Err-Val-2", out);
                continue;
              }
              SymState t = s;
              t.heap[j].val = *b2.value;
              t.pc = b2.pc;
              emit(Outcome::Ok, std::move(t), "Mutate", s.pc, out);
            }
          }
        }
        Term pty = f::conj(b.pc, f::not_in(a, Type::Nat));
        if (!pty.is_false() && pol_.feasible(pty))
          fail(s, pty, errterm::type(c->e1, a, Type::Nat), rule("-Err-Type"), out);
        Term pm = f::conj(b.pc, f::conj(f::in(a, Type::Nat), not_in_dom(a, s.heap)));
        if (pol_.feasible(pm))
          fail(s, pm, errterm::missing_cell(c->e1, a), rule("-Err-Missing"), out, Outcome::Miss);
      }
      return;
    }
    case CmdKind::New: {
      Term l = fresh_.sym("l");
      SymState t = s;
      Term pc = f::conj(s.pc, f::in(l, Type::Nat));
      for (Nat i = 0; i < c->n; ++i) {
        Term li = i == 0 ? l : l + Term::nat(i);
        pc = f::conj(pc, not_in_dom(li, s.heap));
        t.heap.push_back({li, Term::nil()});
      }
      t.pc = pc;
      t.store[c->x] = l;
      return emit(Outcome::Ok, std::move(t), c->n == 0 ? "New-Zero" : "New-Nonzero", s.pc, out);
    }
    case CmdKind::Seq: {
      Out first;
      run(s, c->c1, fuel, first);
      for (auto& r : first) {
        if (r.outcome == Outcome::Ok) {
          --leaves_;
          run(r.state, c->c2, fuel, out);
        } else {
          out.push_back(std::move(r));
        }
      }
      return;
    }
    case CmdKind::If: {
      auto sp = split_if(s, c);
      for (auto& [t, sub] : sp.branches) run(t, sub, fuel, out);
      for (auto& e : sp.errors) out.push_back(std::move(e));
      return;
    }
    case CmdKind::Call: return call(s, c, fuel, out);
    case CmdKind::Fold: return fold(s, c, out);
    case CmdKind::Unfold: return unfold(s, c, out);
    case CmdKind::Assume:
    case CmdKind::Assert: {
      bool as = c->kind == CmdKind::Assert;
      for (auto& b : sym_eval(s.store, s.pc, c->e1, pol_)) {
        if (!b.value) {
          fail(s, b.pc, errterm::expr_eval(c->e1), as ? "Assert-Err" : "Assume-Err", out);
          continue;
        }
        Term pt = f::conj(b.pc, truthy(*b.value));
        if (pol_.feasible(pt)) {
          SymState t = s;
          t.pc = pt;
          emit(Outcome::Ok, std::move(t), as ? "Assert-Ok" : "Assume", s.pc, out);
        }
        if (!as) continue;
        Term pf = f::conj(b.pc, falsy(*b.value));
        if (pol_.feasible(pf)) fail(s, pf, errterm::assert_fail(c->e1), "Assert-Fail", out);
      }
      return;
    }
  }
}

void Engine::call(const SymState& s, const Cmd& c, int fuel, Out& out) {
  const FunctionDef* fn = prog_.find_function(c->fname);
  std::vector<const Spec*> specs;
  if (cfg_.mode != Mode::EX && !cfg_.inline_only) specs = prog_.specs_for(c->fname, cfg_.mode);
  if (!fn && specs.empty()) {
    if (!prog_.specs_for(c->fname, Mode::OX).empty() || !prog_.specs_for(c->fname, Mode::UX).empty()) {
      mark_incomplete("no usable specification for " + c->fname);
      return;
    }
    return fail(s, s.pc, errterm::no_func(c->fname), "Fcall-Err-NoFunc", out);
  }
  std::size_t arity = fn ? fn->params.size() : specs.front()->params.size();
  if (arity != c->args.size()) return fail(s, s.pc, errterm::param_count(c->fname), "Fcall-Err-ParamCount", out);
  if (specs.empty() && cfg_.spec_only) {
    mark_incomplete("no specification for " + c->fname + " and inlining is off");
    return;
  }
  for (auto& b : sym_eval_all(s.store, s.pc, c->args, pol_)) {
    if (b.failed) {
      fail(s, b.pc, errterm::expr_eval(c->args[*b.failed]), "Fcall-Err-Val", out);
      continue;
    }
    if (!specs.empty()) {
      for (const Spec* sp : specs) {
        if (sp->params.size() != c->args.size()) {
          fail(s, b.pc, errterm::param_count(c->fname), "Fcall-Err-ParamCount", out);
          continue;
        }
        call_spec(s, c, *sp, b.values, b.pc, out);
      }
    } else {
      call_inline(s, c, *fn, b.values, b.pc, fuel, out);
    }
  }
}

void Engine::call_spec(const SymState& s, const Cmd& c, const Spec& spec, const std::vector<Term>& args,
                       const Term& pc, Out& out) {
  SymState s1 = s;
  s1.pc = pc;
  SymSubst th;
  for (std::size_t i = 0; i < spec.params.size(); ++i) th[spec.params[i]] = args[i];
  auto [bound, pre] = open_exists(spec.pre);
  (void)bound;
  std::vector<ConsumeBranch> bs;
  try {
    bs = cp_.consume(cfg_.mode, pre, th, s1);
  } catch (const std::exception& e) {
    throw EngineError("spec " + spec.name + ": " + e.what());
  }
  for (auto& br : bs) {
    if (br.abort) {
      SymState t = br.state;
      t.store["err"] = br.err;
      emit(Outcome::Abort, std::move(t), "Fcall-Abort", s.pc, out);
      continue;
    }
    for (int k = 0; k < 2; ++k) {
      const Asrt& q = k == 0 ? spec.ok : spec.err;
      if (!q || q->kind == AsrtKind::False) continue;
      const std::string rv = k == 0 ? "ret" : "err";
      Asrt q2 = asrt_subst(q, VarKind::Prog, {{rv, Term::lvar("%r")}});
      if (auto pv = asrt_pv(q2); !pv.empty())
        throw EngineError("spec " + spec.name + ": post mentions program variable " + *pv.begin());
      SymSubst th2 = br.theta;
      th2["%r"] = fresh_.sym("r");
      std::vector<SymState> ps;
      try {
        ps = cp_.produce(q2, th2, br.state);
      } catch (const std::exception& e) {
        throw EngineError("spec " + spec.name + ": " + e.what());
      }
      for (auto& t : ps) {
        t.store = s.store;
        if (k == 0) t.store[c->x] = th2["%r"];
        else t.store["err"] = th2["%r"];
        emit(k == 0 ? Outcome::Ok : Outcome::Err, std::move(t), k == 0 ? "Fcall" : "Fcall-Qerr", s.pc, out);
      }
    }
  }
}

void Engine::call_inline(const SymState& s, const Cmd& c, const FunctionDef& fn, const std::vector<Term>& args,
                         const Term& pc, int fuel, Out& out) {
  if (fuel <= 0) {
    mark_incomplete("fuel exhausted");
    return;
  }
  SymState callee{callee_store(fn, args), s.heap, s.preds, pc};
  Out inner;
  run(callee, fn.body, fuel - 1, inner);
  for (auto& r : inner) {
    --leaves_;
    SymState t{s.store, std::move(r.state.heap), std::move(r.state.preds), r.state.pc};
    if (r.outcome != Outcome::Ok) {
      t.store["err"] = r.state.store.at("err");
      emit(r.outcome, std::move(t), "Fcall-Inline-Err", s.pc, out);
      continue;
    }
    for (auto& b : sym_eval(r.state.store, t.pc, fn.ret, pol_)) {
      SymState u = t;
      u.pc = b.pc;
      if (b.value) {
        u.store[c->x] = *b.value;
        emit(Outcome::Ok, std::move(u), "Fcall-Inline", s.pc, out);
      } else {
        u.store["err"] = errterm::expr_eval(fn.ret);
        emit(Outcome::Err, std::move(u), "Fcall-Inline-Err-RetVal", s.pc, out);
      }
    }
  }
}

void Engine::fold(const SymState& s, const Cmd& c, Out& out) {
  if (cfg_.mode == Mode::EX) return emit(Outcome::Ok, s, "Fold", s.pc, out);
  const PredDef* def = prog_.find_pred(c->fname);
  if (!def) throw EngineError("unknown predicate " + c->fname);
  if (c->args.size() != def->ins.size()) return fail(s, s.pc, kFoldErr, "Fold-Err-ParamCount", out, Outcome::Abort);
  if (cfg_.mode == Mode::UX && !def->exact)
    throw EngineError("UX fold of " + def->name + ", which is not declared exact");
  for (auto& b : sym_eval_all(s.store, s.pc, c->args, pol_)) {
    if (b.failed) {
      fail(s, b.pc, kFoldErr, "Fold-Err-Eval", out, Outcome::Abort);
      continue;
    }
    SymState s1 = s;
    s1.pc = b.pc;
    SymSubst th;
    for (std::size_t i = 0; i < def->ins.size(); ++i) th[def->ins[i]] = b.values[i];
    bool ok = false, aborted = false;
    for (const auto& d : def->disjuncts) {
      std::vector<ConsumeBranch> bs;
      try {
        bs = cp_.consume(cfg_.mode, d.body, th, s1);
      } catch (const std::exception& e) {
        throw EngineError("fold " + def->name + ": " + e.what());
      }
      for (auto& br : bs) {
        if (br.abort) {
          aborted = true;
          continue;
        }
        PredInst p{def->name, b.values, {}};
        for (const auto& o : def->outs) {
          auto it = br.theta.find(o);
          if (it == br.theta.end()) throw EngineError("fold " + def->name + ": out parameter " + o + " not learnt");
          p.outs.push_back(it->second);
        }
        SymState t = br.state;
        t.preds.push_back(std::move(p));
        close_typing(t);
        ok = true;
        emit(Outcome::Ok, std::move(t), "Fold", s.pc, out);
      }
    }
    if (!ok && aborted) fail(s, s1.pc, kFoldErr, "Fold-Err", out, Outcome::Abort);
  }
}

void Engine::unfold(const SymState& s, const Cmd& c, Out& out) {
  if (cfg_.mode == Mode::EX) return emit(Outcome::Ok, s, "Unfold", s.pc, out);
  const PredDef* def = prog_.find_pred(c->fname);
  if (!def) throw EngineError("unknown predicate " + c->fname);
  if (c->args.size() != def->ins.size())
    return fail(s, s.pc, kFoldErr, "Unfold-Err-ParamCount", out, Outcome::Abort);
  for (auto& b : sym_eval_all(s.store, s.pc, c->args, pol_)) {
    if (b.failed) {
      fail(s, b.pc, kFoldErr, "Unfold-Err-Eval", out, Outcome::Abort);
      continue;
    }
    SymState s1 = s;
    s1.pc = b.pc;
    std::optional<Term> missing;
    for (auto& m : cp_.cons_pred(def->name, b.values, s1, &missing)) {
      for (const auto& d : def->disjuncts) {
        SymSubst th;
        for (std::size_t i = 0; i < def->ins.size(); ++i) th[def->ins[i]] = b.values[i];
        for (std::size_t i = 0; i < def->outs.size(); ++i) th[def->outs[i]] = m.outs[i];
        for (const auto& x : d.exists) th[x] = fresh_.sym(x);
        for (auto& t : cp_.produce(d.body, th, m.state)) emit(Outcome::Ok, std::move(t), "Unfold", s.pc, out);
      }
    }
    if (missing) fail(s, *missing, kFoldErr, "Unfold-Err", out, Outcome::Abort);
  }
}

bool Engine::finalize_ux(const SymState& s) {
  if (s.preds.empty()) return pol_.solver->sat(s.pc) == Sat::Sat;
  return unfold_sat(s, cfg_.unfold_depth);
}

namespace {

struct Unfolder {
  const Program& prog;
  Policy pol;
  FreshGen fresh;
  ConsProd cp;

  Unfolder(const Program& p, Policy pl, std::set<std::string> reserved)
      : prog(p), pol(pl), fresh(std::move(reserved)), cp(p, pl, fresh) {}

  bool go(const SymState& s, const std::vector<int>& depth) {
    if (s.preds.empty()) return pol.solver->sat(s.pc) == Sat::Sat;
    // unfold the instance with the most depth left first
    std::size_t k = 0;
    for (std::size_t i = 1; i < depth.size(); ++i)
      if (depth[i] > depth[k]) k = i;
    const PredInst p = s.preds[k];
    const PredDef* def = prog.find_pred(p.name);
    SymState rest = s;
    rest.preds.erase(rest.preds.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<int> d0 = depth;
    d0.erase(d0.begin() + static_cast<std::ptrdiff_t>(k));
    if (!def) return go(rest, d0);
    if (depth[k] <= 0) return false;
    for (const auto& d : def->disjuncts) {
      SymSubst th;
      for (std::size_t i = 0; i < def->ins.size() && i < p.ins.size(); ++i) th[def->ins[i]] = p.ins[i];
      for (std::size_t i = 0; i < def->outs.size() && i < p.outs.size(); ++i) th[def->outs[i]] = p.outs[i];
      for (const auto& x : d.exists) th[x] = fresh.sym(x);
      for (const auto& t : cp.produce(d.body, th, rest)) {
        std::vector<int> d1 = d0;
        while (d1.size() < t.preds.size()) d1.push_back(depth[k] - 1);
        if (go(t, d1)) return true;
      }
    }
    return false;
  }
};

}  // namespace

bool Engine::unfold_sat(const SymState& s, int depth) {
  Policy pol{pol_.solver, Mode::UX};
  Unfolder u(prog_, pol, sv(s));
  return u.go(s, std::vector<int>(s.preds.size(), depth));
}

}  // namespace cse
