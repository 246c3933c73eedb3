#include "cse/analyses.hpp"

#include "cse/syntax.hpp"

#include <algorithm>
#include <functional>

namespace cse {

std::vector<Value> witness_domain() {
  std::vector<Value> d;
  for (int i = 0; i <= 5; ++i) d.push_back(Value::nat(i));
  d.push_back(Value::nil());
  d.push_back(Value::boolean(true));
  d.push_back(Value::boolean(false));
  d.push_back(Value::str(""));
  d.push_back(Value::list({}));
  return d;
}

std::optional<Model> find_witness(const Term& pc, const std::vector<Value>& domain) {
  auto vs = vars_of(pc, VarKind::Sym);
  std::vector<std::string> vars(vs.begin(), vs.end());
  auto ms = enumerate_models(pc, domain, vars, 1);
  if (ms.empty()) return std::nullopt;
  return ms.front();
}

namespace {

std::string err_tag(const SymState& s, std::string* payload = nullptr) {
  auto it = s.store.find("err");
  if (it == s.store.end()) return "";
  const Term& e = it->second;
  std::vector<Term> xs;
  if (e.op() == Op::List) xs = e.args();
  else if (e.is_lit() && e.value().is_list())
    for (const auto& v : e.value().as_list()) xs.push_back(Term::lit(v));
  if (xs.empty() || !xs[0].is_lit() || !xs[0].value().is_str()) return "";
  if (payload && xs.size() > 1 && xs[1].is_lit() && xs[1].value().is_str()) *payload = xs[1].value().as_str();
  return xs[0].value().as_str();
}

Program without_specs_for(const Program& prog, const std::string& fname) {
  Program p = prog;
  p.specs.erase(std::remove_if(p.specs.begin(), p.specs.end(), [&](const Spec& s) { return s.fname == fname; }),
                p.specs.end());
  return p;
}

Cmd body_with_ret(const FunctionDef& f) { return cmd::seq(f.body, cmd::assign("ret", f.ret)); }

nlohmann::json model_json(const Model& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[k] = v.to_string();
  return j;
}

Dumps dumps_of(Engine& eng) { return {eng.trace(), eng.plan_trace(), eng.consume_trace()}; }

nlohmann::json state_json(const SymState& s) {
  nlohmann::json j;
  nlohmann::json st = nlohmann::json::object();
  for (const auto& [k, v] : s.store) st[k] = to_string(v);
  j["store"] = st;
  j["heap"] = nlohmann::json::array();
  for (const auto& c : s.heap) j["heap"].push_back(to_string(c));
  j["preds"] = nlohmann::json::array();
  for (const auto& p : s.preds) j["preds"].push_back(to_string(p));
  j["pc"] = to_string(s.pc);
  return j;
}

}  // namespace

bool is_emp_asrt(const Asrt& p) {
  if (!p) return true;
  if (p->kind == AsrtKind::Emp) return true;
  if (p->kind == AsrtKind::Pure && p->e1.is_true()) return true;
  if (p->kind == AsrtKind::Star) return is_emp_asrt(p->a) && is_emp_asrt(p->b);
  return false;
}

// ---- symbolic testing

SymState main_start(const Cmd& main) {
  SymState s;
  for (const auto& x : pv(main)) s.store[x] = Term::nil();
  return s;
}

TestReport symtest(const Program& prog, Solver& solver, EngineConfig cfg) {
  if (!prog.main) throw EngineError("program has no main");
  cfg.mode = Mode::EX;
  FreshGen fresh(prog.identifiers());
  Engine eng(prog, solver, cfg, fresh);
  TestReport r;
  auto leaves = eng.exec(main_start(prog.main), prog.main);
  r.leaves = leaves.size();
  for (auto& l : leaves) {
    std::string what;
    if (l.outcome == Outcome::Ok) {
      ++r.ok;
    } else if (l.outcome == Outcome::Miss) {
      ++r.misses;
    } else if (l.outcome == Outcome::Err && err_tag(l.state, &what) == "Assert") {
      r.violations.push_back({what, l.state.pc, find_witness(l.state.pc), l.state});
    } else {
      ++r.errors;
    }
  }
  r.incomplete = eng.incomplete();
  r.diagnostics = eng.diagnostics();
  r.dumps = dumps_of(eng);
  return r;
}

// ---- OX verification

VerifyReport verify_ox(const Program& prog, const FunctionDef& f, const Spec& t, Solver& solver,
                       EngineConfig cfg) {
  VerifyReport r;
  if (t.mode != Mode::OX) throw EngineError("spec " + t.name + " is not an OX spec");
  if (t.params.size() != f.params.size()) throw EngineError("spec " + t.name + ": arity mismatch");
  cfg.mode = Mode::OX;
  Program p = without_specs_for(prog, f.name);
  FreshGen fresh(p.identifiers());
  Engine eng(p, solver, cfg, fresh);

  SymSubst th;
  SymState s0;
  for (const auto& z : locals_of(f)) s0.store[z] = Term::nil();
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    th[t.params[i]] = Term::svar(t.params[i]);
    s0.store[f.params[i]] = Term::svar(t.params[i]);
  }
  for (const auto& x : lv(t.pre)) th[x] = Term::svar(x);
  fresh.reserve(sv(s0));
  std::vector<SymState> starts = eng.consprod().produce(t.pre, th, s0);

  auto failed = [&](const std::string& step, const std::string& why, const SymLeaf& l) {
    r.verified = false;
    r.step = step;
    r.reason = why;
    r.leaf = l;
  };

  for (const auto& s : starts) {
    auto leaves = eng.exec(s, body_with_ret(f));
    r.leaves += leaves.size();
    for (const auto& l : leaves) {
      if (l.outcome == Outcome::Miss || l.outcome == Outcome::Abort) {
        failed("3a", std::string(outcome_name(l.outcome)) + " outcome", l);
        goto done;
      }
      const bool ok = l.outcome == Outcome::Ok;
      const Asrt& q = ok ? t.ok : t.err;
      if (!q || q->kind == AsrtKind::False) {
        failed("3c", std::string("no ") + (ok ? "ok" : "err") + " post-condition", l);
        goto done;
      }
      const std::string rv = ok ? "ret" : "err";
      SymSubst th2 = th;
      th2["%r"] = l.state.store.at(rv);
      Asrt q2 = asrt_subst(q, VarKind::Prog, {{rv, Term::lvar("%r")}});
      bool consumed = false, leftover = false;
      std::string why;
      for (const auto& d : disjuncts(q2)) {
        auto [ys, body] = open_exists(d);
        (void)ys;
        std::vector<ConsumeBranch> bs;
        try {
          bs = eng.consprod().consume(Mode::EX, body, th2, l.state);
        } catch (const std::exception& e) {
          why = e.what();
          continue;
        }
        bool aborts = false, rest = false;
        for (const auto& b : bs) {
          if (b.abort) {
            aborts = true;
            why = "consume aborted: " + to_string(b.err);
          } else if (!b.state.heap.empty() || !b.state.preds.empty()) {
            rest = true;
          }
        }
        if (!aborts && !rest) {
          consumed = true;
          break;
        }
        if (!aborts && rest) leftover = true;
      }
      if (!consumed) {
        if (leftover) failed("3d", "resource left after consuming the post-condition", l);
        else failed("3c", why.empty() ? "post-condition not consumed" : why, l);
        goto done;
      }
    }
  }
  r.verified = true;
done:
  r.incomplete = eng.incomplete();
  r.diagnostics = eng.diagnostics();
  r.dumps = dumps_of(eng);
  if (r.verified && r.incomplete) {
    r.verified = false;
    r.step = "3";
    r.reason = "exploration incomplete";
  }
  return r;
}

// ---- synthesis

std::vector<SymState> function_start(const Program& prog, const FunctionDef& f, const Asrt& p, FreshGen& fresh,
                                     Solver& solver) {
  SymState s;
  for (const auto& z : locals_of(f)) s.store[z] = Term::nil();
  SymSubst th;
  for (const auto& x : f.params) {
    s.store[x] = Term::svar(x);
    th[x] = Term::svar(x);
  }
  fresh.reserve(sv(s));
  if (is_emp_asrt(p)) return {s};
  for (const auto& x : lv(p)) {
    th[x] = Term::svar(x);
    fresh.reserve(x);
  }
  FreshGen local = fresh;
  ConsProd cp(prog, Policy{&solver, Mode::UX}, local);
  return cp.produce(p, th, s);
}

std::vector<Term> simplify_pc(const Term& pc, const std::vector<SymCell>& heap) {
  std::vector<Term> cs;
  f::flatten(pc, cs);
  for (auto& c : cs) {
    if (c.op() != Op::Not) continue;
    const Term& a = c.arg(0);
    switch (a.op()) {
      case Op::Ge: c = Term::binary(Op::Lt, a.arg(0), a.arg(1)); break;
      case Op::Gt: c = Term::binary(Op::Le, a.arg(0), a.arg(1)); break;
      case Op::Lt: c = Term::binary(Op::Ge, a.arg(0), a.arg(1)); break;
      case Op::Le: c = Term::binary(Op::Gt, a.arg(0), a.arg(1)); break;
      default: break;
    }
  }
  std::set<std::string> nats;
  for (const auto& c : heap) nats.insert(c.addr.key());
  for (const auto& c : cs) {
    switch (c.op()) {
      case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
        nats.insert(c.arg(0).key());
        nats.insert(c.arg(1).key());
        break;
      default: break;
    }
  }
  std::vector<Term> out;
  std::set<std::string> seen;
  for (const auto& c : cs) {
    if (c.is_true()) continue;
    if (c.op() == Op::Eq && c.arg(0) == c.arg(1) && (is_total(c.arg(0)) || nats.count(c.arg(0).key()))) continue;
    if (c.op() == Op::IsType) {
      if (c.type() == Type::Val && is_total(c.arg(0))) continue;
      if (c.type() == Type::Nat && nats.count(c.arg(0).key())) continue;
    }
    if (seen.insert(c.key()).second) out.push_back(c);
  }
  return out;
}

namespace {

Asrt anti_asrt(const AntiFrame& b) {
  std::vector<Asrt> parts;
  for (const auto& c : b.heap) {
    if (c.val) parts.push_back(as::cell(sym_to_logic(c.addr), sym_to_logic(*c.val)));
    else parts.push_back(as::freed(sym_to_logic(c.addr)));
  }
  for (const auto& p : b.preds) {
    std::vector<Term> ins, outs;
    for (const auto& t : p.ins) ins.push_back(sym_to_logic(t));
    for (const auto& t : p.outs) outs.push_back(sym_to_logic(t));
    parts.push_back(as::pred(p.name, ins, outs));
  }
  return as::star(parts);
}

// v == t in the pc, with v only in the store and pc: substitute it away
void inline_store_eqs(SymState& q, std::vector<Term>& pc, const std::set<std::string>& pinned) {
  for (bool again = true; again;) {
    again = false;
    std::set<std::string> held = pinned;
    for (const auto& c : q.heap) {
      sym_vars(c.addr, held);
      if (c.val) sym_vars(*c.val, held);
    }
    for (const auto& p : q.preds) {
      for (const auto& t : p.ins) sym_vars(t, held);
      for (const auto& t : p.outs) sym_vars(t, held);
    }
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const Term& c = pc[i];
      if (c.op() != Op::Eq) continue;
      for (int side = 0; side < 2; ++side) {
        const Term& v = c.arg(side);
        const Term& t = c.arg(1 - side);
        if (!v.is_var() || v.var_kind() != VarKind::Sym || held.count(v.name())) continue;
        if (vars_of(t, VarKind::Sym).count(v.name())) continue;
        std::map<std::string, Term> m{{v.name(), t}};
        pc.erase(pc.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto& d : pc) d = substitute(d, VarKind::Sym, m);
        for (auto& [k, e] : q.store) e = substitute(e, VarKind::Sym, m);
        again = true;
        break;
      }
      if (again) break;
    }
  }
}

Asrt star2(const Asrt& a, const Asrt& b) {
  if (is_emp_asrt(a)) return b;
  if (is_emp_asrt(b)) return a;
  return as::star(a, b);
}

std::vector<SynthSpec> coalesce_specs(const std::vector<SynthSpec>& in) {
  std::vector<SynthSpec> out;
  for (const auto& s : in) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SynthSpec& o) { return print_asrt(o.spec.pre) == print_asrt(s.spec.pre); });
    if (it == out.end()) {
      out.push_back(s);
      continue;
    }
    auto join = [](const Asrt& a, const Asrt& b) {
      if (a->kind == AsrtKind::False) return b;
      if (b->kind == AsrtKind::False) return a;
      return as::disj(a, b);
    };
    it->spec.ok = join(it->spec.ok, s.spec.ok);
    it->spec.err = join(it->spec.err, s.spec.err);
    it->manifest_candidate = it->manifest_candidate && s.manifest_candidate;
  }
  return out;
}

}  // namespace

SynthReport synthesise(const Program& prog, const FunctionDef& f, const Asrt& p, Solver& solver, EngineConfig cfg,
                       bool coalesce) {
  SynthReport r;
  r.function = f.name;
  cfg.mode = Mode::UX;
  Program pg = without_specs_for(prog, f.name);
  FreshGen fresh(pg.identifiers());
  Engine eng(pg, solver, cfg, fresh);
  Biab bi(eng);
  Asrt pre0 = p ? p : as::emp();
  std::vector<SynthSpec> specs;
  for (const auto& s0 : function_start(pg, f, pre0, fresh, solver)) {
    for (auto& l : bi.exec(s0, body_with_ret(f))) {
      if (!eng.finalize_ux(l.state)) {
        ++r.dropped;
        continue;
      }
      const bool ok = l.outcome == Outcome::Ok;
      const std::string rv = ok ? "ret" : "err";
      SymState q;
      q.store[rv] = l.state.store.at(rv);
      q.heap = l.state.heap;
      q.preds = l.state.preds;
      auto pcs = simplify_pc(l.state.pc, l.state.heap);
      auto pinned = sv(l.anti);
      for (const auto& x : f.params) pinned.insert(x);
      for (const auto& x : lv(pre0)) pinned.insert(x);
      inline_store_eqs(q, pcs, pinned);
      q.pc = f::conj(pcs);
      Asrt anti = anti_asrt(l.anti);
      Asrt pre = star2(pre0, anti);
      Asrt post = to_asrt(q, std::vector<std::string>{rv});
      auto known = lv(pre);
      known.insert(f.params.begin(), f.params.end());
      std::vector<std::string> ys;
      for (const auto& x : lv(post))
        if (!known.count(x)) ys.push_back(x);
      if (!ys.empty()) post = as::exists(ys, post);
      SynthSpec ss;
      ss.outcome = l.outcome;
      ss.anti = anti;
      ss.manifest_candidate = !ok && is_emp_asrt(pre0) && is_emp_asrt(anti);
      ss.spec.mode = Mode::UX;
      ss.spec.fname = f.name;
      ss.spec.params = f.params;
      ss.spec.pre = pre;
      ss.spec.ok = ok ? post : as::ff();
      ss.spec.err = ok ? as::ff() : post;
      specs.push_back(std::move(ss));
    }
  }
  if (coalesce) specs = coalesce_specs(specs);
  for (std::size_t i = 0; i < specs.size(); ++i)
    specs[i].spec.name = f.name + "_ux" + std::to_string(i + 1);
  r.specs = std::move(specs);
  r.fixes = bi.fixes();
  r.cuts = bi.cuts();
  r.incomplete = eng.incomplete();
  r.diagnostics = eng.diagnostics();
  r.dumps = dumps_of(eng);
  for (const auto& d : bi.diagnostics())
    if (std::find(r.diagnostics.begin(), r.diagnostics.end(), d) == r.diagnostics.end()) r.diagnostics.push_back(d);
  return r;
}

namespace {

void callees(const Cmd& c, std::vector<std::string>& out) {
  if (!c) return;
  if (c->kind == CmdKind::Call && std::find(out.begin(), out.end(), c->fname) == out.end()) out.push_back(c->fname);
  callees(c->c1, out);
  callees(c->c2, out);
}

}  // namespace

std::vector<std::string> bottom_up_order(const Program& prog) {
  std::vector<std::string> order;
  std::set<std::string> done, active;
  std::function<void(const FunctionDef&)> visit = [&](const FunctionDef& f) {
    if (done.count(f.name) || active.count(f.name)) return;
    active.insert(f.name);
    std::vector<std::string> cs;
    callees(f.body, cs);
    for (const auto& g : cs)
      if (const FunctionDef* d = prog.find_function(g)) visit(*d);
    active.erase(f.name);
    done.insert(f.name);
    order.push_back(f.name);
  };
  for (const auto& f : prog.functions) visit(f);
  return order;
}

std::vector<SynthReport> synthesise_all(const Program& prog, Solver& solver, EngineConfig cfg, bool coalesce,
                                        const std::vector<std::string>& only) {
  std::set<std::string> need;
  if (!only.empty()) {
    std::function<void(const std::string&)> add = [&](const std::string& n) {
      if (!need.insert(n).second) return;
      if (const FunctionDef* d = prog.find_function(n)) {
        std::vector<std::string> cs;
        callees(d->body, cs);
        for (const auto& g : cs) add(g);
      }
    };
    for (const auto& n : only) add(n);
  }
  Program work = prog;
  std::vector<SynthReport> out;
  for (const auto& name : bottom_up_order(prog)) {
    if (!only.empty() && !need.count(name)) continue;
    const FunctionDef* f = work.find_function(name);
    auto rep = synthesise(work, *f, as::emp(), solver, cfg, coalesce);
    // user-written specs keep priority at call sites
    if (work.specs_for(name, Mode::UX).empty())
      for (const auto& s : rep.specs) work.specs.push_back(s.spec);
    if (only.empty() || std::find(only.begin(), only.end(), name) != only.end()) out.push_back(std::move(rep));
  }
  return out;
}

// ---- alpha equivalence

namespace {

struct Renaming {
  std::map<std::string, std::string> fwd, bwd;

  bool bind(const std::string& a, const std::string& b) {
    auto i = fwd.find(a);
    auto j = bwd.find(b);
    if (i != fwd.end() || j != bwd.end()) return i != fwd.end() && j != bwd.end() && i->second == b;
    fwd[a] = b;
    bwd[b] = a;
    return true;
  }
};

bool match_term(const Term& a, const Term& b, Renaming& r) {
  if (!has_vars(a) && !has_vars(b)) {
    // a list literal and a list of literals print alike
    EmptyEnv env;
    auto x = eval(a, env), y = eval(b, env);
    if (x && y) return *x == *y;
  }
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Lit: return a.value() == b.value();
    case Op::Var:
      if (a.var_kind() != b.var_kind()) return false;
      if (a.var_kind() == VarKind::Logic) return r.bind(a.name(), b.name());
      return a.name() == b.name();
    default: break;
  }
  if (a.op() == Op::IsType && a.type() != b.type()) return false;
  if (a.args().size() != b.args().size()) return false;
  if (a.op() == Op::Eq) {
    Renaming save = r;
    if (match_term(a.arg(0), b.arg(0), r) && match_term(a.arg(1), b.arg(1), r)) return true;
    r = save;
    if (match_term(a.arg(0), b.arg(1), r) && match_term(a.arg(1), b.arg(0), r)) return true;
    r = save;
    return false;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!match_term(a.arg(i), b.arg(i), r)) return false;
  return true;
}

bool match_asrt(const Asrt& a, const Asrt& b, Renaming& r);

void atoms_of(const Asrt& p, std::vector<Asrt>& out) {
  auto [ys, body] = open_exists(p);
  (void)ys;
  if (body->kind == AsrtKind::Star || body->kind == AsrtKind::Emp ||
      (body->kind == AsrtKind::Pure && body->e1.op() == Op::And)) {
    for (const auto& x : star_atoms(body)) {
      if (x->kind == AsrtKind::Pure && x->e1.is_true()) continue;
      out.push_back(x);
    }
    return;
  }
  if (!(body->kind == AsrtKind::Pure && body->e1.is_true())) out.push_back(body);
}

bool match_atom(const Asrt& a, const Asrt& b, Renaming& r) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AsrtKind::Pure:
    case AsrtKind::Freed:
      return match_term(a->e1, b->e1, r);
    case AsrtKind::Cell:
      return match_term(a->e1, b->e1, r) && match_term(a->e2, b->e2, r);
    case AsrtKind::Pred: {
      if (a->name != b->name || a->ins.size() != b->ins.size() || a->outs.size() != b->outs.size()) return false;
      for (std::size_t i = 0; i < a->ins.size(); ++i)
        if (!match_term(a->ins[i], b->ins[i], r)) return false;
      for (std::size_t i = 0; i < a->outs.size(); ++i)
        if (!match_term(a->outs[i], b->outs[i], r)) return false;
      return true;
    }
    case AsrtKind::False:
    case AsrtKind::Emp:
      return true;
    case AsrtKind::Or:
    case AsrtKind::Impl:
      return match_asrt(a->a, b->a, r) && match_asrt(a->b, b->b, r);
    default:
      return match_asrt(a, b, r);
  }
}

bool match_lists(const std::vector<Asrt>& as, const std::vector<Asrt>& bs, std::size_t i, std::vector<bool>& used,
                 Renaming& r) {
  if (i == as.size()) return true;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (used[j]) continue;
    Renaming save = r;
    if (match_atom(as[i], bs[j], r)) {
      used[j] = true;
      if (match_lists(as, bs, i + 1, used, r)) return true;
      used[j] = false;
    }
    r = save;
  }
  return false;
}

bool match_asrt(const Asrt& a, const Asrt& b, Renaming& r) {
  std::vector<Asrt> xs, ys;
  atoms_of(a, xs);
  atoms_of(b, ys);
  if (xs.size() != ys.size()) return false;
  std::vector<bool> used(ys.size(), false);
  return match_lists(xs, ys, 0, used, r);
}

bool match_pairs(const std::vector<std::pair<Asrt, Asrt>>& ps, std::size_t i, Renaming& r) {
  if (i == ps.size()) return true;
  std::vector<Asrt> xs, ys;
  atoms_of(ps[i].first, xs);
  atoms_of(ps[i].second, ys);
  if (xs.size() != ys.size()) return false;
  // try every matching of this pair before moving on
  std::vector<bool> used(ys.size(), false);
  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == xs.size()) return match_pairs(ps, i + 1, r);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j]) continue;
      Renaming save = r;
      if (match_atom(xs[k], ys[j], r)) {
        used[j] = true;
        if (go(k + 1)) return true;
        used[j] = false;
      }
      r = save;
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool alpha_equivalent(const std::vector<std::pair<Asrt, Asrt>>& pairs) {
  Renaming r;
  return match_pairs(pairs, 0, r);
}

bool alpha_equivalent(const Asrt& a, const Asrt& b) { return alpha_equivalent({{a, b}}); }

// ---- JSON

nlohmann::json test_json(const TestReport& r) {
  nlohmann::json j;
  j["analysis"] = "test";
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    nlohmann::json x;
    x["assertion"] = v.assertion;
    x["pc"] = to_string(v.pc);
    x["witness"] = v.witness ? model_json(*v.witness) : nlohmann::json(nullptr);
    j["violations"].push_back(x);
  }
  j["leaves"] = r.leaves;
  j["ok"] = r.ok;
  j["errors"] = r.errors;
  j["misses"] = r.misses;
  j["incomplete"] = r.incomplete;
  j["diagnostics"] = r.diagnostics;
  return j;
}

nlohmann::json verify_json(const VerifyReport& r, const Spec& t) {
  nlohmann::json j;
  j["analysis"] = "verify";
  j["spec"] = t.name;
  j["function"] = t.fname;
  j["verified"] = r.verified;
  j["step"] = r.step.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.step);
  j["reason"] = r.reason.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.reason);
  if (r.leaf) j["leaf"] = {{"outcome", outcome_name(r.leaf->outcome)}, {"state", state_json(r.leaf->state)}};
  else j["leaf"] = nullptr;
  j["leaves"] = r.leaves;
  j["incomplete"] = r.incomplete;
  j["diagnostics"] = r.diagnostics;
  return j;
}

nlohmann::json synth_json(const std::vector<SynthReport>& rs) {
  nlohmann::json j;
  j["analysis"] = "synth";
  j["functions"] = nlohmann::json::array();
  for (const auto& r : rs) {
    nlohmann::json fj;
    fj["function"] = r.function;
    fj["specs"] = nlohmann::json::array();
    for (const auto& s : r.specs) {
      nlohmann::json sj = spec_json(s.spec);
      sj["outcome"] = outcome_name(s.outcome);
      sj["anti_frame"] = print_asrt(s.anti);
      sj["manifest_candidate"] = s.manifest_candidate;
      fj["specs"].push_back(sj);
    }
    fj["fixes"] = r.fixes;
    fj["cuts"] = r.cuts;
    fj["dropped"] = r.dropped;
    fj["incomplete"] = r.incomplete;
    fj["diagnostics"] = r.diagnostics;
    j["functions"].push_back(fj);
  }
  return j;
}

}  // namespace cse
