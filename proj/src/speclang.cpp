#include "cse/speclang.hpp"

#include "cse/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace cse {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Existential binders are renamed apart with a character the parser never
// produces in identifiers.
class Renamer {
 public:
  std::string fresh(const std::string& x) { return "%" + std::to_string(++n_) + x; }

 private:
  int n_ = 0;
};

bool is_renamed(const std::string& x) { return !x.empty() && x[0] == '%'; }

struct Alt {
  std::vector<std::string> ex;
  std::vector<Asrt> atoms;
};

void split_pure(const Asrt& a, std::vector<Asrt>& out) {
  if (a->kind == AsrtKind::Pure) {
    std::vector<Term> cs;
    f::flatten(a->e1, cs);
    for (auto& c : cs) out.push_back(as::pure(c));
    return;
  }
  out.push_back(a);
}

// Disjunctive normal form over * with renamed existentials; false on an
// implication.
bool alternatives(const Asrt& p, Renamer& rn, std::vector<Alt>& out) {
  switch (p->kind) {
    case AsrtKind::False: return true;
    case AsrtKind::Emp: out.push_back({}); return true;
    case AsrtKind::Pure:
    case AsrtKind::Cell:
    case AsrtKind::Freed:
    case AsrtKind::Pred: {
      Alt a;
      split_pure(p, a.atoms);
      out.push_back(std::move(a));
      return true;
    }
    case AsrtKind::Impl: return false;
    case AsrtKind::Or: return alternatives(p->a, rn, out) && alternatives(p->b, rn, out);
    case AsrtKind::Exists: {
      std::map<std::string, Term> m;
      std::vector<std::string> names;
      for (const auto& v : p->vars) {
        auto n = rn.fresh(v);
        m[v] = Term::lvar(n);
        names.push_back(n);
      }
      std::vector<Alt> inner;
      if (!alternatives(asrt_subst(p->a, VarKind::Logic, m), rn, inner)) return false;
      for (auto& a : inner) {
        a.ex.insert(a.ex.begin(), names.begin(), names.end());
        out.push_back(std::move(a));
      }
      return true;
    }
    case AsrtKind::Star: {
      std::vector<Alt> l, r;
      if (!alternatives(p->a, rn, l) || !alternatives(p->b, rn, r)) return false;
      for (const auto& x : l)
        for (const auto& y : r) {
          Alt z = x;
          z.ex.insert(z.ex.end(), y.ex.begin(), y.ex.end());
          z.atoms.insert(z.atoms.end(), y.atoms.begin(), y.atoms.end());
          out.push_back(std::move(z));
        }
      return true;
    }
  }
  return false;
}

bool ready(const Term& t, const Subst& th) {
  std::set<std::string> vs;
  collect_vars(t, VarKind::Logic, vs);
  for (const auto& v : vs)
    if (!th.count(v)) return false;
  return true;
}

std::string first_unbound(const Term& t, const Subst& th) {
  if (t.op() == Op::Var) return t.var_kind() == VarKind::Logic && !th.count(t.name()) ? t.name() : "";
  for (const auto& a : t.args()) {
    auto r = first_unbound(a, th);
    if (!r.empty()) return r;
  }
  return "";
}

std::string first_unbound(const std::vector<Asrt>& atoms, const Subst& th) {
  for (const auto& a : atoms) {
    std::vector<Term> ts;
    if (a->e1) ts.push_back(a->e1);
    if (a->e2) ts.push_back(a->e2);
    ts.insert(ts.end(), a->ins.begin(), a->ins.end());
    ts.insert(ts.end(), a->outs.begin(), a->outs.end());
    for (const auto& t : ts) {
      auto r = first_unbound(t, th);
      if (!r.empty()) return r;
    }
  }
  return "";
}

enum class M { Fail, Ok, NotReady };

// Binds unbound logical variables of t so that t evaluates to v.
M match_term(const Term& t, const Value& v, Subst& th, const CStore& store) {
  if (ready(t, th)) {
    auto x = eval(t, StoreSubstEnv(store, th));
    return x && *x == v ? M::Ok : M::Fail;
  }
  switch (t.op()) {
    case Op::Var:
      th[t.name()] = v;
      return M::Ok;
    case Op::Cons:
    case Op::List: {
      if (!v.is_list()) return M::Fail;
      const auto& xs = v.as_list();
      std::vector<std::pair<Term, Value>> goals;
      if (t.op() == Op::Cons) {
        if (xs.empty()) return M::Fail;
        goals.push_back({t.arg(0), xs.front()});
        goals.push_back({t.arg(1), Value::list(ValueList(xs.begin() + 1, xs.end()))});
      } else {
        if (xs.size() != t.args().size()) return M::Fail;
        for (std::size_t i = 0; i < xs.size(); ++i) goals.push_back({t.arg(i), xs[i]});
      }
      Subst save = th;
      bool progress = true;
      while (!goals.empty() && progress) {
        progress = false;
        for (auto it = goals.begin(); it != goals.end();) {
          M r = match_term(it->first, it->second, th, store);
          if (r == M::Fail) {
            th = save;
            return M::Fail;
          }
          if (r == M::Ok) {
            it = goals.erase(it);
            progress = true;
          } else {
            ++it;
          }
        }
      }
      if (!goals.empty()) {
        th = save;
        return M::NotReady;
      }
      return M::Ok;
    }
    case Op::Add:
    case Op::Sub: {
      if (!v.is_nat()) return M::Fail;
      StoreSubstEnv env(store, th);
      for (int side = 0; side < 2; ++side) {
        const Term& k = t.arg(side);
        if (!ready(k, th)) continue;
        auto kv = eval(k, env);
        if (!kv || !kv->is_nat()) return M::Fail;
        const Nat& n = kv->as_nat();
        const Term& other = t.arg(1 - side);
        if (t.op() == Op::Add) {
          if (n > v.as_nat()) return M::Fail;
          return match_term(other, Value::nat(v.as_nat() - n), th, store);
        }
        if (side == 1) return match_term(other, Value::nat(v.as_nat() + n), th, store);
        if (v.as_nat() > n) return M::Fail;
        return match_term(other, Value::nat(n - v.as_nat()), th, store);
      }
      return M::NotReady;
    }
    default: return M::NotReady;
  }
}

std::vector<Asrt> split_atoms(const Asrt& body) {
  std::vector<Asrt> out;
  for (const auto& a : star_atoms(body)) split_pure(a, out);
  return out;
}

std::vector<Asrt> without(const std::vector<Asrt>& xs, std::size_t i) {
  std::vector<Asrt> r = xs;
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
  return r;
}

using OutVals = std::vector<std::optional<Value>>;

// Consumes atoms from a concrete heap, leaving a frame.
class Checker {
 public:
  using K = std::function<bool(const Subst&, const CHeap&)>;

  Checker(const Program& prog, const CStore& store, const std::vector<Value>& cands)
      : prog_(prog), store_(store), cands_(cands) {}

  bool depth_hit = false;
  bool guessed = false;

  bool run(const std::vector<Asrt>& atoms, const Subst& th, const CHeap& h, int depth, const K& k) {
    StoreSubstEnv env(store_, th);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Asrt& a = atoms[i];
      switch (a->kind) {
        case AsrtKind::Pure: {
          if (ready(a->e1, th)) {
            if (!holds(a->e1, env)) return false;
            return run(without(atoms, i), th, h, depth, k);
          }
          if (a->e1.op() != Op::Eq) break;
          for (int side = 0; side < 2; ++side) {
            const Term& known = a->e1.arg(side);
            if (!ready(known, th)) continue;
            auto v = eval(known, env);
            if (!v) return false;
            Subst t2 = th;
            M m = match_term(a->e1.arg(1 - side), *v, t2, store_);
            if (m == M::Fail) return false;
            if (m == M::Ok) return run(without(atoms, i), t2, h, depth, k);
          }
          break;
        }
        case AsrtKind::Cell: {
          if (!ready(a->e1, th)) break;
          auto av = eval(a->e1, env);
          if (!av || !av->is_nat()) return false;
          auto it = h.find(av->as_nat());
          if (it == h.end() || !it->second) return false;
          Subst t2 = th;
          M m = match_term(a->e2, *it->second, t2, store_);
          if (m == M::Fail) return false;
          if (m == M::NotReady) break;
          CHeap h2 = h;
          h2.erase(av->as_nat());
          return run(without(atoms, i), t2, h2, depth, k);
        }
        case AsrtKind::Freed: {
          if (!ready(a->e1, th)) break;
          auto av = eval(a->e1, env);
          if (!av || !av->is_nat()) return false;
          auto it = h.find(av->as_nat());
          if (it == h.end() || it->second) return false;
          CHeap h2 = h;
          h2.erase(av->as_nat());
          return run(without(atoms, i), th, h2, depth, k);
        }
        case AsrtKind::Pred: {
          bool ok = true;
          for (const auto& e : a->ins) ok = ok && ready(e, th);
          if (!ok) break;
          std::vector<Value> ins;
          for (const auto& e : a->ins) {
            auto v = eval(e, env);
            if (!v) return false;
            ins.push_back(*v);
          }
          OutVals known(a->outs.size());
          for (std::size_t j = 0; j < a->outs.size(); ++j) {
            if (!ready(a->outs[j], th)) continue;
            auto v = eval(a->outs[j], env);
            if (!v) return false;
            known[j] = *v;
          }
          auto rest = without(atoms, i);
          return pred(a->name, ins, known, h, depth, [&](const OutVals& outs, const CHeap& hr) {
            Subst t2 = th;
            for (std::size_t j = 0; j < outs.size() && j < a->outs.size(); ++j) {
              if (!outs[j]) continue;
              M m = match_term(a->outs[j], *outs[j], t2, store_);
              if (m == M::Fail) return false;
              if (m == M::NotReady) {
                guessed = true;
                return false;
              }
            }
            return run(rest, t2, hr, depth, k);
          });
        }
        default: break;
      }
    }
    if (atoms.empty()) return k(th, h);
    auto v = first_unbound(atoms, th);
    if (v.empty()) return false;
    guessed = true;
    for (const auto& c : cands_) {
      Subst t2 = th;
      t2[v] = c;
      if (run(atoms, t2, h, depth, k)) return true;
    }
    return false;
  }

  bool pred(const std::string& name, const std::vector<Value>& ins, const OutVals& known,
            const CHeap& h, int depth,
            const std::function<bool(const OutVals&, const CHeap&)>& k) {
    const PredDef* def = prog_.find_pred(name);
    if (!def || def->ins.size() != ins.size() || def->outs.size() != known.size()) return false;
    if (depth <= 0) {
      depth_hit = true;
      return false;
    }
    for (const auto& d : def->disjuncts) {
      Subst tp;
      for (std::size_t i = 0; i < ins.size(); ++i) tp[def->ins[i]] = ins[i];
      for (std::size_t j = 0; j < known.size(); ++j)
        if (known[j]) tp[def->outs[j]] = *known[j];
      std::map<std::string, Term> ren;
      for (const auto& x : d.exists) ren[x] = Term::lvar(rn_.fresh(x));
      auto atoms = split_atoms(asrt_subst(d.body, VarKind::Logic, ren));
      bool stop = run(atoms, tp, h, depth - 1, [&](const Subst& t2, const CHeap& hr) {
        OutVals outs;
        for (const auto& o : def->outs) {
          auto it = t2.find(o);
          outs.push_back(it == t2.end() ? std::nullopt : std::optional<Value>(it->second));
        }
        return k(outs, hr);
      });
      if (stop) return true;
    }
    return false;
  }

 private:
  const Program& prog_;
  const CStore& store_;
  const std::vector<Value>& cands_;
  Renamer rn_;
};

// Builds heaps satisfying atoms.
class Generator {
 public:
  using K = std::function<bool(const Subst&, const CHeap&)>;

  Generator(const Program& prog, const CStore& store, const std::vector<Value>& domain)
      : prog_(prog), store_(store), domain_(domain) {}

  bool run(const std::vector<Asrt>& atoms, const Subst& th, const CHeap& h, int depth, const K& k) {
    StoreSubstEnv env(store_, th);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Asrt& a = atoms[i];
      switch (a->kind) {
        case AsrtKind::Pure: {
          if (ready(a->e1, th)) {
            if (!holds(a->e1, env)) return false;
            return run(without(atoms, i), th, h, depth, k);
          }
          if (a->e1.op() != Op::Eq) break;
          for (int side = 0; side < 2; ++side) {
            const Term& known = a->e1.arg(side);
            if (!ready(known, th)) continue;
            auto v = eval(known, env);
            if (!v) return false;
            Subst t2 = th;
            M m = match_term(a->e1.arg(1 - side), *v, t2, store_);
            if (m == M::Fail) return false;
            if (m == M::Ok) return run(without(atoms, i), t2, h, depth, k);
          }
          break;
        }
        case AsrtKind::Cell:
        case AsrtKind::Freed: {
          if (!ready(a->e1, th)) break;
          if (a->kind == AsrtKind::Cell && !ready(a->e2, th)) break;
          auto av = eval(a->e1, env);
          if (!av || !av->is_nat() || h.count(av->as_nat())) return false;
          std::optional<Value> cv;
          if (a->kind == AsrtKind::Cell) {
            cv = eval(a->e2, env);
            if (!cv) return false;
          }
          CHeap h2 = h;
          h2[av->as_nat()] = cv;
          return run(without(atoms, i), th, h2, depth, k);
        }
        case AsrtKind::Pred: {
          bool ok = true;
          for (const auto& e : a->ins) ok = ok && ready(e, th);
          if (!ok) break;
          std::vector<Value> ins;
          for (const auto& e : a->ins) {
            auto v = eval(e, env);
            if (!v) return false;
            ins.push_back(*v);
          }
          OutVals known(a->outs.size());
          for (std::size_t j = 0; j < a->outs.size(); ++j) {
            if (!ready(a->outs[j], th)) continue;
            auto v = eval(a->outs[j], env);
            if (!v) return false;
            known[j] = *v;
          }
          auto rest = without(atoms, i);
          return pred(a->name, ins, known, h, depth, [&](const OutVals& outs, const CHeap& hr) {
            Subst t2 = th;
            for (std::size_t j = 0; j < outs.size() && j < a->outs.size(); ++j) {
              if (!outs[j]) continue;
              if (match_term(a->outs[j], *outs[j], t2, store_) != M::Ok) return false;
            }
            return run(rest, t2, hr, depth, k);
          });
        }
        default: break;
      }
    }
    if (atoms.empty()) return k(th, h);
    auto v = first_unbound(atoms, th);
    if (v.empty()) return false;
    for (const auto& c : domain_) {
      Subst t2 = th;
      t2[v] = c;
      if (run(atoms, t2, h, depth, k)) return true;
    }
    return false;
  }

  bool depth_hit = false;

 private:
  bool pred(const std::string& name, const std::vector<Value>& ins, const OutVals& known,
            const CHeap& h, int depth,
            const std::function<bool(const OutVals&, const CHeap&)>& k) {
    const PredDef* def = prog_.find_pred(name);
    if (!def || def->ins.size() != ins.size() || def->outs.size() != known.size()) return false;
    if (depth <= 0) {
      depth_hit = true;
      return false;
    }
    for (const auto& d : def->disjuncts) {
      Subst tp;
      for (std::size_t i = 0; i < ins.size(); ++i) tp[def->ins[i]] = ins[i];
      for (std::size_t j = 0; j < known.size(); ++j)
        if (known[j]) tp[def->outs[j]] = *known[j];
      std::map<std::string, Term> ren;
      for (const auto& x : d.exists) ren[x] = Term::lvar(rn_.fresh(x));
      auto atoms = split_atoms(asrt_subst(d.body, VarKind::Logic, ren));
      bool stop = run(atoms, tp, h, depth - 1, [&](const Subst& t2, const CHeap& hr) {
        OutVals outs;
        for (const auto& o : def->outs) {
          auto it = t2.find(o);
          outs.push_back(it == t2.end() ? std::nullopt : std::optional<Value>(it->second));
        }
        return k(outs, hr);
      });
      if (stop) return true;
    }
    return false;
  }

  const Program& prog_;
  const CStore& store_;
  const std::vector<Value>& domain_;
  Renamer rn_;
};

void term_lits(const Term& t, std::set<Value>& out) {
  if (t.op() == Op::Lit) {
    out.insert(t.value());
    return;
  }
  for (const auto& a : t.args()) term_lits(a, out);
}

void asrt_lits(const Asrt& p, std::set<Value>& out) {
  asrt_map(p, [&](const Term& t) {
    term_lits(t, out);
    return t;
  });
}

void close_value(const Value& v, std::set<Value>& out, int depth = 3) {
  if (!out.insert(v).second || depth == 0) return;
  if (v.is_nat()) {
    out.insert(Value::nat(v.as_nat() + 1));
    if (v.as_nat() > 0) out.insert(Value::nat(v.as_nat() - 1));
  }
  if (v.is_list()) {
    const auto& xs = v.as_list();
    for (const auto& x : xs) close_value(x, out, depth - 1);
    if (!xs.empty()) close_value(Value::list(ValueList(xs.begin() + 1, xs.end())), out, depth - 1);
  }
}

std::vector<Value> candidates(const Subst& th, const CState& st, const Asrt& p, const Program& prog) {
  std::set<Value> base = {Value::nat(0), Value::nat(1), Value::nat(2), Value::nil(),
                          Value::boolean(true), Value::boolean(false), Value::list({})};
  for (const auto& [k, v] : th) base.insert(v);
  for (const auto& [k, v] : st.store) base.insert(v);
  for (const auto& [a, v] : st.heap) {
    base.insert(Value::nat(a));
    if (v) base.insert(*v);
  }
  asrt_lits(p, base);
  for (const auto& d : prog.preds)
    for (const auto& dj : d.disjuncts) asrt_lits(dj.body, base);
  std::set<Value> out;
  for (const auto& v : base) close_value(v, out);
  return {out.begin(), out.end()};
}

Tri atom_sat(const Asrt& atom, const Subst& th, const CStore& store, const CHeap& h,
             const Program& prog, const std::vector<Value>& cands, int depth) {
  Checker ck(prog, store, cands);
  std::vector<Asrt> atoms;
  split_pure(atom, atoms);
  if (ck.run(atoms, th, h, depth, [](const Subst&, const CHeap& r) { return r.empty(); }))
    return Tri::True;
  return ck.depth_hit || ck.guessed ? Tri::Unknown : Tri::False;
}

Tri generic_sat(const Asrt& p, const Subst& th, const CStore& store, const CHeap& h,
                const Program& prog, const std::vector<Value>& cands, int depth) {
  switch (p->kind) {
    case AsrtKind::False: return Tri::False;
    case AsrtKind::Emp: return h.empty() ? Tri::True : Tri::False;
    case AsrtKind::Impl: {
      Tri a = generic_sat(p->a, th, store, h, prog, cands, depth);
      if (a == Tri::False) return Tri::True;
      Tri b = generic_sat(p->b, th, store, h, prog, cands, depth);
      if (a == Tri::True || b == Tri::True) return b;
      return Tri::Unknown;
    }
    case AsrtKind::Or: {
      Tri a = generic_sat(p->a, th, store, h, prog, cands, depth);
      if (a == Tri::True) return a;
      Tri b = generic_sat(p->b, th, store, h, prog, cands, depth);
      if (b == Tri::True) return b;
      return a == Tri::Unknown || b == Tri::Unknown ? Tri::Unknown : Tri::False;
    }
    case AsrtKind::Exists: {
      std::function<Tri(std::size_t, Subst)> go = [&](std::size_t i, Subst t) -> Tri {
        if (i == p->vars.size()) return generic_sat(p->a, t, store, h, prog, cands, depth);
        for (const auto& c : cands) {
          t[p->vars[i]] = c;
          if (go(i + 1, t) == Tri::True) return Tri::True;
        }
        return Tri::Unknown;
      };
      return go(0, th);
    }
    case AsrtKind::Star: {
      std::vector<std::pair<Nat, std::optional<Value>>> cells(h.begin(), h.end());
      if (cells.size() > 16) return Tri::Unknown;
      bool unknown = false;
      for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
        CHeap h1, h2;
        for (std::size_t i = 0; i < cells.size(); ++i)
          ((mask >> i) & 1 ? h1 : h2).insert(cells[i]);
        Tri a = generic_sat(p->a, th, store, h1, prog, cands, depth);
        if (a == Tri::False) continue;
        Tri b = generic_sat(p->b, th, store, h2, prog, cands, depth);
        if (a == Tri::True && b == Tri::True) return Tri::True;
        if (b != Tri::False) unknown = true;
        if (a == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::False;
    }
    default: return atom_sat(p, th, store, h, prog, cands, depth);
  }
}

}  // namespace

Tri assertion_sat(const Subst& theta, const CState& st, const Asrt& p, const Program& prog,
                  int depth) {
  auto cands = candidates(theta, st, p, prog);
  Renamer rn;
  std::vector<Alt> alts;
  if (!alternatives(p, rn, alts)) return generic_sat(p, theta, st.store, st.heap, prog, cands, depth);
  bool unknown = false;
  for (const auto& alt : alts) {
    Checker ck(prog, st.store, cands);
    if (ck.run(alt.atoms, theta, st.heap, depth, [](const Subst&, const CHeap& h) { return h.empty(); }))
      return Tri::True;
    unknown = unknown || ck.depth_hit || ck.guessed;
  }
  return unknown ? Tri::Unknown : Tri::False;
}

Tri satisfies(const Model& eps, const CState& st, const SymState& s, const Program& prog, int depth) {
  MapEnv env(VarKind::Sym, eps);
  if (!holds(s.pc, env)) return Tri::False;
  if (st.store.size() != s.store.size()) return Tri::False;
  for (const auto& [k, t] : s.store) {
    auto v = eval(t, env);
    auto it = st.store.find(k);
    if (!v || it == st.store.end() || it->second != *v) return Tri::False;
  }
  CHeap rest = st.heap;
  for (const auto& c : s.heap) {
    auto a = eval(c.addr, env);
    if (!a || !a->is_nat()) return Tri::False;
    auto it = rest.find(a->as_nat());
    if (it == rest.end()) return Tri::False;
    if (c.val) {
      auto v = eval(*c.val, env);
      if (!v || !it->second || *it->second != *v) return Tri::False;
    } else if (it->second) {
      return Tri::False;
    }
    rest.erase(it);
  }
  std::vector<Asrt> atoms;
  for (const auto& p : s.preds) {
    std::vector<Term> ins, outs;
    for (const auto& t : p.ins) {
      auto v = eval(t, env);
      if (!v) return Tri::False;
      ins.push_back(Term::lit(*v));
    }
    for (const auto& t : p.outs) {
      auto v = eval(t, env);
      if (!v) return Tri::False;
      outs.push_back(Term::lit(*v));
    }
    atoms.push_back(as::pred(p.name, ins, outs));
  }
  std::vector<Value> cands = candidates({}, CState{{}, rest}, as::star(atoms), prog);
  Checker ck(prog, st.store, cands);
  if (ck.run(atoms, {}, rest, depth, [](const Subst&, const CHeap& h) { return h.empty(); }))
    return Tri::True;
  return ck.depth_hit || ck.guessed ? Tri::Unknown : Tri::False;
}

std::vector<AsrtModel> asrt_models(const Asrt& p, const Subst& theta, const CStore& store,
                                   const Program& prog, const std::vector<Value>& domain,
                                   int depth, std::size_t limit) {
  Renamer rn;
  std::vector<Alt> alts;
  if (!alternatives(p, rn, alts)) throw std::invalid_argument("models of an implication");
  auto free = lv(p);
  std::set<AsrtModel> out;
  for (const auto& alt : alts) {
    Generator g(prog, store, domain);
    g.run(alt.atoms, theta, {}, depth, [&](const Subst& th, const CHeap& h) {
      Subst base;
      for (const auto& [k, v] : th)
        if (!is_renamed(k)) base[k] = v;
      std::vector<std::string> missing;
      for (const auto& v : free)
        if (!base.count(v)) missing.push_back(v);
      std::function<bool(std::size_t, Subst&)> fill = [&](std::size_t i, Subst& t) {
        if (i == missing.size()) {
          out.insert({t, h});
          return out.size() >= limit;
        }
        for (const auto& c : domain) {
          t[missing[i]] = c;
          if (fill(i + 1, t)) return true;
        }
        t.erase(missing[i]);
        return false;
      };
      return fill(0, base);
    });
    if (out.size() >= limit) break;
  }
  return {out.begin(), out.end()};
}

Term sym_to_logic(const Term& t) {
  return substitute(t, [](VarKind k, const std::string& n) -> std::optional<Term> {
    if (k != VarKind::Sym) return std::nullopt;
    return Term::lvar(n);
  });
}

Term logic_to_sym(const Term& t, const std::set<std::string>& names) {
  return substitute(t, [&](VarKind k, const std::string& n) -> std::optional<Term> {
    if (k != VarKind::Logic || !names.count(n)) return std::nullopt;
    return Term::svar(n);
  });
}

Asrt to_asrt(const SymState& s, const std::optional<std::vector<std::string>>& keep) {
  std::vector<Asrt> parts;
  for (const auto& c : s.heap) {
    if (c.val) parts.push_back(as::cell(sym_to_logic(c.addr), sym_to_logic(*c.val)));
    else parts.push_back(as::freed(sym_to_logic(c.addr)));
  }
  for (const auto& p : s.preds) {
    std::vector<Term> ins, outs;
    for (const auto& t : p.ins) ins.push_back(sym_to_logic(t));
    for (const auto& t : p.outs) outs.push_back(sym_to_logic(t));
    parts.push_back(as::pred(p.name, ins, outs));
  }
  std::vector<Term> cs;
  f::flatten(s.pc, cs);
  for (const auto& c : cs) parts.push_back(as::pure(sym_to_logic(c)));
  for (const auto& [k, t] : s.store) {
    if (keep && std::find(keep->begin(), keep->end(), k) == keep->end()) continue;
    parts.push_back(as::pure(Term::binary(Op::Eq, Term::pvar(k), sym_to_logic(t))));
  }
  if (parts.empty()) return as::pure(f::tt());
  return as::star(parts);
}

Asrt external_pre(const Spec& spec) {
  std::vector<Asrt> parts;
  for (const auto& x : spec.params)
    parts.push_back(as::pure(Term::binary(Op::Eq, Term::pvar(x), Term::lvar(x))));
  parts.push_back(spec.pre);
  return as::star(parts);
}

Internalised internal_of_external(const Spec& spec, const FunctionDef& f) {
  if (spec.fname != f.name) throw std::invalid_argument("spec " + spec.name + " is not for " + f.name);
  if (spec.params.size() != f.params.size())
    throw std::invalid_argument("spec " + spec.name + ": arity mismatch");
  Internalised out;
  out.params = f.params;
  out.locals = locals_of(f);
  std::map<std::string, Term> ren;
  for (std::size_t i = 0; i < f.params.size(); ++i)
    ren[spec.params[i]] = Term::pvar(f.params[i]);
  std::vector<Asrt> parts;
  for (std::size_t i = 0; i < f.params.size(); ++i)
    parts.push_back(as::pure(Term::binary(Op::Eq, Term::pvar(f.params[i]), Term::lvar(spec.params[i]))));
  parts.push_back(spec.pre);
  for (const auto& z : out.locals)
    parts.push_back(as::pure(Term::binary(Op::Eq, Term::pvar(z), Term::nil())));
  out.pre = as::star(parts);
  out.ok = spec.ok;
  out.err = spec.err;
  return out;
}

ExactnessReport check_strictly_exact(const PredDef& def, const Program& prog,
                                     const std::vector<Value>& domain, int depth) {
  ExactnessReport rep;
  Asrt body = as::ff();
  for (auto it = def.disjuncts.rbegin(); it != def.disjuncts.rend(); ++it) {
    Asrt d = as::exists(it->exists, it->body);
    body = body->kind == AsrtKind::False ? d : as::disj(d, body);
  }
  std::function<void(std::size_t, Subst&)> go = [&](std::size_t i, Subst& th) {
    if (!rep.ok) return;
    if (i < def.ins.size()) {
      for (const auto& v : domain) {
        th[def.ins[i]] = v;
        go(i + 1, th);
      }
      th.erase(def.ins[i]);
      return;
    }
    std::map<std::vector<Value>, std::set<CHeap>> groups;
    for (const auto& m : asrt_models(body, th, {}, prog, domain, depth)) {
      std::vector<Value> key;
      for (const auto& x : def.ins) key.push_back(m.theta.at(x));
      for (const auto& x : def.outs) key.push_back(m.theta.at(x));
      groups[key].insert(m.heap);
    }
    for (const auto& [key, heaps] : groups) {
      ++rep.checked;
      if (heaps.size() > 1 && rep.ok) {
        rep.ok = false;
        std::string w = def.name + "(";
        for (std::size_t j = 0; j < key.size(); ++j) {
          if (j == def.ins.size()) w += "; ";
          else if (j) w += ", ";
          w += key[j].to_string();
        }
        w += ") has " + std::to_string(heaps.size()) + " heaps";
        rep.witness = w;
      }
    }
  };
  Subst th;
  go(0, th);
  return rep;
}

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::Lit: return "lit";
    case Op::Var: return "var";
    case Op::Not: return "not";
    case Op::Len: return "len";
    case Op::Hd: return "hd";
    case Op::Tl: return "tl";
    case Op::IsType: return "in";
    case Op::NotTrue: return "nottrue";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Mod: return "%";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "==";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Cons: return "::";
    case Op::List: return "list";
  }
  return "?";
}

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Prog: return "prog";
    case VarKind::Logic: return "logic";
    case VarKind::Sym: return "sym";
    case VarKind::Hole: return "hole";
  }
  return "?";
}

}  // namespace

nlohmann::json term_json(const Term& t) {
  using nlohmann::json;
  if (t.op() == Op::Lit) return json{{"lit", t.value().to_string()}};
  if (t.op() == Op::Var) return json{{"var", t.name()}, {"kind", kind_name(t.var_kind())}};
  json args = json::array();
  for (const auto& a : t.args()) args.push_back(term_json(a));
  json j{{"op", op_name(t.op())}, {"args", args}};
  if (t.op() == Op::IsType) j["type"] = type_name(t.type());
  return j;
}

nlohmann::json asrt_json(const Asrt& p) {
  using nlohmann::json;
  switch (p->kind) {
    case AsrtKind::Pure: return json{{"kind", "pure"}, {"expr", term_json(p->e1)}};
    case AsrtKind::False: return json{{"kind", "false"}};
    case AsrtKind::Emp: return json{{"kind", "emp"}};
    case AsrtKind::Impl: return json{{"kind", "impl"}, {"lhs", asrt_json(p->a)}, {"rhs", asrt_json(p->b)}};
    case AsrtKind::Or: return json{{"kind", "or"}, {"lhs", asrt_json(p->a)}, {"rhs", asrt_json(p->b)}};
    case AsrtKind::Exists: return json{{"kind", "exists"}, {"vars", p->vars}, {"body", asrt_json(p->a)}};
    case AsrtKind::Cell:
      return json{{"kind", "cell"}, {"addr", term_json(p->e1)}, {"value", term_json(p->e2)}};
    case AsrtKind::Freed: return json{{"kind", "freed"}, {"addr", term_json(p->e1)}};
    case AsrtKind::Star: {
      json parts = json::array();
      for (const auto& a : star_atoms(p)) parts.push_back(asrt_json(a));
      return json{{"kind", "star"}, {"parts", parts}};
    }
    case AsrtKind::Pred: {
      json ins = json::array(), outs = json::array();
      for (const auto& t : p->ins) ins.push_back(term_json(t));
      for (const auto& t : p->outs) outs.push_back(term_json(t));
      return json{{"kind", "pred"}, {"name", p->name}, {"ins", ins}, {"outs", outs}};
    }
  }
  return json{};
}

nlohmann::json spec_json(const Spec& s) {
  using nlohmann::json;
  auto post = [](const Asrt& q) -> json {
    if (!q || q->kind == AsrtKind::False) return nullptr;
    return print_asrt(q);
  };
  auto tree = [](const Asrt& q) -> json {
    if (!q || q->kind == AsrtKind::False) return nullptr;
    return asrt_json(q);
  };
  Asrt pre = external_pre(s);
  return json{{"name", s.name},
              {"mode", mode_name(s.mode)},
              {"function", s.fname},
              {"params", s.params},
              {"pre", print_asrt(pre)},
              {"ok", post(s.ok)},
              {"err", post(s.err)},
              {"tree", {{"pre", asrt_json(pre)}, {"ok", tree(s.ok)}, {"err", tree(s.err)}}}};
}

}  // namespace cse
