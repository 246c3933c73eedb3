#include "cse/solver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace cse {

const char* sat_name(Sat s) {
  switch (s) {
    case Sat::Sat: return "sat";
    case Sat::Unsat: return "unsat";
    case Sat::Unknown: return "unknown";
  }
  return "?";
}

Sat Solver::entails(const Term& pc, const Term& phi) {
  if (phi.is_true()) return Sat::Sat;
  Sat s = sat(f::conj(pc, Term::not_true(phi)));
  if (s == Sat::Unsat) return Sat::Sat;
  if (s == Sat::Sat) return Sat::Unsat;
  return Sat::Unknown;
}

namespace {

enum : unsigned { SNat = 1, SBool = 2, SStr = 4, SNil = 8, SList = 16, SAll = 31 };

unsigned sort_bit(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Nat: return SNat;
    case Value::Kind::Bool: return SBool;
    case Value::Kind::Str: return SStr;
    case Value::Kind::Nil: return SNil;
    case Value::Kind::List: return SList;
  }
  return 0;
}

unsigned type_bits(Type t) {
  switch (t) {
    case Type::Val: return SAll;
    case Type::Nat: return SNat;
    case Type::Bool: return SBool;
    case Type::Str: return SStr;
    case Type::List: return SList;
  }
  return SAll;
}

using Asg = std::map<std::string, Value>;  // keyed by Term::key()

class AsgEnv : public Env {
 public:
  explicit AsgEnv(const Asg& a) : a_(a) {}
  const Value* lookup(VarKind k, const std::string& name) const override {
    std::string key;
    switch (k) {
      case VarKind::Prog: break;
      case VarKind::Logic: key = "$"; break;
      case VarKind::Sym: key = "#"; break;
      case VarKind::Hole: key = "?"; break;
    }
    key += name;
    auto it = a_.find(key);
    return it == a_.end() ? nullptr : &it->second;
  }

 private:
  const Asg& a_;
};

void var_keys(const Term& t, std::set<std::string>& out) {
  if (t.op() == Op::Var) {
    out.insert(t.key());
    return;
  }
  for (const auto& a : t.args()) var_keys(a, out);
}

bool unassigned_in(const Term& t, const Asg& a) {
  if (t.op() == Op::Var) return !a.count(t.key());
  for (const auto& x : t.args())
    if (unassigned_in(x, a)) return true;
  return false;
}

bool mentions(const Term& t, const std::string& key) {
  if (t.op() == Op::Var) return t.key() == key;
  for (const auto& x : t.args())
    if (mentions(x, key)) return true;
  return false;
}

void collect_lits(const Term& t, std::set<Value>& out) {
  if (t.op() == Op::Lit) {
    out.insert(t.value());
    if (t.value().is_list()) {
      const auto& xs = t.value().as_list();
      for (const auto& x : xs) out.insert(x);
      for (std::size_t i = 1; i <= xs.size(); ++i)
        out.insert(Value::list(ValueList(xs.begin() + static_cast<long>(i), xs.end())));
    }
    return;
  }
  for (const auto& a : t.args()) collect_lits(a, out);
}

enum class SolveRes { Ok, Impossible, Cant };

struct Search {
  std::vector<Term> conj;
  std::vector<std::string> vars;
  std::map<std::string, std::size_t> idx;
  std::vector<std::vector<std::string>> conj_vars;
  std::vector<std::vector<std::size_t>> var_conj;
  std::vector<unsigned> allowed;
  std::vector<Value> base_nat, base_str, base_list;
  std::size_t nodes = 0;
  std::size_t budget = 0;
  bool exhausted = false;
  Asg model;

  bool sort_ok(const std::string& key, const Value& v) const {
    auto it = idx.find(key);
    if (it == idx.end()) return true;
    return (allowed[it->second] & sort_bit(v)) != 0;
  }

  std::optional<Value> ev(const Term& t, const Asg& a) const { return eval(t, AsgEnv(a)); }

  SolveRes solve(const Term& e, const Value& target, Asg& a) const {
    if (!unassigned_in(e, a)) {
      auto v = ev(e, a);
      return v && *v == target ? SolveRes::Ok : SolveRes::Impossible;
    }
    switch (e.op()) {
      case Op::Var:
        if (!sort_ok(e.key(), target)) return SolveRes::Impossible;
        a[e.key()] = target;
        return SolveRes::Ok;
      case Op::Add: {
        if (!target.is_nat()) return SolveRes::Impossible;
        bool ua = unassigned_in(e.arg(0), a), ub = unassigned_in(e.arg(1), a);
        if (ua && ub) return SolveRes::Cant;
        auto kv = ev(ua ? e.arg(1) : e.arg(0), a);
        if (!kv || !kv->is_nat()) return SolveRes::Impossible;
        if (target.as_nat() < kv->as_nat()) return SolveRes::Impossible;
        return solve(ua ? e.arg(0) : e.arg(1), Value::nat(target.as_nat() - kv->as_nat()), a);
      }
      case Op::Sub: {
        if (!target.is_nat()) return SolveRes::Impossible;
        bool ua = unassigned_in(e.arg(0), a), ub = unassigned_in(e.arg(1), a);
        if (ua && ub) return SolveRes::Cant;
        if (ua) {
          auto bv = ev(e.arg(1), a);
          if (!bv || !bv->is_nat()) return SolveRes::Impossible;
          return solve(e.arg(0), Value::nat(target.as_nat() + bv->as_nat()), a);
        }
        auto av = ev(e.arg(0), a);
        if (!av || !av->is_nat() || av->as_nat() < target.as_nat()) return SolveRes::Impossible;
        return solve(e.arg(1), Value::nat(av->as_nat() - target.as_nat()), a);
      }
      case Op::Cons: {
        if (!target.is_list() || target.as_list().empty()) return SolveRes::Impossible;
        const auto& xs = target.as_list();
        auto r = solve(e.arg(0), xs.front(), a);
        if (r != SolveRes::Ok) return r;
        return solve(e.arg(1), Value::list(ValueList(xs.begin() + 1, xs.end())), a);
      }
      case Op::List: {
        if (!target.is_list() || target.as_list().size() != e.args().size())
          return SolveRes::Impossible;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          auto r = solve(e.arg(i), target.as_list()[i], a);
          if (r != SolveRes::Ok) return r;
        }
        return SolveRes::Ok;
      }
      default: return SolveRes::Cant;
    }
  }

  // Equation view of a conjunct: bare b is b == true, !b is b == false.
  bool as_equation(const Term& c, Term& l, Term& r) const {
    if (c.op() == Op::Eq) {
      l = c.arg(0);
      r = c.arg(1);
      return true;
    }
    if (c.op() == Op::Var) {
      l = c;
      r = Term::boolean(true);
      return true;
    }
    if (c.op() == Op::Not && c.arg(0).op() == Op::Var) {
      l = c.arg(0);
      r = Term::boolean(false);
      return true;
    }
    return false;
  }

  bool all_assigned(std::size_t i, const Asg& a) const {
    for (const auto& k : conj_vars[i])
      if (!a.count(k)) return false;
    return true;
  }

  bool propagate(Asg& a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < conj.size(); ++i) {
        if (all_assigned(i, a)) {
          if (!holds(conj[i], AsgEnv(a))) return false;
          continue;
        }
        Term l, r;
        if (!as_equation(conj[i], l, r)) continue;
        bool ul = unassigned_in(l, a), ur = unassigned_in(r, a);
        if (ul && ur) continue;
        auto kv = ev(ul ? r : l, a);
        if (!kv) return false;
        Asg tmp = a;
        auto res = solve(ul ? l : r, *kv, tmp);
        if (res == SolveRes::Impossible) return false;
        if (res == SolveRes::Cant) continue;
        a = std::move(tmp);
        changed = true;
      }
    }
    return true;
  }

  std::string pick(const Asg& a) const {
    std::string best;
    long best_score = -1;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (a.count(vars[v])) continue;
      long only = 0;
      for (auto i : var_conj[v]) {
        bool alone = true;
        for (const auto& k : conj_vars[i])
          if (k != vars[v] && !a.count(k)) alone = false;
        if (alone) ++only;
      }
      long score = only * 1000 + static_cast<long>(var_conj[v].size());
      if (score > best_score) {
        best_score = score;
        best = vars[v];
      }
    }
    return best;
  }

  void boundaries(const Term& t, const std::string& v, const Asg& a,
                  std::vector<Value>& out) const {
    auto try_side = [&](const Term& side, const Term& other) {
      if (!mentions(side, v) || unassigned_in(other, a)) return;
      auto tv = ev(other, a);
      if (!tv) return;
      Asg tmp = a;
      if (solve(side, *tv, tmp) != SolveRes::Ok) return;
      auto it = tmp.find(v);
      if (it == tmp.end()) return;
      out.push_back(it->second);
      if (it->second.is_nat()) {
        out.push_back(Value::nat(it->second.as_nat() + 1));
        if (it->second.as_nat() > 0) out.push_back(Value::nat(it->second.as_nat() - 1));
      }
    };
    switch (t.op()) {
      case Op::Eq: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::Sub:
        try_side(t.arg(0), t.arg(1));
        try_side(t.arg(1), t.arg(0));
        break;
      default: break;
    }
    for (const auto& x : t.args()) boundaries(x, v, a, out);
  }

  std::vector<Value> candidates(const std::string& v, const Asg& a) const {
    std::vector<Value> raw;
    std::size_t vi = idx.at(v);
    for (auto i : var_conj[vi]) {
      bool alone = true;
      for (const auto& k : conj_vars[i])
        if (k != v && !a.count(k)) alone = false;
      if (alone) boundaries(conj[i], v, a, raw);
    }
    unsigned al = allowed[vi];
    if (al & SBool) {
      raw.push_back(Value::boolean(true));
      raw.push_back(Value::boolean(false));
    }
    if (al & SNil) raw.push_back(Value::nil());
    if (al & SNat) raw.insert(raw.end(), base_nat.begin(), base_nat.end());
    if (al & SStr) raw.insert(raw.end(), base_str.begin(), base_str.end());
    if (al & SList) raw.insert(raw.end(), base_list.begin(), base_list.end());
    std::vector<Value> out;
    std::set<Value> seen;
    for (auto& x : raw)
      if ((al & sort_bit(x)) && seen.insert(x).second) out.push_back(std::move(x));
    return out;
  }

  bool consistent(const std::string& v, const Asg& a) const {
    for (auto i : var_conj[idx.at(v)])
      if (all_assigned(i, a) && !holds(conj[i], AsgEnv(a))) return false;
    return true;
  }

  bool dfs(Asg a) {
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (!propagate(a)) return false;
    std::string v = pick(a);
    if (v.empty()) {
      model = std::move(a);
      return true;
    }
    for (const auto& c : candidates(v, a)) {
      Asg b = a;
      b[v] = c;
      if (!consistent(v, b)) continue;
      if (dfs(std::move(b))) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

// Variables forced into a sort because the conjunct can only be true when a
// strict operator applied to them is defined.
void forced_sorts(const Term& t, bool strict, std::map<std::string, unsigned>& out) {
  if (!strict || t.op() == Op::Lit || t.op() == Op::Var) return;
  auto force = [&](const Term& x, unsigned bits) {
    if (x.op() == Op::Var) {
      auto it = out.find(x.key());
      if (it == out.end()) out[x.key()] = bits;
      else it->second &= bits;
    }
  };
  switch (t.op()) {
    case Op::Add: case Op::Sub: case Op::Mul: case Op::Div: case Op::Mod:
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
      force(t.arg(0), SNat);
      force(t.arg(1), SNat);
      break;
    case Op::Len: case Op::Hd: case Op::Tl: force(t.arg(0), SList); break;
    case Op::Cons: force(t.arg(1), SList); break;
    case Op::Not: force(t.arg(0), SBool); break;
    case Op::And: case Op::Or:
      force(t.arg(0), SBool);
      forced_sorts(t.arg(0), true, out);
      return;
    case Op::NotTrue: return;
    default: break;
  }
  for (const auto& a : t.args()) forced_sorts(a, true, out);
}

// Whether failing to find a model within the candidate domain proves unsat.
bool decided_fragment(const std::vector<Term>& conj,
                      const std::vector<std::vector<std::string>>& conj_vars) {
  std::function<bool(const Term&, bool)> ok = [&](const Term& t, bool multi) {
    if (t.op() == Op::Lit || t.op() == Op::Var) return true;
    if (has_vars(t)) {
      switch (t.op()) {
        case Op::Mul: case Op::Div: case Op::Mod: case Op::Len: case Op::Hd: case Op::Tl:
          return false;
        case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::Sub:
          if (multi) return false;
          break;
        default: break;
      }
    }
    for (const auto& a : t.args())
      if (!ok(a, multi)) return false;
    return true;
  };
  for (std::size_t i = 0; i < conj.size(); ++i)
    if (!ok(conj[i], conj_vars[i].size() > 1)) return false;
  return true;
}

// Congruence closure over the equalities; true when a disequality, a
// literal clash or a sort clash makes the conjunction unsatisfiable.
bool refuted(const std::vector<Term>& conj) {
  std::map<std::string, Term> nodes;
  std::function<void(const Term&)> add = [&](const Term& t) {
    if (!nodes.emplace(t.key(), t).second) return;
    for (const auto& a : t.args()) add(a);
  };
  for (const auto& c : conj) add(c);
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
    return true;
  };
  std::set<std::string> present;
  for (const auto& c : conj) {
    present.insert(c.key());
    if (c.op() == Op::Eq) unite(c.arg(0).key(), c.arg(1).key());
  }
  for (const auto& c : conj)
    if (c.op() == Op::Not && present.count(c.arg(0).key())) return true;
  std::vector<Term> apps;
  for (const auto& [k, t] : nodes)
    if (!t.args().empty()) apps.push_back(t);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < apps.size(); ++i) {
      for (std::size_t j = i + 1; j < apps.size(); ++j) {
        const Term& a = apps[i];
        const Term& b = apps[j];
        if (a.op() != b.op() || a.args().size() != b.args().size()) continue;
        if (a.op() == Op::IsType && a.type() != b.type()) continue;
        if (find(a.key()) == find(b.key())) continue;
        bool same = true;
        for (std::size_t k = 0; k < a.args().size() && same; ++k)
          same = find(a.arg(k).key()) == find(b.arg(k).key());
        if (same) changed |= unite(a.key(), b.key());
      }
    }
    // x + k == y + k, both sides defined, so x == y
    for (const auto& c : conj) {
      if (c.op() != Op::Eq) continue;
      for (const auto& a : apps) {
        if (a.op() != Op::Add || find(a.key()) != find(c.arg(0).key())) continue;
        for (const auto& b : apps) {
          if (b.op() != Op::Add || find(b.key()) != find(a.key()) || a.key() == b.key()) continue;
          if (find(a.arg(1).key()) == find(b.arg(1).key())) changed |= unite(a.arg(0).key(), b.arg(0).key());
          if (find(a.arg(0).key()) == find(b.arg(0).key())) changed |= unite(a.arg(1).key(), b.arg(1).key());
        }
      }
    }
  }
  std::map<std::string, Value> lit_of;
  for (const auto& [k, t] : nodes) {
    if (t.op() != Op::Lit) continue;
    auto [it, fresh] = lit_of.emplace(find(k), t.value());
    if (!fresh && !(it->second == t.value())) return true;
  }
  std::map<std::string, unsigned> sorts;
  for (const auto& c : conj) {
    const bool neg = c.op() == Op::Not;
    const Term& a = neg ? c.arg(0) : c;
    if (neg && a.op() == Op::Eq && find(a.arg(0).key()) == find(a.arg(1).key())) return true;
    if (a.op() != Op::IsType || a.type() == Type::Val) continue;
    unsigned bits = type_bits(a.type());
    std::string r = find(a.arg(0).key());
    auto& cur = sorts.emplace(r, SAll).first->second;
    cur &= neg ? (~bits & SAll) : bits;
    if (!cur) return true;
    auto l = lit_of.find(r);
    if (l != lit_of.end() && !(cur & sort_bit(l->second))) return true;
  }
  return false;
}

}  // namespace

SatResult InternalSolver::check_component(const std::vector<Term>& conj) {
  Search s;
  s.conj = conj;
  s.budget = opts_.node_budget;
  std::set<std::string> all;
  for (const auto& c : conj) {
    std::set<std::string> vs;
    var_keys(c, vs);
    s.conj_vars.emplace_back(vs.begin(), vs.end());
    all.insert(vs.begin(), vs.end());
  }
  s.vars.assign(all.begin(), all.end());
  s.var_conj.resize(s.vars.size());
  for (std::size_t v = 0; v < s.vars.size(); ++v) s.idx[s.vars[v]] = v;
  for (std::size_t i = 0; i < conj.size(); ++i)
    for (const auto& k : s.conj_vars[i]) s.var_conj[s.idx[k]].push_back(i);

  s.allowed.assign(s.vars.size(), SAll);
  std::map<std::string, unsigned> forced;
  for (const auto& c : conj) {
    forced_sorts(c, true, forced);
    if (c.op() == Op::IsType && c.arg(0).op() == Op::Var)
      s.allowed[s.idx[c.arg(0).key()]] &= type_bits(c.type());
    if (c.op() == Op::Not && c.arg(0).op() == Op::IsType && c.arg(0).arg(0).op() == Op::Var &&
        c.arg(0).type() != Type::Val)
      s.allowed[s.idx[c.arg(0).arg(0).key()]] &= ~type_bits(c.arg(0).type()) & SAll;
  }
  for (const auto& [k, bits] : forced) s.allowed[s.idx[k]] &= bits;

  std::set<Value> lits;
  for (const auto& c : conj) collect_lits(c, lits);
  std::size_t n = s.vars.size();
  Nat k = std::max<std::size_t>(4, n + lits.size() + 2);
  std::set<Value> nats;
  for (Nat i = 0; i <= k; ++i) nats.insert(Value::nat(i));
  std::vector<std::string> strs;
  for (const auto& l : lits) {
    if (l.is_nat()) {
      for (int d = -2; d <= 2; ++d) {
        Nat x = l.as_nat() + d;
        if (x >= 0) nats.insert(Value::nat(x));
      }
    }
    if (l.is_str()) strs.push_back(l.as_str());
  }
  s.base_nat.assign(nats.begin(), nats.end());
  for (const auto& x : strs) s.base_str.push_back(Value::str(x));
  for (std::size_t i = 0, made = 0; made <= n; ++i) {
    std::string cand = "s" + std::to_string(i);
    if (std::find(strs.begin(), strs.end(), cand) == strs.end()) {
      s.base_str.push_back(Value::str(cand));
      ++made;
    }
  }
  std::set<Value> lists;
  for (const auto& l : lits)
    if (l.is_list()) lists.insert(l);
  s.base_list.assign(lists.begin(), lists.end());
  std::vector<Value> elems = {Value::nat(0), Value::nat(1), Value::nil()};
  std::vector<Value> gen = {Value::list({})};
  for (const auto& e : elems) gen.push_back(Value::list({e}));
  for (const auto& e1 : elems)
    for (const auto& e2 : elems) gen.push_back(Value::list({e1, e2}));
  std::size_t want = std::max<std::size_t>(4, n + lists.size() + 2);
  for (std::size_t i = 0; i < gen.size() && i < want; ++i) s.base_list.push_back(gen[i]);

  SatResult out;
  bool empty_sort = std::any_of(s.allowed.begin(), s.allowed.end(), [](unsigned b) { return b == 0; });
  if (empty_sort || refuted(conj)) {
    out.status = Sat::Unsat;
  } else if (s.dfs({})) {
    out.status = Sat::Sat;
    for (const auto& [key, v] : s.model)
      if (!key.empty() && key[0] == '#') out.model[key.substr(1)] = v;
  } else if (s.exhausted || !decided_fragment(conj, s.conj_vars)) {
    out.status = Sat::Unknown;
  } else {
    out.status = Sat::Unsat;
  }
  stats_.nodes += s.nodes;
  return out;
}

SatResult InternalSolver::check(const Term& pc) {
  ++stats_.queries;
  std::vector<Term> cs;
  f::flatten(pc, cs);
  std::vector<Term> open;
  std::set<std::string> seen;
  for (auto& c : cs)
    if (c.op() == Op::NotTrue && is_total(c.arg(0)) && bool_sorted(c.arg(0))) c = Term::node(Op::Not, {c.arg(0)});
  for (const auto& c : cs) {
    if (!has_vars(c)) {
      if (!holds(c, EmptyEnv())) return {Sat::Unsat, {}};
      continue;
    }
    if (seen.insert(c.key()).second) open.push_back(c);
  }
  // union-find over variables
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  };
  std::vector<std::set<std::string>> cvars(open.size());
  for (std::size_t i = 0; i < open.size(); ++i) {
    var_keys(open[i], cvars[i]);
    std::string first;
    for (const auto& v : cvars[i]) {
      if (!parent.count(v)) parent[v] = v;
      if (first.empty()) first = v;
      else parent[find(v)] = find(first);
    }
  }
  std::map<std::string, std::vector<Term>> comps;
  for (std::size_t i = 0; i < open.size(); ++i)
    comps[find(*cvars[i].begin())].push_back(open[i]);

  SatResult total{Sat::Sat, {}};
  bool unknown = false;
  for (auto& [root, conj] : comps) {
    std::sort(conj.begin(), conj.end(),
              [](const Term& a, const Term& b) { return a.key() < b.key(); });
    std::string key;
    for (const auto& c : conj) key += c.key() + "\x1f";
    SatResult r;
    bool hit = false;
    if (opts_.use_cache) {
      std::lock_guard<std::mutex> g(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        r = it->second;
        hit = true;
      }
    }
    if (hit) {
      ++stats_.cache_hits;
    } else {
      r = check_component(conj);
      if (opts_.use_cache) {
        std::lock_guard<std::mutex> g(mu_);
        cache_.emplace(key, r);
      }
    }
    if (r.status == Sat::Unsat) return {Sat::Unsat, {}};
    if (r.status == Sat::Unknown) unknown = true;
    total.model.insert(r.model.begin(), r.model.end());
  }
  if (unknown) {
    ++stats_.unknowns;
    return {Sat::Unknown, {}};
  }
  return total;
}

std::unique_ptr<Solver> make_solver(const std::string& spec) {
  if (spec.empty() || spec == "internal") return std::make_unique<InternalSolver>();
  if (spec.rfind("smt:", 0) == 0) return std::make_unique<SmtSolver>(spec.substr(4));
  throw std::invalid_argument("unknown solver '" + spec + "'");
}

}  // namespace cse

namespace cse {

std::vector<Model> enumerate_models(const Term& pc, const std::vector<Value>& domain,
                                    const std::vector<std::string>& vars, std::size_t limit) {
  std::vector<Term> cs;
  f::flatten(pc, cs);
  // each conjunct is checked as soon as its last variable is assigned
  std::vector<std::vector<Term>> at(vars.size() + 1);
  for (const auto& c : cs) {
    std::size_t last = 0;
    for (const auto& v : vars_of(c, VarKind::Sym)) {
      auto it = std::find(vars.begin(), vars.end(), v);
      last = std::max(last, it == vars.end() ? vars.size() + 1 : static_cast<std::size_t>(it - vars.begin()) + 1);
    }
    if (last > vars.size()) return {};
    at[last].push_back(c);
  }
  std::vector<Model> out;
  Model m;
  MapEnv env(VarKind::Sym, m);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (out.size() >= limit) return;
    for (const auto& c : at[i])
      if (!holds(c, env)) return;
    if (i == vars.size()) {
      out.push_back(m);
      return;
    }
    for (const auto& v : domain) {
      m[vars[i]] = v;
      go(i + 1);
    }
    m.erase(vars[i]);
  };
  go(0);
  return out;
}

}  // namespace cse
