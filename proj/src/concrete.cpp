#include "cse/concrete.hpp"

#include <algorithm>

namespace cse {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ok: return "ok";
    case Outcome::Err: return "err";
    case Outcome::Miss: return "miss";
    case Outcome::Abort: return "abort";
  }
  return "?";
}

std::string to_string(const CState& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s.store) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + v.to_string();
  }
  out += "} {";
  first = true;
  for (const auto& [a, v] : s.heap) {
    if (!first) out += ", ";
    first = false;
    out += a.str() + " -> " + (v ? v->to_string() : std::string("freed"));
  }
  return out + "}";
}

std::optional<CState> compose_state(const CState& a, const CState& b) {
  CState out = a;
  for (const auto& [k, v] : b.store) {
    auto it = out.store.find(k);
    if (it != out.store.end() && it->second != v) return std::nullopt;
    out.store[k] = v;
  }
  for (const auto& [k, v] : b.heap)
    if (!out.heap.emplace(k, v).second) return std::nullopt;
  return out;
}

CStore call_store(const FunctionDef& f, const std::vector<Value>& args) {
  CStore s;
  for (const auto& x : locals_of(f)) s[x] = Value::nil();
  for (std::size_t i = 0; i < f.params.size(); ++i) s[f.params[i]] = args[i];
  return s;
}

namespace errval {

Value expr_eval(const Term& e) { return Value::list({Value::str("ExprEval"), Value::str(to_string(e))}); }

Value type(const Term& e, const Value& v, Type t) {
  return Value::list({Value::str("Type"), Value::str(to_string(e)), v, Value::str(type_name(t))});
}

Value missing_cell(const Term& e, const Nat& n) {
  return Value::list({Value::str("MissingCell"), Value::str(to_string(e)), Value::nat(n)});
}

Value use_after_free(const Term& e, const Nat& n) {
  return Value::list({Value::str("UseAfterFree"), Value::str(to_string(e)), Value::nat(n)});
}

Value error(const Value& v) { return Value::list({Value::str("Error"), v}); }
Value param_count(const std::string& f) { return Value::list({Value::str("ParamCount"), Value::str(f)}); }
Value no_func(const std::string& f) { return Value::list({Value::str("NoFunc"), Value::str(f)}); }
Value assert_fail(const Term& e) { return Value::list({Value::str("Assert"), Value::str(to_string(e))}); }

}  // namespace errval

namespace {

class Interp {
 public:
  Interp(const Program& p, const Budget& b, ConcreteStats* st) : prog_(p), budget_(b), stats_(st) {}

  using Out = std::vector<ConcreteResult>;

  void run(const CState& s, const Cmd& c, int fuel, Out& out) {
    if (out.size() >= budget_.max_results) {
      if (stats_) stats_->truncated = true;
      return;
    }
    switch (c->kind) {
      case CmdKind::Skip:
      case CmdKind::Fold:
      case CmdKind::Unfold:
        out.push_back({Outcome::Ok, s});
        return;
      case CmdKind::Assign: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        CState t = s;
        t.store[c->x] = *v;
        out.push_back({Outcome::Ok, std::move(t)});
        return;
      }
      case CmdKind::Nondet: {
        for (const auto& v : choices(true)) {
          CState t = s;
          t.store[c->x] = v;
          out.push_back({Outcome::Ok, std::move(t)});
        }
        return;
      }
      case CmdKind::Sym: {
        for (const auto& v : choices(false)) {
          CState t = s;
          t.store[c->x] = v;
          out.push_back({Outcome::Ok, std::move(t)});
        }
        return;
      }
      case CmdKind::Error: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        return fail(s, errval::error(*v), out);
      }
      case CmdKind::Lookup: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (!v->is_nat()) return fail(s, errval::type(c->e1, *v, Type::Nat), out);
        auto it = s.heap.find(v->as_nat());
        if (it == s.heap.end()) return miss(s, errval::missing_cell(c->e1, v->as_nat()), out);
        if (!it->second) return fail(s, errval::use_after_free(c->e1, v->as_nat()), out);
        CState t = s;
        t.store[c->x] = *it->second;
        out.push_back({Outcome::Ok, std::move(t)});
        return;
      }
      case CmdKind::Mutate: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (!v->is_nat()) return fail(s, errval::type(c->e1, *v, Type::Nat), out);
        auto it = s.heap.find(v->as_nat());
        if (it == s.heap.end()) return miss(s, errval::missing_cell(c->e1, v->as_nat()), out);
        if (!it->second) return fail(s, errval::use_after_free(c->e1, v->as_nat()), out);
        auto w = ev(s, c->e2);
        if (!w) return fail(s, errval::expr_eval(c->e2), out);
        CState t = s;
        t.heap[v->as_nat()] = *w;
        out.push_back({Outcome::Ok, std::move(t)});
        return;
      }
      case CmdKind::New: {
        for (const auto& a : addresses(s.heap, c->n)) {
          CState t = s;
          for (Nat i = 0; i < c->n; ++i) t.heap[a + i] = Value::nil();
          t.store[c->x] = Value::nat(a);
          out.push_back({Outcome::Ok, std::move(t)});
        }
        return;
      }
      case CmdKind::Free: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (!v->is_nat()) return fail(s, errval::type(c->e1, *v, Type::Nat), out);
        auto it = s.heap.find(v->as_nat());
        if (it == s.heap.end()) return miss(s, errval::missing_cell(c->e1, v->as_nat()), out);
        if (!it->second) return fail(s, errval::use_after_free(c->e1, v->as_nat()), out);
        CState t = s;
        t.heap[v->as_nat()] = std::nullopt;
        out.push_back({Outcome::Ok, std::move(t)});
        return;
      }
      case CmdKind::Seq: {
        Out first;
        run(s, c->c1, fuel, first);
        for (auto& r : first) {
          if (r.outcome == Outcome::Ok) run(r.state, c->c2, fuel, out);
          else out.push_back(std::move(r));
        }
        return;
      }
      case CmdKind::If: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (!v->is_bool()) return fail(s, errval::type(c->e1, *v, Type::Bool), out);
        run(s, v->as_bool() ? c->c1 : c->c2, fuel, out);
        return;
      }
      case CmdKind::Call: return call(s, c, fuel, out);
      case CmdKind::Assume: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (v->is_bool() && v->as_bool()) out.push_back({Outcome::Ok, s});
        return;
      }
      case CmdKind::Assert: {
        auto v = ev(s, c->e1);
        if (!v) return fail(s, errval::expr_eval(c->e1), out);
        if (!v->is_bool()) return;
        if (v->as_bool()) out.push_back({Outcome::Ok, s});
        else fail(s, errval::assert_fail(c->e1), out);
        return;
      }
    }
  }

 private:
  std::optional<Value> ev(const CState& s, const Term& e) const {
    return eval(e, MapEnv(VarKind::Prog, s.store));
  }

  static void fail(const CState& s, const Value& v, Out& out) {
    CState t = s;
    t.store["err"] = v;
    out.push_back({Outcome::Err, std::move(t)});
  }

  static void miss(const CState& s, const Value& v, Out& out) {
    CState t = s;
    t.store["err"] = v;
    out.push_back({Outcome::Miss, std::move(t)});
  }

  std::vector<Value> choices(bool nat_only) const {
    if (!budget_.enumerate) return {Value::nat(0)};
    std::vector<Value> out;
    for (const auto& v : budget_.domain)
      if (!nat_only || v.is_nat()) out.push_back(v);
    return out;
  }

  std::vector<Nat> addresses(const CHeap& h, const Nat& n) const {
    auto fresh = [&](const Nat& a) {
      for (Nat i = 0; i < n; ++i)
        if (h.count(a + i)) return false;
      return true;
    };
    std::vector<Nat> out;
    if (!budget_.enumerate) {
      Nat a = 0;
      while (!fresh(a)) ++a;
      out.push_back(a);
      return out;
    }
    for (Nat a = 0; a <= budget_.max_addr; ++a)
      if (fresh(a)) out.push_back(a);
    return out;
  }

  void call(const CState& s, const Cmd& c, int fuel, Out& out) {
    const FunctionDef* f = prog_.find_function(c->fname);
    if (!f) return fail(s, errval::no_func(c->fname), out);
    if (f->params.size() != c->args.size()) return fail(s, errval::param_count(c->fname), out);
    std::vector<Value> args;
    for (const auto& a : c->args) {
      auto v = ev(s, a);
      if (!v) return fail(s, errval::expr_eval(a), out);
      args.push_back(*v);
    }
    if (fuel <= 0) {
      if (stats_) ++stats_->fuel_exhausted;
      return;
    }
    CState callee{call_store(*f, args), s.heap};
    Out inner;
    run(callee, f->body, fuel - 1, inner);
    for (auto& r : inner) {
      CState t{s.store, std::move(r.state.heap)};
      if (r.outcome == Outcome::Ok) {
        auto v = ev(r.state, f->ret);
        if (!v) {
          t.store["err"] = errval::expr_eval(f->ret);
          out.push_back({Outcome::Err, std::move(t)});
        } else {
          t.store[c->x] = *v;
          out.push_back({Outcome::Ok, std::move(t)});
        }
      } else {
        t.store["err"] = r.state.store.at("err");
        out.push_back({r.outcome, std::move(t)});
      }
    }
  }

  const Program& prog_;
  const Budget& budget_;
  ConcreteStats* stats_;
};

}  // namespace

std::vector<ConcreteResult> exec_concrete(const Program& prog, const CState& s, const Cmd& c,
                                          int fuel, const Budget& budget, ConcreteStats* stats) {
  Interp in(prog, budget, stats);
  std::vector<ConcreteResult> out;
  in.run(s, c, fuel, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cse
