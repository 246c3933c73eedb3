#include "cse/symeval.hpp"

namespace cse {

namespace {

Term nat2(const Term& a, const Term& b) {
  return f::conj({definedness(a), definedness(b), f::in(a, Type::Nat), f::in(b, Type::Nat)});
}

}  // namespace

Term definedness(const Term& t) {
  switch (t.op()) {
    case Op::Lit:
    case Op::Var:
    case Op::NotTrue:
      return f::tt();
    case Op::IsType: return definedness(t.arg(0));
    case Op::Not: return f::conj(definedness(t.arg(0)), f::in(t.arg(0), Type::Bool));
    case Op::Len: return f::conj(definedness(t.arg(0)), f::in(t.arg(0), Type::List));
    case Op::Hd:
    case Op::Tl:
      return f::conj({definedness(t.arg(0)), f::in(t.arg(0), Type::List),
                      f::neq(t.arg(0), Term::list({}))});
    case Op::Add:
    case Op::Mul:
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      return nat2(t.arg(0), t.arg(1));
    case Op::Sub:
      return f::conj(nat2(t.arg(0), t.arg(1)), Term::binary(Op::Ge, t.arg(0), t.arg(1)));
    case Op::Div:
    case Op::Mod:
      return f::conj(nat2(t.arg(0), t.arg(1)), f::neq(t.arg(1), Term::nat(0)));
    case Op::Eq: return f::conj(definedness(t.arg(0)), definedness(t.arg(1)));
    case Op::And:
    case Op::Or: {
      const Term& a = t.arg(0);
      const Term& b = t.arg(1);
      Term rhs = f::conj(definedness(b), f::in(b, Type::Bool));
      Term guard = t.op() == Op::And ? f::disj(f::neg(a), rhs) : f::disj(a, rhs);
      return f::conj({definedness(a), f::in(a, Type::Bool), guard});
    }
    case Op::Cons:
      return f::conj({definedness(t.arg(0)), definedness(t.arg(1)), f::in(t.arg(1), Type::List)});
    case Op::List: {
      Term out = f::tt();
      for (const auto& a : t.args()) out = f::conj(out, definedness(a));
      return out;
    }
  }
  return f::tt();
}

std::vector<EvalBranch> sym_eval(const SymStore& s, const Term& pc, const Term& e, const Policy& pol) {
  bool missing = false;
  Term v = substitute(e, [&](VarKind k, const std::string& n) -> std::optional<Term> {
    if (k != VarKind::Prog) return std::nullopt;
    auto it = s.find(n);
    if (it == s.end()) {
      missing = true;
      return std::nullopt;
    }
    return it->second;
  });
  if (missing) return {{std::nullopt, pc}};
  Term def = definedness(v);
  if (def.is_true()) return {{v, pc}};
  std::vector<EvalBranch> out;
  if (!def.is_false()) {
    Sat ent = pol.entails(pc, def);
    if (ent == Sat::Sat) return {{v, pc}};
    Term ok = f::conj(pc, def);
    if (pol.feasible(ok)) out.push_back({v, ok});
  }
  Term bad = f::conj(pc, f::neg(def));
  if (pol.feasible(bad)) out.push_back({std::nullopt, bad});
  return out;
}

std::vector<EvalAllBranch> sym_eval_all(const SymStore& s, const Term& pc,
                                        const std::vector<Term>& es, const Policy& pol) {
  std::vector<EvalAllBranch> out;
  std::vector<EvalAllBranch> open = {{{}, pc, std::nullopt}};
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::vector<EvalAllBranch> next;
    for (const auto& b : open) {
      for (auto& r : sym_eval(s, b.pc, es[i], pol)) {
        if (!r.value) {
          out.push_back({b.values, r.pc, i});
          continue;
        }
        auto vals = b.values;
        vals.push_back(*r.value);
        next.push_back({std::move(vals), r.pc, std::nullopt});
      }
    }
    open = std::move(next);
  }
  // successes first, then failures in argument order
  open.insert(open.end(), out.begin(), out.end());
  return open;
}

}  // namespace cse
