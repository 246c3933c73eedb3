#include "cse/term.hpp"

#include <stdexcept>

namespace cse {

namespace {

std::size_t mix(std::size_t h, std::size_t x) {
  return h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const EmptyEnv kEmpty;

bool all_lit(const std::vector<Term>& xs) {
  for (const auto& x : xs)
    if (!x.is_lit()) return false;
  return true;
}

}  // namespace

Term Term::make(Op op, VarKind vk, Type ty, Value lit, std::string name,
                std::vector<Term> args) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->vk = vk;
  n->ty = ty;
  n->lit = std::move(lit);
  n->name = std::move(name);
  n->args = std::move(args);
  std::size_t h = static_cast<std::size_t>(op) * 131 + static_cast<std::size_t>(vk);
  h = mix(h, static_cast<std::size_t>(ty));
  if (op == Op::Lit) h = mix(h, n->lit.hash());
  if (op == Op::Var) h = mix(h, std::hash<std::string>{}(n->name));
  for (const auto& a : n->args) h = mix(h, a.hash());
  n->hash = h;
  return Term(std::shared_ptr<const TermNode>(std::move(n)));
}

Term Term::lit(Value v) { return make(Op::Lit, VarKind::Prog, Type::Val, std::move(v), {}, {}); }

Term Term::var(VarKind k, std::string name) {
  return make(Op::Var, k, Type::Val, Value(), std::move(name), {});
}

Term Term::hole(int i) {
  return var(VarKind::Hole, i == 0 ? std::string("O") : "O" + std::to_string(i));
}

Term Term::unary(Op op, Term a) {
  Term t = make(op, VarKind::Prog, Type::Val, Value(), {}, {std::move(a)});
  if (t.arg(0).is_lit() || op == Op::NotTrue) {
    if (t.arg(0).is_lit()) {
      auto v = eval(t, kEmpty);
      if (v) return lit(*v);
    }
  }
  return t;
}

Term Term::is_type(Term a, Type ty) {
  Term t = make(Op::IsType, VarKind::Prog, ty, Value(), {}, {std::move(a)});
  if (t.arg(0).is_lit()) {
    auto v = eval(t, kEmpty);
    if (v) return lit(*v);
  }
  return t;
}

Term Term::binary(Op op, Term a, Term b) {
  if (op == Op::And) {
    if (a.is_false()) return a;
    if (a.is_true() && bool_sorted(b)) return b;
  }
  if (op == Op::Or) {
    if (a.is_true()) return a;
    if (a.is_false() && bool_sorted(b)) return b;
  }
  Term t = make(op, VarKind::Prog, Type::Val, Value(), {}, {std::move(a), std::move(b)});
  if (all_lit(t.args())) {
    auto v = eval(t, kEmpty);
    if (v) return lit(*v);
  }
  return t;
}

Term Term::list(std::vector<Term> items) {
  Term t = make(Op::List, VarKind::Prog, Type::Val, Value(), {}, std::move(items));
  if (all_lit(t.args())) {
    auto v = eval(t, kEmpty);
    if (v) return lit(*v);
  }
  return t;
}

Term Term::node(Op op, std::vector<Term> args, Type ty) {
  return make(op, VarKind::Prog, ty, Value(), {}, std::move(args));
}

Op Term::op() const { return p_->op; }
VarKind Term::var_kind() const { return p_->vk; }
const std::string& Term::name() const { return p_->name; }
Type Term::type() const { return p_->ty; }
const Value& Term::value() const { return p_->lit; }
const std::vector<Term>& Term::args() const { return p_->args; }
std::size_t Term::hash() const { return p_ ? p_->hash : 0; }

bool Term::is_true() const { return is_lit() && value().is_bool() && value().as_bool(); }
bool Term::is_false() const { return is_lit() && value().is_bool() && !value().as_bool(); }

bool operator==(const Term& a, const Term& b) {
  if (a.p_ == b.p_) return true;
  if (!a.p_ || !b.p_) return false;
  if (a.hash() != b.hash()) return false;
  const TermNode& x = *a.p_;
  const TermNode& y = *b.p_;
  if (x.op != y.op || x.vk != y.vk || x.ty != y.ty || x.args.size() != y.args.size())
    return false;
  if (x.op == Op::Lit) return x.lit == y.lit;
  if (x.op == Op::Var) return x.name == y.name;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!(x.args[i] == y.args[i])) return false;
  return true;
}

const Value* MapEnv::lookup(VarKind k, const std::string& name) const {
  if (k != k_) return nullptr;
  auto it = m_.find(name);
  return it == m_.end() ? nullptr : &it->second;
}

const Value* StoreSubstEnv::lookup(VarKind k, const std::string& name) const {
  const auto& m = k == VarKind::Prog ? store_ : theta_;
  if (k != VarKind::Prog && k != VarKind::Logic) return nullptr;
  auto it = m.find(name);
  return it == m.end() ? nullptr : &it->second;
}

std::optional<Value> eval(const Term& t, const Env& env) {
  switch (t.op()) {
    case Op::Lit: return t.value();
    case Op::Var: {
      const Value* v = env.lookup(t.var_kind(), t.name());
      if (!v) return std::nullopt;
      return *v;
    }
    case Op::NotTrue: {
      auto a = eval(t.arg(0), env);
      return Value::boolean(!(a && a->is_bool() && a->as_bool()));
    }
    case Op::And:
    case Op::Or: {
      auto a = eval(t.arg(0), env);
      if (!a || !a->is_bool()) return std::nullopt;
      bool short_val = t.op() == Op::Or;
      if (a->as_bool() == short_val) return a;
      auto b = eval(t.arg(1), env);
      if (!b || !b->is_bool()) return std::nullopt;
      return b;
    }
    case Op::List: {
      ValueList items;
      items.reserve(t.args().size());
      for (const auto& a : t.args()) {
        auto v = eval(a, env);
        if (!v) return std::nullopt;
        items.push_back(std::move(*v));
      }
      return Value::list(std::move(items));
    }
    default: break;
  }
  auto a = eval(t.arg(0), env);
  if (!a) return std::nullopt;
  switch (t.op()) {
    case Op::Not:
      if (!a->is_bool()) return std::nullopt;
      return Value::boolean(!a->as_bool());
    case Op::Len:
      if (!a->is_list()) return std::nullopt;
      return Value::nat(static_cast<std::uint64_t>(a->as_list().size()));
    case Op::Hd:
      if (!a->is_list() || a->as_list().empty()) return std::nullopt;
      return a->as_list().front();
    case Op::Tl: {
      if (!a->is_list() || a->as_list().empty()) return std::nullopt;
      const auto& l = a->as_list();
      return Value::list(ValueList(l.begin() + 1, l.end()));
    }
    case Op::IsType: return Value::boolean(a->has_type(t.type()));
    default: break;
  }
  auto b = eval(t.arg(1), env);
  if (!b) return std::nullopt;
  switch (t.op()) {
    case Op::Eq: return Value::boolean(*a == *b);
    case Op::Cons: {
      if (!b->is_list()) return std::nullopt;
      ValueList items;
      items.reserve(b->as_list().size() + 1);
      items.push_back(*a);
      for (const auto& x : b->as_list()) items.push_back(x);
      return Value::list(std::move(items));
    }
    default: break;
  }
  if (!a->is_nat() || !b->is_nat()) return std::nullopt;
  const Nat& x = a->as_nat();
  const Nat& y = b->as_nat();
  switch (t.op()) {
    case Op::Add: return Value::nat(x + y);
    case Op::Sub:
      if (y > x) return std::nullopt;
      return Value::nat(x - y);
    case Op::Mul: return Value::nat(x * y);
    case Op::Div:
      if (y == 0) return std::nullopt;
      return Value::nat(x / y);
    case Op::Mod:
      if (y == 0) return std::nullopt;
      return Value::nat(x % y);
    case Op::Lt: return Value::boolean(x < y);
    case Op::Le: return Value::boolean(x <= y);
    case Op::Gt: return Value::boolean(x > y);
    case Op::Ge: return Value::boolean(x >= y);
    default: break;
  }
  throw std::logic_error("eval: unhandled operator");
}

bool holds(const Term& t, const Env& env) {
  auto v = eval(t, env);
  return v && v->is_bool() && v->as_bool();
}

// ---------------------------------------------------------------- printing

namespace {

enum Level { kOr = 1, kAnd = 2, kEq = 3, kRel = 4, kCons = 5, kAdd = 6, kMul = 7, kUnary = 8, kAtom = 9 };

struct Printer {
  bool keyed = false;
  bool asrt = false;
  std::string out;

  static const char* binop(Op op) {
    switch (op) {
      case Op::Add: return " + ";
      case Op::Sub: return " - ";
      case Op::Mul: return " * ";
      case Op::Div: return " / ";
      case Op::Mod: return " % ";
      case Op::Lt: return " < ";
      case Op::Le: return " <= ";
      case Op::Gt: return " > ";
      case Op::Ge: return " >= ";
      case Op::Eq: return " == ";
      case Op::And: return " && ";
      case Op::Or: return " || ";
      case Op::Cons: return " :: ";
      default: return " ? ";
    }
  }

  static int level(const Term& t) {
    switch (t.op()) {
      case Op::Or: return kOr;
      case Op::And: return kAnd;
      case Op::Eq: return kEq;
      case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::IsType: return kRel;
      case Op::Cons: return kCons;
      case Op::Add: case Op::Sub: return kAdd;
      case Op::Mul: case Op::Div: case Op::Mod: return kMul;
      case Op::Not:
        if (t.arg(0).op() == Op::Eq) return kEq;
        return kUnary;
      default: return kAtom;
    }
  }

  void var(const Term& t) {
    if (keyed) {
      switch (t.var_kind()) {
        case VarKind::Prog: break;
        case VarKind::Logic: out += '$'; break;
        case VarKind::Sym: out += '#'; break;
        case VarKind::Hole: out += '?'; break;
      }
    } else if (t.var_kind() == VarKind::Sym) {
      out += '#';
    }
    out += t.name();
  }

  void print(const Term& t, int ctx) {
    int lv = level(t);
    bool force = asrt && t.op() == Op::Mul;
    bool paren = lv < ctx || force;
    if (paren) out += '(';
    body(t, lv);
    if (paren) out += ')';
  }

  void body(const Term& t, int lv) {
    switch (t.op()) {
      case Op::Lit: out += t.value().to_string(); return;
      case Op::Var: var(t); return;
      case Op::Not:
        if (t.arg(0).op() == Op::Eq) {
          print(t.arg(0).arg(0), kEq + 1);
          out += " != ";
          print(t.arg(0).arg(1), kEq + 1);
          return;
        }
        out += '!';
        print(t.arg(0), kUnary);
        return;
      case Op::Len: out += "len("; print(t.arg(0), 0); out += ')'; return;
      case Op::Hd: out += "hd("; print(t.arg(0), 0); out += ')'; return;
      case Op::Tl: out += "tl("; print(t.arg(0), 0); out += ')'; return;
      case Op::NotTrue: out += "nottrue("; print(t.arg(0), 0); out += ')'; return;
      case Op::IsType:
        print(t.arg(0), kRel + 1);
        out += " in ";
        out += type_name(t.type());
        return;
      case Op::List: {
        out += '[';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          print(t.arg(i), 0);
        }
        out += ']';
        return;
      }
      case Op::Cons:
        print(t.arg(0), lv + 1);
        out += binop(t.op());
        print(t.arg(1), lv);
        return;
      case Op::Eq: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
        print(t.arg(0), lv + 1);
        out += binop(t.op());
        print(t.arg(1), lv + 1);
        return;
      default:
        print(t.arg(0), lv);
        out += binop(t.op());
        print(t.arg(1), lv + 1);
        return;
    }
  }
};

}  // namespace

const std::string& Term::key() const {
  std::call_once(p_->key_once, [this] {
    Printer p;
    p.keyed = true;
    p.print(*this, 0);
    p_->key = std::move(p.out);
  });
  return p_->key;
}

std::string to_string(const Term& t) {
  if (!t) return "<null>";
  Printer p;
  p.print(t, 0);
  return p.out;
}

std::string to_string_asrt(const Term& t) {
  Printer p;
  p.asrt = true;
  p.print(t, kAnd);
  return p.out;
}

// ---------------------------------------------------------------- utilities

void collect_vars(const Term& t, VarKind k, std::set<std::string>& out) {
  if (t.op() == Op::Var) {
    if (t.var_kind() == k) out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, k, out);
}

std::set<std::string> vars_of(const Term& t, VarKind k) {
  std::set<std::string> out;
  collect_vars(t, k, out);
  return out;
}

bool has_vars(const Term& t) {
  if (t.op() == Op::Var) return true;
  for (const auto& a : t.args())
    if (has_vars(a)) return true;
  return false;
}

bool mentions_var(const Term& t, VarKind k, const std::string& name) {
  if (t.op() == Op::Var) return t.var_kind() == k && t.name() == name;
  for (const auto& a : t.args())
    if (mentions_var(a, k, name)) return true;
  return false;
}

namespace {

Term rebuild(const Term& t, std::vector<Term> args) {
  switch (t.op()) {
    case Op::IsType: return Term::is_type(std::move(args[0]), t.type());
    case Op::List: return Term::list(std::move(args));
    case Op::Not: case Op::Len: case Op::Hd: case Op::Tl: case Op::NotTrue:
      return Term::unary(t.op(), std::move(args[0]));
    default: return Term::binary(t.op(), std::move(args[0]), std::move(args[1]));
  }
}

}  // namespace

Term substitute(const Term& t, const VarMap& fn) {
  if (t.op() == Op::Lit) return t;
  if (t.op() == Op::Var) {
    auto r = fn(t.var_kind(), t.name());
    return r ? *r : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute(a, fn));
    if (args.back().hash() != a.hash() || !(args.back() == a)) changed = true;
  }
  if (!changed) return t;
  return rebuild(t, std::move(args));
}

Term substitute(const Term& t, VarKind k, const std::map<std::string, Term>& m) {
  return substitute(t, [&](VarKind vk, const std::string& n) -> std::optional<Term> {
    if (vk != k) return std::nullopt;
    auto it = m.find(n);
    if (it == m.end()) return std::nullopt;
    return it->second;
  });
}

bool is_total(const Term& t) {
  switch (t.op()) {
    case Op::Lit: case Op::Var: case Op::NotTrue: return true;
    case Op::Eq: case Op::IsType: case Op::List:
      for (const auto& a : t.args())
        if (!is_total(a)) return false;
      return true;
    default: return false;
  }
}

bool bool_sorted(const Term& t) {
  switch (t.op()) {
    case Op::Lit: return t.value().is_bool();
    case Op::Not: case Op::IsType: case Op::NotTrue:
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::Eq:
    case Op::And: case Op::Or:
      return true;
    default: return false;
  }
}

namespace f {

Term tt() { return Term::boolean(true); }
Term ff() { return Term::boolean(false); }

Term conj(const Term& a, const Term& b) {
  if (a.is_false() || b.is_false()) return ff();
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a == b) return a;
  return Term::binary(Op::And, a, b);
}

Term conj(const std::vector<Term>& xs) {
  Term acc = tt();
  for (const auto& x : xs) acc = conj(acc, x);
  return acc;
}

Term disj(const Term& a, const Term& b) {
  if (a.is_true() || b.is_true()) return tt();
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  if (a == b) return a;
  return Term::binary(Op::Or, a, b);
}

Term neg(const Term& a) {
  if (a.is_lit() && a.value().is_bool()) return Term::boolean(!a.value().as_bool());
  if (a.op() == Op::Not && bool_sorted(a.arg(0))) return a.arg(0);
  return Term::unary(Op::Not, a);
}

Term eq(const Term& a, const Term& b) {
  if (a == b && is_total(a)) return tt();
  if (a.is_lit() && !b.is_lit()) return Term::binary(Op::Eq, b, a);
  return Term::binary(Op::Eq, a, b);
}

Term neq(const Term& a, const Term& b) { return neg(eq(a, b)); }

Term in(const Term& a, Type t) { return Term::is_type(a, t); }
Term not_in(const Term& a, Type t) { return neg(Term::is_type(a, t)); }

void flatten(const Term& t, std::vector<Term>& out) {
  if (t.is_true()) return;
  if (t.op() == Op::And) {
    flatten(t.arg(0), out);
    flatten(t.arg(1), out);
    return;
  }
  out.push_back(t);
}

}  // namespace f

Term operator+(const Term& a, const Term& b) { return Term::binary(Op::Add, a, b); }
Term operator-(const Term& a, const Term& b) { return Term::binary(Op::Sub, a, b); }

}  // namespace cse
