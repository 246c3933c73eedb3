#include "cse/solver.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace cse {

namespace {

const char* kPrelude = R"((set-logic ALL)
(declare-datatypes ((V 0) (L 0))
  (((vnat (nv Int)) (vbool (bv Bool)) (vstr (sv Int)) (vnil) (vlist (lv L)))
   ((lnil) (lcons (lh V) (lt L)))))
(define-funs-rec ((okv ((v V)) Bool) (okl ((l L)) Bool))
  ((ite ((_ is vnat) v) (>= (nv v) 0) (ite ((_ is vlist) v) (okl (lv v)) true))
   (ite ((_ is lcons) l) (and (okv (lh l)) (okl (lt l))) true)))
(define-fun-rec llen ((l L)) Int (ite ((_ is lcons) l) (+ 1 (llen (lt l))) 0))
)";

class Encoder {
 public:
  std::ostringstream decls;

  std::string value(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Nat: return "(vnat " + v.as_nat().str() + ")";
      case Value::Kind::Bool: return std::string("(vbool ") + (v.as_bool() ? "true" : "false") + ")";
      case Value::Kind::Str: return "(vstr " + std::to_string(str_id(v.as_str())) + ")";
      case Value::Kind::Nil: return "vnil";
      case Value::Kind::List: {
        std::string l = "lnil";
        const auto& xs = v.as_list();
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) l = "(lcons " + value(*it) + " " + l + ")";
        return "(vlist " + l + ")";
      }
    }
    return "vnil";
  }

  // Returns (definedness, value) names for t.
  std::pair<std::string, std::string> term(const Term& t) {
    auto it = memo_.find(t.key());
    if (it != memo_.end()) return it->second;
    std::pair<std::string, std::string> r;
    if (t.op() == Op::Lit) {
      r = {"true", value(t.value())};
    } else if (t.op() == Op::Var) {
      std::string n = "x_" + std::to_string(vars_.size());
      vars_[t.key()] = n;
      decls << "(declare-const " << n << " V)\n(assert (okv " << n << "))\n";
      r = {"true", n};
    } else {
      std::vector<std::pair<std::string, std::string>> a;
      for (const auto& x : t.args()) a.push_back(term(x));
      auto [d, v] = node(t, a);
      std::string id = std::to_string(next_++);
      decls << "(declare-const d" << id << " Bool)\n(declare-const t" << id << " V)\n";
      decls << "(assert (= d" << id << " " << d << "))\n";
      decls << "(assert (=> d" << id << " (= t" << id << " " << v << ")))\n";
      r = {"d" + id, "t" + id};
    }
    memo_[t.key()] = r;
    return r;
  }

 private:
  static std::string is(const char* ctor, const std::string& x) {
    return std::string("((_ is ") + ctor + ") " + x + ")";
  }

  std::pair<std::string, std::string> node(const Term& t,
                                            const std::vector<std::pair<std::string, std::string>>& a) {
    auto both = [&](const char* extra) {
      return "(and " + a[0].first + " " + a[1].first + " " + extra + ")";
    };
    auto nats = "(and " + a[0].first + (a.size() > 1 ? " " + a[1].first : std::string()) + " " +
                is("vnat", a[0].second) + (a.size() > 1 ? " " + is("vnat", a[1].second) : std::string()) +
                ")";
    auto nv = [&](std::size_t i) { return "(nv " + a[i].second + ")"; };
    switch (t.op()) {
      case Op::Add: return {nats, "(vnat (+ " + nv(0) + " " + nv(1) + "))"};
      case Op::Sub:
        return {"(and " + nats + " (>= " + nv(0) + " " + nv(1) + "))",
                "(vnat (- " + nv(0) + " " + nv(1) + "))"};
      case Op::Mul: return {nats, "(vnat (* " + nv(0) + " " + nv(1) + "))"};
      case Op::Div:
        return {"(and " + nats + " (not (= " + nv(1) + " 0)))",
                "(vnat (div " + nv(0) + " " + nv(1) + "))"};
      case Op::Mod:
        return {"(and " + nats + " (not (= " + nv(1) + " 0)))",
                "(vnat (mod " + nv(0) + " " + nv(1) + "))"};
      case Op::Lt: return {nats, "(vbool (< " + nv(0) + " " + nv(1) + "))"};
      case Op::Le: return {nats, "(vbool (<= " + nv(0) + " " + nv(1) + "))"};
      case Op::Gt: return {nats, "(vbool (> " + nv(0) + " " + nv(1) + "))"};
      case Op::Ge: return {nats, "(vbool (>= " + nv(0) + " " + nv(1) + "))"};
      case Op::Eq: return {both(""), "(vbool (= " + a[0].second + " " + a[1].second + "))"};
      case Op::Not:
        return {"(and " + a[0].first + " " + is("vbool", a[0].second) + ")",
                "(vbool (not (bv " + a[0].second + ")))"};
      case Op::And:
        return {"(and " + a[0].first + " " + is("vbool", a[0].second) + " (or (not (bv " +
                    a[0].second + ")) (and " + a[1].first + " " + is("vbool", a[1].second) + ")))",
                "(vbool (and (bv " + a[0].second + ") (bv " + a[1].second + ")))"};
      case Op::Or:
        return {"(and " + a[0].first + " " + is("vbool", a[0].second) + " (or (bv " + a[0].second +
                    ") (and " + a[1].first + " " + is("vbool", a[1].second) + ")))",
                "(vbool (or (bv " + a[0].second + ") (bv " + a[1].second + ")))"};
      case Op::Len:
        return {"(and " + a[0].first + " " + is("vlist", a[0].second) + ")",
                "(vnat (llen (lv " + a[0].second + ")))"};
      case Op::Hd:
        return {"(and " + a[0].first + " " + is("vlist", a[0].second) + " " +
                    is("lcons", "(lv " + a[0].second + ")") + ")",
                "(lh (lv " + a[0].second + "))"};
      case Op::Tl:
        return {"(and " + a[0].first + " " + is("vlist", a[0].second) + " " +
                    is("lcons", "(lv " + a[0].second + ")") + ")",
                "(vlist (lt (lv " + a[0].second + ")))"};
      case Op::IsType: {
        std::string test = "true";
        switch (t.type()) {
          case Type::Val: break;
          case Type::Nat: test = is("vnat", a[0].second); break;
          case Type::Bool: test = is("vbool", a[0].second); break;
          case Type::Str: test = is("vstr", a[0].second); break;
          case Type::List: test = is("vlist", a[0].second); break;
        }
        return {a[0].first, "(vbool " + test + ")"};
      }
      case Op::NotTrue:
        return {"true", "(vbool (not (and " + a[0].first + " (= " + a[0].second + " (vbool true)))))"};
      case Op::Cons:
        return {both(is("vlist", a[1].second).c_str()),
                "(vlist (lcons " + a[0].second + " (lv " + a[1].second + ")))"};
      case Op::List: {
        std::string d = "(and true";
        std::string l = "lnil";
        for (const auto& x : a) d += " " + x.first;
        for (auto it = a.rbegin(); it != a.rend(); ++it) l = "(lcons " + it->second + " " + l + ")";
        return {d + ")", "(vlist " + l + ")"};
      }
      default: return {"false", "vnil"};
    }
  }

  int str_id(const std::string& s) {
    auto it = strs_.find(s);
    if (it != strs_.end()) return it->second;
    int id = static_cast<int>(strs_.size());
    strs_[s] = id;
    return id;
  }

  std::map<std::string, std::pair<std::string, std::string>> memo_;
  std::map<std::string, std::string> vars_;
  std::map<std::string, int> strs_;
  int next_ = 0;
};

}  // namespace

std::string smtlib_query(const Term& pc) {
  Encoder e;
  std::vector<Term> cs;
  f::flatten(pc, cs);
  std::string asserts;
  for (const auto& c : cs) {
    auto [d, v] = e.term(c);
    asserts += "(assert (and " + d + " (= " + v + " (vbool true))))\n";
  }
  // string ids are plain integers; literal strings get distinct ids
  return std::string(kPrelude) + e.decls.str() + asserts + "(check-sat)\n";
}

SatResult SmtSolver::check(const Term& pc) {
  ++stats_.queries;
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(pc.key());
    if (it != cache_.end()) {
      ++stats_.cache_hits;
      return {it->second, {}};
    }
  }
  std::string query = smtlib_query(pc);
  char tmpl[] = "/tmp/cse-smt-XXXXXX.smt2";
  int fd = mkstemps(tmpl, 5);
  if (fd < 0) return {Sat::Unknown, {}};
  {
    std::ofstream out(tmpl);
    out << query;
  }
  close(fd);
  std::string cmd = path_ + " " + tmpl + " 2>/dev/null";
  Sat result = Sat::Unknown;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[256];
    if (fgets(buf, sizeof buf, p)) {
      std::string line(buf);
      if (line.rfind("unsat", 0) == 0) result = Sat::Unsat;
      else if (line.rfind("sat", 0) == 0) result = Sat::Sat;
    }
    pclose(p);
  }
  std::remove(tmpl);
  if (result == Sat::Unknown) ++stats_.unknowns;
  std::lock_guard<std::mutex> g(mu_);
  cache_[pc.key()] = result;
  return {result, {}};
}

}  // namespace cse
