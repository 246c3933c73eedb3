#include "cse/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cse {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      col(c) {}

namespace {

const std::set<std::string> kReserved = {
    "skip", "error", "free", "assume", "assert", "if", "else", "fold", "unfold",
    "nondet", "sym", "new", "return", "function", "pred", "exact", "spec", "main",
    "len", "hd", "tl", "nottrue", "true", "false", "nil", "in", "emp", "False",
    "exists", "freed",
};

const std::set<std::string> kBuiltins = {"len", "hd", "tl", "nottrue"};

enum class Tok { Ident, Nat, Str, Sym, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& s) {
  static const char* puncts[] = {":=", "==>", "==", "!=", "<=", ">=", "&&", "||", "::", "->",
                                 "+",  "-",   "*",  "/",  "%",  "<",  ">",  "!",  "(",  ")",
                                 "[",  "]",   "{",  "}",  ",",  ";",  ":",  "."};
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
      std::size_t j = i + (c == '#' ? 1 : 0);
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (c == '#' && j == i + 1) throw ParseError("expected name after #", l, cl);
      std::string text = s.substr(i + (c == '#' ? 1 : 0), j - i - (c == '#' ? 1 : 0));
      out.push_back({c == '#' ? Tok::Sym : Tok::Ident, text, l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Nat, s.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (c == '"') {
      std::string text;
      adv(1);
      while (true) {
        if (i >= s.size()) throw ParseError("unterminated string", l, cl);
        char d = s[i];
        if (d == '"') {
          adv(1);
          break;
        }
        if (d == '\\') {
          if (i + 1 >= s.size()) throw ParseError("bad escape", line, col);
          char e = s[i + 1];
          switch (e) {
            case 'n': text += '\n'; break;
            case 't': text += '\t'; break;
            case '"': text += '"'; break;
            case '\\': text += '\\'; break;
            default: throw ParseError("bad escape", line, col);
          }
          adv(2);
          continue;
        }
        text += d;
        adv(1);
      }
      out.push_back({Tok::Str, text, l, cl});
      continue;
    }
    bool found = false;
    for (const char* p : puncts) {
      std::size_t n = std::char_traits<char>::length(p);
      if (s.compare(i, n, p) == 0) {
        out.push_back({Tok::Punct, p, l, cl});
        adv(n);
        found = true;
        break;
      }
    }
    if (!found) throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  bool asrt = false;
  VarKind ident_kind = VarKind::Prog;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(const char* p, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Tok::Punct && t.text == p;
  }
  bool is_kw(const char* w, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Tok::Ident && t.text == w;
  }
  bool accept(const char* p) {
    if (!is(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_kw(const char* w) {
    if (!is_kw(w)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " near " + near, t.line, t.col);
  }
  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'");
  }
  void expect_kw(const char* w) {
    if (!accept_kw(w)) fail(std::string("expected '") + w + "'");
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kReserved.count(t.text)) fail("expected identifier");
    ++pos_;
    return t.text;
  }
  void done() {
    if (!at_end()) fail("unexpected input");
  }

  // ------------------------------------------------------------ expressions

  Term expr() { return expr_or(); }

  Term expr_or() {
    Term l = expr_and();
    while (!(asrt && bare_) && is("||")) {
      ++pos_;
      l = Term::node(Op::Or, {l, expr_and()});
    }
    return l;
  }

  Term expr_and() {
    Term l = expr_eq();
    while (accept("&&")) l = Term::node(Op::And, {l, expr_eq()});
    return l;
  }

  Term expr_eq() {
    Term l = expr_rel();
    if (accept("==")) return Term::node(Op::Eq, {l, expr_rel()});
    if (accept("!=")) return Term::node(Op::Not, {Term::node(Op::Eq, {l, expr_rel()})});
    return l;
  }

  Term expr_rel() {
    Term l = expr_cons();
    if (accept_kw("in")) {
      const Token& t = peek();
      auto ty = t.kind == Tok::Ident ? type_from_name(t.text) : std::nullopt;
      if (!ty) fail("expected type name");
      ++pos_;
      return Term::node(Op::IsType, {l}, *ty);
    }
    static const std::pair<const char*, Op> rels[] = {
        {"<=", Op::Le}, {">=", Op::Ge}, {"<", Op::Lt}, {">", Op::Gt}};
    for (const auto& [p, op] : rels)
      if (accept(p)) return Term::node(op, {l, expr_cons()});
    return l;
  }

  Term expr_cons() {
    Term l = expr_add();
    if (accept("::")) return Term::node(Op::Cons, {l, expr_cons()});
    return l;
  }

  Term expr_add() {
    Term l = expr_mul();
    while (true) {
      if (accept("+")) l = Term::node(Op::Add, {l, expr_mul()});
      else if (accept("-")) l = Term::node(Op::Sub, {l, expr_mul()});
      else return l;
    }
  }

  Term expr_mul() {
    Term l = expr_unary();
    while (true) {
      if (!(asrt && bare_) && accept("*")) l = Term::node(Op::Mul, {l, expr_unary()});
      else if (accept("/")) l = Term::node(Op::Div, {l, expr_unary()});
      else if (accept("%")) l = Term::node(Op::Mod, {l, expr_unary()});
      else return l;
    }
  }

  Term expr_unary() {
    if (accept("!")) return Term::node(Op::Not, {expr_unary()});
    return atom();
  }

  Term nested() {
    bool saved = bare_;
    bare_ = false;
    Term t = expr();
    bare_ = saved;
    return t;
  }

  std::vector<Term> expr_list(const char* close) {
    std::vector<Term> out;
    if (is(close)) return out;
    bool saved = bare_;
    bare_ = false;
    do {
      out.push_back(expr());
    } while (accept(","));
    bare_ = saved;
    return out;
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Nat:
        ++pos_;
        return Term::nat(Nat(t.text));
      case Tok::Str:
        ++pos_;
        return Term::str(t.text);
      case Tok::Sym:
        ++pos_;
        return Term::svar(t.text);
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false") {
          ++pos_;
          return Term::boolean(t.text == "true");
        }
        if (t.text == "nil") {
          ++pos_;
          return Term::nil();
        }
        if (kBuiltins.count(t.text)) {
          static const std::map<std::string, Op> ops = {
              {"len", Op::Len}, {"hd", Op::Hd}, {"tl", Op::Tl}, {"nottrue", Op::NotTrue}};
          Op op = ops.at(t.text);
          ++pos_;
          expect("(");
          Term a = nested();
          expect(")");
          return Term::node(op, {a});
        }
        std::string name = ident();
        if (asrt) {
          if (name == "ret" || name == "err") return Term::pvar(name);
          return Term::lvar(name);
        }
        return Term::var(ident_kind, name);
      }
      case Tok::Punct:
        if (accept("(")) {
          Term e = nested();
          expect(")");
          return e;
        }
        if (accept("[")) {
          auto items = expr_list("]");
          expect("]");
          return Term::node(Op::List, std::move(items));
        }
        break;
      default: break;
    }
    fail("expected expression");
  }

  // ------------------------------------------------------------- assertions

  Asrt assertion() {
    bool saved_asrt = asrt, saved_bare = bare_;
    asrt = true;
    bare_ = true;
    Asrt a = asrt_or();
    asrt = saved_asrt;
    bare_ = saved_bare;
    return a;
  }

  Asrt asrt_or() {
    Asrt l = asrt_impl();
    while (accept("||")) l = as::disj(l, asrt_impl());
    return l;
  }

  Asrt asrt_impl() {
    Asrt l = asrt_star();
    if (accept("==>")) return as::impl(l, asrt_impl());
    return l;
  }

  Asrt asrt_star() {
    Asrt l = asrt_atom();
    while (accept("*")) {
      Asrt r = asrt_atom();
      if (l->kind == AsrtKind::Emp) l = r;
      else if (r->kind != AsrtKind::Emp) l = as::star(l, r);
    }
    return l;
  }

  bool at_asrt_follow() const {
    return is("*") || is("||") || is("==>") || is(")") || is(";") || is("}") || at_end();
  }

  Asrt asrt_atom() {
    if (accept_kw("emp")) return as::emp();
    if (accept_kw("False")) return as::ff();
    if (accept_kw("exists")) {
      std::vector<std::string> vars;
      do {
        vars.push_back(ident());
      } while (accept(","));
      expect(".");
      return as::exists(std::move(vars), asrt_or());
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident && !kReserved.count(t.text) && is("(", 1)) {
      std::string name = ident();
      expect("(");
      auto ins = expr_list(";");
      std::vector<Term> outs;
      if (accept(";")) outs = expr_list(")");
      expect(")");
      return as::pred(std::move(name), std::move(ins), std::move(outs));
    }
    if (is("(")) {
      std::size_t save = pos_;
      try {
        Asrt a = expr_atom();
        if (at_asrt_follow()) return a;
      } catch (const ParseError&) {
      }
      pos_ = save;
      expect("(");
      bool saved = bare_;
      bare_ = true;
      Asrt a = asrt_or();
      bare_ = saved;
      expect(")");
      return a;
    }
    return expr_atom();
  }

  Asrt expr_atom() {
    Term e = expr();
    if (!accept("->")) return as::pure(e);
    if (accept_kw("freed")) return as::freed(e);
    std::vector<Asrt> cells;
    cells.push_back(as::cell(e, expr()));
    for (std::uint64_t i = 1; accept(","); ++i)
      cells.push_back(as::cell(Term::node(Op::Add, {e, Term::nat(i)}), expr()));
    return as::star(cells);
  }

  // --------------------------------------------------------------- commands

  std::vector<std::string> ident_list(const char* close) {
    std::vector<std::string> out;
    if (is(close)) return out;
    do {
      out.push_back(ident());
    } while (accept(","));
    return out;
  }

  Cmd cmd_seq() {
    std::vector<Cmd> cs;
    while (!is("}") && !is_kw("return") && !at_end()) {
      cs.push_back(command());
      if (!accept(";")) break;
    }
    return cmd::seq(cs);
  }

  Cmd block() {
    expect("{");
    Cmd c = cmd_seq();
    expect("}");
    return c;
  }

  std::vector<Term> call_args() {
    expect("(");
    auto args = expr_list(")");
    expect(")");
    return args;
  }

  Term paren_expr() {
    expect("(");
    Term e = expr();
    expect(")");
    return e;
  }

  std::string target() {
    const Token& t = peek();
    std::string x = ident();
    if (x == "ret" || x == "err")
      throw ParseError("cannot assign to '" + x + "'", t.line, t.col);
    return x;
  }

  bool at_cmd_end() const { return is(";") || is("}") || at_end(); }

  Cmd command() {
    if (accept_kw("skip")) return cmd::skip();
    if (accept_kw("error")) return cmd::error(paren_expr());
    if (accept_kw("free")) return cmd::dealloc(paren_expr());
    if (accept_kw("assume")) return cmd::assume(paren_expr());
    if (accept_kw("assert")) return cmd::assert_(paren_expr());
    if (accept_kw("if")) {
      Term c = paren_expr();
      Cmd a = block();
      Cmd b = cmd::skip();
      if (accept_kw("else")) b = is_kw("if") ? command() : block();
      return cmd::ite(c, a, b);
    }
    if (accept_kw("fold")) {
      std::string p = ident();
      return cmd::fold(p, call_args());
    }
    if (accept_kw("unfold")) {
      std::string p = ident();
      return cmd::unfold(p, call_args());
    }
    if (is("{")) return block();
    if (accept("[")) {
      Term a = expr();
      expect("]");
      expect(":=");
      return cmd::mutate(a, expr());
    }
    std::string x = target();
    expect(":=");
    if (accept_kw("nondet")) return cmd::nondet(x);
    if (accept_kw("sym")) return cmd::sym(x);
    if (accept_kw("new")) {
      expect("(");
      const Token& t = peek();
      if (t.kind != Tok::Nat) fail("expected allocation size");
      ++pos_;
      expect(")");
      return cmd::alloc(x, Nat(t.text));
    }
    if (is("[")) {
      std::size_t save = pos_;
      ++pos_;
      try {
        Term e = expr();
        if (accept("]") && at_cmd_end()) return cmd::lookup(x, e);
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident && !kReserved.count(t.text) && is("(", 1)) {
      std::string f = ident();
      return cmd::call(x, f, call_args());
    }
    return cmd::assign(x, expr());
  }

  // ---------------------------------------------------------------- program

  FunctionDef function() {
    FunctionDef f;
    f.name = ident();
    expect("(");
    f.params = ident_list(")");
    expect(")");
    std::set<std::string> seen;
    for (const auto& p : f.params) {
      if (p == "ret" || p == "err") fail("parameter may not be named " + p);
      if (!seen.insert(p).second) fail("duplicate parameter " + p);
    }
    expect("{");
    f.body = cmd_seq();
    f.ret = Term::nil();
    if (accept_kw("return")) {
      f.ret = expr();
      accept(";");
    }
    expect("}");
    return f;
  }

  PredDef pred(bool exact) {
    PredDef p;
    p.exact = exact;
    p.name = ident();
    expect("(");
    p.ins = ident_list(";");
    if (accept(";")) p.outs = ident_list(")");
    expect(")");
    expect("{");
    Asrt body = assertion();
    expect("}");
    for (const auto& d : disjuncts(body)) {
      auto [vars, inner] = open_exists(d);
      if (!is_star_of_simple(inner)) fail("predicate " + p.name + ": disjunct is not a *-conjunction");
      p.disjuncts.push_back({vars, inner});
    }
    return p;
  }

  Spec spec() {
    Spec s;
    s.name = ident();
    const Token& m = peek();
    auto mode = m.kind == Tok::Ident ? mode_from_name(m.text) : std::nullopt;
    if (!mode || *mode == Mode::EX) fail("expected ox or ux");
    ++pos_;
    s.mode = *mode;
    s.fname = ident();
    expect("(");
    s.params = ident_list(")");
    expect(")");
    s.pre = as::emp();
    s.ok = as::ff();
    s.err = as::ff();
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected pre, ok or err");
      std::string label = t.text;
      ++pos_;
      expect(":");
      Asrt a = assertion();
      if (label == "pre") s.pre = a;
      else if (label == "ok") s.ok = a;
      else if (label == "err") s.err = a;
      else throw ParseError("unknown spec clause " + label, t.line, t.col);
      if (!accept(";") && !is("}")) fail("expected ';'");
    }
    return s;
  }

  Program program() {
    Program p;
    while (!at_end()) {
      if (accept_kw("function")) {
        auto f = function();
        if (p.find_function(f.name)) fail("duplicate function " + f.name);
        p.functions.push_back(std::move(f));
      } else if (is_kw("pred") || is_kw("exact")) {
        bool exact = accept_kw("exact");
        expect_kw("pred");
        auto d = pred(exact);
        if (p.find_pred(d.name)) fail("duplicate predicate " + d.name);
        p.preds.push_back(std::move(d));
      } else if (accept_kw("spec")) {
        auto s = spec();
        if (p.find_spec(s.name)) fail("duplicate spec " + s.name);
        p.specs.push_back(std::move(s));
      } else if (accept_kw("main")) {
        if (p.main) fail("duplicate main");
        p.main = block();
      } else {
        fail("expected function, pred, spec or main");
      }
    }
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool bare_ = false;
};

}  // namespace

bool is_reserved(const std::string& id) { return kReserved.count(id) > 0; }

Program parse_program(const std::string& src) {
  Parser p(src);
  return p.program();
}

Cmd parse_cmd(const std::string& src) {
  Parser p(src);
  Cmd c = p.cmd_seq();
  p.done();
  return c;
}

Term parse_expr(const std::string& src, VarKind kind) {
  Parser p(src);
  p.ident_kind = kind;
  Term t = p.expr();
  p.done();
  return t;
}

Asrt parse_asrt(const std::string& src) {
  Parser p(src);
  Asrt a = p.assertion();
  p.done();
  return a;
}

}  // namespace cse
