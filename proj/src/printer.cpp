#include "cse/syntax.hpp"

namespace cse {

namespace {

std::string pad(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

std::string join_terms(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ts[i]);
  }
  return out;
}

std::string join_ids(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i];
  }
  return out;
}

std::string rhs(const Term& e) {
  std::string s = to_string(e);
  if (!s.empty() && s[0] == '[') return "(" + s + ")";
  return s;
}

void cmd_lines(const Cmd& c, int ind, std::string& out);

void block(const Cmd& c, int ind, std::string& out) {
  out += "{\n";
  cmd_lines(c, ind + 1, out);
  out += "\n" + pad(ind) + "}";
}

void cmd_lines(const Cmd& c, int ind, std::string& out) {
  switch (c->kind) {
    case CmdKind::Seq:
      if (c->c1->kind == CmdKind::Seq) {
        out += pad(ind);
        block(c->c1, ind, out);
      } else {
        cmd_lines(c->c1, ind, out);
      }
      out += ";\n";
      cmd_lines(c->c2, ind, out);
      return;
    case CmdKind::If:
      out += pad(ind) + "if (" + to_string(c->e1) + ") ";
      block(c->c1, ind, out);
      out += " else ";
      block(c->c2, ind, out);
      return;
    default:
      out += pad(ind) + print_cmd(c, 0);
  }
}

enum { kOrA = 1, kImplA = 2, kStarA = 3, kAtomA = 4 };

int asrt_level(const Asrt& p) {
  switch (p->kind) {
    case AsrtKind::Or: return kOrA;
    case AsrtKind::Impl: return kImplA;
    case AsrtKind::Star: return kStarA;
    case AsrtKind::Exists: return 0;
    default: return kAtomA;
  }
}

bool leftmost_pure(const Asrt& p) {
  switch (p->kind) {
    case AsrtKind::Pure: case AsrtKind::Cell: case AsrtKind::Freed: return true;
    case AsrtKind::Or: case AsrtKind::Impl: case AsrtKind::Star: return leftmost_pure(p->a);
    default: return false;
  }
}

void asrt_out(const Asrt& p, int ctx, std::string& out) {
  int lv = asrt_level(p);
  bool paren = lv < ctx;
  if (paren) {
    out += '(';
    // keeps the parser from reading a parenthesised disjunction as one pure term
    if (p->kind == AsrtKind::Or && leftmost_pure(p)) out += "emp * ";
  }
  switch (p->kind) {
    case AsrtKind::Pure: out += to_string_asrt(p->e1); break;
    case AsrtKind::False: out += "False"; break;
    case AsrtKind::Emp: out += "emp"; break;
    case AsrtKind::Cell:
      out += to_string_asrt(p->e1) + " -> " + to_string_asrt(p->e2);
      break;
    case AsrtKind::Freed: out += to_string_asrt(p->e1) + " -> freed"; break;
    case AsrtKind::Pred:
      out += p->name + "(" + join_terms(p->ins) + "; " + join_terms(p->outs) + ")";
      break;
    case AsrtKind::Exists:
      out += "exists " + join_ids(p->vars) + ". ";
      asrt_out(p->a, 0, out);
      break;
    case AsrtKind::Or:
      asrt_out(p->a, kOrA, out);
      out += " || ";
      asrt_out(p->b, kOrA + 1, out);
      break;
    case AsrtKind::Impl:
      asrt_out(p->a, kImplA + 1, out);
      out += " ==> ";
      asrt_out(p->b, kImplA, out);
      break;
    case AsrtKind::Star:
      asrt_out(p->a, kStarA, out);
      out += " * ";
      asrt_out(p->b, kStarA + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print_cmd(const Cmd& c, int indent) {
  switch (c->kind) {
    case CmdKind::Skip: return pad(indent) + "skip";
    case CmdKind::Assign: return pad(indent) + c->x + " := " + rhs(c->e1);
    case CmdKind::Nondet: return pad(indent) + c->x + " := nondet";
    case CmdKind::Sym: return pad(indent) + c->x + " := sym";
    case CmdKind::Error: return pad(indent) + "error(" + to_string(c->e1) + ")";
    case CmdKind::Lookup: return pad(indent) + c->x + " := [" + to_string(c->e1) + "]";
    case CmdKind::Mutate:
      return pad(indent) + "[" + to_string(c->e1) + "] := " + to_string(c->e2);
    case CmdKind::New: return pad(indent) + c->x + " := new(" + c->n.str() + ")";
    case CmdKind::Free: return pad(indent) + "free(" + to_string(c->e1) + ")";
    case CmdKind::Call:
      return pad(indent) + c->x + " := " + c->fname + "(" + join_terms(c->args) + ")";
    case CmdKind::Fold: return pad(indent) + "fold " + c->fname + "(" + join_terms(c->args) + ")";
    case CmdKind::Unfold:
      return pad(indent) + "unfold " + c->fname + "(" + join_terms(c->args) + ")";
    case CmdKind::Assume: return pad(indent) + "assume(" + to_string(c->e1) + ")";
    case CmdKind::Assert: return pad(indent) + "assert(" + to_string(c->e1) + ")";
    case CmdKind::Seq: case CmdKind::If: {
      std::string out;
      cmd_lines(c, indent, out);
      return out;
    }
  }
  return "?";
}

std::string print_asrt(const Asrt& p) {
  std::string out;
  asrt_out(p, 0, out);
  return out;
}

std::string print_function(const FunctionDef& f) {
  std::string out = "function " + f.name + "(" + join_ids(f.params) + ") {\n";
  cmd_lines(f.body, 1, out);
  out += ";\n" + pad(1) + "return " + to_string(f.ret) + "\n}\n";
  return out;
}

std::string print_pred(const PredDef& p) {
  std::string out = p.exact ? "exact pred " : "pred ";
  out += p.name + "(" + join_ids(p.ins) + "; " + join_ids(p.outs) + ") {\n";
  for (std::size_t i = 0; i < p.disjuncts.size(); ++i) {
    const auto& d = p.disjuncts[i];
    out += pad(1);
    if (i) out += "|| ";
    Asrt body = as::exists(d.exists, d.body);
    // a disjunct binding variables would swallow the rest if left bare
    asrt_out(body, i + 1 < p.disjuncts.size() ? kOrA : kOrA + 1, out);
    out += "\n";
  }
  out += "}\n";
  return out;
}

std::string print_spec(const Spec& s) {
  std::string out = "spec " + s.name + " " + mode_name(s.mode) + " " + s.fname + "(" +
                    join_ids(s.params) + ") {\n";
  out += pad(1) + "pre: " + print_asrt(s.pre) + ";\n";
  if (s.ok->kind != AsrtKind::False) out += pad(1) + "ok: " + print_asrt(s.ok) + ";\n";
  if (s.err->kind != AsrtKind::False) out += pad(1) + "err: " + print_asrt(s.err) + ";\n";
  out += "}\n";
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  auto sep = [&out] {
    if (!out.empty()) out += "\n";
  };
  for (const auto& d : p.preds) {
    sep();
    out += print_pred(d);
  }
  for (const auto& f : p.functions) {
    sep();
    out += print_function(f);
  }
  for (const auto& s : p.specs) {
    sep();
    out += print_spec(s);
  }
  if (p.main) {
    sep();
    out += "main {\n";
    cmd_lines(p.main, 1, out);
    out += "\n}\n";
  }
  return out;
}

}  // namespace cse
