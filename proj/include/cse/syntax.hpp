#pragma once

#include "cse/assertion.hpp"

#include <stdexcept>
#include <string>

namespace cse {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col);
  int line;
  int col;
};

Program parse_program(const std::string& src);
Cmd parse_cmd(const std::string& src);
// Identifiers become variables of the given kind; #x is always symbolic.
Term parse_expr(const std::string& src, VarKind kind = VarKind::Prog);
// Identifiers are logical variables, except ret and err.
Asrt parse_asrt(const std::string& src);

std::string print_cmd(const Cmd& c, int indent = 0);
std::string print_asrt(const Asrt& p);
std::string print_function(const FunctionDef& f);
std::string print_pred(const PredDef& p);
std::string print_spec(const Spec& s);
std::string print_program(const Program& p);

bool is_reserved(const std::string& id);

}  // namespace cse
