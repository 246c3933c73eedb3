#pragma once

#include "cse/assertion.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cse {

enum class Outcome : std::uint8_t { Ok, Err, Miss, Abort };
const char* outcome_name(Outcome o);

// nullopt marks a freed cell.
using CHeap = std::map<Nat, std::optional<Value>>;
using CStore = std::map<std::string, Value>;

struct CState {
  CStore store;
  CHeap heap;

  friend bool operator==(const CState& a, const CState& b) {
    return a.store == b.store && a.heap == b.heap;
  }
  friend bool operator<(const CState& a, const CState& b) {
    if (a.store != b.store) return a.store < b.store;
    return a.heap < b.heap;
  }
};

std::string to_string(const CState& s);

// Disjoint union; nullopt when stores disagree or heaps overlap.
std::optional<CState> compose_state(const CState& a, const CState& b);

struct Budget {
  // Values drawn by sym; nondet draws the Nat ones.
  std::vector<Value> domain = {Value::nat(0), Value::nat(1), Value::nat(2), Value::nil(),
                               Value::boolean(true), Value::boolean(false)};
  // Largest base address New may pick.
  Nat max_addr = 2;
  // false: one deterministic run (nondet/sym give 0, New takes the least fresh address).
  bool enumerate = true;
  std::size_t max_results = 200000;
};

struct ConcreteResult {
  Outcome outcome;
  CState state;

  friend bool operator==(const ConcreteResult& a, const ConcreteResult& b) {
    return a.outcome == b.outcome && a.state == b.state;
  }
  friend bool operator<(const ConcreteResult& a, const ConcreteResult& b) {
    if (a.outcome != b.outcome) return a.outcome < b.outcome;
    return a.state < b.state;
  }
};

struct ConcreteStats {
  std::size_t fuel_exhausted = 0;
  bool truncated = false;
};

// All outcomes of running c from s, sorted and deduplicated.
std::vector<ConcreteResult> exec_concrete(const Program& prog, const CState& s, const Cmd& c,
                                          int fuel, const Budget& budget,
                                          ConcreteStats* stats = nullptr);

// Store for a call: params bound to args, locals to nil.
CStore call_store(const FunctionDef& f, const std::vector<Value>& args);

namespace errval {
Value expr_eval(const Term& e);
Value type(const Term& e, const Value& v, Type t);
Value missing_cell(const Term& e, const Nat& n);
Value use_after_free(const Term& e, const Nat& n);
Value error(const Value& v);
Value param_count(const std::string& f);
Value no_func(const std::string& f);
Value assert_fail(const Term& e);
}  // namespace errval

}  // namespace cse
