#pragma once

#include "cse/symstate.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cse {

enum class Tri : std::uint8_t { False, True, Unknown };
const char* tri_name(Tri t);

using Subst = std::map<std::string, Value>;  // logical variable -> value

// theta, (s, h) |= P with predicates unfolded at most depth times.
// Unknown when the depth runs out, or when an unconstrained variable had
// to be guessed and no guess worked.
Tri assertion_sat(const Subst& theta, const CState& st, const Asrt& p, const Program& prog,
                  int depth = 6);

// eps, sigma |= sym state: the store is eps(store) and the heap splits into
// eps(heap) and a part satisfying the predicate instances.
Tri satisfies(const Model& eps, const CState& st, const SymState& s, const Program& prog,
              int depth = 6);

struct AsrtModel {
  Subst theta;  // covers lv(P)
  CHeap heap;

  friend bool operator<(const AsrtModel& a, const AsrtModel& b) {
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.heap < b.heap;
  }
  friend bool operator==(const AsrtModel& a, const AsrtModel& b) {
    return a.theta == b.theta && a.heap == b.heap;
  }
};

// Models of P extending theta, generated over a value domain; free variables
// that nothing determines range over the domain. Implications are not
// supported. Sorted and deduplicated, at most limit entries.
std::vector<AsrtModel> asrt_models(const Asrt& p, const Subst& theta, const CStore& store,
                                   const Program& prog, const std::vector<Value>& domain,
                                   int depth = 3, std::size_t limit = 5000);

// Symbolic state as an assertion: symbolic variables become logical
// variables of the same name. Only the listed store variables are kept
// (all of them when keep is nullopt).
Asrt to_asrt(const SymState& s, const std::optional<std::vector<std::string>>& keep = std::nullopt);
// Same renaming on terms.
Term sym_to_logic(const Term& t);
Term logic_to_sym(const Term& t, const std::set<std::string>& names);

// Internal view of an external spec: pre gains params == param-vars and
// locals == nil.
struct Internalised {
  Asrt pre;
  std::vector<std::string> params;
  std::vector<std::string> locals;
  Asrt ok;
  Asrt err;
};
Internalised internal_of_external(const Spec& spec, const FunctionDef& f);

// The full external pre: x1 == x1 * ... * P.
Asrt external_pre(const Spec& spec);

struct ExactnessReport {
  bool ok = true;
  std::size_t checked = 0;  // (ins, outs) groups examined
  std::string witness;      // first group with two heaps
};
// Bounded check that each (ins, outs) instance admits at most one heap.
ExactnessReport check_strictly_exact(const PredDef& def, const Program& prog,
                                     const std::vector<Value>& domain, int depth = 3);

nlohmann::json term_json(const Term& t);
nlohmann::json asrt_json(const Asrt& p);
nlohmann::json spec_json(const Spec& s);

}  // namespace cse
