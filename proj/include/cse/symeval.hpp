#pragma once

#include "cse/symstate.hpp"

#include <optional>
#include <vector>

namespace cse {

// Total formula stating that t (over symbolic variables) is defined.
Term definedness(const Term& t);

struct EvalBranch {
  std::optional<Term> value;  // nullopt: undefined
  Term pc;
};

// Substitutes the store into e and splits on definedness. A branch whose
// pc is infeasible under the policy is dropped.
std::vector<EvalBranch> sym_eval(const SymStore& s, const Term& pc, const Term& e, const Policy& pol);

struct EvalAllBranch {
  std::vector<Term> values;
  Term pc;
  std::optional<std::size_t> failed;  // index of the first undefined argument
};

// Left to right over a list of expressions.
std::vector<EvalAllBranch> sym_eval_all(const SymStore& s, const Term& pc,
                                        const std::vector<Term>& es, const Policy& pol);

}  // namespace cse
