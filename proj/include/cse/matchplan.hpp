#pragma once

#include "cse/assertion.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cse {

// var := expr, where expr mentions known variables and the holes O / O1..On.
struct Learn {
  std::string var;
  Term expr;
};

struct PlanStep {
  Asrt atom;
  std::vector<Learn> outs;
};

using MatchingPlan = std::vector<PlanStep>;

struct PlanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solves t == target for the single unknown variable of t, under + and -.
std::optional<Learn> invert(const Term& t, const Term& target, const std::set<std::string>& known);

// nullopt when the atom cannot be consumed yet.
std::optional<std::vector<Learn>> ins_outs_learn(const std::set<std::string>& known, const Asrt& p);

// Leftmost plannable atom first. Throws PlanError.
MatchingPlan plan(const std::set<std::string>& known, const Asrt& p);
MatchingPlan plan_atoms(const std::set<std::string>& known, const std::vector<Asrt>& atoms);

std::string to_string(const MatchingPlan& mp);

}  // namespace cse
