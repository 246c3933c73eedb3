#pragma once

#include "cse/term.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace cse {

enum class Sat : std::uint8_t { Sat, Unsat, Unknown };
const char* sat_name(Sat s);

using Model = std::map<std::string, Value>;  // symbolic variable -> value

struct SatResult {
  Sat status = Sat::Unknown;
  Model model;  // filled for Sat when the backend provides one
};

struct SolverStats {
  std::atomic<std::size_t> queries{0};
  std::atomic<std::size_t> cache_hits{0};
  std::atomic<std::size_t> unknowns{0};
  std::atomic<std::size_t> nodes{0};
};

class Solver {
 public:
  virtual ~Solver() = default;
  // Satisfiability of a formula over symbolic variables.
  virtual SatResult check(const Term& pc) = 0;
  virtual std::string name() const = 0;

  Sat sat(const Term& pc) { return check(pc).status; }
  // Sat::Sat means pc entails phi, Sat::Unsat means it does not.
  Sat entails(const Term& pc, const Term& phi);

  SolverStats& stats() { return stats_; }

 protected:
  SolverStats stats_;
};

struct InternalSolverOptions {
  std::size_t node_budget = 60000;
  bool use_cache = true;
};

// Bounded model search over a domain derived from the formula. Unsat is only
// reported for fragments where the candidate domain is known to be complete;
// elsewhere a failed search is Unknown.
class InternalSolver : public Solver {
 public:
  explicit InternalSolver(InternalSolverOptions opts = {}) : opts_(opts) {}
  SatResult check(const Term& pc) override;
  std::string name() const override { return "internal"; }

 private:
  SatResult check_component(const std::vector<Term>& conj);
  InternalSolverOptions opts_;
  std::mutex mu_;
  std::unordered_map<std::string, SatResult> cache_;
};

// Runs an external SMT-LIB2 solver binary, one process per query.
class SmtSolver : public Solver {
 public:
  explicit SmtSolver(std::string path) : path_(std::move(path)) {}
  SatResult check(const Term& pc) override;
  std::string name() const override { return "smt:" + path_; }

 private:
  std::string path_;
  std::mutex mu_;
  std::unordered_map<std::string, Sat> cache_;
};

// SMT-LIB2 text for the satisfiability query of pc.
std::string smtlib_query(const Term& pc);

// Every assignment of vars over domain that makes pc true, in lexicographic
// order (vars in the given order, values in domain order).
std::vector<Model> enumerate_models(const Term& pc, const std::vector<Value>& domain,
                                    const std::vector<std::string>& vars,
                                    std::size_t limit = static_cast<std::size_t>(-1));

// "internal" or "smt:<path>".
std::unique_ptr<Solver> make_solver(const std::string& spec);

}  // namespace cse
