#pragma once

#include "cse/matchplan.hpp"
#include "cse/symstate.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cse {

using SymSubst = std::map<std::string, Term>;  // logical variable -> symbolic value

std::string to_string(const SymSubst& th);

// Logical variables through theta, holes through the hole map.
Term apply(const SymSubst& th, const Term& t, const std::map<std::string, Term>& holes = {});

struct ConsumeBranch {
  bool abort = false;
  SymSubst theta;  // success only
  SymState state;  // success: the frame. abort: the input state with the abort pc
  Term err;        // abort payload
};

enum class PureStatus : std::uint8_t { Ok, Cut, Abort };
struct PureResult {
  PureStatus status;
  Term pc;
};

struct UnsupportedAssertion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Abort payloads.
namespace aborts {
Term cons_pure(const Term& phi, const Term& pc);
Term missing_cell(const Term& a, const Term& pc);
Term missing_neg_cell(const Term& a, const Term& pc);
Term cons_error(const Term& pc);
Term pred(const std::string& name, const std::vector<Term>& ins, const Term& pc);
// Tag of an abort payload ("MissingCell", ...), empty if not recognised.
std::string tag(const Term& err);
}  // namespace aborts

class ConsProd {
 public:
  ConsProd(const Program& prog, Policy pol, FreshGen& fresh) : prog_(prog), pol_(pol), fresh_(fresh) {}

  // One line per rule firing, with the conjuncts it added to the pc.
  void set_trace(std::vector<std::string>* t) { trace_ = t; }
  void set_plan_trace(std::vector<std::string>* t) { plans_ = t; }

  PureResult cons_pure(Mode m, const Term& pc, const Term& phi);

  // Branch per matching heap cell (value or freed), then the missing case.
  struct CellMatch {
    std::optional<Term> val;  // nullopt: freed
    SymState state;           // cell removed, pc extended
  };
  std::vector<CellMatch> cons_cell(const Term& a, const SymState& s, std::optional<Term>* missing_pc);

  struct PredMatch {
    std::vector<Term> outs;
    SymState state;
  };
  std::vector<PredMatch> cons_pred(const std::string& name, const std::vector<Term>& ins,
                                   const SymState& s, std::optional<Term>* missing_pc);

  // Throws PlanError or UnsupportedAssertion.
  std::vector<ConsumeBranch> consume(Mode m, const Asrt& p, const SymSubst& theta, const SymState& s);
  std::vector<ConsumeBranch> consume_plan(Mode m, const MatchingPlan& mp, const SymSubst& theta,
                                          const SymState& s);

  // Throws UnsupportedAssertion on implications; unbound logical variables
  // are an error too.
  std::vector<SymState> produce(const Asrt& q, const SymSubst& theta, const SymState& s);

  SymState prod_cell(const Term& a, const std::optional<Term>& v, const SymState& s, bool* ok);

 private:
  void mac(Mode m, const MatchingPlan& mp, std::size_t i, const SymSubst& th, const SymState& s,
           std::vector<ConsumeBranch>& out);
  void prod(const Asrt& q, const SymSubst& th, const SymState& s, std::vector<SymState>& out);
  void note(const std::string& rule, const Asrt& atom, const Term& before, const Term& after);

  const Program& prog_;
  Policy pol_;
  FreshGen& fresh_;
  std::vector<std::string>* trace_ = nullptr;
  std::vector<std::string>* plans_ = nullptr;
};

// Adds v in Val for symbolic variables of the state missing from the pc.
void close_typing(SymState& s);

}  // namespace cse
