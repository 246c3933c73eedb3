#pragma once

#include "cse/engine.hpp"

#include <optional>
#include <vector>

namespace cse {

struct BiabLeaf {
  Outcome outcome;  // Ok or Err
  SymState state;
  AntiFrame anti;
};

// Fix for a Miss leaf or a missing-resource Abort leaf; pre is the state the
// failing command started from. nullopt: not fixable, the branch is cut.
std::optional<AntiFrame> fix_for(const SymLeaf& leaf, const SymState& pre, FreshGen& fresh,
                                 const Program& prog);

// Component-wise union.
AntiFrame merge(const AntiFrame& a, const AntiFrame& b);

struct BiabConfig {
  std::size_t max_fixes_per_cmd = 32;
};

class Biab {
 public:
  // The engine must run in UX mode.
  Biab(Engine& eng, BiabConfig cfg = {});

  std::vector<BiabLeaf> exec(const SymState& s, const Cmd& c);

  std::size_t fixes() const { return fixes_; }
  std::size_t cuts() const { return cuts_; }
  const std::vector<std::string>& diagnostics() const { return diags_; }

 private:
  void run(const SymState& s, const Cmd& c, std::vector<BiabLeaf>& out);
  void atomic(const SymState& s, const Cmd& c, std::size_t fixes, std::vector<BiabLeaf>& out);

  Engine& eng_;
  BiabConfig cfg_;
  std::size_t fixes_ = 0;
  std::size_t cuts_ = 0;
  std::vector<std::string> diags_;
};

}  // namespace cse
