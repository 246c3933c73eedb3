#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

struct Run {
  std::vector<BiabLeaf> leaves;
  std::size_t cuts = 0;
};

Run biab(const Program& prog, const std::string& src, SymState s) {
  static InternalSolver solver;
  FreshGen fresh(prog.identifiers());
  EngineConfig cfg;
  cfg.mode = Mode::UX;
  Engine eng(prog, solver, cfg, fresh);
  Biab b(eng);
  Cmd c = parse_cmd(src);
  for (const auto& x : pv(c))
    if (!s.store.count(x)) s.store[x] = Term::nil();
  Run r;
  r.leaves = b.exec(s, c);
  r.cuts = b.cuts();
  return r;
}

}  // namespace

TEST(Biab, LookupInfersCell) {
  Program prog;
  SymState s;
  s.store["x"] = Term::svar("x");
  s.pc = parse_expr("#x in Nat", VarKind::Sym);
  auto r = biab(prog, "y := [x]", s);
  ASSERT_EQ(r.leaves.size(), 1u);
  EXPECT_EQ(r.leaves[0].outcome, Outcome::Ok);
  ASSERT_EQ(r.leaves[0].anti.heap.size(), 1u);
  EXPECT_EQ(r.leaves[0].anti.heap[0].addr, Term::svar("x"));
}

TEST(Biab, NoFixNeeded) {
  Program prog;
  SymState s;
  auto r = biab(prog, "x := new(1); [x] := 3", s);
  ASSERT_EQ(r.leaves.size(), 1u);
  EXPECT_TRUE(r.leaves[0].anti.empty());
}

// a cell whose address was invented by the first command cannot be asked of the caller
TEST(Biab, SequenceCutsFreshAddresses) {
  Program prog;
  SymState s;
  s.store["x"] = Term::svar("x");
  s.pc = parse_expr("#x in Nat", VarKind::Sym);
  auto r = biab(prog, "y := [x]; z := [y]", s);
  ASSERT_FALSE(r.leaves.empty());
  for (const auto& l : r.leaves) {
    std::set<std::string> dom;
    for (const auto& c : l.anti.heap) sym_vars(c.addr, dom);
    EXPECT_EQ(dom, (std::set<std::string>{"x"})) << to_string(l.state);
  }
  EXPECT_GT(r.cuts, 0u);
}

TEST(Biab, FixForMissLeaf) {
  Program prog;
  InternalSolver solver;
  FreshGen fresh;
  EngineConfig cfg;
  cfg.mode = Mode::UX;
  Engine eng(prog, solver, cfg, fresh);
  SymState s;
  s.store["x"] = Term::svar("x");
  s.store["y"] = Term::nil();
  s.pc = parse_expr("#x in Nat", VarKind::Sym);
  auto ls = eng.exec(s, parse_cmd("y := [x]"));
  ASSERT_EQ(ls.size(), 1u);
  ASSERT_EQ(ls[0].outcome, Outcome::Miss);
  auto fix = fix_for(ls[0], s, fresh, prog);
  ASSERT_TRUE(fix);
  EXPECT_EQ(fix->heap.size(), 1u);
}

TEST(Biab, MergeIsUnion) {
  AntiFrame a, b;
  a.heap.push_back({Term::svar("x"), Term::nat(1)});
  b.heap.push_back({Term::svar("y"), std::nullopt});
  b.pc = parse_expr("#y in Nat", VarKind::Sym);
  auto m = merge(a, b);
  EXPECT_EQ(m.heap.size(), 2u);
  EXPECT_EQ(sv(m), (std::set<std::string>{"x", "y"}));
}

// replaying the caller's state with the anti-frame reproduces the leaf
TEST(Biab, ReplayOnCorpus) {
  InternalSolver solver;
  EngineConfig cfg;
  cfg.mode = Mode::UX;
  std::size_t checks = 0;
  for (const auto& e : cse::testing::load_corpus(CSE_PROGRAMS_DIR))
    for (const auto& f : e.prog.functions) {
      auto r = cse::testing::check_biab_replay(e.prog, f, solver, cfg);
      EXPECT_TRUE(r.ok()) << e.file << " " << f.name << ": " << (r.ok() ? "" : r.violations.front());
      checks += r.checks;
    }
  EXPECT_GT(checks, 10u);
}

TEST(Biab, ReplayOnRandomFunctions) {
  std::mt19937_64 rng(31);
  InternalSolver solver;
  EngineConfig cfg;
  cfg.mode = Mode::UX;
  for (int i = 0; i < 60; ++i) {
    int fresh = 2;
    Program prog;
    FunctionDef f;
    f.name = "g";
    f.params = {"x", "y"};
    f.body = cse::testing::random_cmd(rng, {"x", "y", "z"}, 4, fresh);
    f.ret = Term::pvar("z");
    prog.functions.push_back(f);
    auto r = cse::testing::check_biab_replay(prog, prog.functions[0], solver, cfg);
    ASSERT_TRUE(r.ok()) << r.violations.front() << "\n" << print_cmd(f.body);
  }
}
