#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

std::vector<SymLeaf> run(const Program& prog, const std::string& src, Mode m = Mode::EX, SymState s = {}) {
  static InternalSolver solver;
  FreshGen fresh(prog.identifiers());
  EngineConfig cfg;
  cfg.mode = m;
  Engine eng(prog, solver, cfg, fresh);
  Cmd c = parse_cmd(src);
  for (const auto& x : pv(c))
    if (!s.store.count(x)) s.store[x] = Term::nil();
  return eng.exec(s, c);
}

std::size_t count(const std::vector<SymLeaf>& ls, Outcome o) {
  std::size_t n = 0;
  for (const auto& l : ls) n += l.outcome == o;
  return n;
}

}  // namespace

TEST(Engine, BranchesOnConditions) {
  Program prog;
  auto ls = run(prog, "x := sym; if (x == 1) { y := 2 } else { y := 3 }");
  // x not boolean-comparable is still fine: == is total
  EXPECT_EQ(count(ls, Outcome::Ok), 2u);
}

TEST(Engine, UndefinedConditionErrors) {
  Program prog;
  auto ls = run(prog, "x := sym; if (x < 1) { skip } else { skip }");
  EXPECT_EQ(count(ls, Outcome::Ok), 2u);
  EXPECT_EQ(count(ls, Outcome::Err), 1u);
}

TEST(Engine, MissingCellIsMiss) {
  Program prog;
  auto ls = run(prog, "x := sym; assume(x in Nat); y := [x]");
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].outcome, Outcome::Miss);
}

TEST(Engine, AllocThenUse) {
  Program prog;
  auto ls = run(prog, "x := new(2); [x + 1] := 5; y := [x + 1]; free(x); z := [x]");
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].outcome, Outcome::Err);
}

TEST(Engine, AssertFailsWithErr) {
  Program prog;
  auto ls = run(prog, "x := sym; assume(x in Nat); assert(x < 3)");
  EXPECT_EQ(count(ls, Outcome::Ok), 1u);
  EXPECT_EQ(count(ls, Outcome::Err), 1u);
}

TEST(Engine, CallUsesSpecInUxMode) {
  auto prog = cse::testing::load_program(std::string(CSE_PROGRAMS_DIR) + "/list_client.cse");
  SymState s;
  s.store["x"] = Term::svar("a");
  s.preds.push_back({"list", {Term::svar("a")}, {Term::svar("xs"), Term::svar("vs")}});
  s.pc = parse_expr("#a in Val && #xs in Val && #vs in Val", VarKind::Sym);
  auto ls = run(prog, "x := LInsert(x, 42)", Mode::UX, s);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].outcome, Outcome::Ok);
  EXPECT_EQ(ls[0].state.preds.size(), 2u);
  // no instance to hand over: the call aborts
  s.preds.clear();
  ls = run(prog, "x := LInsert(x, 42)", Mode::UX, s);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].outcome, Outcome::Abort);
}

TEST(Engine, FuelBoundsRecursion) {
  auto prog = parse_program("function loop(n) { r := loop(n); return r }");
  InternalSolver solver;
  FreshGen fresh;
  EngineConfig cfg;
  cfg.mode = Mode::OX;
  cfg.fuel = 3;
  Engine eng(prog, solver, cfg, fresh);
  SymState s;
  s.store["r"] = Term::nil();
  auto ls = eng.exec(s, parse_cmd("r := loop(1)"));
  EXPECT_TRUE(ls.empty());
  EXPECT_TRUE(eng.incomplete());
}

TEST(Engine, UnfoldWithoutInstanceAborts) {
  auto prog = cse::testing::load_program(std::string(CSE_PROGRAMS_DIR) + "/list_client.cse");
  SymState s;
  s.store["x"] = Term::svar("a");
  s.pc = parse_expr("#a in Val", VarKind::Sym);
  auto ls = run(prog, "unfold list(x)", Mode::OX, s);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].outcome, Outcome::Abort);
}

TEST(Engine, FoldThenUnfold) {
  auto prog = cse::testing::load_program(std::string(CSE_PROGRAMS_DIR) + "/list_client.cse");
  SymState s;
  s.store["x"] = Term::nil();
  auto ls = run(prog, "fold list(x); unfold list(x)", Mode::OX, s);
  ASSERT_FALSE(ls.empty());
  for (const auto& l : ls) {
    EXPECT_EQ(l.outcome, Outcome::Ok);
    EXPECT_TRUE(l.state.preds.empty());
  }
}

TEST(Engine, ExactnessOnRandomPrograms) {
  std::mt19937_64 rng(12);
  InternalSolver solver;
  for (int i = 0; i < 150; ++i) {
    auto in = cse::testing::random_exact_instance(rng);
    auto r = cse::testing::check_exactness(in, solver);
    ASSERT_TRUE(r.ok()) << r.violations.front() << "\n" << print_cmd(in.cmd);
  }
}

TEST(SymTest, CorpusExpectations) {
  InternalSolver solver;
  EngineConfig cfg;
  cfg.mode = Mode::EX;
  std::map<std::string, std::size_t> want = {
      {"assert_fail.cse", 1}, {"branches.cse", 1}, {"calls.cse", 0}, {"main_call.cse", 0}};
  for (const auto& e : cse::testing::load_corpus(CSE_PROGRAMS_DIR)) {
    auto it = want.find(e.file);
    if (it == want.end()) continue;
    auto r = symtest(e.prog, solver, cfg);
    EXPECT_EQ(r.violations.size(), it->second) << e.file;
    for (const auto& v : r.violations) {
      ASSERT_TRUE(v.witness) << e.file;
      EXPECT_TRUE(holds(v.pc, MapEnv(VarKind::Sym, *v.witness))) << e.file;
    }
  }
}

TEST(SymTest, AssertWitness) {
  auto prog = cse::testing::load_program(std::string(CSE_PROGRAMS_DIR) + "/assert_fail.cse");
  InternalSolver solver;
  EngineConfig cfg;
  cfg.mode = Mode::EX;
  auto r = symtest(prog, solver, cfg);
  ASSERT_EQ(r.violations.size(), 1u);
  ASSERT_TRUE(r.violations[0].witness);
  bool three = false;
  for (const auto& [k, v] : *r.violations[0].witness) three |= v == Value::nat(3);
  EXPECT_TRUE(three);
}
