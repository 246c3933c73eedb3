#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

Term s(const std::string& src) { return parse_expr(src, VarKind::Sym); }

Term to_sym(const Term& t) {
  return substitute(t, [](VarKind k, const std::string& n) -> std::optional<Term> {
    if (k != VarKind::Prog) return std::nullopt;
    return Term::svar(n);
  });
}

}  // namespace

TEST(Solver, Basics) {
  InternalSolver solver;
  EXPECT_EQ(solver.sat(s("#x > 3 && #x < 5")), Sat::Sat);
  EXPECT_EQ(solver.sat(s("#x > 3 && #x < 4")), Sat::Unsat);
  EXPECT_EQ(solver.sat(s("#x == 1 && #x == 2")), Sat::Unsat);
  EXPECT_EQ(solver.sat(s("#x in Nat && #x in Bool")), Sat::Unsat);
  EXPECT_EQ(solver.sat(s("#x + 1 == #y + 1 && #x != #y")), Sat::Unsat);
  EXPECT_EQ(solver.sat(s("#x == \"a\" && #y == #x && #y != \"a\"")), Sat::Unsat);
}

TEST(Solver, ModelsSatisfy) {
  InternalSolver solver;
  Term pc = s("#x in Nat && #y in Nat && #x + #y == 7 && #x > #y");
  auto r = solver.check(pc);
  ASSERT_EQ(r.status, Sat::Sat);
  EXPECT_TRUE(holds(pc, MapEnv(VarKind::Sym, r.model)));
}

TEST(Solver, Entails) {
  InternalSolver solver;
  EXPECT_EQ(solver.entails(s("#x > 5"), s("#x > 3")), Sat::Sat);
  EXPECT_EQ(solver.entails(s("#x > 2"), s("#x > 3")), Sat::Unsat);
}

TEST(Solver, EnumerateModels) {
  std::vector<Value> dom = {Value::nat(0), Value::nat(1), Value::nil()};
  auto ms = enumerate_models(s("#a in Nat && #a != #b"), dom, {"a", "b"});
  EXPECT_EQ(ms.size(), 4u);
  // variables outside the list: no models
  EXPECT_TRUE(enumerate_models(s("#a == #c"), dom, {"a"}).empty());
}

TEST(Solver, SmtlibText) {
  std::string q = smtlib_query(s("#x in Nat && #x > 2"));
  EXPECT_NE(q.find("declare-"), std::string::npos);
  EXPECT_NE(q.find("check-sat"), std::string::npos);
}

TEST(Solver, MissingBinaryIsReported) {
  auto solver = make_solver("smt:/nonexistent/solver-binary");
  EXPECT_NE(solver->sat(s("#x > 1")), Sat::Unsat);
  EXPECT_THROW(make_solver("bogus"), std::exception);
}

// Unsat answers never hide a bounded model; Sat models satisfy.
TEST(Solver, SoundAgainstEnumeration) {
  std::mt19937_64 rng(3);
  InternalSolver solver;
  auto dom = cse::testing::small_domain();
  int unsat = 0;
  for (int i = 0; i < 1500; ++i) {
    std::vector<Term> cs;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) {
      Term a = to_sym(cse::testing::random_expr(rng, {"a", "b", "c"}, 2));
      Term b = to_sym(cse::testing::random_expr(rng, {"a", "b", "c"}, 2));
      switch (rng() % 4) {
        case 0: cs.push_back(f::eq(a, b)); break;
        case 1: cs.push_back(f::neq(a, b)); break;
        case 2: cs.push_back(f::in(a, rng() % 2 ? Type::Nat : Type::Bool)); break;
        default: cs.push_back(Term::binary(Op::Lt, a, b)); break;
      }
    }
    Term pc = f::conj(cs);
    auto vs = vars_of(pc, VarKind::Sym);
    auto ms = enumerate_models(pc, dom, {vs.begin(), vs.end()}, 1);
    auto r = solver.check(pc);
    if (r.status == Sat::Unsat) {
      ++unsat;
      EXPECT_TRUE(ms.empty()) << to_string(pc);
    }
    if (r.status == Sat::Sat && model_covers(pc, r.model)) EXPECT_TRUE(holds(pc, MapEnv(VarKind::Sym, r.model))) << to_string(pc);
  }
  EXPECT_GT(unsat, 0);
}
