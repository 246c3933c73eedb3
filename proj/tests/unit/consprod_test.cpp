#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

Term s(const std::string& src) { return parse_expr(src, VarKind::Sym); }

const char* kList = R"(pred list(x; xs, vs) {
  (x == nil * xs == [] * vs == []) ||
  (exists v, y, ys, ws. x -> v, y * list(y; ys, ws) * xs == x :: ys * vs == v :: ws)
}
)";

}  // namespace

TEST(MatchPlan, Example) {
  auto mp = plan({"x"}, parse_asrt("x <= 10 * x -> y * y == z - 10"));
  EXPECT_EQ(to_string(mp), "[(x <= 10, []), (x -> y, [(y, O)]), (y == z - 10, [(z, y + 10)])]");
}

TEST(MatchPlan, Unplannable) {
  EXPECT_THROW(plan({}, parse_asrt("x -> y")), PlanError);
  EXPECT_THROW(plan({"x"}, parse_asrt("x -> y * z > y")), PlanError);
}

TEST(MatchPlan, Invert) {
  auto l = invert(parse_expr("z - 10 + 3", VarKind::Logic), Term::lvar("y"), {"y"});
  ASSERT_TRUE(l);
  EXPECT_EQ(l->var, "z");
  EXPECT_EQ(to_string(l->expr), "y - 3 + 10");
}

TEST(MatchPlan, PredicateOuts) {
  auto mp = plan({"x"}, parse_asrt("list(x; xs, vs) * len(vs) > 0"));
  ASSERT_EQ(mp.size(), 2u);
  ASSERT_EQ(mp[0].outs.size(), 2u);
  EXPECT_EQ(mp[0].outs[0].var, "xs");
  EXPECT_EQ(to_string(mp[0].outs[1].expr), "O2");
}

TEST(Consume, MissingPredicateAborts) {
  InternalSolver solver;
  Program prog = parse_program(kList);
  FreshGen fresh;
  ConsProd cp(prog, Policy{&solver, Mode::UX}, fresh);
  SymState st;
  auto out = cp.consume(Mode::UX, parse_asrt("list(x; xs, vs)"), {{"x", s("#a")}}, st);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].abort);
  EXPECT_EQ(aborts::tag(out[0].err), "Pred");
}

TEST(Consume, PredicateLearnsOuts) {
  InternalSolver solver;
  Program prog = parse_program(kList);
  FreshGen fresh;
  ConsProd cp(prog, Policy{&solver, Mode::OX}, fresh);
  SymState st;
  st.preds.push_back({"list", {s("#a")}, {s("#xs"), s("#vs")}});
  st.pc = s("#a in Val && #xs in Val && #vs in Val");
  auto out = cp.consume(Mode::OX, parse_asrt("list(x; xs, vs)"), {{"x", s("#a")}}, st);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_FALSE(out[0].abort);
  EXPECT_EQ(out[0].theta.at("vs"), s("#vs"));
  EXPECT_TRUE(out[0].state.preds.empty());
}

TEST(Consume, PureModes) {
  InternalSolver solver;
  Program prog;
  FreshGen fresh;
  ConsProd cp(prog, Policy{&solver, Mode::UX}, fresh);
  auto ux = cp.cons_pure(Mode::UX, s("#x > 0"), s("#x > 5"));
  EXPECT_EQ(ux.status, PureStatus::Ok);
  auto ox = cp.cons_pure(Mode::OX, s("#x > 0"), s("#x > 5"));
  EXPECT_EQ(ox.status, PureStatus::Abort);
  auto cut = cp.cons_pure(Mode::UX, s("#x < 2"), s("#x > 5"));
  EXPECT_EQ(cut.status, PureStatus::Cut);
}

TEST(Produce, AddsDisjointCells) {
  InternalSolver solver;
  Program prog;
  FreshGen fresh;
  ConsProd cp(prog, Policy{&solver, Mode::UX}, fresh);
  SymState st;
  st.heap.push_back({s("#a"), Term::nat(1)});
  st.pc = s("#a in Nat");
  auto out = cp.produce(parse_asrt("x -> 2"), {{"x", s("#b")}}, st);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].heap.size(), 2u);
  EXPECT_EQ(solver.entails(out[0].pc, s("#a != #b")), Sat::Sat);
  // producing the same cell twice has no outcome
  EXPECT_TRUE(cp.produce(parse_asrt("x -> 2"), {{"x", s("#a")}}, st).empty());
}

TEST(Produce, UnboundLogicalVariable) {
  InternalSolver solver;
  Program prog;
  FreshGen fresh;
  ConsProd cp(prog, Policy{&solver, Mode::UX}, fresh);
  EXPECT_ANY_THROW(cp.produce(parse_asrt("x -> y"), {{"x", s("#a")}}, SymState{}));
}

// interface properties on random instances
TEST(ConsumeProps, Random) {
  std::mt19937_64 rng(77);
  InternalSolver solver;
  Program prog;
  std::vector<cse::testing::Checked> agg(6);
  for (int i = 0; i < 2000; ++i) {
    auto in = cse::testing::random_consume_instance(rng);
    auto r = cse::testing::check_consume_props(in, prog, solver);
    for (std::size_t k = 0; k < r.size(); ++k) {
      ASSERT_TRUE(r[k].ok()) << "property " << k + 1 << ": " << r[k].violations.front() << "\n"
                             << print_asrt(in.p) << "\n"
                             << to_string(in.s);
      agg[k].merge(r[k]);
    }
  }
  for (const auto& a : agg) EXPECT_GT(a.checks, 50u);
}

TEST(ProduceProps, Random) {
  std::mt19937_64 rng(78);
  InternalSolver solver;
  Program prog;
  for (int i = 0; i < 300; ++i) {
    auto in = cse::testing::random_produce_instance(rng);
    auto r = cse::testing::check_produce_props(in, prog, solver);
    for (std::size_t k = 0; k < r.size(); ++k)
      ASSERT_TRUE(r[k].ok()) << "property " << k + 1 << ": " << r[k].violations.front() << "\n"
                             << print_asrt(in.p) << "\n"
                             << to_string(in.s);
  }
}
