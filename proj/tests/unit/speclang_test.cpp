#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

const char* kList = R"(pred list(x; xs, vs) {
  (x == nil * xs == [] * vs == []) ||
  (exists v, y, ys, ws. x -> v, y * list(y; ys, ws) * xs == x :: ys * vs == v :: ws)
}
)";

Value nat(int n) { return Value::nat(n); }

}  // namespace

TEST(AssertionSat, Cells) {
  Program prog;
  CState st;
  st.heap[1] = nat(10);
  Subst th{{"x", nat(1)}, {"y", nat(10)}};
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("x -> y"), prog), Tri::True);
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("x -> y * y > 20"), prog), Tri::False);
  // spare cells are not allowed
  st.heap[2] = nat(0);
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("x -> y"), prog), Tri::False);
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("exists z. x -> y * 2 -> z"), prog), Tri::True);
}

TEST(AssertionSat, ListPredicate) {
  Program prog = parse_program(kList);
  CState st;
  st.heap[1] = nat(7);
  st.heap[2] = Value::nil();
  Subst th{{"x", nat(1)}, {"xs", Value::list({nat(1)})}, {"vs", Value::list({nat(7)})}};
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("list(x; xs, vs)"), prog), Tri::True);
  th["vs"] = Value::list({nat(8)});
  EXPECT_EQ(assertion_sat(th, st, parse_asrt("list(x; xs, vs)"), prog), Tri::False);
}

TEST(AsrtModels, EnumeratesHeaps) {
  Program prog;
  std::vector<Value> dom = {nat(0), nat(1), nat(2)};
  auto ms = asrt_models(parse_asrt("x -> 5 * x + 1 -> y"), {{"y", nat(0)}}, {}, prog, dom);
  ASSERT_EQ(ms.size(), 3u);
  for (const auto& m : ms) {
    EXPECT_EQ(m.heap.size(), 2u);
    EXPECT_EQ(assertion_sat(m.theta, CState{{}, m.heap}, parse_asrt("x -> 5 * x + 1 -> y"), prog), Tri::True);
  }
}

TEST(AsrtModels, ListModelsSatisfyPredicate) {
  Program prog = parse_program(kList);
  auto dom = cse::testing::small_domain();
  auto p = parse_asrt("list(x; xs, vs)");
  auto ms = asrt_models(p, {}, {}, prog, dom, 2, 300);
  ASSERT_FALSE(ms.empty());
  for (const auto& m : ms) EXPECT_EQ(assertion_sat(m.theta, CState{{}, m.heap}, p, prog), Tri::True);
}

TEST(StrictExactness, ListIsExact) {
  Program prog = parse_program(kList);
  auto r = check_strictly_exact(*prog.find_pred("list"), prog, {nat(0), nat(1), nat(2), Value::nil()}, 2);
  EXPECT_TRUE(r.ok) << r.witness;
  EXPECT_GT(r.checked, 0u);
}

TEST(StrictExactness, DroppingOutsBreaksExactness) {
  Program prog = parse_program(R"(pred ls(x; n) {
  (x == nil * n == 0) ||
  (exists v, y, m. x -> v, y * ls(y; m) * n == m + 1)
}
)");
  auto r = check_strictly_exact(*prog.find_pred("ls"), prog, {nat(0), nat(1), nat(2), Value::nil()}, 2);
  EXPECT_FALSE(r.ok);
}

TEST(Internalisation, ParamsAndLocals) {
  auto prog = parse_program(R"(function f(a) { b := a; return b }
spec f_s ux f(a) {
  pre: a > 1;
  ok: ret == a;
})");
  auto in = internal_of_external(prog.specs[0], prog.functions[0]);
  EXPECT_EQ(in.params, (std::vector<std::string>{"a"}));
  EXPECT_EQ(in.locals, (std::vector<std::string>{"b"}));
  EXPECT_EQ(print_asrt(external_pre(prog.specs[0])), "a == a * a > 1");
}

TEST(SpecJson, Shape) {
  auto prog = parse_program(R"(function f(a) { return a }
spec f_s ux f(a) {
  pre: emp;
  ok: ret == a;
})");
  auto j = spec_json(prog.specs[0]);
  EXPECT_EQ(j["name"], "f_s");
  EXPECT_EQ(j["mode"], "ux");
  EXPECT_TRUE(j.contains("pre"));
}

TEST(SymToAsrt, RenamesVariables) {
  SymState s;
  s.store["ret"] = Term::svar("v");
  s.heap.push_back({Term::svar("x"), Term::svar("v")});
  s.pc = parse_expr("#v > 1", VarKind::Sym);
  EXPECT_EQ(print_asrt(to_asrt(s)), "x -> v * v > 1 * ret == v");
}
