#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

std::vector<ConcreteResult> run(const std::string& src, CState st = {}, Budget b = {}) {
  Program prog;
  return exec_concrete(prog, st, parse_cmd(src), 8, b);
}

Value nat(int n) { return Value::nat(n); }

}  // namespace

TEST(Concrete, LookupMutate) {
  CState st;
  st.store["x"] = nat(1);
  st.heap[1] = nat(5);
  auto rs = run("y := [x]; [x] := y + 1", st);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].outcome, Outcome::Ok);
  EXPECT_EQ(rs[0].state.heap.at(1), nat(6));
}

TEST(Concrete, MissingCellIsMiss) {
  CState st;
  st.store["x"] = nat(4);
  auto rs = run("y := [x]", st);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].outcome, Outcome::Miss);
  EXPECT_EQ(rs[0].state.store.at("err"), errval::missing_cell(parse_expr("x"), 4));
}

TEST(Concrete, UseAfterFree) {
  CState st;
  st.store["x"] = nat(0);
  st.heap[0] = nat(1);
  auto rs = run("free(x); free(x)", st);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].outcome, Outcome::Err);
  EXPECT_EQ(rs[0].state.store.at("err").as_list()[0], Value::str("UseAfterFree"));
}

TEST(Concrete, TypeError) {
  CState st;
  st.store["x"] = Value::nil();
  auto rs = run("y := [x]", st);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].state.store.at("err"), errval::type(parse_expr("x"), Value::nil(), Type::Nat));
}

TEST(Concrete, NewEnumeratesFreshAddresses) {
  CState st;
  st.heap[1] = nat(0);
  Budget b;
  b.max_addr = 3;
  auto rs = run("x := new(1)", st, b);
  std::set<Value> addrs;
  for (const auto& r : rs) addrs.insert(r.state.store.at("x"));
  EXPECT_EQ(addrs, (std::set<Value>{nat(0), nat(2), nat(3)}));
  b.enumerate = false;
  rs = run("x := new(2)", st, b);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].state.store.at("x"), nat(2));
}

TEST(Concrete, NondetDrawsNats) {
  auto rs = run("x := nondet");
  std::set<Value> xs;
  for (const auto& r : rs) xs.insert(r.state.store.at("x"));
  EXPECT_EQ(xs, (std::set<Value>{nat(0), nat(1), nat(2)}));
  EXPECT_EQ(run("x := sym").size(), Budget{}.domain.size());
}

TEST(Concrete, AssumeAndAssert) {
  EXPECT_TRUE(run("assume(false)").empty());
  auto rs = run("assert(1 == 2)");
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].outcome, Outcome::Err);
  EXPECT_EQ(rs[0].state.store.at("err").as_list()[0], Value::str("Assert"));
}

TEST(Concrete, ErrorCommand) {
  auto rs = run("error(\"boom\")");
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].state.store.at("err"), errval::error(Value::str("boom")));
}

TEST(Concrete, CallsAndFuel) {
  auto prog = parse_program("function loop(n) { r := loop(n); return r }\nfunction one() { return 1 }");
  CState st;
  auto rs = exec_concrete(prog, st, parse_cmd("x := one()"), 4, Budget{});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].state.store.at("x"), nat(1));
  ConcreteStats stats;
  rs = exec_concrete(prog, st, parse_cmd("x := loop(1)"), 4, Budget{}, &stats);
  EXPECT_TRUE(rs.empty());
  EXPECT_GT(stats.fuel_exhausted, 0u);
  rs = exec_concrete(prog, st, parse_cmd("x := nope(1)"), 4, Budget{});
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].state.store.at("err"), errval::no_func("nope"));
}

TEST(Concrete, ComposeState) {
  CState a, b;
  a.store["x"] = nat(1);
  a.heap[0] = nat(1);
  b.store["y"] = nat(2);
  b.heap[1] = std::nullopt;
  auto c = compose_state(a, b);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->heap.size(), 2u);
  b.heap[0] = nat(3);
  EXPECT_FALSE(compose_state(a, b));
}

// frame property on random triples
TEST(Concrete, FrameProperty) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    auto in = cse::testing::random_frame_instance(rng);
    auto r = cse::testing::check_frame(in);
    ASSERT_TRUE(r.ok()) << r.violations.front();
  }
}
