#include "oracles.hpp"

#include "cse/syntax.hpp"

#include <gtest/gtest.h>

using namespace cse;

namespace {

Value nat(int n) { return Value::nat(n); }

std::optional<Value> ev(const std::string& src) {
  EmptyEnv env;
  return eval(parse_expr(src), env);
}

}  // namespace

TEST(Value, KindsAndOrder) {
  EXPECT_TRUE(nat(3).is_nat());
  EXPECT_TRUE(Value::nil().is_nil());
  EXPECT_TRUE(nat(0) < Value::boolean(false));
  EXPECT_TRUE(Value::boolean(true).has_type(Type::Bool));
  EXPECT_TRUE(Value::str("a").has_type(Type::Val));
  EXPECT_FALSE(Value::nil().has_type(Type::Nat));
  EXPECT_EQ(Value::list({nat(1), Value::str("x")}).to_string(), "[1, \"x\"]");
}

TEST(Value, BigNats) {
  Nat big = Nat(1) << 100;
  EXPECT_EQ(Value::nat(big + 1).as_nat() - 1, big);
  auto v = ev("1267650600228229401496703205376 + 1");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->to_string(), "1267650600228229401496703205377");
}

TEST(Eval, Arithmetic) {
  EXPECT_EQ(*ev("2 + 3 * 4"), nat(14));
  EXPECT_EQ(*ev("7 / 2"), nat(3));
  EXPECT_EQ(*ev("7 % 2"), nat(1));
  // natural subtraction and division by zero are undefined
  EXPECT_FALSE(ev("1 - 2"));
  EXPECT_FALSE(ev("1 / 0"));
  EXPECT_FALSE(ev("1 + true"));
}

TEST(Eval, ShortCircuit) {
  EXPECT_EQ(*ev("false && (1 + true)"), Value::boolean(false));
  EXPECT_EQ(*ev("true || (1 + true)"), Value::boolean(true));
  EXPECT_FALSE(ev("true && (1 + true)"));
}

TEST(Eval, Lists) {
  EXPECT_EQ(*ev("len([1, 2, 3])"), nat(3));
  EXPECT_EQ(*ev("hd([4, 5])"), nat(4));
  EXPECT_EQ(ev("tl([4, 5])")->to_string(), "[5]");
  EXPECT_EQ(ev("1 :: [2]")->to_string(), "[1, 2]");
  EXPECT_FALSE(ev("hd([])"));
}

TEST(Eval, TypeTests) {
  EXPECT_EQ(*ev("3 in Nat"), Value::boolean(true));
  EXPECT_EQ(*ev("nil in Nat"), Value::boolean(false));
  EXPECT_EQ(*ev("\"s\" in Str"), Value::boolean(true));
  EXPECT_EQ(*ev("[] in List"), Value::boolean(true));
}

TEST(Term, BuildersFold) {
  Term t = Term::binary(Op::Add, Term::nat(1), Term::nat(2));
  EXPECT_TRUE(t.is_lit());
  EXPECT_EQ(t.value(), nat(3));
  // undefined ground terms are kept
  Term u = Term::binary(Op::Sub, Term::nat(1), Term::nat(2));
  EXPECT_FALSE(u.is_lit());
}

TEST(Term, Substitute) {
  Term t = parse_expr("x + y");
  Term s = substitute(t, VarKind::Prog, {{"x", Term::nat(1)}});
  EXPECT_EQ(to_string(s), "1 + y");
  EXPECT_EQ(vars_of(t, VarKind::Prog), (std::set<std::string>{"x", "y"}));
}

TEST(Parser, Commands) {
  Cmd c = parse_cmd("x := [y + 1]; [x] := 3; z := new(2); free(z)");
  EXPECT_EQ(cmd_size(c), 4u);
  EXPECT_EQ(mod(c), (std::set<std::string>{"x", "z"}));
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_program("function f(x) {\n  x := ;\n  return x\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
  }
}

TEST(Parser, ReservedParams) { EXPECT_THROW(parse_program("function f(ret) { skip; return 1 }"), ParseError); }

TEST(Parser, Assertions) {
  Asrt p = parse_asrt("exists a. x -> a * list(a; xs, vs) * len(xs) > 0");
  EXPECT_EQ(lv(p), (std::set<std::string>{"x", "xs", "vs"}));
  EXPECT_EQ(print_asrt(p), "exists a. x -> a * list(a; xs, vs) * len(xs) > 0");
}

// print then parse is the identity on the corpus
TEST(Parser, CorpusRoundTrip) {
  for (const auto& e : cse::testing::load_corpus(CSE_PROGRAMS_DIR)) {
    std::string once = print_program(e.prog);
    std::string twice = print_program(parse_program(once));
    EXPECT_EQ(once, twice) << e.file;
  }
}

TEST(Parser, RandomCommandRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    int fresh = 3;
    Cmd c = cse::testing::random_cmd(rng, {"x", "y", "z"}, 1 + i % 10, fresh);
    std::string s = print_cmd(c);
    Cmd back = parse_cmd(s);
    EXPECT_TRUE(cmd_equal(c, back)) << s << "\n--\n" << print_cmd(back);
  }
}

TEST(Parser, RandomExprRoundTripEvaluates) {
  std::mt19937_64 rng(9);
  std::map<std::string, Value> store = {{"x", nat(1)}, {"y", Value::boolean(true)}, {"z", Value::nil()}};
  std::map<std::string, Value> none;
  for (int i = 0; i < 500; ++i) {
    Term t = cse::testing::random_expr(rng, {"x", "y", "z"}, 4);
    Term back = parse_expr(to_string(t));
    StoreSubstEnv env(store, none);
    EXPECT_EQ(eval(t, env), eval(back, env)) << to_string(t);
  }
}

TEST(Ast, LocalsAndPv) {
  auto prog = parse_program("function f(a) { b := a; c := [b]; return c }");
  const auto& f = prog.functions[0];
  EXPECT_EQ(locals_of(f), (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(pv(f.body), (std::set<std::string>{"a", "b", "c"}));
}
