#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Res {
  int code;
  std::string out;
};

Res cse(const std::string& args) {
  std::string cmd = std::string(CSE_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string prog(const std::string& f) { return std::string(CSE_PROGRAMS_DIR) + "/" + f; }

}  // namespace

TEST(Cli, TestExitCodes) {
  EXPECT_EQ(cse("test " + prog("calls.cse")).code, 0);
  EXPECT_EQ(cse("test " + prog("assert_fail.cse")).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cse("").code, 2);
  EXPECT_EQ(cse("test --mode ox " + prog("calls.cse")).code, 2);
  EXPECT_EQ(cse("test /nonexistent.cse").code, 2);
  EXPECT_EQ(cse("frobnicate").code, 2);
}

TEST(Cli, VerifyFindsWrongSpec) {
  EXPECT_EQ(cse("verify --spec f_ok " + prog("f.cse")).code, 0);
  EXPECT_EQ(cse("verify --spec f_wrong " + prog("f.cse")).code, 1);
}

TEST(Cli, JsonIsDeterministic) {
  auto a = cse("synth --json " + prog("list_client.cse"));
  auto b = cse("synth --json " + prog("list_client.cse"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NO_THROW((void)nlohmann::json::parse(a.out));
}

TEST(Cli, JobsDoNotChangeResults) {
  auto a = cse("verify --json --jobs 1 " + prog("f.cse") + " " + prog("swap.cse"));
  auto b = cse("verify --json --jobs 4 " + prog("f.cse") + " " + prog("swap.cse"));
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
}
