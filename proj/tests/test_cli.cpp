#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prm/json_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" PRM_CLI "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("prm_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, Eval) {
  auto r = run("eval \"C(S;S)\" 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value 5"), std::string::npos) << r.out;
  r = run("eval --index 0 5");  // decode(0) = S
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("value 6"), std::string::npos) << r.out;
  r = run("eval \"R(P(1,1);C(S;P(3,3)))\" 2 3");
  EXPECT_NE(r.out.find("value 5 steps 11"), std::string::npos) << r.out;
  r = run("eval \"R(P(1,1);C(S;P(3,3)))\" 2 3 --budget 10");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("exceeded"), std::string::npos) << r.out;
  EXPECT_EQ(run("eval \"P(3,2)\" 1").code, 1);
  EXPECT_EQ(run("eval \"C(S;\" 1").code, 1);
  EXPECT_EQ(run("eval").code, 1);
}

TEST_F(Cli, Enum) {
  auto r = run("enum decode 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("S"), std::string::npos);
  r = run("enum encode \"C(S;P(1,1))\"");
  EXPECT_NE(r.out.find("54"), std::string::npos) << r.out;
}

TEST_F(Cli, BuildVerifyRoundTrip) {
  ASSERT_EQ(run("build sparse --stages 3 -o " + at("s.json")).code, 0);
  const prm::Json s = prm::Json::parse(slurp(at("s.json")));
  EXPECT_EQ(s["f_table"].size(), 4u);
  EXPECT_EQ(run("verify " + at("s.json")).code, 0);

  ASSERT_EQ(run("build density --sparse " + at("s.json") + " --x-index 110 --ticks 1000000 -o " +
                at("d.json"))
                .code,
            0);
  EXPECT_EQ(run("verify " + at("d.json") + " --sparse " + at("s.json")).code, 0);

  ASSERT_EQ(run("build sparse --stages 12 -o " + at("s12.json")).code, 0);
  ASSERT_EQ(
      run("build ideal --sparse " + at("s12.json") + " --psi constant:0 -o " + at("i.json")).code,
      0);
  EXPECT_EQ(run("verify " + at("i.json") + " --sparse " + at("s12.json")).code, 0);
  EXPECT_EQ(run("inspect " + at("i.json")).code, 0);
}

TEST_F(Cli, Reproducible) {
  ASSERT_EQ(run("build sparse --stages 10 -o " + at("a.json")).code, 0);
  ASSERT_EQ(run("build sparse --stages 10 -o " + at("b.json")).code, 0);
  EXPECT_EQ(slurp(at("a.json")), slurp(at("b.json")));
  for (const char* n : {"da.json", "db.json"})
    ASSERT_EQ(run("build density --sparse " + at("a.json") + " --x-index 110 -o " + at(n)).code, 0);
  EXPECT_EQ(slurp(at("da.json")), slurp(at("db.json")));
}

TEST_F(Cli, Failures) {
  EXPECT_EQ(run("verify " + at("missing.json")).code, 1);
  ASSERT_EQ(run("build sparse --stages 5 -o " + at("s.json")).code, 0);

  prm::Json j = prm::Json::parse(slurp(at("s.json")));
  j["f_table"][2] = j["f_table"][2].get<std::uint64_t>() + 1;
  std::ofstream(at("bad.json")) << j.dump();
  auto r = run("verify " + at("bad.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("failures"), std::string::npos) << r.out;

  j = prm::Json::parse(slurp(at("s.json")));
  j["cost_model_version"] = 99;
  std::ofstream(at("old.json")) << j.dump();
  EXPECT_EQ(run("verify " + at("old.json")).code, 4);

  r = run("build sparse --stages 12 -o " + at("cut.json"), "PRM_RESOURCE_CAP=10");
  EXPECT_EQ(r.code, 3);
  const prm::Json cut = prm::Json::parse(slurp(at("cut.json")));
  EXPECT_EQ(cut["truncated"], true);
  EXPECT_EQ(cut["f_table"].size(), 7u);
  EXPECT_EQ(run("verify " + at("cut.json")).code, 0);
  EXPECT_EQ(run("build sparse --stages 12 --cap 10 -o " + at("cut2.json")).code, 3);
}
