#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "known_certificates.h"
#include "popcert/cli.h"
#include "popcert/json_io.h"
#include "test_util.h"

namespace popcert {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("popcert_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string Fixture(const char* name) { return testing::FixturePath(name); }

TEST_F(CliTest, CoerciveCertifiesAndVerifies) {
  const Result r = Invoke({"coercive", "--poly", Fixture("x14x22.json"), "--r", "1", "--out", Path("c.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json report = ParseJson(r.out);
  EXPECT_EQ(report.at("status"), "certified");
  EXPECT_EQ(report.at("certificate"), Path("c.json"));
  const Result v = Invoke({"verify", "--cert", Path("c.json")});
  EXPECT_EQ(v.code, kExitOk) << v.out;
}

TEST_F(CliTest, VerifyExitCodes) {
  RationalCertificate bad = testing::QuarticCertificate();
  bad.multipliers[1].gram(0, 0) = Rational(1, 2);
  std::ofstream(Path("bad.json")) << ToJson(bad).dump();
  EXPECT_EQ(Invoke({"verify", "--cert", Path("bad.json")}).code, kExitInconclusive);

  std::ofstream(Path("num.json")) << ToJson(testing::ToNumeric(testing::QuarticCertificate())).dump();
  const Result n = Invoke({"verify", "--cert", Path("num.json")});
  EXPECT_EQ(n.code, kExitInconclusive);
  EXPECT_EQ(ParseJson(n.out).at("form"), "numeric");

  std::ofstream(Path("broken.json")) << "{\"template\": ";
  const Result e = Invoke({"verify", "--cert", Path("broken.json")});
  EXPECT_EQ(e.code, kExitError);
  EXPECT_NE(e.err.find("byte"), std::string::npos);
  EXPECT_EQ(Invoke({"verify", "--cert", Path("missing.json")}).code, kExitError);
}

TEST_F(CliTest, ArgumentErrors) {
  EXPECT_EQ(Invoke({}).code, kExitError);
  EXPECT_EQ(Invoke({"coercive"}).code, kExitError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitError);
  EXPECT_EQ(Invoke({"coercive", "--poly", Fixture("x14x22.json"), "--r", "1", "--ladder", "2"}).code, kExitError);
  EXPECT_EQ(Invoke({"gen", "nope", "--cnf", Fixture("phi1.cnf")}).code, kExitError);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args = {"archimedean", "--polys", Fixture("disk_generators.json"),
                                         "--R", "1", "--r", "0"};
  const Result a = Invoke(args);
  const Result b = Invoke(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const Result s1 = Invoke({"stable", "--instance", Path("none.json"), "--r", "1"});
  EXPECT_EQ(s1.code, kExitError);
}

TEST_F(CliTest, GenThenOracle) {
  ASSERT_EQ(Invoke({"gen", "stable", "--cnf", Fixture("phi2.cnf"), "--out", Path("s2.json")}).code, kExitOk);
  const Result st = Invoke({"stable", "--instance", Path("s2.json"), "--r", "1"});
  EXPECT_EQ(st.code, kExitOk) << st.out;
  const Result o = Invoke({"oracle", "--cnf", Fixture("phi2.cnf"), "--construction", "stable"});
  ASSERT_EQ(o.code, kExitOk);
  const Json label = ParseJson(o.out);
  EXPECT_EQ(label.at("origin"), "UNSAT-derived");
  EXPECT_EQ(label.at("label"), "stably-compact");

  const Result o1 = Invoke({"oracle", "--cnf", Fixture("phi1.cnf"), "--construction", "s_phi_h"});
  EXPECT_EQ(ParseJson(o1.out).at("label"), "not-coercive");
  EXPECT_EQ(Invoke({"--bf-cap", "2", "oracle", "--cnf", Fixture("phi1.cnf"), "--construction", "p_phi"}).code,
            kExitError);

  const Result g = Invoke({"gen", "s_phi", "--cnf", Fixture("phi1.cnf")});
  EXPECT_EQ(PolyFromJson(ParseJson(g.out)), GenSPhi(testing::Phi1()));
}

TEST_F(CliTest, InconclusiveCompactAndFalsifier) {
  const Result c = Invoke({"compact", "--pop", Fixture("circle.json"), "--r", "1"});
  EXPECT_EQ(c.code, kExitInconclusive);
  EXPECT_TRUE(ParseJson(c.out).at("checks").contains("radius_bound"));

  ASSERT_EQ(Invoke({"gen", "s_phi_h", "--cnf", Fixture("phi1.cnf"), "--out", Path("h1.json")}).code, kExitOk);
  const Result f = Invoke({"coercive", "--poly", Path("h1.json"), "--ladder", "1"});
  EXPECT_EQ(f.code, kExitInconclusive);
  EXPECT_TRUE(ParseJson(f.out).at("checks").contains("falsifier"));
}

TEST_F(CliTest, FlagOverridesEnvironment) {
  ASSERT_EQ(Invoke({"gen", "s_phi_h", "--cnf", Fixture("phi1.cnf"), "--out", Path("h1.json")}).code, kExitOk);
  ::setenv("POPCERT_RMAX", "1", 1);
  const Result env = Invoke({"coercive", "--poly", Path("h1.json")});
  EXPECT_EQ(ParseJson(env.out).at("checks").at("ladder").size(), 1u);
  const Result flag = Invoke({"--r-max", "2", "coercive", "--poly", Path("h1.json")});
  EXPECT_EQ(ParseJson(flag.out).at("checks").at("ladder").size(), 2u);
  ::unsetenv("POPCERT_RMAX");
  EXPECT_EQ(Invoke({"--tol", "-1", "verify", "--cert", Path("h1.json")}).code, kExitError);
}

TEST_F(CliTest, SdpSolveExitCodes) {
  std::ofstream(Path("neg.json")) << R"({"blocks":[1],"objective":"margin","equalities":[{"terms":[{"block":0,"row":0,"col":0,"coef":1.0}],"rhs":-1.0}]})";
  std::ofstream(Path("pos.json")) << R"({"blocks":[1],"objective":"margin","equalities":[{"terms":[{"block":0,"row":0,"col":0,"coef":1.0}],"rhs":2.0}]})";
  EXPECT_EQ(Invoke({"sdp-solve", "--problem", Path("neg.json")}).code, kExitInconclusive);
  const Result p = Invoke({"sdp-solve", "--problem", Path("pos.json")});
  EXPECT_EQ(p.code, kExitOk) << p.err;
}

}  // namespace
}  // namespace popcert
