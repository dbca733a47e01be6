#include <gtest/gtest.h>

#include "known_certificates.h"
#include "popcert/errors.h"
#include "popcert/json_io.h"
#include "test_util.h"

namespace popcert {
namespace {

TEST(JsonIo, ParseErrorCarriesOffset) {
  try {
    ParseJson("{\"a\": [1, 2,, 3]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 13u);
  }
}

TEST(JsonIo, PopRoundTrip) {
  const Pop q = GenQcqp(testing::Phi1());
  const Json j = ToJson(q);
  const Pop back = PopFromJson(j);
  ASSERT_EQ(back.constraints.size(), q.constraints.size());
  EXPECT_EQ(ToJson(back).dump(), j.dump());
  EXPECT_THROW(PopFromJson(ParseJson(R"({"objective":{"vars":[],"terms":[]},"constraints":[{"poly":{"vars":[],"terms":[]},"sense":"lt0"}]})")),
               FormatError);
}

TEST(JsonIo, StableInstanceKeepsSquaredFlag) {
  const StableInstance s = GenStableInstance(testing::Phi2());
  const StableInstance back = StableFromJson(ToJson(s));
  EXPECT_TRUE(back.set.constraints.front().squared);
  EXPECT_FALSE(back.set.constraints.back().squared);
  EXPECT_EQ(back.sphere_test.size(), s.sphere_test.size());
}

TEST(JsonIo, CertificatesRoundTrip) {
  const RationalCertificate exact = testing::QuarticCertificate();
  const AnyCertificate a = CertificateFromJson(ToJson(exact));
  ASSERT_TRUE(std::holds_alternative<RationalCertificate>(a));
  const auto& back = std::get<RationalCertificate>(a);
  EXPECT_TRUE(VerifyIdentity(back).ok);
  EXPECT_EQ(ToJson(back).dump(), ToJson(exact).dump());

  const SosCertificate num = testing::ToNumeric(exact);
  const AnyCertificate b = CertificateFromJson(ToJson(num));
  ASSERT_TRUE(std::holds_alternative<SosCertificate>(b));
  EXPECT_EQ(std::get<SosCertificate>(b).multipliers[0].gram, num.multipliers[0].gram);
}

TEST(JsonIo, TemplateRoundTrip) {
  const SosTemplate t = CoercivityTemplate(testing::QuarticExample(), 1);
  EXPECT_EQ(ToJson(TemplateFromJson(ToJson(t))).dump(), ToJson(t).dump());
}

TEST(JsonIo, PolyListAcceptsBothShapes) {
  const Json bare = ParseJson(testing::ReadFile(testing::FixturePath("disk_generators.json")));
  EXPECT_EQ(PolyListFromJson(bare).size(), 1u);
  EXPECT_EQ(PolyListFromJson(Json{{"polys", bare}}).size(), 1u);
  EXPECT_THROW(PolyListFromJson(Json::object()), FormatError);
}

}  // namespace
}  // namespace popcert
