#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "unimod/config.hpp"

namespace unimod {
namespace {

template <typename E>
E expect_throw(const std::string& text) {
  try {
    parse_config(text);
  } catch (const E& e) {
    return e;
  }
  ADD_FAILURE() << "no exception for: " << text;
  throw std::logic_error("missing exception");
}

TEST(ParseConfig, Examples) {
  const auto z9 = parse_config(R"([[ring]] kind="Zps" p=3 s=2)");
  ASSERT_EQ(z9.rings.size(), 1u);
  EXPECT_EQ(make_ring(z9.rings[0])->label(), "Z_9");

  const auto f9 = parse_config(R"([[ring]] kind="ext" p=3 modulus=[1,0,1])");
  EXPECT_EQ(make_ring(f9.rings[0])->label(), "F_9");

  const auto err = expect_throw<ValidationError>(R"([[ring]] kind="Zps" p=2 s=1)");
  EXPECT_EQ(err.cause(), Errc::even_characteristic);
  EXPECT_NE(std::string(err.what()).find("EvenCharacteristic"), std::string::npos);
}

TEST(ParseConfig, Globals) {
  const auto c = parse_config("timeout_secs = 2.5\nmax_card = 100\nformat = \"json\"\nout = \"r.json\"\n"
                              "[[ring]]\nkind = \"chain\"\np = 5\ne = 2\n");
  EXPECT_DOUBLE_EQ(c.timeout_secs, 2.5);
  EXPECT_EQ(c.max_card, 100u);
  EXPECT_EQ(c.format, "json");
  EXPECT_EQ(c.out, "r.json");
  EXPECT_EQ(c.rings[0], RingSpec::chain(5, 2));
}

TEST(ParseConfig, UnknownKeyHasPosition) {
  const auto err = expect_throw<ParseError>("[[ring]]\nkind=\"Zps\" p=3 size=2\n");
  EXPECT_EQ(err.line(), 2);
  EXPECT_EQ(err.column(), 16);
  const auto global = expect_throw<ParseError>("verbose = 1\n[[ring]] kind=\"Zps\" p=3 s=1");
  EXPECT_EQ(global.line(), 1);
  EXPECT_EQ(global.column(), 1);
}

TEST(ParseConfig, SyntaxErrors) {
  EXPECT_EQ(expect_throw<ParseError>("[[ring]] kind=\"Zps\" p=3 p=5").code(), Errc::parse_error);
  EXPECT_EQ(expect_throw<ParseError>("[[ring]] kind=\"Zps\" p=").code(), Errc::parse_error);
  EXPECT_EQ(expect_throw<ParseError>("[[rings]] kind=\"Zps\" p=3 s=1").line(), 1);
  EXPECT_EQ(expect_throw<ParseError>("[[ring]] kind=\"Zps\" p=3 s=1\nformat = \"csv\"").line(), 2);
  EXPECT_EQ(expect_throw<ParseError>("[[ring]] kind=\"weird\" p=3").code(), Errc::parse_error);
  EXPECT_EQ(expect_throw<ParseError>("format = \"xml\"\n[[ring]] kind=\"Zps\" p=3 s=1").line(), 1);
}

TEST(ParseConfig, ValidationErrors) {
  EXPECT_EQ(expect_throw<ValidationError>("format = \"csv\"").cause(), Errc::invalid_spec);
  EXPECT_EQ(expect_throw<ValidationError>("[[ring]] kind=\"ext\" p=3").cause(), Errc::invalid_spec);
  EXPECT_EQ(expect_throw<ValidationError>("[[ring]] kind=\"Zps\" p=3 s=1 e=2").cause(), Errc::invalid_spec);
  EXPECT_EQ(expect_throw<ValidationError>("[[ring]] kind=\"Zps\" p=9 s=1").cause(), Errc::not_prime);
  EXPECT_EQ(expect_throw<ValidationError>("[[ring]] kind=\"ext\" p=3 modulus=[2,0,1]").cause(), Errc::not_local);
}

TEST(ParseRingSpec, RoundTripsThroughSpecString) {
  for (const auto& spec : parse_config(default_catalog_text()).rings) {
    const auto ring = make_ring(spec);
    const auto reparsed = parse_ring_spec(ring->spec_string());
    EXPECT_EQ(reparsed, spec) << ring->spec_string();
    EXPECT_EQ(make_ring(reparsed)->label(), ring->label());
  }
}

TEST(DefaultCatalog, ShippedFileMatchesEmbeddedText) {
  std::ifstream in(std::string(UNIMOD_SOURCE_DIR) + "/configs/default_catalog.toml");
  ASSERT_TRUE(in);
  std::ostringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), default_catalog_text());
  const auto config = parse_config(text.str());
  std::vector<std::string> labels;
  for (const auto& spec : config.rings) labels.push_back(make_ring(spec)->label());
  EXPECT_EQ(labels, (std::vector<std::string>{"Z_3", "Z_5", "Z_7", "Z_9", "Z_25", "Z_27", "F_9", "F_25", "F_27",
                                              "F_3[t]/(t^2)", "F_5[t]/(t^2)", "GR(9,2)"}));
}

}  // namespace
}  // namespace unimod
