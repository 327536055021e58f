#include <gtest/gtest.h>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/json_io.hpp"

using namespace arcmarkov;

TEST(JsonIo, TrigPolyRoundTrip) {
  const TrigPoly p = TrigPoly::from_arrays({0.0, 1.5, -0.25}, {0.0, 2.0, 0.125}, true);
  const json j = p;
  const auto q = j.get<TrigPoly>();
  EXPECT_EQ(q.a(), p.a());
  EXPECT_EQ(q.b(), p.b());
  EXPECT_TRUE(q.half_shift());
  EXPECT_THROW(json({{"cos", {1.0, 2.0}}, {"sin", {0.0}}}).get<TrigPoly>(), Error);
}

TEST(JsonIo, ChebAndIntervals) {
  const ChebSeries c(0.0, 2.0, {1.0, -0.5, 0.25});
  const auto c2 = json(c).get<ChebSeries>();
  EXPECT_EQ(c2.coeffs(), c.coeffs());
  EXPECT_EQ(c2.hi(), 2.0);

  const IntervalSet E({{-2.0, -1.0}, {0.5, 1.0}});
  const json j = E;
  EXPECT_EQ(j.dump(), "[[-2.0,-1.0],[0.5,1.0]]");
  EXPECT_EQ(j.get<IntervalSet>().size(), 2u);
}

TEST(JsonIo, FastDecaySpecs) {
  const json j = json::parse(R"({"kind":"algebraic","a_prime":-0.5,"a":-0.3,"x0":0,"b":0.3,
    "b_prime":0.5,"zeros":[{"at":0.8,"multiplicity":2}],"m":100})");
  const auto s = j.get<fastdecay::AlgebraicSpec>();
  EXPECT_EQ(s.frame_lo, -1.0);
  EXPECT_EQ(s.k0, 1);
  EXPECT_EQ(s.zeros[0].multiplicity, 2);
  const json back = s;
  EXPECT_EQ(back.get<fastdecay::AlgebraicSpec>().zeros[0].at, 0.8);
  EXPECT_THROW(json::parse(R"({"a":1})").get<fastdecay::TrigSpec>(), Error);
}

TEST(ParseIntervalSet, Forms) {
  EXPECT_EQ(parse_interval_set("[-1.5,1.5]").size(), 1u);
  const auto E = parse_interval_set("[-2.9, -0.8] U [0.8, 2.9]");
  ASSERT_EQ(E.size(), 2u);
  EXPECT_EQ(E.intervals()[1].lo, 0.8);
  for (const char* bad : {"", "[1,0]", "[a,1]", "[0,1] x", "[0,1] U [0.5,2]"}) {
    try {
      parse_interval_set(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ConfigError) << bad;
    }
  }
}

TEST(Csv, Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_row({"x", "[0,1] U [2,3]", "1"}), "x,\"[0,1] U [2,3]\",1\r\n");
}

TEST(Csv, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(fnv1a(""), 14695981039346656037ull);
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(0), "0000000000000000");
}
