// Copyright 2026 The secnc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "secnc/serialization.hpp"

namespace secnc {
namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(SECNC_SPEC_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string parse_error_field(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(Spec, BundledSpecsRoundTripByteIdentical) {
  for (const char* name : {"two_layer_t6_m3.json", "two_layer_t8_m4.json", "separable_m2_three_subgraphs.json",
                           "separable_butterfly.json", "separable_not_separable.json"}) {
    SCOPED_TRACE(name);
    const NetworkSpec spec = parse_spec(read(name));
    const std::string once = dump(spec_to_json(spec));
    const std::string twice = dump(spec_to_json(parse_spec(once)));
    EXPECT_EQ(once, twice);
  }
}

TEST(Spec, TwoLayerFieldsAreOneBased) {
  const NetworkSpec spec = parse_spec(read("two_layer_t6_m3.json"));
  ASSERT_TRUE(spec.two_layer());
  EXPECT_EQ(spec.two_layer_network(), TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}}));
  EXPECT_EQ(spec.k, 1u);
  EXPECT_FALSE(spec.q.has_value());
}

TEST(Spec, SeparableMatchesFixture) {
  const NetworkSpec spec = parse_spec(read("separable_m2_three_subgraphs.json"));
  ASSERT_FALSE(spec.two_layer());
  EXPECT_EQ(cut_profile(spec.separable_network()), cut_profile(fixtures::lifting_fixtures()[0].network));
}

TEST(Spec, ErrorsNameTheField) {
  EXPECT_EQ(parse_error_field(R"({"kind":"two_layer","m":1,"connections":[[1]]})"), "t");
  EXPECT_EQ(parse_error_field(R"({"kind":"two_layer","t":2,"m":1,"connections":[[3]]})"), "connections[0]");
  EXPECT_EQ(parse_error_field(R"({"kind":"two_layer","t":2,"m":2,"connections":[[1]]})"), "connections");
  EXPECT_EQ(parse_error_field(R"({"kind":"two_layer","t":2,"m":1,"connections":[[1]],"q":8})"), "q");
  EXPECT_EQ(parse_error_field(R"({"kind":"ring"})"), "kind");
  EXPECT_EQ(parse_error_field(R"({"kind":"two_layer","t":-1,"m":1,"connections":[[1]]})"), "t");
  EXPECT_EQ(parse_error_field(R"({"kind":"separable","nodes":["S","D1"],"source":"S","destinations":["D1"],
      "edges":[{"tail":"X","head":"D1","label":[1]}],"declared":[]})"),
            "edges[0].tail");
  EXPECT_EQ(parse_error_field(R"({"kind":"separable","nodes":["S","D1"],"source":"S","destinations":["D1"],
      "edges":[{"tail":"S","head":"D1","label":[2]}],"declared":[]})"),
            "edges[0].label");
  EXPECT_EQ(parse_error_field(R"({"kind":"separable","nodes":["S","D1"],"source":"S","destinations":["D1"],
      "edges":[{"tail":"S","head":"D1","label":[1]},{"tail":"D1","head":"S","label":[1]}],"declared":[]})"),
            "edges");
  EXPECT_EQ(parse_error_field("{not json"), "");
}

TEST(Region, RoundTrip) {
  const auto net = TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}});
  const RateRegion g = achievable_region(net, 1, 7);
  const Json j = region_to_json(g);
  EXPECT_EQ(j.dump(), R"({"1":2,"2":3,"3":5,"4":1,"5":3,"6":4,"7":5})");
  EXPECT_EQ(region_from_json(j), g);
  EXPECT_THROW(region_from_json(Json::parse(R"({"1":2,"2":3})")), ParseError);
}

TEST(Scheme, RoundTripPreservesEverything) {
  const auto net = TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}});
  const auto s = build_scheme(net, 2, 11, {2, 0, 1});
  const std::string text = dump(scheme_to_json(s));
  const WiretapScheme back = scheme_from_json(parse_json_text(text));
  EXPECT_EQ(back.network, s.network);
  EXPECT_EQ(back.key_matrix, s.key_matrix);
  EXPECT_EQ(back.message_matrix, s.message_matrix);
  EXPECT_EQ(back.decoder, s.decoder);
  EXPECT_EQ(back.rates, s.rates);
  EXPECT_EQ(back.permutation, s.permutation);
  EXPECT_EQ(dump(scheme_to_json(back)), text);
}

TEST(Scheme, RejectsWrongShapes) {
  const auto net = TwoLayerNetwork::from_one_based(2, {{1, 2}});
  Json j = scheme_to_json(build_scheme(net, 1, 5, {0}));
  j["key_matrix"] = Json::array({Json::array({1})});
  try {
    scheme_from_json(j);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "key_matrix");
  }
  j = scheme_to_json(build_scheme(net, 1, 5, {0}));
  j["decoder"][0][0] = 9;
  EXPECT_THROW(scheme_from_json(j), ParseError);
}

TEST(Report, RoundTrip) {
  SecurityReport r;
  r.scheme_id = "abc";
  r.condition = SecurityCondition::kEntropy;
  r.pass = false;
  r.counterexample = std::vector<std::size_t>{0, 4};
  r.subsets_checked = 12;
  const Json j = report_to_json(r);
  EXPECT_EQ(j["counterexample"], Json::array({1, 5}));
  const SecurityReport back = report_from_json(j);
  EXPECT_EQ(dump(report_to_json(back)), dump(j));
}

TEST(Digest, Fnv1a) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

TEST(Lifted, SerializationIsStable) {
  const auto fx = fixtures::lifting_fixtures();
  const ChildNetwork child = build_child(fx[1].network);
  const auto cs = build_scheme(child.network, 1, 37, {0, 1});
  const LiftedScheme s = lift_scheme(fx[1].network, cs, 4);
  const Json j = lifted_to_json(s);
  EXPECT_EQ(j["edges"].size(), fx[1].network.edges().size());
  EXPECT_EQ(j["seed"], 4);
  EXPECT_EQ(j["verification"]["security"]["pass"], true);
  EXPECT_EQ(dump(j), dump(lifted_to_json(lift_scheme(fx[1].network, cs, 4))));
}

}  // namespace
}  // namespace secnc
