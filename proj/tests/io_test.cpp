// Copyright 2026 The Choquet Authors.
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


#include <gtest/gtest.h>

#include <cstring>
#include <limits>

#include "choquet/io.hpp"
#include "choquet/random.hpp"

namespace {

using namespace choquet;

bool bit_equal(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0;
}

TEST(Json, GridFunctionRoundTripIsBitExact) {
  Rng rng(11);
  for (const LatticeConfig cfg : {LatticeConfig{1, 5, 0.5}, LatticeConfig{2, 3, 1.3}}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(cfg, rng);
      const auto back = grid_function_from_json(Json::parse(to_json(f).dump()));
      EXPECT_TRUE(bit_equal(f, back));
      EXPECT_EQ(back.config().d, cfg.d);
    }
  }
}

TEST(Csv, GridFunctionRoundTripIsBitExact) {
  Rng rng(12);
  const LatticeConfig cfg{2, 3, 0.7};
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_function(cfg, rng).scaled(1.0 / 3.0);
    const auto back = grid_function_from_csv(to_csv(f));
    EXPECT_TRUE(bit_equal(f, back));
    EXPECT_EQ(back.config().n, 2);
    EXPECT_EQ(back.config().L, 3);
  }
}

TEST(Csv, AcceptsCrLf) {
  const auto f = grid_function_from_csv("# n=1,L=1,d=0.5\r\nleaf,value\r\n0,1\r\n1,0.25\r\n");
  EXPECT_EQ(f[1], 0.25);
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(grid_function_from_csv("leaf,value\n0,1\n1,2\n"), ParseError);
  EXPECT_THROW(grid_function_from_csv("# n=1,L=1,d=0.5\n0,1\n1,x\n"), ParseError);
  EXPECT_THROW(grid_function_from_csv("# n=1,L=1,d=0.5\n1,1\n0,2\n"), ParseError);
  EXPECT_THROW(grid_function_from_csv("# n=1,L=1,d=0.5\n0 1\n"), ParseError);
  EXPECT_THROW(grid_function_from_csv("# n=1,L=1,d=0.5\n0,1\n"), ConfigError);
}

TEST(Json, RejectsMalformedInput) {
  EXPECT_THROW(grid_function_from_json(Json::parse(R"({"n": 1, "L": 1})")), ParseError);
  EXPECT_THROW(grid_function_from_json(Json::parse(R"({"n": 1, "L": 1, "d": 0.5, "values": [1, "a"]})")),
               ParseError);
  EXPECT_THROW(grid_function_from_json(Json::parse(R"({"n": 1, "L": 2, "d": 0.5, "values": [1, 2]})")),
               ConfigError);
  EXPECT_THROW(grid_function_from_json(Json::parse(R"({"n": 1, "L": 1, "d": 2.0, "values": [1, 2]})")),
               ConfigError);
}

TEST(Json, CubeListsAndSparseFamilies) {
  const std::vector<CubeId> cubes{CubeId::root(2), CubeId{2, {1, 3}}};
  EXPECT_EQ(to_json(cubes).dump(), R"(["0:0,0","2:1,3"])");
  EXPECT_EQ(cubes_from_json(to_json(cubes)), cubes);

  const auto s = sparse_family_from_json(Json::parse(R"({"cubes": ["0:0", "1:1"]})"));
  EXPECT_EQ(s.eta, 0.5);
  ASSERT_EQ(s.cubes.size(), 2U);
  EXPECT_EQ(s.cubes[1], (CubeId{1, {1}}));
  EXPECT_THROW(sparse_family_from_json(Json::parse(R"({"cubes": [3]})")), ParseError);
  EXPECT_THROW(sparse_family_from_json(Json::parse(R"({"eta": 0.5})")), ParseError);
  EXPECT_THROW(CubeId::parse("1:"), ParseError);
  EXPECT_THROW(CubeId::parse("x:0"), ParseError);
}

TEST(Json, NormValueWritesInfiniteExponentAsString) {
  NormValue v{{SpaceTag::orlicz_morrey_inf, std::numeric_limits<double>::infinity(),
               YoungFunction::llogl(), {}},
              1.5};
  const auto j = to_json(v);
  EXPECT_EQ(j["p"], "inf");
  EXPECT_EQ(j["phi"], "llogl");
  EXPECT_EQ(j["value"], 1.5);
  EXPECT_FALSE(j.contains("tiling"));

  NormValue m{{SpaceTag::block, 2.0, std::nullopt, Tiling::single(1)}, 0.5};
  const auto k = to_json(m);
  EXPECT_EQ(k["p"], 2.0);
  EXPECT_TRUE(k["phi"].is_null());
  EXPECT_EQ(k["tiling"].dump(), R"(["0:0"])");
}

TEST(Shortest, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    EXPECT_EQ(std::stod(shortest(v)), v);
  }
  EXPECT_EQ(shortest(0.5), "0.5");
}

TEST(Files, MissingFileThrows) {
  EXPECT_THROW(read_file("/nonexistent/choquet/input.json"), std::ios_base::failure);
  EXPECT_THROW(load_grid_function("/nonexistent/choquet/input.csv"), std::ios_base::failure);
}

TEST(Files, LoadsByExtension) {
  const auto dir = ::testing::TempDir();
  const GridFunction f({1, 1, 0.5}, {0.75, 2.0});
  write_file(dir + "/f.json", to_json(f).dump());
  write_file(dir + "/f.csv", to_csv(f));
  write_file(dir + "/bad.json", "{ not json");
  EXPECT_TRUE(bit_equal(load_grid_function(dir + "/f.json"), f));
  EXPECT_TRUE(bit_equal(load_grid_function(dir + "/f.csv"), f));
  EXPECT_THROW(load_grid_function(dir + "/bad.json"), ParseError);
}

}  // namespace
