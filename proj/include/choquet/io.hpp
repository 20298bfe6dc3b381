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

/// \file
/// JSON and CSV formats.
///
/// GridFunction JSON: {"n":..,"L":..,"d":..,"values":[..]} with values in
/// row-major leaf order (coordinate 0 most significant). GridFunction CSV:
///
///   # n=1,L=2,d=0.5
///   leaf,value
///   0,1
///   ...
///
/// Cube addresses are strings "k:j0,j1,...". Doubles are written in
/// shortest round-trip form, so write-then-read is bit-exact.

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "choquet/content.hpp"
#include "choquet/error.hpp"
#include "choquet/lattice.hpp"
#include "choquet/sparse.hpp"
#include "choquet/spaces.hpp"

namespace choquet {

using Json = nlohmann::ordered_json;

inline Json to_json(const LatticeConfig& cfg) {
  return Json{{"n", cfg.n}, {"L", cfg.L}, {"d", cfg.d}};
}

inline Json to_json(const GridFunction& f) {
  Json j = to_json(f.config());
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

inline GridFunction grid_function_from_json(const Json& j) {
  try {
    LatticeConfig cfg{j.at("n").get<int>(), j.at("L").get<int>(), j.at("d").get<double>()};
    cfg.validate();
    return {cfg, j.at("values").get<std::vector<double>>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed grid function JSON: ") + e.what());
  }
}

inline Json to_json(const std::vector<CubeId>& cubes) {
  Json out = Json::array();
  for (const auto& q : cubes) out.push_back(q.to_string());
  return out;
}

inline std::vector<CubeId> cubes_from_json(const Json& j) {
  std::vector<CubeId> out;
  try {
    for (const auto& s : j) out.push_back(CubeId::parse(s.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed cube list: ") + e.what());
  }
  return out;
}

inline Json to_json(const Tiling& t) { return to_json(t.cubes); }

inline Json to_json(const ContentResult& r) {
  return Json{{"value", r.value}, {"cover", to_json(r.optimal_cover)}};
}

inline Json to_json(const SparseFamily& s) {
  return Json{{"eta", s.eta}, {"cubes", to_json(s.cubes)}};
}

inline SparseFamily sparse_family_from_json(const Json& j) {
  try {
    return {cubes_from_json(j.at("cubes")), j.value("eta", 0.5)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed sparse family JSON: ") + e.what());
  }
}

/// Infinite exponents are written as the string "inf".
inline Json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

inline Json to_json(const NormValue& v) {
  Json j{{"space", to_string(v.space.tag)}, {"p", exponent_json(v.space.p)}};
  j["phi"] = v.space.phi ? Json(v.space.phi->name()) : Json(nullptr);
  if (v.space.tag == SpaceTag::block || v.space.tag == SpaceTag::tiling_orlicz_morrey) {
    j["tiling"] = to_json(v.space.tiling);
  }
  j["value"] = v.value;
  return j;
}

inline std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string to_csv(const GridFunction& f) {
  const auto& cfg = f.config();
  std::string out = "# n=" + std::to_string(cfg.n) + ",L=" + std::to_string(cfg.L) +
                    ",d=" + shortest(cfg.d) + "\nleaf,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += std::to_string(i) + "," + shortest(f[i]) + "\n";
  }
  return out;
}

inline GridFunction grid_function_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  LatticeConfig cfg;
  bool have_config = false;
  std::vector<double> values;
  auto parse_double = [](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ParseError("bad number '" + std::string(s) + "' in CSV");
    }
    return v;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "leaf,value") continue;
    if (line.starts_with("#")) {
      int n = 0;
      int L = 0;
      char dbuf[64] = {};
      if (std::sscanf(line.c_str(), "# n=%d,L=%d,d=%63s", &n, &L, dbuf) != 3) {
        throw ParseError("CSV header must read '# n=..,L=..,d=..'");
      }
      cfg = {n, L, parse_double(dbuf)};
      have_config = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("CSV row needs 'leaf,value'");
    const auto leaf = static_cast<std::size_t>(parse_double(line.substr(0, comma)));
    if (leaf != values.size()) throw ParseError("CSV rows must list leaves in order");
    values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  if (!have_config) throw ParseError("CSV grid function lacks its '# n=..,L=..,d=..' header");
  return {cfg, std::move(values)};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
  out << text;
}

/// Reads a GridFunction from a .csv file or a JSON file.
inline GridFunction load_grid_function(const std::string& path) {
  const auto text = read_file(path);
  if (path.ends_with(".csv")) return grid_function_from_csv(text);
  try {
    return grid_function_from_json(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace choquet
