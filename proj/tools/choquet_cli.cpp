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

// choquet: command-line front end.
//
// Exit codes: 0 success (or suite pass), 1 suite fail, 2 usage or IO error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "choquet/choquet.hpp"

namespace {

using namespace choquet;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFail = 1;
constexpr int kExitUsage = 2;

/// Scalars are printed with 12 digits after the point.
std::string fixed12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const double a = std::abs(v);
  if (a != 0.0 && (a < 1e-6 || a >= 1e15)) {
    std::snprintf(buf, sizeof buf, "%.12e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.12f", v);
  }
  return buf;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad exponent '" + s + "'");
  }
  return v;
}

struct Output {
  std::string format = "text";
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
    } else {
      write_file(path, text);
    }
  }
  void emit(const Json& j) const { emit(j.dump(2) + "\n"); }
  void emit_scalar(const char* key, double v) const {
    if (format == "json") {
      emit(Json{{key, number_json(v)}});
    } else if (format == "csv") {
      emit(std::string(key) + "\n" + fixed12(v) + "\n");
    } else {
      emit(fixed12(v) + "\n");
    }
  }
  void emit_function(const GridFunction& f) const {
    if (format == "csv") {
      emit(to_csv(f));
    } else {
      emit(to_json(f));
    }
  }
};

void add_output(CLI::App* cmd, Output& out, const char* default_format) {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.path, "Write to a file instead of stdout");
}

struct LatticeFlags {
  int n = 1;
  int L = 5;
  double d = 0.5;
};

void add_lattice(CLI::App* cmd, LatticeFlags& flags) {
  cmd->add_option("--n", flags.n, "Dimension")->capture_default_str();
  cmd->add_option("--L", flags.L, "Resolution level")->capture_default_str();
  cmd->add_option("--d", flags.d, "Content exponent")->capture_default_str();
}

SparseFamily load_family(const std::string& path) {
  try {
    return sparse_family_from_json(Json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Tiling load_tiling(const std::string& path) {
  try {
    const auto j = Json::parse(read_file(path));
    return Tiling{cubes_from_json(j.is_object() ? j.at("cubes") : j)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not a tiling: " + e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Choquet integrals against dyadic Hausdorff content"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "choquet 1.0.0");

  std::string input;
  std::function<int()> action;

  // content
  Output content_out;
  auto* content = app.add_subcommand("content", "Dyadic Hausdorff content of a set");
  content->add_option("-i,--input", input, "Indicator grid function")->required();
  add_output(content, content_out, "text");
  content->callback([&] {
    action = [&] {
      const auto r = hausdorff_content(load_grid_function(input));
      if (content_out.format == "json") {
        content_out.emit(to_json(r));
      } else if (content_out.format == "csv") {
        std::string text = "cube,weight\n";
        const auto cfg = load_grid_function(input).config();
        for (const auto& q : r.optimal_cover) {
          text += q.to_string() + "," + fixed12(cfg.content_weight(q.level)) + "\n";
        }
        content_out.emit(text);
      } else {
        content_out.emit(fixed12(r.value) + "\n");
      }
      return kExitOk;
    };
  });

  // frostman
  Output frostman_out;
  auto* frostman = app.add_subcommand("frostman", "Frostman measure of a set");
  frostman->add_option("-i,--input", input, "Indicator grid function")->required();
  add_output(frostman, frostman_out, "json");
  frostman->callback([&] {
    action = [&] {
      frostman_out.emit_function(frostman_measure(load_grid_function(input)));
      return kExitOk;
    };
  });

  // choquet
  Output choquet_out;
  std::string p_text = "1";
  auto* choquet_cmd = app.add_subcommand("choquet", "Choquet norm ||f||_{L^p(H^d)}");
  choquet_cmd->add_option("-i,--input", input, "Grid function")->required();
  choquet_cmd->add_option("--p", p_text, "Exponent in (0, inf]")->capture_default_str();
  add_output(choquet_cmd, choquet_out, "text");
  choquet_cmd->callback([&] {
    action = [&] {
      choquet_out.emit_scalar(
          "value", choquet_norm(load_grid_function(input), parse_exponent(p_text)));
      return kExitOk;
    };
  });

  // luxemburg
  Output lux_out;
  std::string cube_text;
  std::string phi_name = "llogl";
  auto* lux = app.add_subcommand("luxemburg", "Luxemburg norm ||f||_{Phi;Q}");
  lux->add_option("-i,--input", input, "Grid function")->required();
  lux->add_option("--cube", cube_text, "Cube 'k:j0,...' (default: root)");
  lux->add_option("--phi", phi_name, "Young function")->capture_default_str();
  add_output(lux, lux_out, "text");
  lux->callback([&] {
    action = [&] {
      const auto f = load_grid_function(input);
      const CubeId q = cube_text.empty() ? CubeId::root(f.config().n) : CubeId::parse(cube_text);
      check_cube(f.config(), q);
      lux_out.emit_scalar("value", luxemburg_norm(f, q, YoungFunction::parse(phi_name)));
      return kExitOk;
    };
  });

  // maximal
  Output maximal_out;
  std::string which;
  std::optional<double> alpha;
  auto* maximal = app.add_subcommand("maximal", "Maximal operators M, M_d and M_{alpha,Phi}");
  maximal->add_option("which", which, "hl | md | orlicz")
      ->required()
      ->check(CLI::IsMember({"hl", "md", "orlicz"}));
  maximal->add_option("-i,--input", input, "Grid function (density for md)")->required();
  maximal->add_option("--alpha", alpha, "Fractional order for orlicz (default n - d)");
  maximal->add_option("--phi", phi_name, "Young function for orlicz")->capture_default_str();
  add_output(maximal, maximal_out, "json");
  maximal->callback([&] {
    action = [&] {
      const auto f = load_grid_function(input);
      const auto& cfg = f.config();
      MaximalResult r = which == "hl"   ? hl_maximal(f)
                        : which == "md" ? fractional_measure_maximal(f)
                                        : orlicz_fractional_maximal(
                                              f, alpha.value_or(cfg.n - cfg.d),
                                              YoungFunction::parse(phi_name));
      maximal_out.emit_function(r.values);
      return kExitOk;
    };
  });

  // norm
  Output norm_out;
  std::string space_name;
  std::string tiling_path;
  auto* norm = app.add_subcommand("norm", "Morrey, Orlicz-Morrey, block and tiling norms");
  norm->add_option("--space", space_name,
                   "morrey | orlicz_morrey | orlicz_morrey_inf | block | tiling_orlicz_morrey")
      ->required();
  norm->add_option("-i,--input", input, "Grid function")->required();
  norm->add_option("--p", p_text, "Exponent")->capture_default_str();
  norm->add_option("--phi", phi_name, "Young function")->capture_default_str();
  norm->add_option("--tiling", tiling_path, "Tiling JSON (cube list); default {root}");
  add_output(norm, norm_out, "text");
  norm->callback([&] {
    action = [&] {
      const auto f = load_grid_function(input);
      SpaceSpec space;
      space.tag = parse_space_tag(space_name);
      space.p = space.tag == SpaceTag::orlicz_morrey_inf ? kInfinity : parse_exponent(p_text);
      if (space.tag != SpaceTag::morrey) space.phi = YoungFunction::parse(phi_name);
      space.tiling = tiling_path.empty() ? Tiling::single(f.config().n) : load_tiling(tiling_path);
      const auto value = evaluate_norm(f, space);
      if (norm_out.format == "json") {
        norm_out.emit(to_json(value));
      } else {
        norm_out.emit_scalar("value", value.value);
      }
      return kExitOk;
    };
  });

  // sparse
  Output sparse_out;
  std::string family_path;
  LatticeFlags sparse_lattice;
  auto* sparse = app.add_subcommand("sparse", "Sparse families");
  sparse->require_subcommand(1);
  auto* verify_family = sparse->add_subcommand("verify", "Canonical witness sparseness check");
  verify_family->add_option("--family", family_path, "Sparse family JSON")->required();
  add_lattice(verify_family, sparse_lattice);
  add_output(verify_family, sparse_out, "json");
  verify_family->callback([&] {
    action = [&] {
      const LatticeConfig cfg{sparse_lattice.n, sparse_lattice.L, sparse_lattice.d};
      cfg.validate();
      const auto family = load_family(family_path);
      const auto r = verify_sparse(cfg, family);
      if (sparse_out.format == "json") {
        sparse_out.emit(Json{{"eta", family.eta},
                             {"min_ratio", r.min_ratio},
                             {"carleson_constant", r.carleson_constant},
                             {"sparse", r.sparse}});
      } else {
        sparse_out.emit("min_ratio " + fixed12(r.min_ratio) + "\ncarleson_constant " +
                        fixed12(r.carleson_constant) + "\nsparse " +
                        (r.sparse ? "true" : "false") + "\n");
      }
      return kExitOk;
    };
  });
  auto* apply = sparse->add_subcommand("apply", "Sparse operator A_S f");
  apply->add_option("--family", family_path, "Sparse family JSON")->required();
  apply->add_option("-i,--input", input, "Grid function")->required();
  add_output(apply, sparse_out, "json");
  apply->callback([&] {
    action = [&] {
      sparse_out.emit_function(apply_sparse(load_grid_function(input), load_family(family_path)));
      return kExitOk;
    };
  });

  // cantor
  Output cantor_out;
  CantorConfig cantor{1, 2, 2};
  std::optional<int> cantor_L;
  double growth_p = 1.0;
  auto* cantor_cmd = app.add_subcommand("cantor", "Snapped Cantor family with d = n/m");
  cantor_cmd->require_subcommand(1);
  auto add_cantor = [&](CLI::App* cmd) {
    cmd->add_option("--n", cantor.n, "Dimension")->capture_default_str();
    cmd->add_option("--m", cantor.m, "Level step m >= 2")->capture_default_str();
    cmd->add_option("--depth", cantor.K, "Depth K")->capture_default_str();
    cmd->add_option("--L", cantor_L, "Resolution level (default m * depth)");
    add_output(cmd, cantor_out, "text");
  };
  auto level = [&] { return cantor_L.value_or(cantor.m * cantor.K); };

  auto* family_cmd = cantor_cmd->add_subcommand("family", "Family S_0 and stage sizes");
  add_cantor(family_cmd);
  family_cmd->callback([&] {
    action = [&] {
      const auto fam = cantor_family(cantor, level());
      Json stages = Json::array();
      for (const auto& s : fam.stage_cubes) stages.push_back(s.size());
      cantor_out.emit(Json{{"n", cantor.n},
                           {"m", cantor.m},
                           {"K", cantor.K},
                           {"L", level()},
                           {"d", cantor.d()},
                           {"delta", cantor.delta()},
                           {"eta", fam.family.eta},
                           {"stage_sizes", stages},
                           {"cubes", to_json(fam.family.cubes)}});
      return kExitOk;
    };
  });

  auto* cantor_content_cmd = cantor_cmd->add_subcommand("content", "H^d(E^k) for k = 0..K");
  add_cantor(cantor_content_cmd);
  cantor_content_cmd->callback([&] {
    action = [&] {
      const auto fam = cantor_family(cantor, level());
      std::vector<double> values;
      for (const auto& e : fam.stages) values.push_back(hausdorff_content(e).value);
      if (cantor_out.format == "json") {
        cantor_out.emit(Json{{"content", values}});
      } else {
        std::string text = cantor_out.format == "csv" ? "k,content\n" : "";
        for (std::size_t k = 0; k < values.size(); ++k) {
          if (cantor_out.format == "csv") text += std::to_string(k) + ",";
          text += fixed12(values[k]) + "\n";
        }
        cantor_out.emit(text);
      }
      return kExitOk;
    };
  });

  auto* lux_bound = cantor_cmd->add_subcommand("lux-bound", "lambda* against ||F_K||_{expm1}");
  add_cantor(lux_bound);
  lux_bound->callback([&] {
    action = [&] {
      const auto b = cantor_lux_bound(cantor, level());
      if (cantor_out.format == "json") {
        cantor_out.emit(Json{{"lambda0", b.lambda0},
                             {"Lambda0", b.Lambda0},
                             {"lambda_star", b.lambda_star},
                             {"computed_norm", b.computed_norm}});
      } else {
        cantor_out.emit("lambda0 " + fixed12(b.lambda0) + "\nLambda0 " + fixed12(b.Lambda0) +
                        "\nlambda_star " + fixed12(b.lambda_star) + "\ncomputed_norm " +
                        fixed12(b.computed_norm) + "\n");
      }
      return kExitOk;
    };
  });

  auto* growth = cantor_cmd->add_subcommand("growth", "||F_K||_{L^p(H^d)} for K = 0..depth");
  add_cantor(growth);
  growth->add_option("--p", growth_p, "Exponent p >= 1")->capture_default_str();
  growth->callback([&] {
    action = [&] {
      const auto rows = unboundedness_demo(cantor, growth_p, level());
      if (cantor_out.format == "json") {
        Json j = Json::array();
        for (const auto& r : rows) j.push_back({{"K", r.K}, {"norm", r.norm}});
        cantor_out.emit(j);
      } else {
        std::string text = cantor_out.format == "csv" ? "K,norm\n" : "";
        const char* sep = cantor_out.format == "csv" ? "," : " ";
        for (const auto& r : rows) text += std::to_string(r.K) + sep + fixed12(r.norm) + "\n";
        cantor_out.emit(text);
      }
      return kExitOk;
    };
  });

  // verify
  Output verify_out;
  SuiteConfig suite;
  LatticeFlags suite_lattice;
  bool list_suites = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite.name, "Suite name");
  verify->add_flag("--list", list_suites, "List suite names");
  verify->add_option("--trials", suite.trials, "Trials")->capture_default_str();
  verify->add_option("--seed", suite.seed, "Seed")->capture_default_str();
  verify->add_option("--threads", suite.threads, "Workers (0: CHOQUET_THREADS or all cores)");
  add_lattice(verify, suite_lattice);
  verify_out.format = "json";
  verify->add_option("-o,--output", verify_out.path, "Write the report to a file");
  verify->callback([&] {
    action = [&] {
      if (list_suites) {
        std::string text;
        for (const auto& name : suite_names()) text += name + "\n";
        verify_out.emit(text);
        return kExitOk;
      }
      if (suite.name.empty()) throw ConfigError("verify needs a suite name (see --list)");
      suite.lattice = {suite_lattice.n, suite_lattice.L, suite_lattice.d};
      const auto report = run_suite(suite);
      verify_out.emit(to_json(report));
      return report.pass() ? kExitOk : kExitSuiteFail;
    };
  });

  // random
  Output random_out;
  std::string kind;
  LatticeFlags random_lattice;
  std::uint64_t random_seed = 42;
  auto* random = app.add_subcommand("random", "Seed-deterministic random instance");
  random->add_option("kind", kind, "function | density | set | tiling | sparse_family")
      ->required();
  random->add_option("--seed", random_seed, "Seed")->capture_default_str();
  add_lattice(random, random_lattice);
  add_output(random, random_out, "json");
  random->callback([&] {
    action = [&] {
      const LatticeConfig cfg{random_lattice.n, random_lattice.L, random_lattice.d};
      const auto inst = random_instance(parse_instance_kind(kind), cfg, random_seed);
      if (const auto* f = std::get_if<GridFunction>(&inst)) {
        random_out.emit_function(*f);
      } else {
        random_out.emit(to_json(inst));
      }
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action ? action() : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
