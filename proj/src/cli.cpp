// Copyright 2026 The eprkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eprkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eprkit/assemblage.hpp"
#include "eprkit/conversion.hpp"
#include "eprkit/freeness.hpp"
#include "eprkit/functionals.hpp"
#include "eprkit/locc.hpp"
#include "eprkit/monotones.hpp"
#include "eprkit/sdp.hpp"

namespace eprkit::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Assemblage load_assemblage(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return assemblage_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": malformed JSON at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << contents;
}

void write_assemblage(const std::string& path, const Assemblage& a) {
  write_file(path, assemblage_to_json(a).dump(2) + "\n");
}

int status_exit(sdp::Status st) {
  switch (st) {
    case sdp::Status::Feasible: return kExitSuccess;
    case sdp::Status::Infeasible: return kExitNegative;
    case sdp::Status::Indeterminate: return kExitIndeterminate;
  }
  return kExitIndeterminate;
}

struct GridMember {
  std::string name;
  double theta, p;
};

std::vector<GridMember> demo_grid_members() {
  const double pi = M_PI;
  std::vector<GridMember> out;
  const std::vector<std::pair<std::string, double>> thetas{
      {"pi/12", pi / 12}, {"pi/6", pi / 6}, {"pi/4", pi / 4}};
  const std::vector<double> ps{1.0, 0.9, 0.8};
  for (const auto& [tn, tv] : thetas)
    for (double p : ps) {
      std::ostringstream name;
      name << "S(theta=" << tn << ",p=" << p << ")";
      out.push_back({name.str(), tv, p});
    }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"EPR assemblage toolkit: classicality tests, conversion "
               "decisions, inequality functionals, and resource monotones"};
  app.set_config("--config")->description("key=value file with global settings");

  sdp::SolveSettings sdpset;
  int workers = 0;
  app.add_option("--eps-feasible", sdpset.eps_feasible,
                 "feasibility threshold on the optimal slack")
      ->capture_default_str();
  app.add_option("--eps-infeasible", sdpset.eps_infeasible,
                 "infeasibility threshold on the slack lower bound")
      ->capture_default_str();
  app.add_option("--solver-tol", sdpset.solver_tol, "interior-point tolerance")
      ->capture_default_str();
  app.add_option("--workers", workers, "parallel solves in sweeps (0 = all cores)")
      ->capture_default_str();

  // build-family
  auto* build = app.add_subcommand("build-family", "construct a family member");
  std::string family_kind, build_out;
  double theta = M_PI / 4, p = 1.0;
  int n_parties = 3;
  build->add_option("family", family_kind, "S or GHZ")->required();
  build->add_option("--theta", theta, "state angle in (0, pi/4]")->required();
  build->add_option("--p", p, "visibility in [0, 1] (family S)");
  build->add_option("--n", n_parties, "party count (family GHZ)");
  build->add_option("--out", build_out, "output JSON path")->required();

  // validate
  auto* val = app.add_subcommand("validate", "check assemblage invariants");
  std::string val_in;
  double val_tol = qcore::kDefaultTol;
  val->add_option("input", val_in, "assemblage JSON")->required();
  val->add_option("--tol", val_tol, "tolerance")->capture_default_str();

  // check-free
  auto* free_cmd = app.add_subcommand("check-free", "classicality membership");
  std::string free_model = "lhs", free_in;
  free_cmd->add_option("--model", free_model, "lhs|losr|general|tolhs")
      ->check(CLI::IsMember({"lhs", "losr", "general", "tolhs"}));
  free_cmd->add_option("--input", free_in, "assemblage JSON")->required();

  // convert
  auto* conv = app.add_subcommand("convert", "decide a conversion");
  std::string conv_src, conv_dst;
  bool conv_multi = false;
  conv->add_option("--src", conv_src, "source assemblage JSON")->required();
  conv->add_option("--dst", conv_dst, "destination assemblage JSON")->required();
  conv->add_flag("--multi", conv_multi, "use the multi-Alice decision");

  // preorder
  auto* pre = app.add_subcommand("preorder", "pairwise conversion digraph");
  std::string pre_dir, pre_dot, pre_json;
  bool pre_fast = false;
  pre->add_option("--family", pre_dir, "directory of assemblage JSON files")->required();
  pre->add_option("--out", pre_dot, "DOT output path");
  pre->add_option("--out-json", pre_json, "JSON output path");
  pre->add_flag("--fast", pre_fast, "skip pairs implied by transitivity");

  // functional
  auto* fun = app.add_subcommand("functional", "evaluate a tilted functional");
  double fun_eta = M_PI / 4;
  std::string fun_eval;
  fun->add_option("--eta", fun_eta, "functional parameter in (0, pi/4]")->required();
  fun->add_option("--eval", fun_eval, "assemblage JSON to evaluate")->required();

  // monotone
  auto* mono = app.add_subcommand("monotone", "evaluate a resource monotone");
  std::string mono_kind, mono_in;
  double mono_eta = M_PI / 4;
  mono->add_option("--kind", mono_kind, "weight|robustness|yield")
      ->required()
      ->check(CLI::IsMember({"weight", "robustness", "yield"}));
  mono->add_option("--eta", mono_eta, "yield functional parameter");
  mono->add_option("--input", mono_in, "assemblage JSON")->required();

  // locc-apply
  auto* locc_cmd = app.add_subcommand("locc-apply", "apply a one-way LOCC map");
  std::string locc_map, locc_in, locc_out;
  double locc_theta = M_PI / 6;
  locc_cmd->add_option("--map", locc_map, "filter-stoch|filter-det")
      ->required()
      ->check(CLI::IsMember({"filter-stoch", "filter-det"}));
  locc_cmd->add_option("--theta", locc_theta, "filter angle in (0, pi/4)")->required();
  locc_cmd->add_option("--input", locc_in, "assemblage JSON")->required();
  locc_cmd->add_option("--out", locc_out, "output assemblage JSON");

  // reproduce-grid
  auto* grid = app.add_subcommand("reproduce-grid",
                                  "conversion digraph of the nine-member demo grid");
  std::string grid_dot, grid_json;
  grid->add_option("--out", grid_dot, "DOT output path");
  grid->add_option("--out-json", grid_json, "JSON output path");

  app.require_subcommand(1);
  // global settings may appear after the subcommand name
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      Assemblage a = family_kind == "GHZ" ? family_GHZ(n_parties, theta)
                                          : family_S(theta, p);
      if (family_kind != "GHZ" && family_kind != "S")
        throw UsageError("unknown family " + family_kind);
      write_assemblage(build_out, a);
      std::cout << "wrote " << build_out << "\n";
      return kExitSuccess;
    }

    if (val->parsed()) {
      const auto report = validate(load_assemblage(val_in), val_tol);
      std::cout << report.to_string();
      if (report.ok()) std::cout << "\n";
      return report.ok() ? kExitSuccess : kExitNegative;
    }

    if (free_cmd->parsed()) {
      const Assemblage a = load_assemblage(free_in);
      freeness::FreenessDecision dec;
      if (free_model == "lhs") dec = freeness::is_free_bipartite(a, sdpset);
      else if (free_model == "losr") dec = freeness::is_losr_free_multi(a, sdpset);
      else if (free_model == "general") dec = freeness::is_general_lhs_multi(a, sdpset);
      else dec = freeness::is_tolhs_multi(a, sdpset);
      std::cout << sdp::to_string(dec.status) << " (slack " << dec.slack
                << ", bound " << dec.slack_bound << ")\n";
      return status_exit(dec.status);
    }

    if (conv->parsed()) {
      const Assemblage src = load_assemblage(conv_src);
      const Assemblage dst = load_assemblage(conv_dst);
      const bool multi = conv_multi || src.scenario().n_alices > 1;
      const auto dec = multi ? conversion::decide_conversion_multi(src, dst, sdpset)
                             : conversion::decide_conversion(src, dst, sdpset);
      std::cout << sdp::to_string(dec.status) << " (slack " << dec.slack
                << ", bound " << dec.slack_bound << ")\n";
      return status_exit(dec.status);
    }

    if (pre->parsed() || grid->parsed()) {
      std::vector<std::pair<std::string, Assemblage>> family;
      if (pre->parsed()) {
        std::vector<std::string> paths;
        for (const auto& entry : fs::directory_iterator(pre_dir))
          if (entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
        std::sort(paths.begin(), paths.end());
        if (paths.empty()) throw UsageError("no .json files under " + pre_dir);
        for (const auto& path : paths)
          family.emplace_back(fs::path(path).stem().string(), load_assemblage(path));
      } else {
        for (const auto& m : demo_grid_members())
          family.emplace_back(m.name, family_S(m.theta, m.p));
      }
      conversion::PreorderSettings ps;
      ps.sdp = sdpset;
      ps.workers = workers;
      ps.fast = pre->parsed() && pre_fast;
      const auto graph = conversion::preorder_graph(family, ps);
      const std::string dot_path = pre->parsed() ? pre_dot : grid_dot;
      const std::string json_path = pre->parsed() ? pre_json : grid_json;
      if (!dot_path.empty()) write_file(dot_path, graph.to_dot());
      if (!json_path.empty()) write_file(json_path, graph.to_json().dump(2) + "\n");
      if (dot_path.empty() && json_path.empty()) std::cout << graph.to_dot();
      std::cout << "nodes " << graph.names.size() << ", edges " << graph.edges.size()
                << ", indeterminate " << graph.indeterminate.size() << "\n";
      return graph.indeterminate.empty() ? kExitSuccess : kExitIndeterminate;
    }

    if (fun->parsed()) {
      const Assemblage a = load_assemblage(fun_eval);
      const int k = a.scenario().n_alices;
      const auto f = k == 1 ? functionals::epr_functional_bipartite(fun_eta)
                            : functionals::epr_functional_multi(k + 1, fun_eta);
      const double value = functionals::evaluate(f, a);
      const double qmax = k == 1 ? functionals::quantum_max_bipartite(fun_eta)
                                 : functionals::quantum_max_multi(k + 1, fun_eta);
      std::cout << "value " << value << "\nquantum max " << qmax << "\nlhs bound "
                << functionals::lhs_bound(f) << "\n";
      return kExitSuccess;
    }

    if (mono->parsed()) {
      const Assemblage a = load_assemblage(mono_in);
      monotones::MonotoneResult r;
      if (mono_kind == "weight") r = monotones::epr_weight(a, sdpset);
      else if (mono_kind == "robustness") r = monotones::epr_robustness(a, sdpset);
      else r = monotones::yield_monotone_multi(a, mono_eta, sdpset);
      if (!r.ok()) {
        std::cout << "indeterminate: " << r.diagnostic << "\n";
        return kExitIndeterminate;
      }
      std::cout << r.value << "\n";
      return kExitSuccess;
    }

    if (locc_cmd->parsed()) {
      const Assemblage a = load_assemblage(locc_in);
      const auto map = locc_map == "filter-stoch"
                           ? locc::filter_map_stochastic(locc_theta)
                           : locc::filter_map_deterministic(locc_theta);
      const auto [out, prob] = locc::apply_1wlocc(map, a);
      std::cout << "success probability " << prob << "\n";
      if (!locc_out.empty()) write_assemblage(locc_out, out);
      return kExitSuccess;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIndeterminate;
  }
  return kExitUsage;
}

}  // namespace eprkit::cli
