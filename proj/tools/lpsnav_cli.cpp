// Copyright 2026 The lpsnav Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lpsnav: navigation in LPS Ramanujan graphs from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "lpsnav/cayley_oracle.hpp"
#include "lpsnav/foursquares.hpp"
#include "lpsnav/navigator.hpp"
#include "lpsnav/npreduction.hpp"
#include "lpsnav/ntheory.hpp"
#include "lpsnav/quaternion.hpp"

namespace {

using json = nlohmann::ordered_json;
using lpsnav::BigInt;

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Flags {
  std::uint64_t seed = 0;
  std::string mode = "auto";
  double gamma = 0.75;
  double c_gamma = 4.0;
  std::uint64_t budget_rho = 2'000'000;
  int h_max_slack = 2;
  std::string output = "json";
  bool timing = false;
};

lpsnav::foursquares::Admission admission(const Flags& f) {
  if (f.mode == "exact") return lpsnav::foursquares::Admission::FullFactor;
  if (f.mode == "fast") return lpsnav::foursquares::Admission::FastPath;
  return lpsnav::foursquares::Admission::Auto;
}

lpsnav::navigator::NavConfig nav_config(const Flags& f) {
  lpsnav::navigator::NavConfig cfg;
  cfg.gamma = f.gamma;
  cfg.c_gamma = f.c_gamma;
  cfg.h_max_slack = f.h_max_slack;
  cfg.mode = admission(f);
  cfg.budget.factor.rho_iterations = f.budget_rho;
  return cfg;
}

std::string str(const BigInt& n) { return lpsnav::to_string(n); }

BigInt big(const std::string& s) { return lpsnav::parse_bigint(s); }

json quat_json(const lpsnav::quaternion::Quat& a) {
  return {{"x", str(a.x0)}, {"y", str(a.x1)}, {"z", str(a.x2)},
          {"w", str(a.x3)}};
}

json gauss_json(const lpsnav::ntheory::GaussInt& z) {
  return {{"re", str(z.re)}, {"im", str(z.im)}};
}

json word_json(const lpsnav::quaternion::GeneratorWord& w,
               const lpsnav::quaternion::GeneratorSet& s) {
  json letters = json::array();
  for (std::size_t l : w.letters) letters.push_back(l);
  return {{"length", w.length()},
          {"text", lpsnav::quaternion::format_word(w, s)},
          {"letters", letters}};
}

// Flattens a JSON object into "key: value" lines for text output.
void print_text(const json& j, const std::string& prefix, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_text(*it, key, out);
    } else if (it->is_string()) {
      out << key << ": " << it->get<std::string>() << "\n";
    } else {
      out << key << ": " << it->dump() << "\n";
    }
  }
}

void emit(const json& j, const Flags& f) {
  if (f.output == "text")
    print_text(j, "", std::cout);
  else
    std::cout << j.dump(2) << "\n";
}

template <typename Fn>
json timed(const Flags& f, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  json j = fn();
  if (f.timing) {
    const auto t1 = std::chrono::steady_clock::now();
    j["wall_seconds"] = std::chrono::duration<double>(t1 - t0).count();
  }
  return j;
}

std::string status_name(lpsnav::foursquares::SolveStatus s) {
  switch (s) {
    case lpsnav::foursquares::SolveStatus::Found:
      return "found";
    case lpsnav::foursquares::SolveStatus::Absent:
      return "absent";
    case lpsnav::foursquares::SolveStatus::Unknown:
      break;
  }
  return "unknown";
}

int cmd_four_squares(const Flags& f, const std::vector<std::string>& args) {
  namespace fs = lpsnav::foursquares;
  fs::FourSquaresInstance inst;
  inst.N = big(args[0]);
  inst.M = big(args[1]);
  inst.r1 = big(args[2]);
  inst.r2 = big(args[3]);
  inst.mode = admission(f);
  inst.budget.factor.rho_iterations = f.budget_rho;
  fs::SolveResult r;
  json j = timed(f, [&] {
    r = fs::solve(inst);
    json out{{"command", "four-squares"},
             {"N", args[0]},
             {"M", args[1]},
             {"r1", args[2]},
             {"r2", args[3]},
             {"mode", f.mode},
             {"fast_path", fs::uses_fast_path(inst)},
             {"status", status_name(r.status)}};
    if (r.status == fs::SolveStatus::Found)
      out["solution"] = {{"x", str(r.solution.x)}, {"y", str(r.solution.y)},
                         {"z", str(r.solution.z)}, {"w", str(r.solution.w)}};
    else
      out["solution"] = nullptr;
    out["stats"] = {{"candidates", r.stats.candidates},
                    {"certified_absent", r.stats.certified_absent},
                    {"undecided", r.stats.undecided},
                    {"outside_five_c", r.stats.outside_five_c},
                    {"found_in_C", r.stats.found_in_C}};
    return out;
  });
  emit(j, f);
  return r.status == fs::SolveStatus::Unknown ? kExitBudget : 0;
}

int cmd_navigate_diagonal(const Flags& f, const std::vector<std::string>& args) {
  namespace nav = lpsnav::navigator;
  const auto G = nav::make_graph_params(big(args[0]), big(args[1]));
  const auto cfg = nav_config(f);
  json j = timed(f, [&] {
    const auto r = nav::diagonal_distance(G, {big(args[2]), big(args[3])}, cfg);
    return json{{"command", "navigate-diagonal"},
                {"p", args[0]},
                {"q", args[1]},
                {"a", args[2]},
                {"b", args[3]},
                {"mode", f.mode},
                {"h", r.h},
                {"certified_minimal", r.certified_minimal},
                {"h_max", r.h_max},
                {"word", word_json(r.word, G.gens)},
                {"quaternion", quat_json(r.quaternion)},
                {"candidates", r.candidates}};
  });
  emit(j, f);
  return 0;
}

int cmd_navigate(const Flags& f, const std::vector<std::string>& args) {
  namespace nav = lpsnav::navigator;
  const auto G = nav::make_graph_params(big(args[0]), big(args[1]));
  const auto cfg = nav_config(f);
  const auto g =
      G.group.canonical(big(args[2]), big(args[3]), big(args[4]), big(args[5]));
  lpsnav::Rng rng(f.seed);
  json j = timed(f, [&] {
    const auto r = nav::general_navigate(G, g, cfg, rng);
    return json{
        {"command", "navigate"},
        {"p", args[0]},
        {"q", args[1]},
        {"matrix", {str(g.m11), str(g.m12), str(g.m21), str(g.m22)}},
        {"mode", f.mode},
        {"word", word_json(r.word, G.gens)},
        {"prefix", word_json(r.prefix, G.gens)},
        {"x", str(r.xyz.x)},
        {"y", str(r.xyz.y)},
        {"z", str(r.xyz.z)},
        {"hx", r.hx},
        {"hy", r.hy},
        {"hz", r.hz},
        {"stats",
         {{"trials", r.stats.trials},
          {"step2_accepted", r.stats.step2_accepted},
          {"step3_accepted", r.stats.step3_accepted},
          {"factor_rejected", r.stats.factor_rejected}}}};
  });
  emit(j, f);
  return 0;
}

int cmd_predict(const Flags& f, const std::vector<std::string>& args) {
  namespace nav = lpsnav::navigator;
  const auto G = nav::make_graph_params(big(args[0]), big(args[1]));
  const auto r = nav::predicted_bounds(G, {big(args[2]), big(args[3])},
                                       nav_config(f));
  json j{{"command", "predict-bounds"},
         {"p", args[0]},
         {"q", args[1]},
         {"a", args[2]},
         {"b", args[3]},
         {"gamma", f.gamma},
         {"c_gamma", f.c_gamma},
         {"hole_bound", r.hole_bound},
         {"typical_bound", r.typical_bound},
         {"hole_value", r.hole_value},
         {"typical_value", r.typical_value},
         {"u1", {str(r.u1.a), str(r.u1.b)}},
         {"u2", {str(r.u2.a), str(r.u2.b)}},
         {"regime", r.unbalanced ? "hole" : "typical"}};
  emit(j, f);
  return 0;
}

int cmd_verify(const Flags& f, const std::vector<std::string>& args) {
  namespace nav = lpsnav::navigator;
  namespace cay = lpsnav::cayley;
  const auto G = nav::make_graph_params(big(args[0]), big(args[1]), true);
  const auto cfg = nav_config(f);
  json j = timed(f, [&] {
    const auto graph = cay::build_graph(G);
    const auto dist = cay::bfs_distances(graph, 0);
    int ecc = 0;
    bool connected = true;
    for (int d : dist) {
      if (d == cay::kUnreached) connected = false;
      ecc = std::max(ecc, d);
    }
    const auto diag = cay::diagonal_vertices(graph, G);
    const auto census = cay::diagonal_distance_census(graph, G, dist, cfg);
    std::map<int, int> by_distance;
    for (const auto& e : diag) ++by_distance[dist[e.vertex]];
    json hist = json::object();
    for (const auto& [d, n] : by_distance) hist[std::to_string(d)] = n;
    json nav_check = nullptr;
    if (!G.bipartite) {
      nav::NavConfig exact = cfg;
      exact.mode = lpsnav::foursquares::Admission::FullFactor;
      bool all = true;
      for (const auto& e : diag) {
        const auto r = nav::diagonal_distance(G, {e.a, e.b}, exact);
        all = all && r.h == dist[e.vertex];
      }
      nav_check = all;
    }
    const std::size_t q = graph.q;
    const std::size_t expected = G.bipartite ? q * (q * q - 1) : q * (q * q - 1) / 2;
    json bound = json::array();
    for (double b : census.bound) bound.push_back(b);
    const bool pass = graph.size() == expected && connected &&
                      census.violations.empty() &&
                      (nav_check.is_null() || nav_check.get<bool>());
    return json{{"command", "verify"},
                {"p", args[0]},
                {"q", args[1]},
                {"bipartite", G.bipartite},
                {"vertices", graph.size()},
                {"expected_vertices", expected},
                {"degree", graph.degree},
                {"regular", true},
                {"connected", connected},
                {"eccentricity", ecc},
                {"diagonal_vertices", diag.size()},
                {"diagonal_histogram", hist},
                {"census",
                 {{"threshold", census.threshold},
                  {"at_least", census.at_least},
                  {"bound", bound},
                  {"violations", census.violations}}},
                {"navigator_matches_bfs", nav_check},
                {"pass", pass}};
  });
  emit(j, f);
  return 0;
}

json np_json(const lpsnav::npreduction::NpInstance& np) {
  json t_list = json::array(), pis = json::array(), ps = json::array();
  for (const auto& t : np.t_list) t_list.push_back(str(t));
  for (const auto& pi : np.witness.pi_list) pis.push_back(gauss_json(pi));
  for (const auto& p : np.witness.p_list) ps.push_back(str(p));
  return {{"N", str(np.N)},
          {"q", str(np.q)},
          {"a", str(np.a)},
          {"b", str(np.b)},
          {"t_list", t_list},
          {"t", str(np.t)},
          {"witness",
           {{"g", gauss_json(np.witness.g)},
            {"s", str(np.witness.s)},
            {"pi_list", pis},
            {"p_list", ps},
            {"generator_draws", np.witness.generator_draws}}}};
}

lpsnav::npreduction::NpInstance np_from_json(const json& j) {
  const json& src = j.contains("instance") ? j.at("instance") : j;
  lpsnav::npreduction::NpInstance np;
  np.N = big(src.at("N").get<std::string>());
  np.q = big(src.at("q").get<std::string>());
  np.a = big(src.at("a").get<std::string>());
  np.b = big(src.at("b").get<std::string>());
  for (const auto& t : src.at("t_list")) np.t_list.push_back(big(t.get<std::string>()));
  np.t = big(src.at("t").get<std::string>());
  const json& w = src.at("witness");
  auto gi = [](const json& z) {
    return lpsnav::ntheory::GaussInt{big(z.at("re").get<std::string>()),
                                     big(z.at("im").get<std::string>())};
  };
  np.witness.g = gi(w.at("g"));
  np.witness.s = big(w.at("s").get<std::string>());
  for (const auto& pi : w.at("pi_list")) np.witness.pi_list.push_back(gi(pi));
  for (const auto& p : w.at("p_list")) np.witness.p_list.push_back(big(p.get<std::string>()));
  np.witness.generator_draws = w.value("generator_draws", std::uint64_t{0});
  if (!lpsnav::npreduction::is_consistent(np))
    throw lpsnav::InvalidArgument("np-decode: instance fails its consistency check");
  return np;
}

int cmd_np_reduce(const Flags& f, const std::string& target,
                  const std::vector<std::string>& ts) {
  lpsnav::npreduction::SubsetSumInstance inst;
  inst.t = big(target);
  for (const auto& t : ts) inst.t_list.push_back(big(t));
  lpsnav::Rng rng(f.seed);
  const auto np = lpsnav::npreduction::reduce(inst, rng);
  json j{{"command", "np-reduce"}, {"seed", f.seed}, {"instance", np_json(np)}};
  emit(j, f);
  return 0;
}

int cmd_np_decode(const Flags& f, const std::string& path, const std::string& X,
                  const std::string& Y) {
  json in;
  try {
    if (path == "-") {
      in = json::parse(std::cin);
    } else {
      std::ifstream file(path);
      if (!file) throw lpsnav::InvalidArgument("np-decode: cannot open " + path);
      in = json::parse(file);
    }
  } catch (const json::exception& e) {
    throw lpsnav::InvalidArgument(std::string("np-decode: bad JSON: ") + e.what());
  }
  lpsnav::npreduction::NpInstance np;
  try {
    np = np_from_json(in);
  } catch (const json::exception& e) {
    throw lpsnav::InvalidArgument(std::string("np-decode: bad instance: ") + e.what());
  }
  const auto eps = lpsnav::npreduction::decode(np, big(X), big(Y));
  json j{{"command", "np-decode"}, {"X", X}, {"Y", Y}};
  if (eps) {
    j["epsilon"] = *eps;
    BigInt sum = 0;
    for (std::size_t i = 0; i < eps->size(); ++i)
      if ((*eps)[i]) sum += np.t_list[i];
    j["subset_sum"] = str(sum);
  } else {
    j["epsilon"] = nullptr;
    j["subset_sum"] = nullptr;
  }
  emit(j, f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest paths in LPS Ramanujan graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--seed", f.seed, "RNG seed")->envname("LPSNAV_SEED");
  app.add_option("--mode", f.mode, "Candidate admission: exact, fast or auto")
      ->check(CLI::IsMember({"exact", "fast", "auto"}))
      ->envname("LPSNAV_MODE");
  app.add_option("--gamma", f.gamma, "Exponent gamma")->envname("LPSNAV_GAMMA");
  app.add_option("--c-gamma", f.c_gamma, "Constant C_gamma")
      ->envname("LPSNAV_C_GAMMA");
  app.add_option("--budget-rho", f.budget_rho, "Pollard rho iterations")
      ->envname("LPSNAV_BUDGET_RHO");
  app.add_option("--h-max-slack", f.h_max_slack, "Extra levels beyond h_max")
      ->envname("LPSNAV_H_MAX_SLACK");
  app.add_option("--output", f.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->envname("LPSNAV_OUTPUT");
  app.add_flag("--timing", f.timing, "Report wall time (breaks byte-identical output)")
      ->envname("LPSNAV_TIMING");

  std::vector<std::string> args;
  auto* fs = app.add_subcommand("four-squares", "x^2+y^2+z^2+w^2 = N under congruences mod M");
  fs->add_option("args", args, "N M r1 r2")->expected(4)->required();
  auto* nd = app.add_subcommand("navigate-diagonal", "Shortest path to diag(a+ib, a-ib)");
  nd->add_option("args", args, "p q a b")->expected(4)->required();
  auto* nv = app.add_subcommand("navigate", "Path to an arbitrary PSL2 element");
  nv->add_option("args", args, "p q m11 m12 m21 m22")->expected(6)->required();
  auto* pb = app.add_subcommand("predict-bounds", "Predicted distance bounds for a diagonal vertex");
  pb->alias("predict");
  pb->add_option("args", args, "p q a b")->expected(4)->required();
  auto* vf = app.add_subcommand("verify", "Build X_{p,q} and check it against the navigator");
  vf->add_option("args", args, "p q")->expected(2)->required();
  std::string target;
  std::vector<std::string> ts;
  auto* nr = app.add_subcommand("np-reduce", "Encode a subset-sum instance");
  nr->add_option("t", target, "Target sum")->required();
  nr->add_option("t_list", ts, "Summands")->required();
  std::string path, X, Y;
  auto* ndc = app.add_subcommand("np-decode", "Decode a solution of an np-reduce instance");
  ndc->add_option("instance", path, "np-reduce JSON file, or - for stdin")->required();
  ndc->add_option("X", X)->required();
  ndc->add_option("Y", Y)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (fs->parsed()) return cmd_four_squares(f, args);
    if (nd->parsed()) return cmd_navigate_diagonal(f, args);
    if (nv->parsed()) return cmd_navigate(f, args);
    if (pb->parsed()) return cmd_predict(f, args);
    if (vf->parsed()) return cmd_verify(f, args);
    if (nr->parsed()) return cmd_np_reduce(f, target, ts);
    if (ndc->parsed()) return cmd_np_decode(f, path, X, Y);
  } catch (const lpsnav::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const lpsnav::BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalid;
}
