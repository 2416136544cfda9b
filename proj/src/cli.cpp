#include "ppadforge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ppadforge/birthday.hpp"
#include "ppadforge/ceei.hpp"
#include "ppadforge/fanout.hpp"
#include "ppadforge/gadgets.hpp"
#include "ppadforge/gcircuit.hpp"
#include "ppadforge/jsonio.hpp"
#include "ppadforge/relative.hpp"
#include "ppadforge/solvers.hpp"

namespace ppadforge::cli {

namespace {

struct Ctx {
  Json report = Json::object();
  int exit_code = 0;
  std::string report_path;
  int threads = 1;  // accepted for interface stability; all kernels are
                    // deterministic and single-threaded
  std::uint64_t seed = 0;
  SolverBudget budget;
  std::uint64_t brute_cap = kDefaultBruteForceCap;

  void input_digest(const std::string& label, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    report["inputs"][label] = fnv1a_hex(ss.str());
  }
};

Json pair_list_json(const std::vector<std::pair<MixedStrategy, MixedStrategy>>& v,
                    size_t cap = 16) {
  Json arr = Json::array();
  for (size_t i = 0; i < v.size() && i < cap; ++i)
    arr.push_back(mixed_pair_to_json(v[i].first, v[i].second));
  return arr;
}

GeneralizedCircuit load_circuit(Ctx& ctx, const std::string& path) {
  ctx.input_digest("circuit", path);
  auto c = circuit_from_json(load_json_file(path));
  auto errs = validate_circuit(c);
  if (!errs.empty())
    throw InputError("circuit " + path + ": " + errs.front().message);
  return c;
}

PolymatrixGame load_poly(Ctx& ctx, const std::string& path) {
  ctx.input_digest("game", path);
  auto p = polymatrix_from_json(load_json_file(path));
  auto errs = validate_polymatrix(p);
  if (!errs.empty()) throw InputError("game " + path + ": " + errs.front());
  return p;
}

// Reconstructs the NOT-gadget shape from a plain problem file.
NotGadget gadget_from_problem(const CourseAllocationProblem& p) {
  if (p.capacities.size() != 2)
    throw InputError("gadget problem must have exactly two courses");
  int nx = static_cast<int>(p.students.size());
  NotGadget ref = build_not_gadget(nx);
  if (p.capacities[1] != ref.problem.capacities[1])
    throw InputError("gadget output capacity must be 2nx/3");
  for (const auto& s : p.students)
    if (s.bundles != ref.problem.students[0].bundles)
      throw InputError("gadget students must want exactly the course pair");
  ref.problem = p;
  return ref;
}

void cmd_gc_validate(Ctx& ctx, const std::string& circuit_path) {
  ctx.input_digest("circuit", circuit_path);
  auto c = circuit_from_json(load_json_file(circuit_path));
  auto errs = validate_circuit(c);
  Json v = Json::array();
  for (const auto& e : errs)
    v.push_back({{"gate", e.gate_index}, {"message", e.message}});
  ctx.report["verdicts"]["valid"] = errs.empty();
  ctx.report["diagnostics"]["violations"] = v;
  ctx.exit_code = errs.empty() ? 0 : 1;
}

void cmd_gc_check(Ctx& ctx, const std::string& circuit_path,
                  const std::string& assign_path, double eps, double delta) {
  auto c = load_circuit(ctx, circuit_path);
  ctx.input_digest("assignment", assign_path);
  auto a = assignment_from_json(load_json_file(assign_path));
  double frac = violated_fraction(c, a, eps);
  bool ok = frac <= delta;
  ctx.report["params"] = {{"eps", eps}, {"delta", delta}};
  ctx.report["verdicts"]["satisfied"] = ok;
  ctx.report["diagnostics"]["violated_fraction"] = frac;
  ctx.exit_code = ok ? 0 : 1;
}

void cmd_gc_solve(Ctx& ctx, const std::string& circuit_path, int grid,
                  double eps, double delta) {
  auto c = load_circuit(ctx, circuit_path);
  ctx.report["params"] = {{"eps", eps}, {"delta", delta}, {"grid", grid},
                          {"cap", ctx.brute_cap}};
  auto found = brute_force_search(c, grid, {eps, delta}, ctx.brute_cap);
  ctx.report["verdicts"]["found"] = found.has_value();
  if (found) ctx.report["diagnostics"]["assignment"] = assignment_to_json(*found);
  ctx.exit_code = found ? 0 : 1;
}

void cmd_reduce_fanout(Ctx& ctx, const std::string& circuit_path, double eps,
                       const std::string& out, const std::string& map_out) {
  auto c = load_circuit(ctx, circuit_path);
  auto res = normalize_fanout(c, eps);
  save_json_file(out, circuit_to_json(res.circuit));
  if (!map_out.empty()) save_json_file(map_out, node_map_to_json(res));
  ctx.report["params"] = {{"eps", eps}, {"eps_hat", res.eps_hat}};
  ctx.report["diagnostics"] = {{"max_fanout", max_fanout(res.circuit)},
                               {"added_total", res.added_total},
                               {"added_not_tree", res.added_not_tree},
                               {"added_parse", res.added_parse},
                               {"added_reconstruct", res.added_reconstruct},
                               {"c0", res.c0},
                               {"original_gates", res.original_gates}};
}

void cmd_reduce_gadgets(Ctx& ctx, const std::string& circuit_path, double eps,
                        const std::string& out, const std::string& map_out,
                        bool certify) {
  auto c = load_circuit(ctx, circuit_path);
  auto res = compile_circuit(c, eps);
  save_json_file(out, polymatrix_to_json(res.game));
  if (!map_out.empty()) {
    Json vm = Json::array();
    for (const auto& [node, player] : res.vertex_map)
      vm.push_back({{"node", node}, {"player", player}});
    save_json_file(map_out, vm);
  }
  ctx.report["params"]["eps"] = eps;
  ctx.report["diagnostics"] = {{"players", res.game.players},
                               {"edges", res.game.edges.size()},
                               {"copy_splits", res.copy_splits},
                               {"players_per_gate", res.players_per_gate}};
  if (certify) {
    Json certs = Json::array();
    bool all = true;
    const std::vector<double> pins = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (GateType kind :
         {GateType::Const, GateType::Mulz, GateType::Copy, GateType::Add,
          GateType::Sub, GateType::Less, GateType::Or, GateType::And,
          GateType::Not}) {
      std::vector<std::optional<double>> zetas = {std::nullopt};
      if (kind == GateType::Const) zetas = {{0.0}, {0.25}, {0.5}, {0.75}, {1.0}};
      if (kind == GateType::Mulz) zetas = {{0.25}, {0.5}, {1.0}, {2.0}};
      for (auto z : zetas) {
        auto cert = certify_gadget(kind, z, pins, 50, 0.02, 0.06);
        all = all && cert.pass;
        Json jc = {{"gate", gate_type_name(kind)},
                   {"pass", cert.pass},
                   {"profiles", cert.profiles_checked},
                   {"equilibria", cert.equilibria_found}};
        if (z) jc["zeta"] = *z;
        certs.push_back(std::move(jc));
      }
    }
    ctx.report["verdicts"]["certified"] = all;
    ctx.report["diagnostics"]["certificates"] = certs;
    if (!all) ctx.exit_code = 1;
  }
}

Json birthday_meta(const BirthdayGame& bg) {
  Json codec = Json::array();
  for (std::uint64_t i = 0; i < bg.codec.action_count(); ++i) {
    BirthdayAction a = bg.codec.decode(i);
    codec.push_back(Json::array(
        {a.block, a.alpha, bg.codec.seeker_sets[a.seeker]}));
  }
  return Json{{"k", bg.params.k},
              {"lambda", bg.params.lambda},
              {"eps_prime", bg.params.eps_prime},
              {"partition", partition_to_json(bg.partition)},
              {"row_codec", codec},
              {"col_codec", codec}};
}

void cmd_reduce_birthday(Ctx& ctx, const std::string& in, double eps,
                         double delta, const std::string& out) {
  auto p = pad_to_equal_sides(load_poly(ctx, in));
  int n = static_cast<int>(p.bipartition->first.size());
  auto params = BirthdayParams::defaults(eps, delta, n);
  auto bg = build_birthday(p, params);
  save_json_file(out, bimatrix_to_json(bg.game));
  save_json_file(out + ".meta.json", birthday_meta(bg));
  ctx.report["params"] = {{"eps", eps},
                          {"delta", delta},
                          {"lambda", params.lambda},
                          {"eps_prime", params.eps_prime},
                          {"k", params.k}};
  ctx.report["diagnostics"]["actions_per_side"] = bg.codec.action_count();
}

void cmd_reduce_relative(Ctx& ctx, const std::string& in, double eps,
                         double delta, const std::string& out) {
  auto p = pad_to_equal_sides(load_poly(ctx, in));
  auto params = RelativeParams::defaults(eps, delta);
  auto g = build_relative(p, params);
  save_json_file(out, bimatrix_to_json(g.game));
  save_json_file(out + ".meta.json",
                 Json{{"eta", params.eta},
                      {"lambda", params.lambda},
                      {"eps_prime", params.eps_prime},
                      {"n", g.n}});
  ctx.report["params"] = {{"eps", eps},
                          {"delta", delta},
                          {"eta", params.eta},
                          {"lambda", params.lambda},
                          {"eps_prime", params.eps_prime}};
  ctx.report["diagnostics"]["actions_per_side"] = g.action_count();
}

void cmd_reduce_brcircuit(Ctx& ctx, const std::string& in, double eps,
                          const std::string& out) {
  auto p = load_poly(ctx, in);
  auto br = best_response_circuit(p, eps);
  save_json_file(out, circuit_to_json(br.circuit));
  ctx.report["params"]["eps"] = eps;
  ctx.report["diagnostics"] = {{"max_block_gates", br.max_block_gates},
                               {"payoff_scale", br.payoff_scale},
                               {"players", p.players}};
}

void cmd_verify_ne(Ctx& ctx, const std::string& game_path,
                   const std::string& pair_path, double eps, bool relative) {
  ctx.input_digest("game", game_path);
  ctx.input_digest("pair", pair_path);
  auto g = bimatrix_from_json(load_json_file(game_path));
  auto [x, y] = mixed_pair_from_json(load_json_file(pair_path));
  ctx.report["params"]["eps"] = eps;
  bool ok;
  if (relative) {
    ok = is_relative_eps_ne(g, x, y, eps);
  } else {
    auto [rr, rc] = regrets(g, x, y);
    ctx.report["diagnostics"] = {{"row_regret", rr}, {"col_regret", rc}};
    ok = std::max(rr, rc) <= eps;
  }
  ctx.report["verdicts"]["equilibrium"] = ok;
  ctx.exit_code = ok ? 0 : 1;
}

void cmd_verify_weak(Ctx& ctx, const std::string& game_path,
                     const std::string& profile_path, double eps, double delta,
                     bool well_supported) {
  auto p = load_poly(ctx, game_path);
  ctx.input_digest("profile", profile_path);
  auto prof = profile_from_json(load_json_file(profile_path));
  ctx.report["params"] = {{"eps", eps}, {"delta", delta}};
  bool ok = well_supported ? is_weak_eps_delta_wsne(p, prof, eps, delta)
                           : is_weak_eps_delta_ne(p, prof, eps, delta);
  Json regs = Json::array();
  for (int v = 0; v < p.players; ++v) regs.push_back(vertex_regret(p, prof, v));
  ctx.report["diagnostics"]["vertex_regrets"] = regs;
  ctx.report["verdicts"]["weak_equilibrium"] = ok;
  ctx.exit_code = ok ? 0 : 1;
}

void cmd_verify_partition(Ctx& ctx, const std::string& graph_path,
                          const std::string& partition_path) {
  ctx.input_digest("graph", graph_path);
  ctx.input_digest("partition", partition_path);
  auto g = graph_from_json(load_json_file(graph_path));
  auto p = partition_from_json(load_json_file(partition_path));
  auto rep = verify_partition(g, p);
  ctx.report["verdicts"]["valid"] = rep.ok;
  ctx.report["diagnostics"] = {{"violations", rep.violations},
                               {"edge_bound", rep.edge_bound},
                               {"max_pair_edges", rep.max_pair_edges}};
  ctx.exit_code = rep.ok ? 0 : 1;
}

void cmd_partition(Ctx& ctx, const std::string& graph_path, int k,
                   const std::string& out) {
  ctx.input_digest("graph", graph_path);
  auto g = graph_from_json(load_json_file(graph_path));
  auto errs = validate_graph(g, false);
  if (!errs.empty()) throw InputError("graph: " + errs.front());
  if (k <= 0)
    k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(g.n))));
  auto p = greedy_partition(g, k);
  if (!out.empty()) save_json_file(out, partition_to_json(p));
  auto rep = verify_partition(g, p);
  ctx.report["params"]["k"] = k;
  ctx.report["verdicts"]["valid"] = rep.ok;
  ctx.report["diagnostics"] = {{"edge_bound", rep.edge_bound},
                               {"max_pair_edges", rep.max_pair_edges}};
  ctx.exit_code = rep.ok ? 0 : 1;
}

void cmd_solve(Ctx& ctx, const std::string& mode, const std::string& game_path,
               double eps, int grid, long iters) {
  ctx.input_digest("game", game_path);
  Json jg = load_json_file(game_path);
  ctx.report["params"] = {{"mode", mode}, {"eps", eps},  {"grid", grid},
                          {"iters", iters}, {"max_support", ctx.budget.max_support},
                          {"action_space_cap", ctx.budget.action_space_cap}};
  if (mode == "brd") {
    auto p = polymatrix_from_json(jg);
    MixedProfile init;
    init.p.assign(p.players, 0.5);
    auto res = polymatrix_brd(p, init, iters);
    ctx.report["verdicts"]["max_regret"] = res.max_regret;
    ctx.report["diagnostics"]["profile"] = profile_to_json(res.profile);
    return;
  }
  auto g = bimatrix_from_json(jg);
  if (mode == "support") {
    auto eqs = support_enumeration(g, ctx.budget);
    ctx.report["verdicts"]["found"] = !eqs.empty();
    ctx.report["diagnostics"]["equilibria"] = pair_list_json(eqs);
    ctx.report["diagnostics"]["count"] = eqs.size();
    ctx.exit_code = eqs.empty() ? 1 : 0;
  } else if (mode == "grid") {
    auto eqs = grid_eps_ne(g, grid, eps, ctx.budget);
    ctx.report["verdicts"]["found"] = !eqs.empty();
    ctx.report["diagnostics"]["equilibria"] = pair_list_json(eqs);
    ctx.report["diagnostics"]["count"] = eqs.size();
    ctx.exit_code = eqs.empty() ? 1 : 0;
  } else if (mode == "lmm") {
    auto res = small_support_search(g, eps, ctx.budget);
    ctx.report["verdicts"]["found"] = res.pair.has_value();
    ctx.report["diagnostics"] = {{"k", res.k},
                                 {"cap_hit", res.cap_hit},
                                 {"examined", res.examined}};
    if (res.pair)
      ctx.report["diagnostics"]["pair"] =
          mixed_pair_to_json(res.pair->first, res.pair->second);
    ctx.exit_code = res.pair ? 0 : 1;
  } else if (mode == "fp") {
    auto bracket = fictitious_play_value(g, iters);
    ctx.report["verdicts"]["lower"] = bracket.lower;
    ctx.report["verdicts"]["upper"] = bracket.upper;
  } else {
    throw InputError("unknown solve mode: " + mode);
  }
}

void cmd_ceei_gini(Ctx& ctx, const std::string& in) {
  ctx.input_digest("incomes", in);
  auto d = incomes_from_json(load_json_file(in));
  double g = gini(d);
  ctx.report["verdicts"]["gini"] = g;
  ctx.report["diagnostics"]["population"] = d.incomes.size();
}

void cmd_ceei_gadget(Ctx& ctx, int nx, const std::string& out) {
  auto g = build_not_gadget(nx);
  if (!out.empty()) save_json_file(out, problem_to_json(g.problem));
  ctx.report["params"]["nx"] = nx;
  ctx.report["diagnostics"] = {{"output_capacity", g.problem.capacities[1]},
                               {"students", g.problem.students.size()},
                               {"external_allowance", g.external_allowance}};
}

void cmd_ceei_verify(Ctx& ctx, const std::string& problem_path,
                     const std::string& solution_path, double epsp,
                     int alpha) {
  ctx.input_digest("problem", problem_path);
  ctx.input_digest("solution", solution_path);
  auto p = problem_from_json(load_json_file(problem_path));
  auto sol = solution_from_json(load_json_file(solution_path));
  auto gadget = gadget_from_problem(p);
  auto verdict = verify_not_gadget(gadget, sol, epsp, alpha);
  ctx.report["params"] = {{"epsp", epsp}, {"alpha", alpha}};
  ctx.report["verdicts"]["gadget"] = verdict_name(verdict);
  ctx.report["diagnostics"]["clearing_error"] = clearing_error(p, sol);
  ctx.exit_code = verdict == GadgetVerdict::Violation ? 1 : 0;
}

void cmd_ceei_normalize(Ctx& ctx, const std::string& problem_path,
                        const std::string& solution_path, double epsp,
                        const std::string& out) {
  ctx.input_digest("problem", problem_path);
  ctx.input_digest("solution", solution_path);
  auto p = problem_from_json(load_json_file(problem_path));
  auto sol = solution_from_json(load_json_file(solution_path));
  auto normalized = normalize_budgets(p, sol, epsp);
  if (!out.empty()) save_json_file(out, solution_to_json(normalized));
  ctx.report["params"]["epsp"] = epsp;
  ctx.report["verdicts"]["normalized"] = true;
}

void cmd_roundtrip(Ctx& ctx, const std::string& circuit_path, double eps,
                   double delta, int grid) {
  auto c = load_circuit(ctx, circuit_path);
  auto norm = normalize_fanout(c, eps);
  auto comp = compile_circuit(norm.circuit, norm.eps_hat);
  auto padded = pad_to_equal_sides(comp.game);
  int n = static_cast<int>(padded.bipartition->first.size());
  auto params = BirthdayParams::defaults(norm.eps_hat, delta, n);
  auto bg = build_birthday(padded, params);

  ctx.report["params"] = {{"eps", eps},
                          {"delta", delta},
                          {"eps_hat", norm.eps_hat},
                          {"lambda", params.lambda},
                          {"eps_prime", params.eps_prime},
                          {"k", params.k},
                          {"grid", grid}};
  ctx.report["diagnostics"]["actions_per_side"] = bg.codec.action_count();
  ctx.report["diagnostics"]["players"] = padded.players;

  auto eqs = grid_eps_ne(bg.game, grid, params.eps_prime, ctx.budget);
  ctx.report["diagnostics"]["equilibria_found"] = eqs.size();
  if (eqs.empty()) {
    ctx.report["verdicts"]["satisfied"] = false;
    ctx.report["diagnostics"]["reason"] = "no grid equilibrium at eps_prime";
    ctx.exit_code = 1;
    return;
  }
  const auto& [x, y] = eqs.front();
  auto u_row = uniformity_check(bg, x, 0);
  auto u_col = uniformity_check(bg, y, 1);
  ctx.report["diagnostics"]["uniformity"] = {
      {"row_value", u_row.value},
      {"row_pass", u_row.pass},
      {"col_value", u_col.value},
      {"col_pass", u_col.pass}};

  MixedProfile prof = decode_mixed(bg, x, y);
  prof.p.resize(comp.game.players);  // padding players carry no circuit nodes
  Assignment lifted = decode_profile(comp, prof);
  Assignment restricted = restrict_assignment(norm, lifted);
  double frac = violated_fraction(c, restricted, eps);
  bool ok = frac <= delta;
  ctx.report["verdicts"]["satisfied"] = ok;
  ctx.report["verdicts"]["uniformity_pass"] = u_row.pass && u_col.pass;
  ctx.report["diagnostics"]["violated_fraction"] = frac;
  ctx.report["diagnostics"]["assignment"] = assignment_to_json(restricted);
  ctx.exit_code = ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& argv) {
  Ctx ctx;
  ctx.report["command"] = argv;
  ctx.report["verdicts"] = Json::object();
  ctx.report["diagnostics"] = Json::object();
  ctx.report["params"] = Json::object();
  ctx.report["inputs"] = Json::object();

  if (const char* env = std::getenv("PPADFORGE_BUDGET")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      ctx.budget.action_space_cap = v;
      ctx.brute_cap = v;
    }
  }

  CLI::App app{"equilibrium reduction and verification toolkit"};
  app.require_subcommand(1);
  app.add_option("--report", ctx.report_path, "write the run report here");
  app.add_option("--threads", ctx.threads, "worker cap (outputs unaffected)");
  app.add_option("--seed", ctx.seed, "seed echoed into the report");
  app.add_option("--budget", ctx.budget.action_space_cap,
                 "enumeration budget (candidate pairs)");
  app.add_option("--support-cap", ctx.budget.max_support, "support size cap");

  std::string circuit_path, assign_path, in_path, out_path, map_path;
  std::string game_path, pair_path, profile_path, graph_path, partition_path;
  std::string problem_path, solution_path;
  double eps = 0.1, delta = 0.0, epsp = 0.1;
  int grid = 2, k = 0, nx = 12, alpha = 1;
  long iters = 10000;
  bool certify = false;

  auto* gc = app.add_subcommand("gc", "generalized circuit tools");
  gc->require_subcommand(1);
  auto* gcv = gc->add_subcommand("validate", "structural validation");
  gcv->add_option("--circuit", circuit_path)->required();
  gcv->callback([&] { cmd_gc_validate(ctx, circuit_path); });
  auto* gcc = gc->add_subcommand("check", "approximate satisfaction check");
  gcc->add_option("--circuit", circuit_path)->required();
  gcc->add_option("--assign", assign_path)->required();
  gcc->add_option("--eps", eps)->required();
  gcc->add_option("--delta", delta)->required();
  gcc->callback([&] { cmd_gc_check(ctx, circuit_path, assign_path, eps, delta); });
  auto* gcs = gc->add_subcommand("solve", "brute-force grid satisfaction");
  gcs->add_option("--circuit", circuit_path)->required();
  gcs->add_option("--grid", grid)->required();
  gcs->add_option("--eps", eps)->required();
  gcs->add_option("--delta", delta)->required();
  gcs->callback([&] { cmd_gc_solve(ctx, circuit_path, grid, eps, delta); });

  auto* red = app.add_subcommand("reduce", "constructive reductions");
  red->require_subcommand(1);
  auto* rf = red->add_subcommand("fanout", "rewrite to fan-out <= 2");
  rf->add_option("--circuit", circuit_path)->required();
  rf->add_option("--eps", eps)->required();
  rf->add_option("--out", out_path)->required();
  rf->add_option("--map", map_path);
  rf->callback([&] { cmd_reduce_fanout(ctx, circuit_path, eps, out_path, map_path); });
  auto* rg = red->add_subcommand("gadgets", "compile to a polymatrix game");
  rg->add_option("--circuit", circuit_path)->required();
  rg->add_option("--eps", eps)->required();
  rg->add_option("--out", out_path)->required();
  rg->add_option("--map", map_path);
  rg->add_flag("--certify", certify, "re-run gadget certification");
  rg->callback([&] {
    cmd_reduce_gadgets(ctx, circuit_path, eps, out_path, map_path, certify);
  });
  auto* rb = red->add_subcommand("birthday", "two-player block simulation");
  rb->add_option("--in", in_path)->required();
  rb->add_option("--eps", eps)->required();
  rb->add_option("--delta", delta)->required();
  rb->add_option("--out", out_path)->required();
  rb->callback([&] { cmd_reduce_birthday(ctx, in_path, eps, delta, out_path); });
  auto* rr = red->add_subcommand("relative", "signed two-player reduction");
  rr->add_option("--in", in_path)->required();
  rr->add_option("--eps", eps)->required();
  rr->add_option("--delta", delta)->required();
  rr->add_option("--out", out_path)->required();
  rr->callback([&] { cmd_reduce_relative(ctx, in_path, eps, delta, out_path); });
  auto* rbr = red->add_subcommand("brcircuit", "best-response circuit");
  rbr->add_option("--in", in_path)->required();
  rbr->add_option("--eps", eps)->required();
  rbr->add_option("--out", out_path)->required();
  rbr->callback([&] { cmd_reduce_brcircuit(ctx, in_path, eps, out_path); });

  auto* ver = app.add_subcommand("verify", "equilibrium verifiers");
  ver->require_subcommand(1);
  auto* vne = ver->add_subcommand("ne", "additive equilibrium check");
  vne->add_option("--game", game_path)->required();
  vne->add_option("--pair", pair_path)->required();
  vne->add_option("--eps", eps)->required();
  vne->callback([&] { cmd_verify_ne(ctx, game_path, pair_path, eps, false); });
  auto* vrel = ver->add_subcommand("relative", "multiplicative equilibrium check");
  vrel->add_option("--game", game_path)->required();
  vrel->add_option("--pair", pair_path)->required();
  vrel->add_option("--eps", eps)->required();
  vrel->callback([&] { cmd_verify_ne(ctx, game_path, pair_path, eps, true); });
  auto* vweak = ver->add_subcommand("weak", "weak equilibrium check");
  vweak->add_option("--game", game_path)->required();
  vweak->add_option("--profile", profile_path)->required();
  vweak->add_option("--eps", eps)->required();
  vweak->add_option("--delta", delta)->required();
  vweak->callback([&] {
    cmd_verify_weak(ctx, game_path, profile_path, eps, delta, false);
  });
  auto* vws = ver->add_subcommand("wsne", "weak well-supported check");
  vws->add_option("--game", game_path)->required();
  vws->add_option("--profile", profile_path)->required();
  vws->add_option("--eps", eps)->required();
  vws->add_option("--delta", delta)->required();
  vws->callback([&] {
    cmd_verify_weak(ctx, game_path, profile_path, eps, delta, true);
  });
  auto* vpart = ver->add_subcommand("partition", "block partition check");
  vpart->add_option("--graph", graph_path)->required();
  vpart->add_option("--partition", partition_path)->required();
  vpart->callback([&] { cmd_verify_partition(ctx, graph_path, partition_path); });

  auto* part = app.add_subcommand("partition", "greedy block partition");
  part->add_option("--graph", graph_path)->required();
  part->add_option("--k", k);
  part->add_option("--out", out_path);
  part->callback([&] { cmd_partition(ctx, graph_path, k, out_path); });

  auto* solve = app.add_subcommand("solve", "desk-scale equilibrium oracles");
  solve->require_subcommand(1);
  for (const char* mode : {"support", "grid", "lmm", "fp", "brd"}) {
    auto* sc = solve->add_subcommand(mode);
    sc->add_option("--game", game_path)->required();
    sc->add_option("--eps", eps);
    sc->add_option("--grid", grid);
    sc->add_option("--iters", iters);
    std::string m = mode;
    sc->callback([&, m] { cmd_solve(ctx, m, game_path, eps, grid, iters); });
  }

  auto* ceei = app.add_subcommand("ceei", "fair allocation analytics");
  ceei->require_subcommand(1);
  auto* cg = ceei->add_subcommand("gini", "income inequality index");
  cg->add_option("--in", in_path)->required();
  cg->callback([&] { cmd_ceei_gini(ctx, in_path); });
  auto* cga = ceei->add_subcommand("gadget", "build the negation fragment");
  cga->add_option("--nx", nx)->required();
  cga->add_option("--out", out_path);
  cga->callback([&] { cmd_ceei_gadget(ctx, nx, out_path); });
  auto* cv = ceei->add_subcommand("verify", "fragment price-band verdict");
  cv->add_option("--problem", problem_path)->required();
  cv->add_option("--solution", solution_path)->required();
  cv->add_option("--epsp", epsp)->required();
  cv->add_option("--alpha", alpha)->required();
  cv->callback([&] {
    cmd_ceei_verify(ctx, problem_path, solution_path, epsp, alpha);
  });
  auto* cn = ceei->add_subcommand("normalize", "median-budget normalization");
  cn->add_option("--problem", problem_path)->required();
  cn->add_option("--solution", solution_path)->required();
  cn->add_option("--epsp", epsp)->required();
  cn->add_option("--out", out_path);
  cn->callback([&] {
    cmd_ceei_normalize(ctx, problem_path, solution_path, epsp, out_path);
  });

  auto* rt = app.add_subcommand("roundtrip", "end-to-end pipelines");
  rt->require_subcommand(1);
  auto* rt2 = rt->add_subcommand("circuit2bimatrix",
                                 "circuit -> blocks game -> decode -> check");
  rt2->add_option("--circuit", circuit_path)->required();
  rt2->add_option("--eps", eps)->required();
  rt2->add_option("--delta", delta)->required();
  rt2->add_option("--grid", grid);
  rt2->callback([&] { cmd_roundtrip(ctx, circuit_path, eps, delta, grid); });

  std::vector<const char*> cargs;
  for (const auto& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return 3;
  }

  ctx.report["seed"] = ctx.seed;
  std::string text = ctx.report.dump(2) + "\n";
  std::cout << text;
  if (!ctx.report_path.empty()) {
    std::ofstream out(ctx.report_path, std::ios::binary);
    if (!out) {
      std::cerr << "input error: cannot write report to " << ctx.report_path
                << "\n";
      return 2;
    }
    out << text;
  }
  return ctx.exit_code;
}

}  // namespace ppadforge::cli
