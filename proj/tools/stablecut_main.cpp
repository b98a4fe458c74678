// stablecut: stability-aware max-cut and multiway-cut toolbox.
//
// Every command reads a JSON or edge-list instance (file argument, or "-"
// for stdin), prints exactly one JSON report on stdout, and exits 0 unless
// the report status is ERROR.  Logs, when requested, go to stderr.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "stablecut/generators.hpp"
#include "stablecut/io.hpp"
#include "stablecut/local_search.hpp"
#include "stablecut/multiway_lp.hpp"
#include "stablecut/oracles.hpp"
#include "stablecut/report.hpp"
#include "stablecut/sdp.hpp"
#include "stablecut/sparsest_cut.hpp"

namespace sc = stablecut;
using ojson = nlohmann::ordered_json;

namespace {

bool g_pretty = false;
bool g_verbose = false;

void logline(const std::string& msg) {
  if (g_verbose) std::cerr << "stablecut: " << msg << "\n";
}

sc::Instance read_instance(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return sc::parse_instance(buf.str());
  }
  return sc::load_instance(path);
}

ojson cut_json(const sc::Cut& cut) { return ojson(cut.canonical().members()); }

ojson partition_json(const sc::MultiwayPartition& p) { return ojson(p.part); }

ojson ratio_json(const sc::ExtRatio& r) {
  if (r.is_infinite()) return ojson("inf");
  return ojson(r.to_double());
}

int emit(sc::RunReport& rep, const sc::WallClock& clock) {
  rep.wall_time_ms = clock.elapsed_ms();
  if (g_pretty)
    std::cout << rep.render_text();
  else
    std::cout << rep.to_json().dump(2) << "\n";
  return rep.exit_code();
}

void fill_instance_fields(sc::RunReport& rep, const sc::Instance& inst) {
  rep.digest = sc::instance_digest(inst);
  rep.n = inst.n;
  rep.m = static_cast<long>(inst.edges.size());
}

// ---------------------------------------------------------------------------
// maxcut
// ---------------------------------------------------------------------------

struct MaxcutArgs {
  std::string file = "-";
  std::string mode = "robust";
  std::string sc_solver = "exact";
  double tol = 1e-7;
  double eps_int = 1e-4;
  int max_rounds = 40;
  std::uint64_t seed = 0;
};

int run_maxcut(const MaxcutArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "maxcut";
  try {
    const sc::Instance inst = read_instance(a.file);
    fill_instance_fields(rep, inst);
    const sc::WeightedGraph g = inst.graph();
    logline("maxcut mode=" + a.mode + " n=" + std::to_string(g.n()) +
            " m=" + std::to_string(g.m()));
    rep.options = {{"mode", a.mode}, {"seed", a.seed}};

    if (a.mode == "robust") {
      sc::SdpOptions opts;
      opts.tol_psd = opts.tol_feas = opts.tol_obj = a.tol;
      opts.eps_int = a.eps_int;
      opts.max_rounds = a.max_rounds;
      rep.options["tol"] = a.tol;
      rep.options["eps_int"] = a.eps_int;
      rep.options["max_rounds"] = a.max_rounds;
      const auto r = sc::robust_max_cut(g, opts);
      rep.result["sdp_value"] = r.solution.value;
      rep.result["rounds"] = r.solution.rounds;
      rep.result["iterations"] = r.solution.iterations;
      rep.result["active_cuts"] = r.solution.active_cuts;
      rep.result["retightened"] = r.retightened;
      if (r.status == sc::RobustStatus::optimal) {
        rep.status = sc::RunStatus::optimal;
        rep.result["value"] = r.cut_value;
        rep.result["cut"] = cut_json(*r.cut);
        rep.message = "integral SDP optimum; cut weight certifies the relaxation value";
      } else {
        rep.status = sc::RunStatus::not_stable_certificate;
        rep.result["min_abs_entry"] = r.integrality.min_abs;
        rep.result["sign_consistent"] = r.integrality.sign_consistent;
        rep.result["witness_pair"] = {r.integrality.witness_u, r.integrality.witness_v};
        rep.result["witness_value"] = r.integrality.witness_value;
        rep.message = "relaxation optimum is not integral: no stable-instance guarantee applies";
      }
    } else if (a.mode == "local-search") {
      rep.options["sc_solver"] = a.sc_solver;
      std::unique_ptr<sc::SparsestCutSolver> solver;
      if (a.sc_solver == "exact")
        solver = std::make_unique<sc::ExactSparsestCut>();
      else if (a.sc_solver == "spectral")
        solver = std::make_unique<sc::SpectralSweepSparsestCut>();
      else
        throw sc::instance_error("unknown sparsest-cut solver: " + a.sc_solver);
      const auto r = sc::weakly_stable_max_cut(g, *solver);
      rep.status = r.trace.accepted > 0 ? sc::RunStatus::improved : sc::RunStatus::certified_stop;
      rep.result["value"] = sc::cut_weight(g, r.cut);
      rep.result["cut"] = cut_json(r.cut);
      rep.result["iterations"] = r.trace.iterations;
      rep.result["accepted"] = r.trace.accepted;
      rep.message = r.trace.accepted > 0
                        ? "improvement sequence ended in a certified local optimum"
                        : "initial cut already rejects every improvement scale";
    } else if (a.mode == "brute") {
      const auto r = sc::maxcut_stability_report(g);
      rep.status = sc::RunStatus::optimal;
      rep.result["value"] = r.optimal_value;
      rep.result["cut"] = cut_json(r.optimal_cut);
      rep.result["margin"] = ratio_json(r.margin);
      rep.result["unique_optimum"] = r.unique_optimum;
      rep.result["exact_arithmetic"] = r.exact_arithmetic;
      if (r.witness) rep.result["margin_witness"] = cut_json(*r.witness);
      rep.message = "exhaustive optimum with exact stability margin";
    } else {
      throw sc::instance_error("unknown mode: " + a.mode);
    }
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
  }
  return emit(rep, clock);
}

// ---------------------------------------------------------------------------
// multiway
// ---------------------------------------------------------------------------

struct MultiwayArgs {
  std::string file = "-";
  std::string mode = "robust";
  long trials = 0;  // 0: pick 100 * m
  std::uint64_t seed = 0;
  double eps_int = 1e-6;
  double pivot_tol = 1e-9;
};

int run_multiway(const MultiwayArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "multiway";
  try {
    const sc::Instance inst = read_instance(a.file);
    fill_instance_fields(rep, inst);
    const sc::WeightedGraph g = inst.graph();
    if (inst.terminals.empty())
      throw sc::instance_error("multiway requires a terminals list in the instance");
    const std::vector<int>& terms = inst.terminals;
    logline("multiway mode=" + a.mode + " n=" + std::to_string(g.n()) +
            " k=" + std::to_string(terms.size()));
    rep.options = {{"mode", a.mode}};

    if (a.mode == "robust") {
      rep.options["eps_int"] = a.eps_int;
      rep.options["pivot_tol"] = a.pivot_tol;
      const auto r = sc::robust_multiway_cut(g, terms, a.eps_int, a.pivot_tol);
      rep.result["lp_objective"] = r.solution.objective;
      rep.result["pivots"] = r.solution.pivots;
      if (r.status == sc::MultiwayStatus::optimal) {
        rep.status = sc::RunStatus::optimal;
        rep.result["cost"] = r.cost;
        rep.result["partition"] = partition_json(*r.partition);
        rep.message = "integral relaxation vertex; cost certifies the LP value";
      } else {
        rep.status = sc::RunStatus::not_stable_certificate;
        rep.result["max_deviation"] = r.integrality.max_deviation;
        rep.result["witness"] = {{"vertex", r.integrality.witness_vertex},
                                 {"coordinate", r.integrality.witness_coord},
                                 {"value", r.integrality.witness_value}};
        rep.message = "relaxation optimum is fractional: no 4-stable guarantee applies";
      }
    } else if (a.mode == "local-search") {
      rep.options["trials"] = a.trials;
      rep.options["seed"] = a.seed;
      const auto r = sc::weakly_stable_multiway(g, terms, a.trials, a.seed);
      rep.status = r.trace.accepted > 0 ? sc::RunStatus::improved : sc::RunStatus::certified_stop;
      rep.result["cost"] = r.cost;
      rep.result["partition"] = partition_json(r.partition);
      rep.result["rounds"] = r.trace.iterations;
      rep.result["accepted_rounds"] = r.trace.accepted;
      rep.result["distinct_partitions_at_stop"] = r.distinct_partitions_at_stop;
      rep.message = r.trace.accepted > 0 ? "rounding search ended in a certified stop"
                                         : "initial assignment survived the first round";
    } else if (a.mode == "brute") {
      const auto r = sc::multiway_stability_report(g, terms);
      rep.status = sc::RunStatus::optimal;
      rep.result["cost"] = r.optimal_value;
      rep.result["partition"] = partition_json(r.optimal);
      rep.result["margin"] = ratio_json(r.margin);
      rep.result["unique_optimum"] = r.unique_optimum;
      rep.result["exact_arithmetic"] = r.exact_arithmetic;
      if (r.witness) rep.result["margin_witness"] = partition_json(*r.witness);
      rep.message = "exhaustive optimum with exact stability margin";
    } else {
      throw sc::instance_error("unknown mode: " + a.mode);
    }
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
  }
  return emit(rep, clock);
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

struct CertifyArgs {
  std::string file = "-";
  double gamma = 1.0;
  double delta = -1.0;  // < 0: strict stability only
  std::string problem = "auto";
};

int run_certify(const CertifyArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "certify";
  try {
    if (a.gamma < 1.0) throw sc::instance_error("gamma must be at least 1");
    const sc::Instance inst = read_instance(a.file);
    fill_instance_fields(rep, inst);
    const sc::WeightedGraph g = inst.graph();
    std::string problem = a.problem;
    if (problem == "auto") problem = inst.terminals.empty() ? "maxcut" : "multiway";
    rep.options = {{"problem", problem}, {"gamma", a.gamma}};
    if (a.delta >= 0.0) rep.options["delta"] = a.delta;
    logline("certify problem=" + problem + " gamma=" + std::to_string(a.gamma));

    if (problem == "maxcut") {
      const auto r = sc::maxcut_stability_report(g);
      rep.result["optimal_value"] = r.optimal_value;
      rep.result["optimal_cut"] = cut_json(r.optimal_cut);
      rep.result["margin"] = ratio_json(r.margin);
      rep.result["stable"] = r.stable(a.gamma);
      rep.result["unique_optimum"] = r.unique_optimum;
      rep.result["exact_arithmetic"] = r.exact_arithmetic;
      if (r.witness) rep.result["margin_witness"] = cut_json(*r.witness);
      bool verdict = r.stable(a.gamma);
      if (a.delta >= 0.0) {
        const auto weak = sc::weak_stability_check(g, a.gamma, a.delta);
        rep.result["weakly_stable"] = weak.stable;
        if (weak.violating_cut) rep.result["weak_violation"] = cut_json(*weak.violating_cut);
        verdict = weak.stable;
      }
      rep.status = verdict ? sc::RunStatus::optimal : sc::RunStatus::not_stable_certificate;
      rep.message = verdict ? "stability certified by exhaustive margin computation"
                            : "margin witness refutes the requested stability";
    } else if (problem == "multiway") {
      if (a.delta >= 0.0)
        throw sc::instance_error("delta applies to the max-cut weak check only");
      if (inst.terminals.empty())
        throw sc::instance_error("multiway certification requires terminals");
      const auto r = sc::multiway_stability_report(g, inst.terminals);
      rep.result["optimal_cost"] = r.optimal_value;
      rep.result["optimal_partition"] = partition_json(r.optimal);
      rep.result["margin"] = ratio_json(r.margin);
      rep.result["stable"] = r.stable(a.gamma);
      rep.result["unique_optimum"] = r.unique_optimum;
      rep.result["exact_arithmetic"] = r.exact_arithmetic;
      if (r.witness) rep.result["margin_witness"] = partition_json(*r.witness);
      rep.status =
          r.stable(a.gamma) ? sc::RunStatus::optimal : sc::RunStatus::not_stable_certificate;
      rep.message = r.stable(a.gamma) ? "stability certified by exhaustive margin computation"
                                      : "margin witness refutes the requested stability";
    } else {
      throw sc::instance_error("unknown problem: " + problem);
    }
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
  }
  return emit(rep, clock);
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  int n = 8;
  int k = 3;
  double gamma = 2.0;
  double delta = 0.2;
  double heavy = 5.0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "generate";
  try {
    sc::Instance inst;
    ojson prov;
    prov["family"] = a.family;
    logline("generate family=" + a.family + " seed=" + std::to_string(a.seed));

    if (a.family == "stable-maxcut") {
      const auto gen = sc::generate_stable_maxcut(a.n, a.gamma, a.seed);
      inst = sc::instance_from_graph(gen.graph);
      prov["parameters"] = {{"n", a.n}, {"gamma", a.gamma}};
      prov["seed"] = a.seed;
      prov["phi_star"] = gen.phi_star;
      prov["demand_halvings"] = gen.halvings;
      prov["verified_margin"] = ratio_json(gen.margin);
      prov["planted_cut"] = cut_json(gen.planted);
    } else if (a.family == "weakly-stable-maxcut") {
      const auto gen = sc::generate_weakly_stable_maxcut(a.n, a.gamma, a.delta, a.seed);
      inst = sc::instance_from_graph(gen.graph);
      prov["parameters"] = {{"n", a.n}, {"gamma", a.gamma}, {"delta", a.delta}};
      prov["seed"] = a.seed;
      prov["attempts"] = gen.attempts;
      prov["floaters"] = gen.floaters;
      prov["verified_margin"] = ratio_json(gen.margin);
      prov["planted_cut"] = cut_json(gen.planted);
    } else if (a.family == "stable-multiway") {
      const auto gen = sc::generate_stable_multiway(a.n, a.k, a.gamma, a.seed);
      inst = sc::instance_from_graph(gen.graph);
      inst.terminals = gen.terminals;
      prov["parameters"] = {{"n", a.n}, {"k", a.k}, {"gamma", a.gamma}};
      prov["seed"] = a.seed;
      prov["attempts"] = gen.attempts;
      prov["verified_margin"] = ratio_json(gen.margin);
      prov["planted_partition"] = partition_json(gen.planted);
    } else if (a.family == "sparsest") {
      std::mt19937_64 rng(a.seed);
      const auto scinst = sc::random_sparsest_cut_instance(a.n, rng);
      inst.n = scinst.n;
      inst.edges = scinst.capacity;
      inst.demands = scinst.demands;
      prov["parameters"] = {{"n", a.n}};
      prov["seed"] = a.seed;
    } else if (a.family == "star") {
      inst = sc::instance_from_graph(sc::star_graph(a.heavy));
      inst.terminals = sc::star_terminals();
      prov["parameters"] = {{"heavy", a.heavy}};
    } else {
      throw sc::instance_error("unknown family: " + a.family);
    }
    inst.provenance = prov;
    fill_instance_fields(rep, inst);
    rep.status = sc::RunStatus::optimal;
    rep.options = {{"family", a.family}, {"seed", a.seed}};
    rep.result["provenance"] = prov;
    if (!a.out.empty()) {
      sc::save_instance(inst, a.out);
      rep.result["path"] = a.out;
      rep.message = "instance written";
      return emit(rep, clock);
    }
    // no output path: the instance itself is the stdout payload
    std::cout << sc::serialize_instance(inst);
    return 0;
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
    return emit(rep, clock);
  }
}

// ---------------------------------------------------------------------------
// round
// ---------------------------------------------------------------------------

struct RoundArgs {
  std::string file = "-";
  long samples = 100000;
  std::uint64_t seed = 0;
  double pivot_tol = 1e-9;
};

int run_round(const RoundArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "round";
  try {
    const sc::Instance inst = read_instance(a.file);
    fill_instance_fields(rep, inst);
    const sc::WeightedGraph g = inst.graph();
    if (inst.terminals.empty())
      throw sc::instance_error("round requires a terminals list in the instance");
    rep.options = {{"samples", a.samples}, {"seed", a.seed}, {"pivot_tol", a.pivot_tol}};

    const auto prob = sc::build_ckr_lp(g, inst.terminals);
    const auto sol = sc::solve_ckr(prob, a.pivot_tol);
    const auto integ = sc::check_lp_integrality(sol);
    logline("round lp objective " + std::to_string(sol.objective));

    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : g.edges()) pairs.emplace_back(e.u, e.v);
    const auto stats =
        sc::kt_sampling_stats(sol.points, inst.terminals, pairs, a.samples, a.seed);

    rep.status = sc::RunStatus::optimal;
    rep.result["lp_objective"] = sol.objective;
    rep.result["lp_integral"] = integ.integral;
    rep.result["samples"] = stats.samples;
    rep.result["capped"] = stats.capped;
    rep.result["terminal_misses"] = stats.terminal_misses;
    rep.result["distinct_partitions"] = stats.distinct_partitions;
    rep.result["mean_phases"] = stats.mean_phases;
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double d = sol.d(pairs[i].first, pairs[i].second);
      const double rate =
          static_cast<double>(stats.separated[i]) / static_cast<double>(stats.samples);
      ojson row;
      row["u"] = pairs[i].first;
      row["v"] = pairs[i].second;
      row["d"] = d;
      row["rate"] = rate;
      row["upper_bound"] = 2.0 * d / (1.0 + d);
      row["lower_bound"] = (1.0 - d) / 2.0;  // bound on the non-separation side
      rows.push_back(row);
    }
    rep.result["pairs"] = rows;
    rep.message = "separation frequencies against the rounding bounds";
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
  }
  return emit(rep, clock);
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string suite = "quick";
  std::uint64_t seed = 100;
  long count = 50;  // sweep suite size
  std::string out;
};

struct BenchRow {
  std::string id;
  int n = 0;
  long m = 0;
  sc::ExtRatio margin;
  int sdp_integral = -1;  // -1: not applicable
  int lp_integral = -1;
  long ls_iterations = 0;
  std::uint64_t seed = 0;
};

BenchRow bench_maxcut(const std::string& id, const sc::WeightedGraph& g, std::uint64_t seed) {
  BenchRow row;
  row.id = id;
  row.n = g.n();
  row.m = static_cast<long>(g.m());
  row.seed = seed;
  row.margin = sc::maxcut_stability_report(g).margin;
  row.sdp_integral = sc::robust_max_cut(g).status == sc::RobustStatus::optimal ? 1 : 0;
  const sc::ExactSparsestCut solver;
  row.ls_iterations = sc::weakly_stable_max_cut(g, solver).trace.iterations;
  return row;
}

BenchRow bench_multiway(const std::string& id, const sc::WeightedGraph& g,
                        const std::vector<int>& terms, std::uint64_t seed) {
  BenchRow row;
  row.id = id;
  row.n = g.n();
  row.m = static_cast<long>(g.m());
  row.seed = seed;
  row.margin = sc::multiway_stability_report(g, terms).margin;
  row.lp_integral =
      sc::robust_multiway_cut(g, terms).status == sc::MultiwayStatus::optimal ? 1 : 0;
  row.ls_iterations = sc::weakly_stable_multiway(g, terms, 0, seed).trace.iterations;
  return row;
}

int run_bench(const BenchArgs& a) {
  sc::WallClock clock;
  sc::RunReport rep;
  rep.command = "bench";
  try {
    if (a.suite != "quick" && a.suite != "full" && a.suite != "sweep")
      throw sc::instance_error("unknown suite: " + a.suite);
    rep.options = {{"suite", a.suite}, {"seed", a.seed}};
    if (a.suite == "sweep") rep.options["count"] = a.count;
    std::vector<BenchRow> rows;
    const std::uint64_t s = a.seed;

    if (a.suite == "sweep") {
      if (a.count < 1) throw sc::instance_error("sweep needs a positive --count");
      for (long i = 0; i < a.count; ++i) {
        const std::uint64_t seed = s + 1000 + static_cast<std::uint64_t>(i);
        if (i % 2 == 0) {
          const int n = 8 + 2 * static_cast<int>(i % 4 / 2);  // 8 or 10
          const auto gen = sc::generate_stable_maxcut(n, 2.0, seed);
          rows.push_back(bench_maxcut("sweep-maxcut-" + std::to_string(i), gen.graph, seed));
        } else {
          const int n = 9 + static_cast<int>(i % 8 / 2);  // 9..12
          const int k = 2 + static_cast<int>(i % 4 / 2);
          const auto gen = sc::generate_stable_multiway(n, k, 4.0, seed);
          rows.push_back(bench_multiway("sweep-multiway-" + std::to_string(i), gen.graph,
                                        gen.terminals, seed));
        }
      }
    } else {
      {
        const auto gen = sc::generate_stable_maxcut(8, 2.0, s + 1);
        rows.push_back(bench_maxcut("stable-maxcut-a", gen.graph, s + 1));
      }
      {
        const auto gen = sc::generate_stable_maxcut(10, 3.0, s + 2);
        rows.push_back(bench_maxcut("stable-maxcut-b", gen.graph, s + 2));
      }
      {
        const auto gen = sc::generate_weakly_stable_maxcut(8, 5.0, 0.2, s + 3);
        rows.push_back(bench_maxcut("weakly-stable-a", gen.graph, s + 3));
      }
      {
        const auto gen = sc::generate_stable_multiway(9, 2, 4.0, s + 4);
        rows.push_back(bench_multiway("stable-multiway-a", gen.graph, gen.terminals, s + 4));
      }
      {
        const auto gen = sc::generate_stable_multiway(10, 3, 4.0, s + 5);
        rows.push_back(bench_multiway("stable-multiway-b", gen.graph, gen.terminals, s + 5));
      }
      rows.push_back(bench_multiway("star-5", sc::star_graph(5.0), sc::star_terminals(), s));
      if (a.suite == "full") {
        {
          const auto gen = sc::generate_stable_maxcut(12, 1.5, s + 6);
          rows.push_back(bench_maxcut("stable-maxcut-c", gen.graph, s + 6));
        }
        {
          const auto gen = sc::generate_stable_maxcut(14, 2.0, s + 7);
          rows.push_back(bench_maxcut("stable-maxcut-d", gen.graph, s + 7));
        }
        {
          const auto gen = sc::generate_weakly_stable_maxcut(10, 5.0, 0.2, s + 8);
          rows.push_back(bench_maxcut("weakly-stable-b", gen.graph, s + 8));
        }
        {
          const auto gen = sc::generate_stable_multiway(11, 3, 4.0, s + 9);
          rows.push_back(bench_multiway("stable-multiway-c", gen.graph, gen.terminals, s + 9));
        }
        {
          const auto gen = sc::generate_stable_multiway(12, 3, 4.0, s + 10);
          rows.push_back(bench_multiway("stable-multiway-d", gen.graph, gen.terminals, s + 10));
        }
        rows.push_back(bench_multiway("star-4", sc::star_graph(4.0), sc::star_terminals(), s));
      }
    }

    const std::string header = "instance_id,n,m,margin,sdp_integral,lp_integral,ls_iterations,seed";
    std::string csv = header + "\n";
    ojson jrows = ojson::array();
    for (const auto& r : rows) {
      const std::string margin_s =
          r.margin.is_infinite() ? "inf" : sc::detail::format_double(r.margin.to_double());
      csv += r.id + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," + margin_s + "," +
             (r.sdp_integral < 0 ? "na" : std::to_string(r.sdp_integral)) + "," +
             (r.lp_integral < 0 ? "na" : std::to_string(r.lp_integral)) + "," +
             std::to_string(r.ls_iterations) + "," + std::to_string(r.seed) + "\n";
      ojson jr;
      jr["instance_id"] = r.id;
      jr["n"] = r.n;
      jr["m"] = r.m;
      jr["margin"] = ratio_json(r.margin);
      if (r.sdp_integral >= 0) jr["sdp_integral"] = (r.sdp_integral == 1);
      if (r.lp_integral >= 0) jr["lp_integral"] = (r.lp_integral == 1);
      jr["ls_iterations"] = r.ls_iterations;
      jr["seed"] = r.seed;
      jrows.push_back(jr);
    }
    rep.status = sc::RunStatus::optimal;
    rep.result["rows"] = jrows;
    if (!a.out.empty()) {
      std::ofstream f(a.out, std::ios::binary);
      if (!f) throw sc::instance_error("cannot write csv: " + a.out);
      f << csv;
      rep.result["path"] = a.out;
    }
    rep.message = "suite completed";
  } catch (const std::exception& e) {
    rep.status = sc::RunStatus::error;
    rep.message = e.what();
    std::cerr << "stablecut: error: " << e.what() << "\n";
  }
  return emit(rep, clock);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability-aware max-cut / multiway-cut toolbox"};
  app.require_subcommand(1);
  app.add_flag("--pretty", g_pretty, "human-readable text instead of JSON");
  app.add_flag("--verbose", g_verbose, "progress notes on stderr");

  MaxcutArgs mc;
  auto* cmd_mc = app.add_subcommand("maxcut", "solve max cut on a stable instance");
  cmd_mc->add_option("instance", mc.file, "instance path, or - for stdin");
  cmd_mc->add_option("--mode", mc.mode, "robust | local-search | brute")
      ->check(CLI::IsMember({"robust", "local-search", "brute"}));
  cmd_mc->add_option("--sc", mc.sc_solver, "auxiliary sparsest-cut solver: exact | spectral")
      ->check(CLI::IsMember({"exact", "spectral"}));
  cmd_mc->add_option("--tol", mc.tol, "SDP solve tolerance");
  cmd_mc->add_option("--eps-int", mc.eps_int, "integrality threshold on gram entries");
  cmd_mc->add_option("--max-rounds", mc.max_rounds, "cutting-plane round cap");
  cmd_mc->add_option("--seed", mc.seed, "seed echoed into the report (the pipeline is deterministic)");

  MultiwayArgs mw;
  auto* cmd_mw = app.add_subcommand("multiway", "solve minimum multiway cut");
  cmd_mw->add_option("instance", mw.file, "instance path, or - for stdin");
  cmd_mw->add_option("--mode", mw.mode, "robust | local-search | brute")
      ->check(CLI::IsMember({"robust", "local-search", "brute"}));
  cmd_mw->add_option("--trials", mw.trials, "rounding trials per improvement round (0: 100m)");
  cmd_mw->add_option("--seed", mw.seed, "rounding seed");
  cmd_mw->add_option("--eps-int", mw.eps_int, "integrality threshold on LP coordinates");
  cmd_mw->add_option("--pivot-tol", mw.pivot_tol, "simplex pivot tolerance");

  CertifyArgs ce;
  auto* cmd_ce = app.add_subcommand("certify", "exhaustively check a stability claim");
  cmd_ce->add_option("instance", ce.file, "instance path, or - for stdin");
  cmd_ce->add_option("--gamma", ce.gamma, "stability factor to certify")->required();
  cmd_ce->add_option("--delta", ce.delta, "weak-stability radius fraction (max cut only)");
  cmd_ce->add_option("--problem", ce.problem, "auto | maxcut | multiway")
      ->check(CLI::IsMember({"auto", "maxcut", "multiway"}));

  GenerateArgs ge;
  auto* cmd_ge = app.add_subcommand("generate", "emit a provably structured instance");
  cmd_ge
      ->add_option("family", ge.family,
                   "stable-maxcut | weakly-stable-maxcut | stable-multiway | sparsest | star")
      ->required();
  cmd_ge->add_option("--n", ge.n, "vertex count (base vertices for sparsest)");
  cmd_ge->add_option("--k", ge.k, "terminal count (stable-multiway)");
  cmd_ge->add_option("--gamma", ge.gamma, "stability target");
  cmd_ge->add_option("--delta", ge.delta, "weak-stability radius fraction");
  cmd_ge->add_option("--heavy", ge.heavy, "heavy edge weight (star)");
  cmd_ge->add_option("--seed", ge.seed, "generator seed");
  cmd_ge->add_option("-o,--out", ge.out, "write the instance here instead of stdout");

  RoundArgs ro;
  auto* cmd_ro = app.add_subcommand("round", "sample the multiway rounding scheme");
  cmd_ro->add_option("instance", ro.file, "instance path, or - for stdin");
  cmd_ro->add_option("--samples", ro.samples, "number of rounding samples");
  cmd_ro->add_option("--seed", ro.seed, "sampling seed");
  cmd_ro->add_option("--pivot-tol", ro.pivot_tol, "simplex pivot tolerance");

  BenchArgs be;
  auto* cmd_be = app.add_subcommand("bench", "run a generated benchmark suite");
  cmd_be->add_option("--suite", be.suite, "quick | full | sweep")
      ->check(CLI::IsMember({"quick", "full", "sweep"}));
  cmd_be->add_option("--seed", be.seed, "suite base seed");
  cmd_be->add_option("--count", be.count, "number of sweep instances")
      ->check(CLI::PositiveNumber);
  cmd_be->add_option("-o,--out", be.out, "write a CSV summary here");

  CLI11_PARSE(app, argc, argv);

  if (cmd_mc->parsed()) return run_maxcut(mc);
  if (cmd_mw->parsed()) return run_multiway(mw);
  if (cmd_ce->parsed()) return run_certify(ce);
  if (cmd_ge->parsed()) return run_generate(ge);
  if (cmd_ro->parsed()) return run_round(ro);
  if (cmd_be->parsed()) return run_bench(be);
  return 1;
}
