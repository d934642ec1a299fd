#include "rlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rlab/arithmetic.hpp"
#include "rlab/embedding.hpp"
#include "rlab/errors.hpp"
#include "rlab/limits.hpp"
#include "rlab/removal.hpp"
#include "rlab/rng.hpp"
#include "rlab/uip.hpp"

namespace rlab {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& f : split(s, ',')) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(f, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.size() || v < 0) throw InputError("expected a comma-separated list of nonnegative integers: " + s);
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& what) {
  if (!seed) throw InputError(what + " is stochastic and needs --seed");
  return *seed;
}

struct Common {
  std::string out_path;
  unsigned threads = 1;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_path, "write the JSON report here instead of stdout");
  sub->add_option("--threads", c.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
  sub->add_flag("--timing", c.timing, "append wall-clock seconds under \"timing\"");
}

json mc_json(const McEstimate& m) {
  return {{"estimate", m.estimate}, {"standard_error", m.standard_error}, {"hits", m.hits}, {"samples", m.samples}};
}

}  // namespace

MotifSpec parse_motif(const std::string& text) {
  if (text.find(';') == std::string::npos) return MotifSpec::named(text);
  const auto parts = split(text, ';');
  std::size_t v0 = 0;
  try {
    v0 = static_cast<std::size_t>(std::stoul(parts[0]));
  } catch (const std::exception&) {
    throw InputError("motif spec must start with the vertex count: " + text);
  }
  std::vector<Edge> edges;
  unsigned d = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::istringstream f(parts[i]);
    Edge e;
    long long v;
    while (f >> v) {
      if (v < 0) throw InputError("negative motif label");
      e.push_back(static_cast<Vertex>(v));
    }
    if (!f.eof()) throw InputError("bad motif edge: " + parts[i]);
    if (e.empty()) continue;
    if (d == 0) d = static_cast<unsigned>(e.size());
    edges.push_back(std::move(e));
  }
  if (d == 0) throw InputError("motif spec has no edges: " + text);
  return MotifSpec::make(d, v0, std::move(edges));
}

std::string event_grammar_help() {
  return "Event language:\n"
         "  expr  := term ('|' term)*\n"
         "  term  := unary ('&' unary)*\n"
         "  unary := '!' unary | '(' expr ')' | leaf\n"
         "  leaf  := 'A' '(' i ',' j [',' ...] ')'   edge among sampled vertices i, j, ... (1-based)\n"
         "         | 'A' '[' n ']'                   shift event x + n*lambda in A (n may be negative)\n"
         "  '&' binds tighter than '|'. Example: \"A(1,2) & A(2,3) & A(1,3)\".\n"
         "Motifs: edge, triangle, k4, path2, path3, cycle4, k4-3, edge-3, or \"v0;a b;c d;...\".\n"
         "Exit codes: 0 success, 1 verification failure, 2 input error.\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite correspondence-principle laboratory: counting, embeddings, removal, UIP.", "removal-lab"};
  app.footer(event_grammar_help());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  Common common;
  std::optional<std::uint64_t> seed;
  std::function<json()> action;

  // count
  auto* count = app.add_subcommand("count", "exact motif, progression or corner counts");
  std::string graph_path, motif_text = "triangle", zn_path, grid_path;
  std::size_t k = 3;
  bool exclude_degenerate = false;
  count->add_option("--graph", graph_path, "hypergraph file");
  count->add_option("--motif", motif_text, "motif name or spec")->capture_default_str();
  count->add_option("--zn", zn_path, "Z_N set file (counts k-term progressions)");
  count->add_option("--k", k, "progression length")->capture_default_str();
  count->add_option("--grid", grid_path, "Z_M^2 set file (counts corners)");
  count->add_flag("--exclude-degenerate", exclude_degenerate, "skip r = 0");
  add_common(count, common);
  count->callback([&] {
    action = [&]() -> json {
      const int picked = !graph_path.empty() + !zn_path.empty() + !grid_path.empty();
      if (picked != 1) throw InputError("count needs exactly one of --graph, --zn, --grid");
      if (!graph_path.empty()) {
        const auto g = load_hypergraph(graph_path);
        const auto motif = parse_motif(motif_text);
        if (motif.d != g.d()) throw InputError("motif uniformity does not match the hypergraph");
        const BigInt c = g.d() == 2 && motif.is_triangle() ? triangle_count(g, common.threads)
                                                           : count_labeled_copies(g, motif, common.threads);
        return {{"count", bigint_to_json(c)}, {"motif", motif_text}, {"n", g.n()}, {"edges", g.edge_count()}};
      }
      if (!zn_path.empty()) {
        const auto a = load_zn_set(zn_path);
        return {{"count", bigint_to_json(count_aps(a, k, exclude_degenerate))}, {"N", a.N}, {"k", k},
                {"degenerate_included", !exclude_degenerate}};
      }
      const auto a = load_grid_set(grid_path);
      return {{"count", bigint_to_json(count_corners(a, exclude_degenerate))}, {"M", a.M},
              {"degenerate_included", !exclude_degenerate}};
    };
  });

  // embed
  auto* embed = app.add_subcommand("embed", "universal-embedding probabilities of regular events");
  std::vector<std::string> event_texts;
  std::string mode = "exact";
  std::uint64_t samples = 100000;
  std::size_t scale_m = 1;
  std::uint32_t max_arity = 6;
  embed->add_option("--graph", graph_path, "hypergraph file");
  embed->add_option("--zn", zn_path, "Z_N set file (Furstenberg embedding, exact)");
  embed->add_option("--m", scale_m, "Furstenberg scale, L = floor(N/m)")->capture_default_str();
  embed->add_option("--event", event_texts, "event formula (repeatable)")->required();
  embed->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  embed->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  embed->add_option("--max-arity", max_arity, "exact enumeration cap on K")->capture_default_str();
  embed->add_option("--seed", seed, "seed for --mode mc");
  add_common(embed, common);
  embed->callback([&] {
    action = [&]() -> json {
      if (graph_path.empty() == zn_path.empty()) throw InputError("embed needs exactly one of --graph, --zn");
      std::vector<RegularEvent> events;
      for (const auto& t : event_texts) events.push_back(RegularEvent::parse(t));
      json results = json::array();
      if (!zn_path.empty()) {
        if (mode != "exact") throw InputError("the Furstenberg embedding is exact only");
        const auto inst = FurstenbergInstance::make(load_zn_set(zn_path), scale_m);
        for (const auto& e : events) results.push_back({{"event", e.to_string()}, {"p", rational_report(furstenberg_prob(inst, e))}});
      } else {
        const auto g = load_hypergraph(graph_path);
        EmbedOptions eo;
        eo.max_arity = max_arity;
        eo.threads = common.threads;
        if (mode == "exact") {
          for (const auto& e : events)
            results.push_back({{"event", e.to_string()}, {"p", rational_report(embed_prob_exact(g, e, eo))}});
        } else {
          const auto s = require_seed(seed, "embed --mode mc");
          for (std::size_t c = 0; c < events.size(); ++c)
            results.push_back({{"event", events[c].to_string()},
                               {"p", mc_json(embed_prob_mc(g, events[c], samples, mix64(s + c), common.threads))}});
        }
      }
      json rep{{"mode", mode}};
      if (results.size() == 1) {
        rep["event"] = results[0]["event"];
        rep["p"] = results[0]["p"];
      } else {
        rep["results"] = results;
      }
      return rep;
    };
  });

  // remove
  auto* remove = app.add_subcommand("remove", "delete edges until the motif is gone, then verify");
  std::string method = "greedy", save_path;
  std::size_t polls = 6;
  double tau = 0.3;
  bool list_edges = false;
  remove->add_option("--graph", graph_path, "hypergraph file")->required();
  remove->add_option("--motif", motif_text, "motif name or spec")->capture_default_str();
  remove->add_option("--method", method, "greedy, partition or strong")
      ->check(CLI::IsMember({"greedy", "partition", "strong"}))
      ->capture_default_str();
  remove->add_option("--polls", polls, "poll vertices for partition methods")->capture_default_str();
  remove->add_option("--tau", tau, "block density threshold")->capture_default_str();
  remove->add_option("--seed", seed, "seed for the poll draw");
  remove->add_option("--save-graph", save_path, "write the resulting graph here");
  remove->add_flag("--list-edges", list_edges, "include the deleted edges in the report");
  add_common(remove, common);
  remove->callback([&] {
    action = [&]() -> json {
      const auto g = load_hypergraph(graph_path);
      json rep;
      Hypergraph result;
      if (method == "greedy") {
        const auto r = remove_copies_greedy(g, parse_motif(motif_text), common.threads);
        rep = r.to_json(list_edges);
        result = r.graph;
      } else {
        if (!parse_motif(motif_text).is_triangle()) throw InputError("partition methods remove triangles only");
        const auto s = require_seed(seed, "remove --method " + method);
        if (method == "partition") {
          const auto r = remove_triangles_partition(g, polls, tau, s, common.threads);
          rep = r.to_json(list_edges);
          result = r.graph;
        } else {
          const auto r = strong_removal_partition(g, polls, tau, s, common.threads);
          rep = r.to_json();
          rep["residual_copies"] = bigint_to_json(triangle_count(r.blowup, common.threads));
          result = r.blowup;
        }
      }
      rep["motif"] = motif_text;
      if (!save_path.empty()) save_hypergraph(save_path, result);
      return rep;
    };
  });

  // uip-demo
  auto* uip = app.add_subcommand("uip-demo", "construct and validate a uniform-intersection certificate");
  std::string problem_path, save_problem, epsilon_text;
  bool three_point = false, best_effort = false, no_shortcut = false, filtrations = false;
  std::optional<std::uint64_t> generate;
  unsigned gen_j = 3, gen_height = 2;
  std::string tolerance_text = "0";
  uip->add_option("--problem", problem_path, "problem JSON");
  uip->add_option("--generate", generate, "generate a certified product system from this seed");
  uip->add_flag("--three-point", three_point, "the three-point worked example");
  uip->add_option("--J", gen_j, "generator ground-set size")->capture_default_str();
  uip->add_option("--height", gen_height, "generator downset height")->capture_default_str();
  uip->add_flag("--filtrations", filtrations, "generator adds two-level chains on top members");
  uip->add_option("--epsilon", epsilon_text, "override epsilon, e.g. 1/100");
  uip->add_flag("--best-effort", best_effort, "repair intersections instead of failing");
  uip->add_option("--tolerance", tolerance_text, "hypothesis tolerance in best-effort mode")->capture_default_str();
  uip->add_flag("--no-shortcut", no_shortcut, "run the full induction even when the meet is already empty");
  uip->add_option("--save-problem", save_problem, "write the problem JSON here");
  add_common(uip, common);
  uip->callback([&] {
    action = [&]() -> json {
      const int picked = !problem_path.empty() + generate.has_value() + three_point;
      if (picked != 1) throw InputError("uip-demo needs exactly one of --problem, --generate, --three-point");
      UipProblem p;
      if (!problem_path.empty()) {
        std::ifstream in(problem_path);
        if (!in) throw InputError("cannot open " + problem_path);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw InputError(std::string("malformed JSON: ") + e.what());
        }
        p = problem_from_json(j);
      } else if (generate) {
        GeneratorOptions g;
        g.J = gen_j;
        g.height = gen_height;
        g.filtrations = filtrations;
        p = generate_certified_problem(*generate, g);
      } else {
        p = three_point_problem();
      }
      if (!epsilon_text.empty()) p.epsilon = rational_from_json(json(epsilon_text));
      if (!(p.epsilon > 0)) throw InputError("epsilon must be positive");
      if (!save_problem.empty()) {
        std::ofstream f(save_problem);
        if (!f) throw InputError("cannot write " + save_problem);
        f << problem_to_json(p).dump(2) << '\n';
      }
      UipOptions o;
      o.best_effort = best_effort;
      o.shortcut_empty = !no_shortcut;
      o.hypotheses.tolerance = rational_from_json(json(tolerance_text));
      const auto hyp = check_hypotheses(p.system, o.hypotheses);
      const auto sol = uip_construct(p, o);
      return {{"points", p.system.space->size()},
              {"members", p.system.i_max.size()},
              {"hypotheses", hyp.to_json()},
              {"solution", solution_to_json(p, sol)}};
    };
  });

  // converge
  auto* conv = app.add_subcommand("converge", "density tables over a graph sequence and a tol-Cauchy subsequence");
  std::vector<std::string> graph_paths;
  std::string random_sizes, csv_path;
  double p_edge = 0.5, tol = 0.05;
  conv->add_option("--graph", graph_paths, "hypergraph files, one row each (repeatable)");
  conv->add_option("--random", random_sizes, "instead: G(n, p) rows for these n, e.g. 10,20,40");
  conv->add_option("--p", p_edge, "edge probability for --random")->capture_default_str();
  conv->add_option("--event", event_texts, "event formula (repeatable)")->required();
  conv->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
  conv->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  conv->add_option("--tol", tol, "bin width")->capture_default_str();
  conv->add_option("--csv", csv_path, "also write the table as CSV");
  conv->add_option("--seed", seed, "seed for --random and --mode mc");
  add_common(conv, common);
  conv->callback([&] {
    action = [&]() -> json {
      std::vector<Hypergraph> graphs;
      if (!random_sizes.empty()) {
        if (!graph_paths.empty()) throw InputError("use either --graph or --random");
        const auto s = require_seed(seed, "converge --random");
        std::size_t row = 0;
        for (auto n : parse_sizes(random_sizes)) graphs.push_back(random_hypergraph(n, 2, p_edge, mix64(s + row++)));
      } else {
        for (const auto& path : graph_paths) graphs.push_back(load_hypergraph(path));
      }
      if (graphs.empty()) throw InputError("converge needs at least one graph");
      std::vector<RegularEvent> events;
      for (const auto& t : event_texts) events.push_back(RegularEvent::parse(t));
      DensityRowOptions o;
      o.mode = mode == "exact" ? DensityMode::exact : DensityMode::mc;
      if (o.mode == DensityMode::mc) o.seed = require_seed(seed, "converge --mode mc");
      o.samples = samples;
      o.embed.threads = common.threads;
      const auto table = density_table(graphs, events, o);
      const auto sub = diagonal_subsequence(table, tol);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw InputError("cannot write " + csv_path);
        table.write_csv(f);
      }
      json rows = json::array();
      for (std::size_t r = 0; r < table.value.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < table.columns.size(); ++c)
          row.push_back(table.exact.empty() ? json(table.value[r][c]) : rational_report(table.exact[r][c]));
        rows.push_back({{"n", graphs[r].n()}, {"values", row}});
      }
      return {{"columns", table.columns}, {"mode", mode},       {"rows", rows},
              {"tol", tol},               {"subsequence", sub.rows}, {"degenerate", sub.degenerate}};
    };
  });

  // regcurve
  auto* reg = app.add_subcommand("regcurve", "polling defect curve for a graph");
  std::string poll_list = "0,1,2,4,8", random_graph;
  std::size_t trials = 20;
  reg->add_option("--graph", graph_path, "graph file");
  reg->add_option("--random", random_graph, "instead: G(n, p) given as n,p e.g. 200,0.5");
  reg->add_option("--polls", poll_list, "poll sizes")->capture_default_str();
  reg->add_option("--trials", trials, "poll draws per size")->capture_default_str();
  reg->add_option("--seed", seed, "seed for polls (and --random)");
  add_common(reg, common);
  reg->callback([&] {
    action = [&]() -> json {
      const auto s = require_seed(seed, "regcurve");
      Hypergraph g;
      if (graph_path.empty() == random_graph.empty()) throw InputError("regcurve needs exactly one of --graph, --random");
      if (!random_graph.empty()) {
        const auto f = split(random_graph, ',');
        if (f.size() != 2) throw InputError("--random expects n,p");
        try {
          g = random_hypergraph(std::stoul(f[0]), 2, std::stod(f[1]), s);
        } catch (const std::logic_error& e) {
          if (dynamic_cast<const InputError*>(&e)) throw;
          throw InputError("--random expects n,p");
        }
      } else {
        g = load_hypergraph(graph_path);
      }
      auto rep = regularity_defect_curve(g, parse_sizes(poll_list), trials, s, common.threads).to_json();
      rep["n"] = g.n();
      rep["edges"] = g.edge_count();
      return rep;
    };
  });

  // shiftsys
  auto* shift = app.add_subcommand("shiftsys", "commuting-shift identities on Z_M x Z_M");
  std::size_t big_n = 2, window = 0;
  shift->add_option("--grid", grid_path, "Z_M^2 set file")->required();
  shift->add_option("--N", big_n, "range [1, N] for n1, n2, n3")->capture_default_str();
  shift->add_option("--window", window, "also report P(A & T^n A & S^n A) for |n| <= window");
  add_common(shift, common);
  shift->callback([&] {
    action = [&]() -> json {
      ShiftSystem sys{load_grid_set(grid_path)};
      const auto lhs = tripartite_embed_prob(sys, big_n);
      const auto rhs = tripartite_identity_rhs(sys, big_n);
      const auto bound = tripartite_upper_bound(sys, big_n);
      json rep{{"M", sys.a.M},
               {"N", big_n},
               {"density", rational_report(make_rational(static_cast<long>(sys.a.size()), static_cast<long>(sys.points())))},
               {"tripartite", rational_report(lhs)},
               {"identity_rhs", rational_report(rhs)},
               {"identity_holds", lhs == rhs},
               {"upper_bound", rational_report(bound)},
               {"inequality_holds", lhs <= bound}};
      if (window > 0) {
        json per = json::array();
        const auto w = static_cast<std::int64_t>(window);
        for (std::int64_t n = -w; n <= w; ++n)
          per.push_back({{"n", n}, {"p", rational_report(recurrence_probability(sys, n))}});
        rep["recurrence"] = per;
        rep["window_average"] = rational_report(recurrence_window_average(sys, window));
      }
      if (!(lhs == rhs) || !(lhs <= bound)) throw VerificationError("shift-system identity failed: " + rep.dump());
      return rep;
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.back()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    json rep = action();
    if (common.timing)
      rep["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    const std::string text = rep.dump(2) + "\n";
    if (common.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(common.out_path, std::ios::binary);
      if (!f) throw InputError("cannot write " + common.out_path);
      f << text;
    }
    return 0;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rlab
