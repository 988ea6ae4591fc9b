#include "herdgames/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "herdgames/influence.hpp"
#include "herdgames/metrics.hpp"
#include "herdgames/oracle.hpp"
#include "herdgames/predict.hpp"
#include "format.hpp"

namespace herdgames::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string game;
  double rho = 0.5;
  int levels = 3;
  double c1 = 3.0, c2 = 2.0, c3 = 1.0;
  double alpha = 1.0;
  std::string policy = "declared";
  double eps = 1e-9;
  std::string format = "json";
  std::string out_path;
  std::string weights;
  std::string objective = "adoption";
  int grid = 100;
  std::string alpha_range = "0:1:50";
  std::string rho_range = "0.667:1:50";
};

GameSpec load_game(const Options& o) {
  if (o.game == "braess2") return braess2(o.rho);
  if (o.game == "braess3") return braess3(o.rho);
  if (o.game == "bandwidth") return bandwidth(o.levels);
  if (o.game == "product") return product_selection(o.c1, o.c2, o.c3);
  std::ifstream in(o.game);
  if (!in) {
    throw SchemaError("cannot read game file: " + o.game);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

HerdingPolicy policy_of(const Options& o) {
  if (o.policy == "declared") return HerdingPolicy::DeclaredHerding;
  if (o.policy == "strict") return HerdingPolicy::StrictMajority;
  throw InvalidParams("policy must be 'declared' or 'strict'");
}

Tolerance tol_of(const Options& o) {
  if (!(o.eps > 0.0)) throw InvalidParams("eps must be positive");
  return Tolerance{o.eps};
}

struct Range {
  double lo = 0.0, hi = 1.0;
  int count = 1;
};

Range parse_range(const std::string& text) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':') {
    throw InvalidParams("range must be lo:hi:count, got '" + text + "'");
  }
  return r;
}

json measure_json(const Measure& m) {
  json arr = json::array();
  for (double w : m.weights()) arr.push_back(detail::round12(w));
  return arr;
}

json vector_json(const std::vector<double>& v) {
  json arr = json::array();
  for (double w : v) arr.push_back(detail::round12(w));
  return arr;
}

json game_json(const GameSpec& g) {
  return json{{"name", g.name()}, {"actions", g.labels()}};
}

json point_json(const GameSpec& g, const EquilibriumPoint& p, double alpha,
                HerdingPolicy policy, Tolerance tol) {
  json herding = json::array();
  for (int k : p.herding) {
    herding.push_back(
        {{"action", g.labels()[k]},
         {"mu_R", measure_json(rational_measure(p.mu, k, alpha, tol))}});
  }
  (void)policy;
  return json{{"mu", measure_json(p.mu)}, {"herding", herding}};
}

json family_json(const GameSpec& g, const EquilibriumFamily& f) {
  json herding = json::array();
  for (int k : f.herding) herding.push_back(g.labels()[k]);
  return json{{"base", measure_json(f.base)},
              {"direction", vector_json(f.direction)},
              {"t_max", detail::round12(f.t_len)},
              {"herding", herding}};
}

std::string measure_text(const Measure& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ", ";
    s += detail::fmt12(m[i]);
  }
  return s + ")";
}

void emit(const json& doc, const Options& o, std::ostream& out,
          const std::string& table) {
  std::ostream* sink = &out;
  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path, std::ios::binary);
    if (!file) throw SchemaError("cannot write output file: " + o.out_path);
    sink = &file;
  }
  if (o.format == "table") {
    *sink << table;
  } else {
    *sink << doc.dump(2) << "\n";
  }
}

void add_game_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--game", o.game,
                  "builtin id (braess2|braess3|bandwidth|product) or path to "
                  "a game JSON file")
      ->required();
  cmd->add_option("--rho", o.rho, "congestion coefficient for braess games");
  cmd->add_option("--levels", o.levels, "level count for the bandwidth game");
  cmd->add_option("--c1", o.c1, "product game top utility");
  cmd->add_option("--c2", o.c2, "product game middle utility");
  cmd->add_option("--c3", o.c3, "product game bottom utility");
  cmd->add_option("--eps", o.eps, "numeric tolerance (default 1e-9)");
}

void add_policy_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--policy", o.policy,
                  "herding consistency rule: 'declared' (default; lets the "
                  "herding crowd follow itself on an action holding exactly "
                  "the 1-alpha mass, reproducing the closed-form equilibrium "
                  "sets of the built-in games) or 'strict' (the literal "
                  "min-index majority rule)")
      ->check(CLI::IsMember({"declared", "strict"}));
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", o.out_path, "write output to this file");
}

int solver_exit_code(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const SchemaError*>(&e) ||
      dynamic_cast<const InvalidParams*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e)) {
    return 2;
  }
  return 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Exact solver for finite-action mean-field games played by a "
               "mixture of rational and herding (majority-following) players"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand(
      "solve", "enumerate the equilibria of the mixed population");
  CLI::App* classical_cmd = app.add_subcommand(
      "classical", "enumerate the classical equilibria (alpha = 1)");
  CLI::App* metrics_cmd = app.add_subcommand(
      "metrics", "social optimum, PoA/PoS and per-type utility report");
  CLI::App* herding_cmd = app.add_subcommand(
      "herding-set", "actions the herding crowd can settle on in equilibrium");
  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "herding-aware iterated elimination of dominated actions");
  CLI::App* influence_cmd = app.add_subcommand(
      "influence", "optimal herding target for an influence designer");
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "CSV sweep of the two-route vs three-route comparison");
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "re-check the solved equilibrium set with the grid oracle");

  for (CLI::App* cmd :
       {solve, classical_cmd, metrics_cmd, herding_cmd, predict_cmd,
        influence_cmd, verify_cmd}) {
    add_game_options(cmd, o);
    add_output_options(cmd, o);
  }
  for (CLI::App* cmd :
       {solve, metrics_cmd, herding_cmd, predict_cmd, influence_cmd,
        verify_cmd}) {
    cmd->add_option("--alpha", o.alpha, "fraction of rational players")
        ->required();
    add_policy_option(cmd, o);
  }
  influence_cmd->add_option(
      "--weights", o.weights,
      "comma-separated adoption weights, one per action (selects the "
      "adoption objective)");
  influence_cmd->add_option("--objective", o.objective,
                            "objective when no weights are given")
      ->check(CLI::IsMember({"adoption", "social"}));
  verify_cmd->add_option("--grid", o.grid, "scan grid denominator (>= 50)");
  sweep_cmd->add_option("--game", o.game, "sweep kind (braess-compare)")
      ->required();
  sweep_cmd->add_option("--alpha", o.alpha_range, "alpha range lo:hi:count");
  sweep_cmd->add_option("--rho", o.rho_range, "rho range lo:hi:count");
  add_policy_option(sweep_cmd, o);
  sweep_cmd->add_option("--eps", o.eps, "numeric tolerance (default 1e-9)");
  sweep_cmd->add_option("--out", o.out_path, "write CSV to this file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return 2;
  }

  try {
    const Tolerance tol = tol_of(o);

    if (*solve) {
      const GameSpec g = load_game(o);
      const HerdingPolicy policy = policy_of(o);
      const EquilibriumSet set = alpha_rne_set(g, o.alpha, policy, tol);
      json doc{{"command", "solve"},
               {"game", game_json(g)},
               {"alpha", detail::round12(o.alpha)},
               {"policy", o.policy}};
      doc["equilibria"] = json::array();
      for (const auto& p : set.points) {
        doc["equilibria"].push_back(point_json(g, p, o.alpha, policy, tol));
      }
      doc["families"] = json::array();
      for (const auto& f : set.families) {
        doc["families"].push_back(family_json(g, f));
      }
      std::ostringstream table;
      table << set.points.size() << " equilibrium point(s), "
            << set.families.size() << " family(ies)\n";
      for (const auto& p : set.points) {
        table << "  mu = " << measure_text(p.mu) << "  herding:";
        for (int k : p.herding) table << " " << g.labels()[k];
        table << "\n";
      }
      for (const auto& f : set.families) {
        table << "  family base " << measure_text(f.base) << " t in [0, "
              << detail::fmt12(f.t_len) << "]\n";
      }
      emit(doc, o, out, table.str());
      return 0;
    }

    if (*classical_cmd) {
      const GameSpec g = load_game(o);
      const EquilibriumSet set = classical_equilibria(g, tol);
      const SocialOptimum opt = social_optimum(g, tol);
      json doc{{"command", "classical"},
               {"game", game_json(g)},
               {"social_optimum",
                {{"mu", measure_json(opt.argmax)},
                 {"value", detail::round12(opt.value)}}}};
      doc["equilibria"] = json::array();
      for (const auto& p : set.points) {
        doc["equilibria"].push_back(json{{"mu", measure_json(p.mu)}});
      }
      doc["families"] = json::array();
      for (const auto& f : set.families) {
        doc["families"].push_back(family_json(g, f));
      }
      std::ostringstream table;
      for (const auto& p : set.points) {
        table << "  mu = " << measure_text(p.mu) << "\n";
      }
      table << "social optimum " << detail::fmt12(opt.value) << " at "
            << measure_text(opt.argmax) << "\n";
      emit(doc, o, out, table.str());
      return 0;
    }

    if (*metrics_cmd) {
      const GameSpec g = load_game(o);
      const MetricsReport r = metrics_report(g, o.alpha, policy_of(o), tol);
      json doc{{"command", "metrics"},
               {"game", game_json(g)},
               {"alpha", detail::round12(o.alpha)},
               {"policy", o.policy},
               {"u_s_star", detail::round12(r.u_s_star)},
               {"poa", detail::round12(r.poa)},
               {"pos", detail::round12(r.pos)},
               {"comparison_ok", r.comparisons.all_ok}};
      doc["equilibria"] = json::array();
      for (std::size_t i = 0; i < r.equilibria.points.size(); ++i) {
        doc["equilibria"].push_back(
            json{{"mu", measure_json(r.equilibria.points[i].mu)},
                 {"u_s", detail::round12(r.social_values[i])}});
      }
      doc["per_type"] = json::array();
      for (const UtilityComparisonClaim& c : r.comparisons.claims) {
        doc["per_type"].push_back(
            json{{"mu", measure_json(c.mu)},
                 {"herding_action", g.labels()[c.herding_action]},
                 {"u_R", detail::round12(c.u_rational)},
                 {"u_I", detail::round12(c.u_herding)},
                 {"classical", c.classical},
                 {"ok", c.ok()}});
      }
      std::ostringstream table;
      table << "u_s_star = " << detail::fmt12(r.u_s_star)
            << "  PoA = " << detail::fmt12(r.poa)
            << "  PoS = " << detail::fmt12(r.pos)
            << "  comparisons " << (r.comparisons.all_ok ? "ok" : "VIOLATED") << "\n";
      for (const UtilityComparisonClaim& c : r.comparisons.claims) {
        table << "  mu = " << measure_text(c.mu) << "  herding "
              << g.labels()[c.herding_action]
              << "  u_R = " << detail::fmt12(c.u_rational)
              << "  u_I = " << detail::fmt12(c.u_herding) << "\n";
      }
      emit(doc, o, out, table.str());
      return 0;
    }

    if (*herding_cmd) {
      const GameSpec g = load_game(o);
      const std::vector<int> hs =
          herding_choice_set(g, o.alpha, policy_of(o), tol);
      json actions = json::array();
      std::string table;
      for (int k : hs) {
        actions.push_back(g.labels()[k]);
        table += g.labels()[k] + "\n";
      }
      emit(json{{"command", "herding-set"},
                {"game", game_json(g)},
                {"alpha", detail::round12(o.alpha)},
                {"policy", o.policy},
                {"herding_set", actions}},
           o, out, table);
      return 0;
    }

    if (*predict_cmd) {
      const GameSpec g = load_game(o);
      const PredictionResult r =
          iterated_prediction(g, o.alpha, policy_of(o), tol);
      json trace = json::array();
      std::ostringstream table;
      for (const EliminationStep& s : r.trace) {
        trace.push_back(json{{"round", s.round},
                             {"eliminated", g.labels()[s.eliminated]},
                             {"dominated_by", g.labels()[s.dominator]}});
        table << "round " << s.round << ": eliminate "
              << g.labels()[s.eliminated] << " (dominated by "
              << g.labels()[s.dominator] << ")\n";
      }
      json surviving = json::array();
      for (int i : r.surviving) surviving.push_back(g.labels()[i]);
      json doc{{"command", "predict"},
               {"game", game_json(g)},
               {"alpha", detail::round12(o.alpha)},
               {"policy", o.policy},
               {"trace", trace},
               {"surviving", surviving},
               {"prediction", r.unique_prediction
                                  ? json(g.labels()[*r.unique_prediction])
                                  : json(nullptr)}};
      table << "surviving:";
      for (int i : r.surviving) table << " " << g.labels()[i];
      table << "\n";
      if (r.unique_prediction) {
        table << "prediction: " << g.labels()[*r.unique_prediction] << "\n";
      }
      emit(doc, o, out, table.str());
      return 0;
    }

    if (*influence_cmd) {
      const GameSpec g = load_game(o);
      ObjectiveSpec objective = ObjectiveSpec::social();
      if (!o.weights.empty()) {
        std::vector<double> w;
        std::istringstream is(o.weights);
        std::string tokn;
        while (std::getline(is, tokn, ',')) w.push_back(std::stod(tokn));
        objective = ObjectiveSpec::adoption(std::move(w));
      } else if (o.objective == "adoption") {
        throw InvalidParams("adoption objective requires --weights");
      }
      const InfluenceSolution s =
          design_influence(g, o.alpha, objective, policy_of(o), tol);
      json doc{{"command", "influence"},
               {"game", game_json(g)},
               {"alpha", detail::round12(o.alpha)},
               {"policy", o.policy},
               {"objective", o.weights.empty() ? "social" : "adoption"},
               {"i_H", g.labels()[s.i_h_star]},
               {"nu", measure_json(s.nu_star)},
               {"mu_R", measure_json(s.mu_r_star)},
               {"mu", measure_json(s.mu_star)},
               {"f", detail::round12(s.f_star)}};
      std::ostringstream table;
      table << "i_H = " << g.labels()[s.i_h_star]
            << "  f = " << detail::fmt12(s.f_star) << "\n"
            << "mu   = " << measure_text(s.mu_star) << "\n"
            << "mu_R = " << measure_text(s.mu_r_star) << "\n";
      emit(doc, o, out, table.str());
      return 0;
    }

    if (*sweep_cmd) {
      if (o.game != "braess-compare") {
        throw InvalidParams(
            "sweep supports --game braess-compare (the two-route vs "
            "three-route comparison)");
      }
      const Range ar = parse_range(o.alpha_range);
      const Range rr = parse_range(o.rho_range);
      const std::vector<SweepRow> rows =
          braess_sweep(ar.lo, ar.hi, ar.count, rr.lo, rr.hi, rr.count,
                       policy_of(o), tol);
      std::ostringstream csv;
      write_sweep_csv(rows, csv);
      if (!o.out_path.empty()) {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) throw SchemaError("cannot write output file: " + o.out_path);
        file << csv.str();
      } else {
        out << csv.str();
      }
      return 0;
    }

    if (*verify_cmd) {
      const GameSpec g = load_game(o);
      const HerdingPolicy policy = policy_of(o);
      const EquilibriumSet set = alpha_rne_set(g, o.alpha, policy, tol);
      const oracle::OracleReport report =
          oracle::verify_set(g, o.alpha, policy, set, o.grid, tol);
      json failures = json::array();
      for (const auto& f : report.membership_failures) {
        failures.push_back(json{{"mu", vector_json(f.mu)},
                                {"herding_action", f.herding_action},
                                {"reason", f.reason}});
      }
      json suspects = json::array();
      for (const auto& s : report.completeness_suspects) {
        suspects.push_back(json{{"mu", vector_json(s.mu)},
                                {"distance", detail::round12(s.distance)}});
      }
      json doc{{"command", "verify"},
               {"game", game_json(g)},
               {"alpha", detail::round12(o.alpha)},
               {"policy", o.policy},
               {"grid", o.grid},
               {"agreement", report.agreement},
               {"membership_failures", failures},
               {"suspects", suspects}};
      std::ostringstream table;
      table << (report.agreement ? "agreement" : "DISAGREEMENT") << ": "
            << report.membership_failures.size() << " membership failure(s), "
            << report.completeness_suspects.size() << " suspect(s)\n";
      emit(doc, o, out, table.str());
      return report.agreement ? 0 : 4;
    }
  } catch (const Error& e) {
    return solver_exit_code(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace herdgames::cli
