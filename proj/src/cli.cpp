#include "expost/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "expost/binary_geometry.hpp"
#include "expost/compare.hpp"
#include "expost/game_file.hpp"
#include "expost/greedy.hpp"
#include "expost/persuasion.hpp"
#include "expost/trading.hpp"

namespace expost {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string mode = "both";
  std::string out_path;
  std::string csv_path;
  bool decimal = false;
};

ordered_json number(const Rational& x, bool decimal) {
  if (!decimal) return to_string(x);
  return ordered_json{{"exact", to_string(x)}, {"approx", to_double(x)}};
}

ordered_json vector_json(const Vector& v, bool decimal) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(number(x, decimal));
  return out;
}

std::string vector_text(const Vector& v, bool decimal) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += to_string(v[i]);
    if (decimal) s += " (" + std::to_string(to_double(v[i])) + ")";
  }
  return s + "]";
}

std::string value_text(const Rational& x, bool decimal) {
  return decimal ? to_string(x) + " (" + std::to_string(to_double(x)) + ")" : to_string(x);
}

ordered_json result_json(const Game& game, const SolveResult& r, bool decimal) {
  ordered_json out;
  out["value"] = number(r.value, decimal);
  out["ex_post_ir"] = r.ex_post_ir;
  ordered_json signals = ordered_json::array();
  for (const auto& s : r.scheme.signals) {
    signals.push_back({{"posterior", vector_json(s.posterior.probabilities(), decimal)},
                       {"weight", number(s.weight, decimal)},
                       {"action", game.actions[s.induced_action]}});
  }
  out["scheme"] = std::move(signals);
  return out;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const GameFile f = load_game_file(o.file);
  ordered_json doc;
  std::optional<Rational> bp;
  std::optional<Rational> expost;
  if (o.mode == "bp" || o.mode == "both") {
    const SolveResult r = solve_bp(f.game, f.prior);
    bp = r.value;
    doc["bp"] = result_json(f.game, r, o.decimal);
  }
  if (o.mode == "expost" || o.mode == "both") {
    const SolveResult r = solve_expost(f.game, f.prior);
    expost = r.value;
    doc["expost"] = result_json(f.game, r, o.decimal);
  }
  if (bp && expost) doc["gap"] = number(*bp - *expost, o.decimal);
  const std::string text = doc.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out_path);
    if (!file) throw std::runtime_error("cannot write " + o.out_path);
    file << text;
    out << "wrote " << o.out_path << "\n";
  }
  return kExitOk;
}

int cmd_analyze_binary(const Options& o, std::ostream& out) {
  const GameFile f = load_game_file(o.file);
  const BinaryAnalysis a = analyze_binary(f.game);
  const auto& game = f.game;
  out << "thresholds: " << vector_text(a.partition.thresholds, o.decimal) << "\n";
  out << "interval actions:";
  for (std::size_t act : a.partition.interval_actions) out << " " << game.actions[act];
  out << "\nthreshold actions:";
  for (std::size_t act : a.partition.threshold_actions) out << " " << game.actions[act];
  out << "\ngamma vertices:";
  for (const auto& p : a.quasiconcave.chain.vertices) {
    out << " (" << value_text(p.x, o.decimal) << ", " << value_text(p.y, o.decimal) << ")";
  }
  out << "\ngamma slopes: " << vector_text(a.quasiconcave.chain.slopes(), o.decimal) << "\n";
  out << "verdict: " << (a.expost_ir ? "EXPOST_IR" : "NOT_EXPOST_IR") << "\n";
  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + o.csv_path);
    write_curves_csv(csv, a, o.decimal);
    out << "wrote " << o.csv_path << "\n";
  }
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const GameFile f = load_game_file(o.file);
  const Game& game = f.game;
  if (game.num_actions() != game.num_states()) {
    out << "trading: NOT_SQUARE\nconditions: NOT_SQUARE\n";
    return kExitOk;
  }
  const TradingCertificate cert = classify_trading(game);
  out << "trading: " << (cert.is_trading ? "TRADING" : "NOT_TRADING") << "\n";
  for (const auto& w : cert.violations) {
    out << "  condition " << w.condition << " violated at (i=" << w.i + 1 << ", j=" << w.j + 1
        << ", k=" << w.k + 1 << ")\n";
  }
  if (cert.welfare_constants) {
    out << "  welfare constants: " << vector_text(*cert.welfare_constants, o.decimal) << "\n";
  }
  const ConditionReport r = check_conditions(game.receiver);
  out << "conditions: " << (r.cyclically_monotone ? "CYCLICAL_MONOTONE" : "NOT_CYCLICAL_MONOTONE")
      << " + ";
  if (!r.log_check_applicable) {
    out << "WEAK_LOG_SUPERMODULAR_NOT_APPLICABLE\n";
  } else {
    out << (r.weakly_log_supermodular ? "WEAK_LOG_SUPERMODULAR" : "NOT_WEAK_LOG_SUPERMODULAR")
        << "\n";
  }
  for (const auto& w : r.witnesses) {
    out << "  " << w.condition << " witness (i=" << w.i << ", j=" << w.j << ", k=" << w.k << ")\n";
  }
  return kExitOk;
}

void print_trace(const Game& game, const GreedyTrace& t, bool decimal, std::ostream& out) {
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const auto& round = t.rounds[r];
    out << "round " << r + 1 << " action " << game.actions[round.action] << " mass "
        << value_text(round.mass, decimal) << " residual " << vector_text(round.residual, decimal)
        << "\n";
  }
}

int cmd_greedy(const Options& o, std::ostream& out, std::ostream& err) {
  const GameFile f = load_game_file(o.file);
  try {
    const GreedyTrace t = greedy_scheme(f.game, f.prior);
    print_trace(f.game, t, o.decimal, out);
    out << "value: " << value_text(t.value, o.decimal) << "\n";
    out << "ex_post_ir: " << (is_expost_ir(t.outcome, f.game, f.prior) ? "true" : "false") << "\n";
  } catch (const BudgetNotExhausted& e) {
    print_trace(f.game, e.trace(), o.decimal, out);
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitOk;
}

std::string gated_text(const GatedValue& g, bool decimal) {
  std::string s = g.exact() ? value_text(g.value, decimal) : "Unknown";
  s += " [" + g.gate + (g.external ? ", external result" : "") + "]";
  return s;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const GameFile f = load_game_file(o.file);
  const CompareReport r = compare_report(f.game, f.prior);
  out << "bp: " << value_text(r.v_bp, o.decimal) << "\n";
  out << "expost: " << value_text(r.v_expost, o.decimal) << "\n";
  out << "credible: " << gated_text(r.v_credible, o.decimal) << "\n";
  out << "cheap: " << gated_text(r.v_cheap, o.decimal) << "\n";
  out << "sender order: " << (r.sender_order_exists ? "yes" : "no") << "\n";
  for (const auto& c : r.checks) out << "check " << c.inequality << ": " << to_string(c.status) << "\n";
  out << "ordering: " << r.ordering << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal signaling with and without the ex-post IR constraint"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "game file")->required();
    sub->add_flag("--decimal", o.decimal, "add approximate decimal values next to exact ones");
  };
  auto* solve_cmd = app.add_subcommand("solve", "solve the persuasion programs");
  add_common(solve_cmd);
  solve_cmd->add_option("--mode", o.mode, "bp, expost or both")
      ->check(CLI::IsMember({"bp", "expost", "both"}));
  solve_cmd->add_option("--out", o.out_path, "write the result document here");
  auto* binary_cmd = app.add_subcommand("analyze-binary", "geometric test for two-state games");
  add_common(binary_cmd);
  binary_cmd->add_option("--csv", o.csv_path, "write sampled curves as CSV");
  auto* classify_cmd = app.add_subcommand("classify", "trading and greedy-condition checks");
  add_common(classify_cmd);
  auto* greedy_cmd = app.add_subcommand("greedy", "run the greedy signaling scheme");
  add_common(greedy_cmd);
  auto* compare_cmd = app.add_subcommand("compare", "compare values across models");
  add_common(compare_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (binary_cmd->parsed()) return cmd_analyze_binary(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (greedy_cmd->parsed()) return cmd_greedy(o, out, err);
    if (compare_cmd->parsed()) return cmd_compare(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NotBinary& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotBinary;
  } catch (const Error& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitParse;
}

}  // namespace expost
