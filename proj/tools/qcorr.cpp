// qcorr: witnessed entanglement, geometric discord and their bounds.
//
//   qcorr state werner --da 5 --k -0.5
//   qcorr analyze bell --da 2
//   qcorr sweep --family werner --da 5 --grid -1:1:41 --format csv
//   qcorr reproduce-tables --output tables.json

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcorr/bounds.hpp"
#include "qcorr/serialize.hpp"

namespace {

using namespace qcorr;

constexpr int kExitMismatch = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitBoundViolation = 4;

struct RunConfig {
  std::uint64_t seed = 0;
  int restarts = 32;
  int seesaw_restarts = 200;
  int workers = 1;
  double bound_slack = 1e-6;
  double extension_tolerance = 1e-7;
  double generalized_tolerance = 1e-6;
  int generalized_max_iterations = 50000;
  double optimizer_tolerance = 1e-12;
  std::string output;  // empty: stdout
  std::string format = "json";
};

// Fields present in the --config document override the defaults; command
// line flags override both.
void apply_config_file(const std::string& path, RunConfig& rc) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file " + path + ": " + e.what());
  }
  try {
    rc.seed = doc.value("seed", rc.seed);
    rc.restarts = doc.value("restarts", rc.restarts);
    rc.seesaw_restarts = doc.value("seesaw_restarts", rc.seesaw_restarts);
    if (doc.contains("parallelism")) {
      const json& p = doc["parallelism"];
      rc.workers = p.is_string() && p.get<std::string>() == "auto" ? 0 : p.get<int>();
    }
    if (doc.contains("tolerances")) {
      const json& t = doc["tolerances"];
      rc.bound_slack = t.value("bound_slack", rc.bound_slack);
      rc.extension_tolerance = t.value("extension", rc.extension_tolerance);
      rc.generalized_tolerance = t.value("generalized", rc.generalized_tolerance);
      rc.generalized_max_iterations =
          t.value("generalized_max_iterations", rc.generalized_max_iterations);
      rc.optimizer_tolerance = t.value("optimizer", rc.optimizer_tolerance);
    }
    if (doc.contains("output")) {
      rc.output = doc["output"].value("path", rc.output);
      rc.format = doc["output"].value("format", rc.format);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument("config file " + path + ": " + e.what());
  }
}

Cut parse_cut(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw InvalidArgument("--cut expects AxB, got '" + text + "'");
  try {
    std::size_t used_a = 0, used_b = 0;
    const int a = std::stoi(text.substr(0, x), &used_a);
    const int b = std::stoi(text.substr(x + 1), &used_b);
    if (used_a != x || used_b != text.size() - x - 1) throw std::invalid_argument("trailing");
    return Cut(a, b);
  } catch (const std::logic_error&) {
    throw InvalidArgument("--cut expects AxB, got '" + text + "'");
  }
}

// "start:stop:count" (inclusive linspace) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
      if (parts.size() != 3) throw std::invalid_argument("grid");
      const double a = std::stod(parts[0]), b = std::stod(parts[1]);
      const int n = std::stoi(parts[2]);
      if (n < 1) throw std::invalid_argument("grid");
      for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
      return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    throw InvalidArgument("--grid expects start:stop:count or v1,v2,..., got '" + text + "'");
  }
  return out;
}

struct StateArgs {
  std::string family;
  std::string file;
  int dA = 2;
  double k = 0.0;
  double s = 0.0;
  std::string cut;
};

void add_state_options(CLI::App* cmd, StateArgs& a, bool family_required) {
  auto* fam = cmd->add_option("family", a.family,
                              "werner | horodecki | upb | upb_mix | max_entangled (alias bell)");
  if (family_required) fam->required();
  cmd->add_option("--da", a.dA, "local dimension (werner, max_entangled)");
  cmd->add_option("--k", a.k, "family parameter (werner, horodecki)");
  cmd->add_option("--s", a.s, "noise weight for upb_mix");
  cmd->add_option("--cut", a.cut, "re-bipartition as AxB");
}

BipartiteState build_state(const StateArgs& a) {
  BipartiteState st;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw InvalidArgument("cannot read state file " + a.file);
    try {
      st = state_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
      throw InvalidArgument("state file " + a.file + ": " + e.what());
    }
  } else if (a.family == "werner") {
    st = werner(a.dA, a.k);
  } else if (a.family == "horodecki") {
    st = horodecki_3x3(a.k);
  } else if (a.family == "upb") {
    st = upb_tiles_4x4();
  } else if (a.family == "upb_mix") {
    st = mix_with_noise(upb_tiles_4x4(), a.s);
  } else if (a.family == "max_entangled" || a.family == "bell") {
    st = max_entangled(a.dA);
  } else if (a.family.empty()) {
    throw InvalidArgument("give a state family or --state FILE");
  } else {
    throw InvalidArgument("unknown state family '" + a.family + "'");
  }
  if (!a.cut.empty()) st = rebipartition(st, parse_cut(a.cut));
  return st;
}

DiscordConfig discord_config(const RunConfig& rc) {
  DiscordConfig dc;
  dc.optimizer.restarts = rc.restarts;
  dc.optimizer.seed = rc.seed;
  dc.optimizer.workers = rc.workers;
  dc.optimizer.tolerance = rc.optimizer_tolerance;
  return dc;
}

BoundsConfig bounds_config(const RunConfig& rc) {
  BoundsConfig bc;
  bc.discord = discord_config(rc);
  bc.cutting_plane.seed = rc.seed;
  bc.cutting_plane.workers = rc.workers;
  bc.cutting_plane.certification_restarts = rc.seesaw_restarts;
  bc.cutting_plane.extension_tolerance = rc.extension_tolerance;
  bc.generalized.tolerance = rc.generalized_tolerance;
  bc.generalized.max_iterations = rc.generalized_max_iterations;
  bc.slack = rc.bound_slack;
  return bc;
}

void emit(const RunConfig& rc, const std::string& text) {
  if (rc.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.output, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + rc.output);
  out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witnessed entanglement and geometric discord in Schatten norms"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  RunConfig rc;
  if (const char* env = std::getenv("QCORR_SEED")) {
    try {
      rc.seed = std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "QCORR_SEED must be a nonnegative integer\n";
      return kExitBadArgs;
    }
  }
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts, workers;
  std::optional<std::string> output, format;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "random seed (default: $QCORR_SEED or 0)");
  app.add_option("--restarts", restarts, "basis optimizer restarts (default 32)");
  app.add_option("--workers", workers, "worker threads, 0 = hardware concurrency (default 1)");
  app.add_option("--output,-o", output, "output file (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  StateArgs state_args;
  auto* cmd_state = app.add_subcommand("state", "construct a state and print it as JSON");
  add_state_options(cmd_state, state_args, true);

  StateArgs analyze_args;
  bool want_neg = false, want_rr = false, want_cert = false, want_rg = false, want_d1 = false,
       want_d2 = false, want_bounds = false;
  std::vector<double> general_p;
  std::string side_name = "B";
  auto* cmd_analyze = app.add_subcommand("analyze", "quantifiers, discords and bounds for a state");
  add_state_options(cmd_analyze, analyze_args, false);
  cmd_analyze->add_option("--state", analyze_args.file, "state JSON file");
  cmd_analyze->add_flag("--negativity", want_neg, "negativity and its witness");
  cmd_analyze->add_flag("--rr", want_rr, "random robustness over decomposable witnesses");
  cmd_analyze->add_flag("--rr-certified", want_cert, "general random robustness, certified");
  cmd_analyze->add_flag("--rg-ppt", want_rg, "PPT-relaxed generalized robustness");
  cmd_analyze->add_flag("--d1", want_d1, "trace-norm geometric discord");
  cmd_analyze->add_flag("--d2", want_d2, "Hilbert-Schmidt geometric discord");
  cmd_analyze->add_flag("--bounds", want_bounds, "full bound report (default with no flags)");
  cmd_analyze->add_option("--p", general_p, "extra Schatten orders for the bound report");
  cmd_analyze->add_option("--side", side_name, "measured subsystem, A or B")
      ->check(CLI::IsMember({"A", "B"}));

  std::string family_name = "werner";
  int sweep_da = 5;
  std::string grid_text;
  bool sweep_cert = false, sweep_rg = false;
  auto* cmd_sweep = app.add_subcommand("sweep", "bound reports over a family parameter grid");
  cmd_sweep->add_option("--family", family_name, "werner | horodecki | upb_mix");
  cmd_sweep->add_option("--da", sweep_da, "Werner local dimension (default 5)");
  cmd_sweep->add_option("--grid", grid_text, "start:stop:count or v1,v2,... (may be empty)")
      ->expected(0, 1);
  cmd_sweep->add_flag("--rr-certified", sweep_cert, "include the certified general witness");
  cmd_sweep->add_flag("--rg-ppt", sweep_rg, "include PPT-relaxed generalized robustness");

  bool table3_rr = false;
  double tolerance_scale = 1.0;
  auto* cmd_tables = app.add_subcommand("reproduce-tables", "published tables, cell by cell");
  cmd_tables->add_flag("--include-table3-rr", table3_rr, "add the report-only Rr/d column");
  cmd_tables->add_option("--tolerance-scale", tolerance_scale,
                         "multiply every cell tolerance (0 forces exact comparison)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, rc);
    if (seed) rc.seed = *seed;
    if (restarts) rc.restarts = *restarts;
    if (workers) rc.workers = *workers;
    if (output) rc.output = *output;
    if (format) rc.format = *format;
    if (rc.restarts < 1) throw InvalidArgument("--restarts must be >= 1");
    if (rc.format != "json" && rc.format != "csv") throw InvalidArgument("format must be json or csv");

    if (*cmd_state) {
      emit(rc, dump(to_json(build_state(state_args))));
      return 0;
    }

    if (*cmd_analyze) {
      const BipartiteState st = build_state(analyze_args);
      const Side side = side_name == "A" ? Side::A : Side::B;
      BoundsConfig bc = bounds_config(rc);
      bc.side = side;
      json doc = {{"state", to_json(st)}};
      const bool any = want_neg || want_rr || want_cert || want_rg || want_d1 || want_d2;
      if (!any || want_bounds) {
        bc.certified_robustness = want_cert;
        bc.generalized_robustness = want_rg;
        bc.general_p = general_p;
        doc["report"] = to_json(verify_bounds(st, bc));
      } else {
        if (want_neg) doc["negativity"] = to_json(negativity(st));
        if (want_rr) doc["rr_decomposable"] = to_json(random_robustness_decomposable(st));
        if (want_cert) {
          doc["rr_certified"] = to_json(random_robustness_cutting_plane(st, bc.cutting_plane));
        }
        if (want_rg) doc["rg_ppt"] = to_json(generalized_robustness_ppt(st, bc.generalized));
        if (want_d1) doc["d1"] = to_json(d1_discord(st, side, bc.discord));
        if (want_d2) doc["d2"] = to_json(d2_discord(st, side, bc.discord));
      }
      emit(rc, dump(doc));
      return 0;
    }

    if (*cmd_sweep) {
      FamilySpec spec{family_from_string(family_name), sweep_da};
      BoundsConfig bc = bounds_config(rc);
      bc.certified_robustness = sweep_cert;
      bc.generalized_robustness = sweep_rg;
      const SweepResult res = sweep_family(spec, parse_grid(grid_text), bc);
      emit(rc, rc.format == "csv" ? sweep_csv(res) : dump(to_json(res)));
      return 0;
    }

    if (*cmd_tables) {
      if (!(tolerance_scale >= 0.0)) throw InvalidArgument("--tolerance-scale must be >= 0");
      TablesConfig tc;
      tc.discord = discord_config(rc);
      tc.tolerance_scale = tolerance_scale;
      tc.include_table3_rr = table3_rr;
      const TablesReport rep = reproduce_tables(tc);
      emit(rc, dump(to_json(rep)));
      if (!rep.pass) {
        for (const auto& c : rep.cells) {
          if (!c.informational && !c.pass) {
            std::cerr << "mismatch: table " << c.table << ", " << c.row << ", " << c.column
                      << ": computed " << c.computed << ", expected " << c.reference << "\n";
          }
        }
        return kExitMismatch;
      }
      return 0;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const BoundViolation& e) {
    std::cerr << "error: " << e.what() << "\n" << e.detail() << "\n";
    return kExitBoundViolation;
  }
  return 0;
}
