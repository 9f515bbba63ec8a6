// Command-line front end: experiment runs, Betti/Koszul tables, prime systems and oracles.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "frobent/error.hpp"
#include "frobent/oracle.hpp"
#include "frobent/runner.hpp"
#include "frobent/spectrum.hpp"

using namespace frobent;
using nlohmann::json;

namespace {

struct ObjectOptions {
  std::string field = "prime:2";
  std::string monoid = "numerical:2,3";
  std::string endomorphism = "frobenius";
  std::string module = "k";
  int pushforward = 0;
  int steps = 2;
  std::optional<std::int64_t> window_degree;
  std::optional<std::int64_t> window_margin;

  void attach(CLI::App* app) {
    app->add_option("--field", field, "prime:p | finite:p:s | rational:p:m")->capture_default_str();
    app->add_option("--monoid", monoid, "numerical:a,b,.. | free:d | product:a,b,..:d")->capture_default_str();
    app->add_option("--endomorphism", endomorphism, "frobenius | scale:m")->capture_default_str();
    app->add_option("--module", module, "R | k | m | Rx | ideal:<pts> | quotient:<pts>/<pts>")->capture_default_str();
    app->add_option("--pushforward", pushforward, "apply the e-th pushforward first")->check(CLI::NonNegativeNumber);
    app->add_option("--steps", steps, "homological steps")->check(CLI::NonNegativeNumber)->capture_default_str();
    app->add_option("--window-degree", window_degree, "lattice cutoff D");
    app->add_option("--window-margin", window_margin, "stabilization margin w")->check(CLI::PositiveNumber);
  }

  RingSpec ring() const { return {parse_field(field), parse_monoid(monoid)}; }

  GradedModule object() const {
    const RingSpec r = ring();
    GradedModule m = parse_module(r, module);
    if (pushforward > 0) m = frobent::pushforward(m, parse_endomorphism(r, endomorphism), pushforward);
    return m;
  }

  TruncationWindow window() const { return {window_degree, window_margin, 3}; }

  std::string object_id() const {
    return pushforward > 0 ? std::to_string(pushforward) + "*" + module : module;
  }
};

std::string degrees_cell(const std::vector<GeneratorDegree>& degrees) {
  std::string out;
  for (const auto& g : degrees) {
    if (!out.empty()) out += ' ';
    out += to_string(g.lattice);
    if (g.shift.denominator != 1 || std::any_of(g.shift.numerator.begin(), g.shift.numerator.end(),
                                                 [](std::int64_t x) { return x != 0; })) {
      out += "@" + g.shift.to_string();
    }
    if (g.copies != 1) out += "x" + std::to_string(g.copies);
  }
  return out;
}

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(p);
  return out;
}

oracle::MonomialModule monomial_of(const GradedModule& m) {
  if (m.summands().size() != 1 || !m.summands().front().is_monomial()) {
    throw ConfigError("oracles accept a single monomial module (R, k, m, Rx, ideal:, quotient:)");
  }
  const auto& data = std::get<MonomialData>(m.summands().front().data);
  return {data.generators.generators(), data.relations.generators()};
}

int cmd_run(const std::string& path, std::optional<unsigned> workers, std::optional<std::string> output) {
  ExperimentConfig config = load_config(path);
  if (workers) config.workers = *workers;
  if (output) config.output = *output;
  const RunResult result = run(config);
  write_outputs(config, result);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "verdict: " << to_string(result.verdict) << "\n";
  std::cout << "wrote " << config.output << "/report.json and " << config.output << "/bounds.csv\n";
  return result.verdict == Verdict::Fail ? 1 : 0;
}

int cmd_betti(const ObjectOptions& o) {
  const BettiTable t = minimal_resolution(o.object(), o.steps, o.window());
  std::cout << "object,i,value,degrees,stabilized\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    const auto& c = t.columns[i];
    std::cout << o.object_id() << "," << i << "," << c.beta << "," << degrees_cell(c.degrees) << ","
              << (c.stabilized ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_koszul(const ObjectOptions& o) {
  const GradedModule m = o.object();
  const KoszulHomology h = koszul_homology_lengths(m, KoszulComplex::on_maximal_ideal(m.ring_spec()), o.window());
  std::cout << "object,i,value,degrees,stabilized\n";
  for (std::size_t i = 0; i < h.lengths.size(); ++i) {
    std::cout << o.object_id() << "," << -static_cast<long long>(i) << "," << h.lengths[i] << ",,"
              << (h.certified ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open prime system file " + path);
  const PrimeSystem system = PrimeSystem::parse(in);
  const PrimeGraph g = graph_and_connectivity(system);
  json out;
  json primes = json::array();
  for (const auto& p : system.primes()) {
    primes.push_back({{"name", p.name()}, {"prime", p.to_string()}, {"height", p.height()}, {"alpha", p.alpha()},
                      {"alpha_plus_height", p.alpha() + p.height()}});
  }
  out["n"] = system.ambient();
  out["primes"] = primes;
  out["adjacency"] = g.adjacency;
  out["components"] = g.components;
  out["connected"] = g.connected();
  if (g.connected()) {
    out["beta"] = beta_constant(system);
  } else {
    out["beta"] = nullptr;
  }
  if (g.certificate) {
    out["certificate"] = {{"a", g.certificate->a}, {"b", g.certificate->b}, {"validated", g.certificate->validated}};
  } else {
    out["certificate"] = nullptr;
  }
  json checks = json::array();
  const auto& ps = system.primes();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (i == j || !contained(ps[i], ps[j])) continue;
      const HeightAlphaCheck c = check_height_alpha(ps[i], ps[j]);
      checks.push_back({{"P", ps[i].name()}, {"Q", ps[j].name()}, {"additive", c.additive}, {"kunz", c.kunz}});
    }
  }
  out["height_alpha_checks"] = checks;
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for Frobenius pushforwards over monoid rings k[[Gamma]]"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<unsigned> workers;
  std::optional<std::string> output;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config and write report.json and bounds.csv");
  run_cmd->add_option("config", config_path, "INI config file")->required();
  run_cmd->add_option("--workers", workers, "override [run] workers")->check(CLI::PositiveNumber);
  run_cmd->add_option("--output", output, "override [run] output");

  ObjectOptions betti_opts;
  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of a module as CSV");
  betti_opts.attach(betti_cmd);

  ObjectOptions koszul_opts;
  koszul_opts.steps = 0;
  auto* koszul_cmd = app.add_subcommand("koszul", "Koszul homology lengths on the maximal ideal as CSV");
  koszul_opts.attach(koszul_cmd);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "coordinate-prime systems");
  spectrum_cmd->require_subcommand(1);
  std::string prime_file;
  auto* check_cmd = spectrum_cmd->add_subcommand("check", "graph, connectivity and alpha + height as JSON");
  check_cmd->add_option("file", prime_file, "prime system file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations (JSON)");
  oracle_cmd->require_subcommand(1);
  std::string gens_text;
  auto* gaps_cmd = oracle_cmd->add_subcommand("gaps", "gaps and Frobenius number of <a,b,...>");
  gaps_cmd->add_option("generators", gens_text, "comma-separated generators")->required();

  std::string monoid_text = "numerical:2,3";
  std::string ideal_text;
  auto* comp_cmd = oracle_cmd->add_subcommand("complement", "Gamma minus a monomial ideal");
  comp_cmd->add_option("--monoid", monoid_text)->capture_default_str();
  comp_cmd->add_option("ideal", ideal_text, "ideal generators, e.g. 4;6")->required();

  std::int64_t base = 2;
  int e = 1;
  std::string set_text = "0";
  auto* push_cmd = oracle_cmd->add_subcommand("pushforward-decompose", "residue classes of q^e w + r in a set");
  push_cmd->add_option("--monoid", monoid_text)->capture_default_str();
  push_cmd->add_option("--base", base, "u (p for Frobenius)")->capture_default_str();
  push_cmd->add_option("--e", e)->capture_default_str();
  push_cmd->add_option("--set", set_text, "generators of the set (default: Gamma)")->capture_default_str();

  std::uint32_t p = 2;
  std::string module_text = "R";
  std::string sequence_text;
  std::int64_t box = 0;
  int steps = 2;
  auto* kb_cmd = oracle_cmd->add_subcommand("koszul-bruteforce", "dense Koszul homology lengths");
  kb_cmd->add_option("--monoid", monoid_text)->capture_default_str();
  kb_cmd->add_option("--p", p)->capture_default_str();
  kb_cmd->add_option("--module", module_text)->capture_default_str();
  kb_cmd->add_option("--sequence", sequence_text, "Koszul sequence (default: generators of m)");
  kb_cmd->add_option("--box", box, "box size D (default: automatic)");
  auto* rb_cmd = oracle_cmd->add_subcommand("resolution-bruteforce", "dense minimal free resolution");
  rb_cmd->add_option("--monoid", monoid_text)->capture_default_str();
  rb_cmd->add_option("--p", p)->capture_default_str();
  rb_cmd->add_option("--module", module_text)->capture_default_str();
  rb_cmd->add_option("--steps", steps)->capture_default_str();
  rb_cmd->add_option("--box", box, "box size D (default: automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, workers, output);
    if (*betti_cmd) return cmd_betti(betti_opts);
    if (*koszul_cmd) return cmd_koszul(koszul_opts);
    if (*check_cmd) return cmd_spectrum(prime_file);

    const MonoidSpec monoid = parse_monoid(monoid_text);
    const RingSpec ring{FieldSpec::prime(p), monoid};
    json out;
    if (*gaps_cmd) {
      std::vector<std::int64_t> gens;
      std::replace(gens_text.begin(), gens_text.end(), ',', ';');
      for (const auto& pt : parse_points(gens_text, 1)) gens.push_back(pt[0]);
      const auto g = oracle::gaps(gens);
      out = {{"gaps", g.gaps}, {"frobenius_number", g.frobenius_number}};
    } else if (*comp_cmd) {
      const auto c = oracle::complement(monoid, parse_points(ideal_text, monoid.dim()));
      out = {{"finite", c.finite}, {"elements", points_json(c.elements)}, {"count", c.elements.size()}};
    } else if (*push_cmd) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= base;
      json classes = json::array();
      for (const auto& c : oracle::pushforward_decompose(monoid, parse_points(set_text, monoid.dim()), q)) {
        if (!c.generators.empty()) classes.push_back({{"residue", c.residue}, {"generators", points_json(c.generators)}});
      }
      out = {{"q", q}, {"summands", classes}};
    } else if (*kb_cmd) {
      const auto m = monomial_of(parse_module(ring, module_text));
      const auto seq = sequence_text.empty() ? monoid.minimal_generators() : parse_points(sequence_text, monoid.dim());
      out = {{"lengths", oracle::koszul_lengths(monoid, p, m, seq, box)}};
    } else if (*rb_cmd) {
      const auto m = monomial_of(parse_module(ring, module_text));
      const auto r = oracle::resolution(monoid, p, m, steps, box);
      json degs = json::array();
      for (const auto& d : r.degrees) degs.push_back(points_json(d));
      out = {{"betti", r.betti}, {"degrees", degs}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
