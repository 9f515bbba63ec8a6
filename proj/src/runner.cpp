#include "frobent/runner.hpp"

#include <openssl/evp.h>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "frobent/error.hpp"

namespace frobent {

namespace {

std::vector<std::string> split(const std::string& text, const char* separators) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::is_any_of(separators));
  for (auto& p : parts) boost::algorithm::trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()), parts.end());
  return parts;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError(what + ": '" + s + "' is not an integer");
  }
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError(what + ": '" + s + "' is not a finite number");
  }
}

std::vector<std::int64_t> to_ints(const std::string& s, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(s, ",")) out.push_back(to_int(part, what));
  if (out.empty()) throw ConfigError(what + " is empty");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string t_label(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace

EndomorphismSpec ExperimentConfig::phi() const {
  const RingSpec r = ring();
  return endomorphism == EndomorphismKind::Frobenius ? EndomorphismSpec::frobenius(r)
                                                     : EndomorphismSpec::scale(r, scale);
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "field=" << field.to_string() << "\n";
  os << "monoid=" << monoid.to_string() << "\n";
  os << "endomorphism=" << phi().to_string() << "\n";
  os << "run.e_max=" << e_max << "\n";
  os << "run.t_grid=";
  for (std::size_t i = 0; i < t_grid.size(); ++i) os << (i ? "," : "") << format_double(t_grid[i]);
  os << "\n";
  os << "run.seed=" << seed << "\n";
  os << "window.degree=" << (window.degree ? std::to_string(*window.degree) : "auto") << "\n";
  os << "window.margin=" << (window.margin ? std::to_string(*window.margin) : "auto") << "\n";
  os << "tolerance.rate=" << format_double(rate_tolerance) << "\n";
  os << "tolerance.ratio_bound=" << format_double(ratio_bound) << "\n";
  return os.str();
}

ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config is not valid INI: ") + e.what());
  }
  ExperimentConfig c;
  auto get = [&](const std::string& key) { return tree.get_optional<std::string>(key); };
  auto require = [&](const std::string& key) {
    const auto v = get(key);
    if (!v) throw ConfigError("config is missing " + key);
    return *v;
  };

  const std::string field_kind = get("field.kind").value_or("prime");
  const auto p = static_cast<std::uint32_t>(to_int(require("field.p"), "field.p"));
  if (field_kind == "prime") {
    c.field = FieldSpec::prime(p);
  } else if (field_kind == "finite") {
    c.field = FieldSpec::finite(p, static_cast<std::uint32_t>(to_int(get("field.s").value_or("1"), "field.s")));
  } else if (field_kind == "rational") {
    c.field = FieldSpec::rational(p, static_cast<std::uint32_t>(to_int(get("field.m").value_or("1"), "field.m")));
  } else {
    throw ConfigError("field.kind must be prime, finite or rational, not '" + field_kind + "'");
  }

  const std::string monoid_kind = require("monoid.kind");
  if (monoid_kind == "numerical") {
    c.monoid = MonoidSpec::numerical(to_ints(require("monoid.generators"), "monoid.generators"));
  } else if (monoid_kind == "free") {
    const auto rank = to_int(require("monoid.rank"), "monoid.rank");
    if (rank < 0) throw ConfigError("monoid.rank must be >= 0");
    c.monoid = MonoidSpec::free(static_cast<std::size_t>(rank));
  } else if (monoid_kind == "product") {
    const auto rank = to_int(require("monoid.rank"), "monoid.rank");
    if (rank < 0) throw ConfigError("monoid.rank must be >= 0");
    c.monoid = MonoidSpec::product(to_ints(require("monoid.generators"), "monoid.generators"),
                                   static_cast<std::size_t>(rank));
  } else {
    throw ConfigError("monoid.kind must be numerical, free or product, not '" + monoid_kind + "'");
  }

  const std::string endo = get("endomorphism.kind").value_or("frobenius");
  if (endo == "frobenius") {
    c.endomorphism = EndomorphismKind::Frobenius;
  } else if (endo == "scale") {
    c.endomorphism = EndomorphismKind::Scale;
    c.scale = to_int(require("endomorphism.m"), "endomorphism.m");
    if (c.scale < 1) throw ConfigError("endomorphism.m must be >= 1");
  } else {
    throw ConfigError("endomorphism.kind must be frobenius or scale, not '" + endo + "'");
  }

  c.e_max = static_cast<int>(to_int(get("run.e_max").value_or("8"), "run.e_max"));
  if (c.e_max < 1) throw ConfigError("run.e_max must be >= 1");
  if (const auto grid = get("run.t_grid")) {
    c.t_grid.clear();
    for (const auto& part : split(*grid, ",")) c.t_grid.push_back(to_double(part, "run.t_grid"));
    if (c.t_grid.empty()) throw ConfigError("run.t_grid is empty");
  }
  const auto workers = to_int(get("run.workers").value_or("1"), "run.workers");
  if (workers < 1) throw ConfigError("run.workers must be >= 1");
  c.workers = static_cast<unsigned>(workers);
  const auto seed = to_int(get("run.seed").value_or("0"), "run.seed");
  if (seed < 0) throw ConfigError("run.seed must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  c.output = get("run.output").value_or("out");

  if (const auto d = get("window.degree"); d && !d->empty()) c.window.degree = to_int(*d, "window.degree");
  if (const auto m = get("window.margin"); m && !m->empty()) {
    c.window.margin = to_int(*m, "window.margin");
    if (*c.window.margin < 1) throw ConfigError("window.margin must be >= 1");
  }
  c.rate_tolerance = to_double(get("tolerance.rate").value_or("0.1"), "tolerance.rate");
  c.ratio_bound = to_double(get("tolerance.ratio_bound").value_or("10"), "tolerance.ratio_bound");
  if (c.rate_tolerance < 0 || c.ratio_bound < 1) throw ConfigError("tolerances out of range");

  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

FieldSpec parse_field(const std::string& text) {
  const auto parts = split(text, ":");
  if (parts.empty()) throw ConfigError("empty field description");
  auto num = [&](std::size_t i, const char* what) {
    if (i >= parts.size()) throw ConfigError(std::string("field '") + text + "' is missing " + what);
    return static_cast<std::uint32_t>(to_int(parts[i], what));
  };
  if (parts[0] == "prime") return FieldSpec::prime(num(1, "p"));
  if (parts[0] == "finite") return FieldSpec::finite(num(1, "p"), num(2, "s"));
  if (parts[0] == "rational") return FieldSpec::rational(num(1, "p"), num(2, "m"));
  throw ConfigError("unknown field kind in '" + text + "'");
}

MonoidSpec parse_monoid(const std::string& text) {
  const auto parts = split(text, ":");
  if (parts.size() < 2) throw ConfigError("monoid '" + text + "' needs kind:parameters");
  if (parts[0] == "numerical") return MonoidSpec::numerical(to_ints(parts[1], "generators"));
  if (parts[0] == "free") return MonoidSpec::free(static_cast<std::size_t>(to_int(parts[1], "rank")));
  if (parts[0] == "product") {
    if (parts.size() < 3) throw ConfigError("product monoid needs product:<generators>:<rank>");
    return MonoidSpec::product(to_ints(parts[1], "generators"), static_cast<std::size_t>(to_int(parts[2], "rank")));
  }
  throw ConfigError("unknown monoid kind in '" + text + "'");
}

EndomorphismSpec parse_endomorphism(const RingSpec& ring, const std::string& text) {
  const auto parts = split(text, ":");
  if (parts.size() == 1 && parts[0] == "frobenius") return EndomorphismSpec::frobenius(ring);
  if (parts.size() == 2 && parts[0] == "scale") return EndomorphismSpec::scale(ring, to_int(parts[1], "m"));
  throw ConfigError("endomorphism must be 'frobenius' or 'scale:m', not '" + text + "'");
}

std::vector<Point> parse_points(const std::string& text, std::size_t dim) {
  std::vector<Point> out;
  for (const auto& chunk : split(text, ";")) {
    Point p;
    for (const auto& c : split(chunk, ",")) p.push_back(to_int(c, "point coordinate"));
    if (p.size() != dim) throw ConfigError("point '" + chunk + "' does not have " + std::to_string(dim) + " coordinates");
    out.push_back(std::move(p));
  }
  return out;
}

GradedModule parse_module(const RingSpec& ring, const std::string& text) {
  const MonoidSpec& monoid = ring.monoid();
  if (text == "R") return GradedModule::ring(ring);
  if (text == "k") return GradedModule::residue_field(ring);
  if (text == "m") return GradedModule::maximal_ideal(ring);
  if (text == "Rx") {
    const Point x = ring.dim() == 1 ? annihilator_element(ring) : monoid.minimal_generators().at(0);
    return GradedModule::principal_quotient(ring, x);
  }
  if (boost::algorithm::starts_with(text, "ideal:")) {
    return GradedModule::monomial(ring, ExponentSet(monoid, parse_points(text.substr(6), ring.dim())), {}, 1, text);
  }
  if (boost::algorithm::starts_with(text, "quotient:")) {
    const std::string body = text.substr(9);
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw ConfigError("quotient module needs quotient:<I>/<J>");
    return GradedModule::monomial(ring, ExponentSet(monoid, parse_points(body.substr(0, slash), ring.dim())),
                                  ExponentSet(monoid, parse_points(body.substr(slash + 1), ring.dim())), 1, text);
  }
  throw ConfigError("unknown module '" + text + "' (expected R, k, m, Rx, ideal:..., quotient:.../...)");
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) != nullptr) return 2;
  if (dynamic_cast<const WindowError*>(&error) != nullptr) return 3;
  if (dynamic_cast<const ResourceError*>(&error) != nullptr) return 4;
  return 1;
}

namespace {

struct Cell {
  std::uint64_t mu = 0;
  BettiTable betti;
};

// Runs f(e) for e = 0..e_max on `workers` threads, rethrowing the first error in e order.
template <typename F>
void parallel_over_e(int e_max, unsigned workers, F&& f) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(e_max + 1));
  auto guarded = [&](int e) {
    try {
      f(e);
    } catch (...) {
      errors[static_cast<std::size_t>(e)] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (int e = 0; e <= e_max; ++e) guarded(e);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int e = static_cast<int>(w); e <= e_max; e += static_cast<int>(workers)) guarded(e);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

// Runs one stage of the pipeline, prefixing any error with the stage name (the type is kept).
template <typename F>
auto stage(const char* name, F&& f) {
  const auto tag = [&](const std::exception& e) { return std::string(name) + ": " + e.what(); };
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(tag(e));
  } catch (const WindowError& e) {
    throw WindowError(tag(e));
  } catch (const ResourceError& e) {
    throw ResourceError(tag(e));
  } catch (const DomainError& e) {
    throw DomainError(tag(e));
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(tag(e));
  }
}

nlohmann::json growth_json(const GrowthReport& g) {
  return {{"name", g.name},       {"rate", g.rate},         {"target", g.target},
          {"class", to_string(g.growth)}, {"c_low", g.c_low}, {"c_high", g.c_high},
          {"tail_start", g.tail_start},   {"submultiplicative", g.submultiplicative}, {"note", g.note}};
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  using nlohmann::json;
  RunResult result;
  const RingSpec ring = config.ring();
  const EndomorphismSpec phi = config.phi();
  const GeneratorSpec generator = GeneratorSpec::canonical(ring);
  const std::size_t d = ring.dim();
  const int e_max = config.e_max;

  // Stage: lengths and local entropy.
  const std::vector<std::uint64_t> lengths =
      stage("length sequence", [&] { return length_sequence(ring, phi, e_max, config.workers); });
  json local;
  if (e_max >= 4) {
    const LocalEntropy le = stage("local entropy", [&] {
      return local_entropy(ring, phi, e_max, config.workers, {config.ratio_bound, 0.05});
    });
    local = growth_json(le.report);
    local["sandwich"] = le.sandwich;
  } else {
    local = {{"note", "fewer than 4 values of e; no fit"}};
    result.warnings.push_back("e_max = " + std::to_string(e_max) + " is too small for rate fits; verdict inconclusive");
  }

  // Stage: pushforward of R, its generators and Betti numbers, one cell per e.
  std::vector<Cell> cells(static_cast<std::size_t>(e_max + 1));
  const int steps = static_cast<int>(2 * d);
  stage("pushforward resolution", [&] {
    parallel_over_e(e_max, config.workers, [&](int e) {
      const GradedModule eR = pushforward(GradedModule::ring(ring), phi, e);
      Cell& c = cells[static_cast<std::size_t>(e)];
      c.mu = minimal_generator_count(eR).count;
      c.betti = minimal_resolution(eR, steps, config.window);
    });
    for (int e = 0; e <= e_max; ++e) {
      if (!cells[static_cast<std::size_t>(e)].betti.stabilized()) {
        throw WindowError("Betti numbers of eR did not stabilize at e = " + std::to_string(e) +
                          "; enlarge [window] degree or margin");
      }
    }
  });

  // Stage: constants and certificates.
  const BoundConstants constants = stage("Koszul constants", [&] {
    return bound_constants(generator.module(ring), KoszulComplex::on_maximal_ideal(ring), config.window);
  });
  std::vector<std::vector<BoundCertificate>> certs(config.t_grid.size());
  bool upper_supported = generator.kind != GeneratorKind::RingPlusResidue;
  if (!upper_supported) {
    result.warnings.push_back("upper bounds are not supported for non-regular rings of dimension " + std::to_string(d));
  }
  std::uint64_t quotient_length = 0;
  if (generator.kind == GeneratorKind::Canonical) {
    quotient_length = complement_count(ring.monoid(), ExponentSet(ring.monoid(), {generator.x})).value;
  }
  for (int e = 0; e <= e_max; ++e) {
    UpperInputs in;
    in.e = e;
    for (int i = 0; i < e; ++i) in.residue_power *= phi.residue_degree;
    in.tower_factor = checked_power(phi.base, e);
    in.quotient_length = quotient_length;
    for (int i = 0; i <= steps && generator.kind == GeneratorKind::Canonical; ++i) {
      in.betti.push_back(cells[static_cast<std::size_t>(e)].betti.beta(static_cast<std::size_t>(i)));
    }
    std::optional<UpperBound> ub;
    if (upper_supported) ub = stage("upper bound", [&] { return upper_bound(ring, phi, generator, in); });
    for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
      BoundCertificate c;
      c.e = e;
      c.t = config.t_grid[ti];
      c.lower = lower_bound(constants, in.residue_power, lengths[static_cast<std::size_t>(e)], c.t);
      c.upper = ub;
      if (ub) c.upper_value = ub->value(c.t);
      certs[ti].push_back(std::move(c));
    }
  }

  // Stage: estimates and verdicts.
  const ClosedForm target = closed_form(Functor::PushforwardDb, ring, phi);
  std::vector<EntropyEstimate> estimates;
  bool any_fail = false, all_pass = true;
  for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
    EntropyEstimate est = entropy_estimate(certs[ti], target.value, config.rate_tolerance);
    est.t = config.t_grid[ti];
    any_fail = any_fail || est.verdict == Verdict::Fail;
    all_pass = all_pass && est.verdict == Verdict::Pass;
    estimates.push_back(est);
  }
  result.verdict = any_fail ? Verdict::Fail : (all_pass ? Verdict::Pass : Verdict::Inconclusive);
  if (phi.kind == EndomorphismKind::Scale) {
    result.warnings.push_back("scaling endomorphism: only the lower bound d log m is proven; upper certificates are "
                              "experimental");
  }

  // CSV
  std::vector<std::string> columns{"e", "L_e", "mu_eR"};
  for (int i = 0; i <= steps; ++i) columns.push_back("beta_" + std::to_string(i));
  for (double t : config.t_grid) {
    columns.push_back("lower_" + t_label(t));
    columns.push_back("upper_" + t_label(t));
  }
  std::ostringstream csv;
  csv << boost::algorithm::join(columns, ",") << "\n";
  for (int e = 0; e <= e_max; ++e) {
    const Cell& c = cells[static_cast<std::size_t>(e)];
    csv << e << "," << lengths[static_cast<std::size_t>(e)] << "," << c.mu;
    for (int i = 0; i <= steps; ++i) csv << "," << c.betti.beta(static_cast<std::size_t>(i));
    for (std::size_t ti = 0; ti < config.t_grid.size(); ++ti) {
      const auto& cert = certs[ti][static_cast<std::size_t>(e)];
      csv << "," << format_double(cert.lower.value) << ",";
      if (cert.upper) csv << format_double(cert.upper_value);
    }
    csv << "\n";
  }
  result.csv = csv.str();

  // JSON report
  json report;
  report["schema"] = "frobent-report/1";
  report["csv_columns"] = columns;
  const std::string canonical = config.canonical();
  report["fingerprint"] = {{"software", std::string("frobent ") + kVersion},
                           {"config", canonical},
                           {"sha256", sha256_hex(std::string("frobent ") + kVersion + "\n" + canonical)}};
  report["ring"] = {{"description", ring.to_string()},
                    {"dim", d},
                    {"embedding_dimension", ring.embedding_dimension()},
                    {"regular", ring.is_regular()},
                    {"p_degree", p_degree(ring.field())}};
  report["endomorphism"] = {{"description", phi.to_string()}, {"u", phi.base}, {"residue_degree", phi.residue_degree}};
  report["generator"] = generator.to_string();
  report["lengths"] = lengths;
  report["local_entropy"] = local;
  json mu = json::array();
  json betti = json::array();
  for (const auto& c : cells) {
    mu.push_back(c.mu);
    json row = json::array();
    for (int i = 0; i <= steps; ++i) row.push_back(c.betti.beta(static_cast<std::size_t>(i)));
    betti.push_back(row);
  }
  report["mu_eR"] = mu;
  report["betti_eR"] = betti;
  report["constants"] = {{"N", constants.N}, {"B", constants.B}, {"koszul_lengths", constants.lengths}};
  json ledger = json::array();
  for (std::size_t ti = 0; ti < certs.size(); ++ti) {
    for (const auto& c : certs[ti]) {
      json entry = {{"e", c.e},
                    {"t", c.t},
                    {"lower",
                     {{"B", c.lower.B},
                      {"N", c.lower.N},
                      {"D_t", c.lower.D_t},
                      {"residue_power", c.lower.residue_power},
                      {"L_e", c.lower.L_e},
                      {"value", c.lower.value}}}};
      if (c.upper) {
        json terms = json::array();
        for (const auto& term : c.upper->terms) {
          terms.push_back({{"label", term.label}, {"coefficient", term.coefficient}, {"shift", term.shift},
                           {"weight", std::exp(term.shift * c.t)}});
        }
        entry["upper"] = {{"terms", terms}, {"value", c.upper_value}, {"experimental", c.upper->experimental}};
      } else {
        entry["upper"] = nullptr;
      }
      entry["sandwich"] = !c.upper || c.lower.value <= c.upper_value;
      ledger.push_back(entry);
    }
  }
  report["certificates"] = ledger;
  json est_json = json::array();
  for (const auto& est : estimates) {
    est_json.push_back({{"t", est.t},
                        {"alpha_low", est.alpha_low},
                        {"alpha_high", est.alpha_high ? json(*est.alpha_high) : json(nullptr)},
                        {"closed_form", est.closed_form},
                        {"tolerance", est.tolerance},
                        {"points", est.points},
                        {"verdict", to_string(est.verdict)}});
  }
  report["estimates"] = est_json;
  json closed;
  for (Functor f : {Functor::PushforwardDb, Functor::PushforwardDbfl, Functor::PullbackDpf, Functor::PullbackDpffl}) {
    const ClosedForm cf = closed_form(f, ring, phi);
    closed[to_string(f)] = {{"value", cf.value}, {"partial", cf.partial}};
  }
  report["closed_forms"] = closed;
  report["verdict"] = to_string(result.verdict);
  report["warnings"] = result.warnings;
  result.report = report.dump(2) + "\n";
  return result;
}

void write_outputs(const ExperimentConfig& config, const RunResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) throw ConfigError("cannot create output directory " + config.output + ": " + ec.message());
  std::ofstream(fs::path(config.output) / "report.json") << result.report;
  std::ofstream(fs::path(config.output) / "bounds.csv") << result.csv;
}

}  // namespace frobent
