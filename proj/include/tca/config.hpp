#pragma once

/**
 * Experiment configs and the batch runner behind the tca tool.
 *
 * A config is one JSON document naming an experiment kind plus the data
 * it runs on; docs/formats.md documents the schema field by field.  The
 * runner turns a config into a report directory and an exit code:
 *
 *   0  every checked verdict passed
 *   1  the experiment ran and a verdict failed
 *   2  the config or its referenced files are unusable
 *
 * Outputs are byte-for-byte reproducible from (config, seed): sampling is
 * seeded, JSON emission is insertion-ordered, and floats print in
 * round-trip form.  Seeds are mandatory wherever sampling replaces
 * exhaustion: laws always samples, verify samples on infinite groups,
 * and random element literals sample by definition.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tca/builtins.hpp"
#include "tca/serialize.hpp"

namespace tca {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string kind;      // verify | laws | spectrum | wiener | grs
  Json raw;              // the whole document
  std::string base_dir;  // directory of the config file; table paths resolve against it
  std::uint64_t seed = 1;
  bool has_seed = false;
};

namespace detail {

inline const char* const kKinds[] = {"verify", "laws", "spectrum", "wiener", "grs"};

inline Json load_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(path + ": " + err.what());
  }
}

/// Fetches cfg.raw[field] or throws naming the missing field.
inline const Json& field(const ExperimentConfig& cfg, const std::string& name) {
  if (!cfg.raw.contains(name)) {
    throw ConfigError(cfg.kind + " config: missing field '" + name + "'");
  }
  return cfg.raw[name];
}

inline std::int64_t int_field(const ExperimentConfig& cfg, const std::string& name,
                              std::int64_t fallback) {
  if (!cfg.raw.contains(name)) return fallback;
  if (!cfg.raw[name].is_number_integer()) {
    throw ConfigError(cfg.kind + " config: field '" + name + "' must be an integer");
  }
  return cfg.raw[name].get<std::int64_t>();
}

inline double num_field(const ExperimentConfig& cfg, const std::string& name, double fallback) {
  if (!cfg.raw.contains(name)) return fallback;
  if (!cfg.raw[name].is_number()) {
    throw ConfigError(cfg.kind + " config: field '" + name + "' must be a number");
  }
  return cfg.raw[name].get<double>();
}

inline bool bool_field(const ExperimentConfig& cfg, const std::string& name, bool fallback) {
  if (!cfg.raw.contains(name)) return fallback;
  if (!cfg.raw[name].is_boolean()) {
    throw ConfigError(cfg.kind + " config: field '" + name + "' must be true or false");
  }
  return cfg.raw[name].get<bool>();
}

inline void require_seed(const ExperimentConfig& cfg, const std::string& why) {
  if (!cfg.has_seed) {
    throw ConfigError(cfg.kind + " config: " + why + "; set \"seed\"");
  }
}

inline std::string resolve_path(const ExperimentConfig& cfg, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(cfg.base_dir) / p).string();
}

}  // namespace detail

inline ExperimentConfig load_config(const std::string& path) {
  ExperimentConfig cfg;
  cfg.raw = detail::load_json_file(path);
  if (!cfg.raw.is_object()) throw ConfigError(path + ": config must be a JSON object");
  cfg.base_dir = std::filesystem::path(path).parent_path().string();
  if (cfg.base_dir.empty()) cfg.base_dir = ".";
  if (!cfg.raw.contains("kind") || !cfg.raw["kind"].is_string()) {
    throw ConfigError(path + ": missing string field 'kind'");
  }
  cfg.kind = cfg.raw["kind"].get<std::string>();
  bool known = false;
  for (const char* k : detail::kKinds) known = known || cfg.kind == k;
  if (!known) {
    throw ConfigError(path + ": unknown kind '" + cfg.kind +
                      "' (expected verify, laws, spectrum, wiener, or grs)");
  }
  if (cfg.raw.contains("seed")) {
    if (!cfg.raw["seed"].is_number_unsigned()) {
      throw ConfigError(path + ": 'seed' must be a nonnegative integer");
    }
    cfg.seed = cfg.raw["seed"].get<std::uint64_t>();
    cfg.has_seed = true;
  }
  return cfg;
}

/// Weight from a spec string; "table:<file>" loads {"entries": [{"x", "v"}]}
/// resolved against the config directory.
inline Weight weight_from_spec(const ExperimentConfig& cfg, const GroupPtr& G,
                               const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = detail::resolve_path(cfg, spec.substr(6));
    const Json doc = detail::load_json_file(path);
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
      throw ConfigError(path + ": weight table needs an 'entries' array");
    }
    std::map<Elem, double> values;
    const Json& entries = doc["entries"];
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string at = path + ": entries[" + std::to_string(i) + "]";
      if (!entries[i].is_object() || !entries[i].contains("x") || !entries[i].contains("v") ||
          !entries[i]["v"].is_number()) {
        throw ConfigError(at + ": expected {x: element, v: number}");
      }
      values[parse_elem(*G, entries[i]["x"], at + ".x")] = entries[i]["v"].get<double>();
    }
    return Weight::table(std::move(values));
  }
  try {
    return parse_weight(spec);
  } catch (const std::exception& err) {
    throw ConfigError(cfg.kind + " config: " + err.what());
  }
}

namespace detail {

inline Model parse_model(const std::string& s, int& sigma_size) {
  sigma_size = 1;
  if (s == "scalar") return Model::Scalar;
  if (s == "standard") return Model::Standard;
  if (s.rfind("finite:", 0) == 0) {
    sigma_size = std::stoi(s.substr(7));
    if (sigma_size < 1) throw ConfigError("model 'finite:<n>' needs n >= 1");
    return Model::FiniteSpectrum;
  }
  throw ConfigError("unknown model '" + s + "' (expected scalar, finite:<n>, or standard)");
}

inline Coefficient parse_table_coefficient(const TwistedSystem& sys, const Json& j,
                                           const std::string& at) {
  try {
    return parse_coefficient(sys, j, at);
  } catch (const ParseError& err) {
    throw ConfigError(err.what());
  }
}

inline Cocycle cocycle_from_spec(const ExperimentConfig& cfg, const GroupPtr& G, Model model,
                                 int sigma_size, const TwistedSystem& shape, const Json& spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "trivial") return Cocycle::trivial(model, sigma_size);
    if (s.rfind("table:", 0) == 0) {
      const std::string path = resolve_path(cfg, s.substr(6));
      const Json doc = load_json_file(path);
      if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
        throw ConfigError(path + ": cocycle table needs an 'entries' array");
      }
      std::map<std::pair<Elem, Elem>, Coefficient> entries;
      const Json& arr = doc["entries"];
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string at = path + ": entries[" + std::to_string(i) + "]";
        if (!arr[i].is_object() || !arr[i].contains("x") || !arr[i].contains("y") ||
            !arr[i].contains("v")) {
          throw ConfigError(at + ": expected {x, y, v}");
        }
        const Elem x = parse_elem(*G, arr[i]["x"], at + ".x");
        const Elem y = parse_elem(*G, arr[i]["y"], at + ".y");
        entries[{x, y}] = parse_table_coefficient(shape, arr[i]["v"], at + ".v");
      }
      try {
        return make_table_cocycle(G, model, sigma_size, std::move(entries));
      } catch (const std::exception& err) {
        throw ConfigError(path + ": " + err.what());
      }
    }
    throw ConfigError("unknown cocycle spec '" + s + "' (expected trivial, theta, or table:<file>)");
  }
  if (spec.is_object() && spec.contains("theta")) {
    const Json& th = spec["theta"];
    if (!th.is_array()) throw ConfigError("cocycle theta must be a square matrix");
    std::vector<std::vector<double>> theta;
    for (const auto& row : th) {
      if (!row.is_array()) throw ConfigError("cocycle theta must be a square matrix");
      std::vector<double> r;
      for (const auto& v : row) {
        if (!v.is_number()) throw ConfigError("cocycle theta entries must be numbers");
        r.push_back(v.get<double>());
      }
      theta.push_back(std::move(r));
    }
    try {
      return make_theta_cocycle(G, theta, model, sigma_size);
    } catch (const std::exception& err) {
      throw ConfigError(cfg.kind + " config: " + err.what());
    }
  }
  throw ConfigError("cocycle spec must be 'trivial', 'table:<file>', or {\"theta\": [[...]]}");
}

}  // namespace detail

/**
 * System from the config's "system" field: a builtin name, or an object
 * {group, model, action, cocycle}.  Objects cover the trivial and
 * translation actions; point actions carry their permutation tables and
 * are reachable through builtins only.
 */
inline TwistedSystem system_from_config(const ExperimentConfig& cfg) {
  const Json& spec = detail::field(cfg, "system");
  if (spec.is_string()) {
    const std::string name = spec.get<std::string>();
    try {
      return make_builtin(name);
    } catch (const std::exception&) {
      std::string names;
      for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
      throw ConfigError(cfg.kind + " config: unknown builtin system '" + name +
                        "' (have: " + names + ")");
    }
  }
  if (!spec.is_object()) {
    throw ConfigError(cfg.kind + " config: 'system' must be a builtin name or an object");
  }
  if (!spec.contains("group") || !spec["group"].is_string()) {
    throw ConfigError(cfg.kind + " config: system object needs a 'group' spec string");
  }
  GroupPtr G;
  try {
    G = parse_group(spec["group"].get<std::string>());
  } catch (const std::exception& err) {
    throw ConfigError(cfg.kind + " config: " + err.what());
  }
  int sigma_size = 1;
  Model model = Model::Scalar;
  if (spec.contains("model")) {
    if (!spec["model"].is_string()) throw ConfigError("system 'model' must be a string");
    model = detail::parse_model(spec["model"].get<std::string>(), sigma_size);
  }
  Action action = Action::trivial();
  if (spec.contains("action")) {
    const std::string a =
        spec["action"].is_string() ? spec["action"].get<std::string>() : std::string();
    if (a == "trivial") {
      action = Action::trivial();
    } else if (a == "translation") {
      if (model != Model::Standard) {
        throw ConfigError("the translation action needs the standard model");
      }
      action = Action::translation(G);
    } else {
      throw ConfigError("unknown action '" + a +
                        "' (expected trivial or translation; point actions come from builtins)");
    }
  }
  // Shape carrier for parsing any table coefficients before the real
  // system exists.
  TwistedSystem shape;
  shape.G = G;
  shape.model = model;
  shape.sigma_size = sigma_size;
  Cocycle cocycle = Cocycle::trivial(model, sigma_size);
  if (spec.contains("cocycle")) {
    cocycle = detail::cocycle_from_spec(cfg, G, model, sigma_size, shape, spec["cocycle"]);
  }
  std::string name = "custom:" + spec["group"].get<std::string>();
  if (spec.contains("name") && spec["name"].is_string()) name = spec["name"].get<std::string>();
  try {
    return make_system(G, model, sigma_size, action, cocycle, name);
  } catch (const std::exception& err) {
    throw ConfigError(cfg.kind + " config: " + err.what());
  }
}

/// Norm from the config's "norm" field: "l1", or {"kind": "l1-weighted" |
/// "linf-weighted", "weight": <spec>, "subconv_radius": N}.  Defaults to l1.
inline NormSpec norm_from_config(const ExperimentConfig& cfg, const GroupPtr& G) {
  NormSpec norm;
  if (!cfg.raw.contains("norm")) return norm;
  const Json& spec = cfg.raw["norm"];
  std::string kind;
  std::string weight_spec = "one";
  std::int64_t subconv_radius = 6;
  if (spec.is_string()) {
    kind = spec.get<std::string>();
  } else if (spec.is_object() && spec.contains("kind") && spec["kind"].is_string()) {
    kind = spec["kind"].get<std::string>();
    if (spec.contains("weight")) {
      if (!spec["weight"].is_string()) throw ConfigError("norm 'weight' must be a spec string");
      weight_spec = spec["weight"].get<std::string>();
    }
    if (spec.contains("subconv_radius")) {
      if (!spec["subconv_radius"].is_number_integer()) {
        throw ConfigError("norm 'subconv_radius' must be an integer");
      }
      subconv_radius = spec["subconv_radius"].get<std::int64_t>();
    }
  } else {
    throw ConfigError(cfg.kind + " config: 'norm' must be a string or {kind, weight}");
  }
  if (kind == "l1") return norm;
  if (kind == "l1-weighted") {
    norm.kind = NormSpec::Kind::L1Weighted;
    norm.weight = weight_from_spec(cfg, G, weight_spec);
    return norm;
  }
  if (kind == "linf-weighted") {
    norm.kind = NormSpec::Kind::LInfWeighted;
    norm.weight = weight_from_spec(cfg, G, weight_spec);
    norm.subconv_radius = subconv_radius;
    norm.subconv_constant = subconvolutivity_constant(*G, norm.weight, subconv_radius);
    return norm;
  }
  throw ConfigError("unknown norm '" + kind + "' (expected l1, l1-weighted, or linf-weighted)");
}

/// Element from a config field: {"terms": [...]} literal, or
/// {"random": {"support": N, "radius": R}} drawn from the config seed.
inline CrossedElement element_from_config(const ExperimentConfig& cfg, const TwistedSystem& sys,
                                          const std::string& name) {
  const Json& spec = detail::field(cfg, name);
  if (spec.is_object() && spec.contains("terms")) {
    try {
      return parse_crossed(sys, spec, cfg.kind + " config: " + name);
    } catch (const ParseError& err) {
      throw ConfigError(err.what());
    }
  }
  if (spec.is_object() && spec.contains("random")) {
    detail::require_seed(cfg, "'" + name + "' is drawn at random");
    const Json& r = spec["random"];
    if (!r.is_object()) throw ConfigError("'" + name + ".random' must be an object");
    std::int64_t support = 3;
    std::int64_t radius = 3;
    if (r.contains("support")) support = r["support"].get<std::int64_t>();
    if (r.contains("radius")) radius = r["radius"].get<std::int64_t>();
    if (support < 1) throw ConfigError("'" + name + ".random.support' must be >= 1");
    Rng rng(cfg.seed);
    const auto pool = sample_pool(*sys.G, radius);
    CrossedElement f;
    for (std::int64_t i = 0; i < support; ++i) {
      crossed_add_term(f, pick(rng, pool), detail::laws_coeff(sys, rng, pool));
    }
    return f;
  }
  throw ConfigError(cfg.kind + " config: '" + name +
                    "' must be {terms: [...]} or {random: {support, radius}}");
}

/// Builtin systems and the spec grammars the config layer accepts.
inline Json catalog_json() {
  Json builtins = Json::array();
  for (const auto& name : builtin_names()) {
    const TwistedSystem sys = make_builtin(name);
    std::string model;
    switch (sys.model) {
      case Model::Scalar: model = "scalar"; break;
      case Model::FiniteSpectrum: model = "finite:" + std::to_string(sys.sigma_size); break;
      case Model::Standard: model = "standard"; break;
    }
    std::string action;
    switch (sys.action.kind()) {
      case Action::Kind::Trivial: action = "trivial"; break;
      case Action::Kind::Point: action = "point"; break;
      case Action::Kind::Translation: action = "translation"; break;
    }
    std::string cocycle;
    switch (sys.cocycle.kind()) {
      case Cocycle::Kind::Trivial: cocycle = "trivial"; break;
      case Cocycle::Kind::Theta: cocycle = "theta"; break;
      case Cocycle::Kind::Table: cocycle = "table"; break;
      case Cocycle::Kind::SigmaDependent: cocycle = "sigma-dependent"; break;
    }
    builtins.push_back(Json{{"name", name},
                            {"group", sys.G->spec()},
                            {"model", model},
                            {"action", action},
                            {"cocycle", cocycle}});
  }
  Json grammars = Json{
      {"group", "atom { 'x' atom }; atom = 'Z^'<n> | 'C'<n> | 'D'<n> | 'Heis'<n>"},
      {"cocycle", Json::array({"trivial", "{\"theta\": [[...]]} (skew matrix, Z^n only)",
                               "table:<file>"})},
      {"weight", Json::array({"one", "poly:s=<s>", "exp:c=<c>", "table:<file>"})},
      {"norm", Json::array({"l1", "l1-weighted", "linf-weighted"})},
      {"experiments", Json::array({"verify", "laws", "spectrum", "wiener", "grs"})},
  };
  return Json{{"builtins", builtins}, {"grammars", grammars}};
}

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> files;  // written into the output directory
  std::string summary;
};

namespace detail {

inline void emit(RunResult& res, const std::string& out_dir, const std::string& name,
                 const std::string& body) {
  write_text((std::filesystem::path(out_dir) / name).string(), body);
  res.files.push_back(name);
}

inline RunResult run_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
  const TwistedSystem sys = system_from_config(cfg);
  if (!sys.G->finite()) require_seed(cfg, "axiom checks sample an infinite group");
  VerifyOptions opts;
  opts.trials = static_cast<int>(int_field(cfg, "trials", opts.trials));
  opts.radius = static_cast<int>(int_field(cfg, "radius", opts.radius));
  opts.seed = cfg.seed;
  const SystemReport rep = verify_axioms(sys, opts);
  Json doc = Json{{"config", cfg.raw}, {"report", json_of(rep)}};
  RunResult res;
  emit(res, out_dir, "verify_report.json", json_text(doc));
  res.exit_code = rep.pass ? 0 : 1;
  res.summary = "verify " + rep.system_name + ": " + (rep.pass ? "pass" : "FAIL");
  if (!rep.pass) {
    for (const auto& c : rep.checks) {
      if (!c.pass) {
        res.summary += " [" + c.name + " residual " + g17(c.max_violation) + "]";
        break;
      }
    }
  }
  return res;
}

inline RunResult run_laws(const ExperimentConfig& cfg, const std::string& out_dir) {
  const TwistedSystem sys = system_from_config(cfg);
  require_seed(cfg, "law sweeps draw random elements");
  const bool exhaustive = bool_field(cfg, "exhaustive", false);
  LawsReport crossed;
  LawsReport kernel;
  if (exhaustive) {
    const int max_support = static_cast<int>(int_field(cfg, "max_support", 3));
    crossed = check_crossed_laws_exhaustive(sys, max_support, cfg.seed);
    kernel = check_kernel_laws_exhaustive(sys, max_support, cfg.seed);
  } else {
    const int triples = static_cast<int>(int_field(cfg, "triples", 200));
    const auto radius = int_field(cfg, "radius", 2);
    const int support = static_cast<int>(int_field(cfg, "support", 3));
    const int bands = static_cast<int>(int_field(cfg, "bands", 2));
    const int window_points = static_cast<int>(int_field(cfg, "window_points", 1));
    crossed = check_crossed_laws(sys, triples, cfg.seed, radius, support);
    kernel = check_kernel_laws(sys, triples, cfg.seed, radius, bands, window_points);
  }
  const bool pass = crossed.pass && kernel.pass;
  Json doc = Json{{"config", cfg.raw},
                  {"pass", pass},
                  {"convolution", json_of(crossed)},
                  {"kernel", json_of(kernel)}};
  RunResult res;
  emit(res, out_dir, "laws_report.json", json_text(doc));
  res.exit_code = pass ? 0 : 1;
  res.summary = "laws " + sys.name + ": " + (pass ? "pass" : "FAIL");
  if (!pass) {
    for (const auto* rep : {&crossed, &kernel}) {
      for (const auto& c : rep->checks) {
        if (!c.pass) {
          res.summary += " [" + c.name + " residual " + g17(c.max_violation) + "]";
          break;
        }
      }
      if (res.summary.back() == ']') break;
    }
  }
  return res;
}

inline RunResult run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir) {
  const TwistedSystem sys = system_from_config(cfg);
  const CrossedElement f = element_from_config(cfg, sys, "element");
  if (f.terms.empty()) throw ConfigError("spectrum config: empty element");
  const NormSpec norm = norm_from_config(cfg, sys.G);
  const unsigned levels = static_cast<unsigned>(int_field(cfg, "levels", 6));
  const bool probe = bool_field(cfg, "probe", true);
  const SpectralReport rep = probe
                                 ? symmetry_probe(sys, f, norm, levels,
                                                  num_field(cfg, "slack", 0.15))
                                 : spectral_radius_estimate(sys, f, norm, levels);
  Json doc = Json{{"config", cfg.raw}, {"probe", probe}, {"report", json_of(rep)}};
  RunResult res;
  emit(res, out_dir, "spectrum_report.json", json_text(doc));
  emit(res, out_dir, "spectrum_ladder.csv", spectral_csv(rep));
  const bool pass = !probe || rep.symmetric;
  res.exit_code = pass ? 0 : 1;
  res.summary = "spectrum " + sys.name + ": lambda " + g17(rep.lambda);
  if (probe) {
    res.summary += rep.symmetric ? ", probe pass" : ", probe FAIL (shifted " + g17(rep.shifted) + ")";
  }
  if (rep.budget_exceeded) res.summary += " (ladder truncated by budget)";
  return res;
}

inline RunResult run_wiener(const ExperimentConfig& cfg, const std::string& out_dir) {
  const TwistedSystem sys = system_from_config(cfg);
  const CrossedElement f = element_from_config(cfg, sys, "element");
  if (f.terms.empty()) throw ConfigError("wiener config: empty element");
  const std::int64_t R = int_field(cfg, "radius", 16);
  if (R < 0) throw ConfigError("wiener config: 'radius' must be >= 0");
  const double margin = num_field(cfg, "margin", 1e-8);
  const DecayProfile prof = wiener_decay(sys, f, R, margin);
  Json doc = Json{{"config", cfg.raw}, {"report", json_of(prof)}};
  RunResult res;
  emit(res, out_dir, "wiener_report.json", json_text(doc));
  emit(res, out_dir, "wiener_profile.csv", decay_csv(prof));
  res.exit_code = prof.invertible ? 0 : 1;
  res.summary = "wiener " + sys.name + ": " +
                (prof.invertible ? "invertible, min singular value " + g17(prof.min_singular)
                                 : "FAIL (window matrix not safely invertible)");
  return res;
}

inline RunResult run_grs(const ExperimentConfig& cfg, const std::string& out_dir) {
  const Json& gspec = field(cfg, "group");
  if (!gspec.is_string()) throw ConfigError("grs config: 'group' must be a spec string");
  GroupPtr G;
  try {
    G = parse_group(gspec.get<std::string>());
  } catch (const std::exception& err) {
    throw ConfigError(std::string("grs config: ") + err.what());
  }
  const Json& wspec = field(cfg, "weight");
  if (!wspec.is_string()) throw ConfigError("grs config: 'weight' must be a spec string");
  const Weight nu = weight_from_spec(cfg, G, wspec.get<std::string>());
  GrsParams params;
  params.n_max = static_cast<int>(int_field(cfg, "n_max", params.n_max));
  params.threshold = num_field(cfg, "threshold", params.threshold);
  params.tail_window = static_cast<int>(int_field(cfg, "tail_window", params.tail_window));
  if (params.n_max < 1) throw ConfigError("grs config: 'n_max' must be >= 1");
  const GrsReport rep = grs_verdict(*G, nu, params);
  Json doc = Json{{"config", cfg.raw}, {"report", json_of(rep)}};
  RunResult res;
  emit(res, out_dir, "grs_report.json", json_text(doc));
  emit(res, out_dir, "grs_evidence.csv", grs_csv(rep));
  res.exit_code = rep.pass ? 0 : 1;
  res.summary = "grs " + gspec.get<std::string>() + " " + wspec.get<std::string>() + ": " +
                (rep.pass ? "pass" : "FAIL") + " (growth " + g17(rep.growth.final_value) +
                ", shell " + g17(rep.shell.max_ratio) + ")";
  return res;
}

}  // namespace detail

inline RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir + ": " + ec.message());
  if (cfg.kind == "verify") return detail::run_verify(cfg, out_dir);
  if (cfg.kind == "laws") return detail::run_laws(cfg, out_dir);
  if (cfg.kind == "spectrum") return detail::run_spectrum(cfg, out_dir);
  if (cfg.kind == "wiener") return detail::run_wiener(cfg, out_dir);
  if (cfg.kind == "grs") return detail::run_grs(cfg, out_dir);
  throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
}

}  // namespace tca
