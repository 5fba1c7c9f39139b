#pragma once

/**
 * JSON and CSV forms of the library's values and reports.
 *
 * JSON objects keep their keys sorted and numbers in shortest round-trip
 * form, so a report serialized twice from the same data is byte
 * identical; the parsers reverse the literal forms exactly.  CSV numbers
 * are printed with seventeen significant digits for the same reason.
 *
 * Literal grammars (documented column by column in docs/formats.md):
 *   complex      [re, im]
 *   coefficient  {"scalar": cplx} | {"finite": [cplx...]}
 *                | {"standard": {"background": cplx,
 *                                "correction": [{"y": elem, "v": cplx}...]}}
 *   element      {"terms": [{"x": elem, "value": coefficient}...]}
 *   kernel       {"diagonals": [{"band": elem, "tail": coefficient,
 *                                "window": [{"z": elem, "v": coefficient}...]}...]}
 */

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "tca/laws.hpp"
#include "tca/spectral.hpp"

namespace tca {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline Json json_of(Cplx v) { return Json::array({v.real(), v.imag()}); }

inline Json json_of(const Coefficient& c) {
  switch (c.model()) {
    case Model::Scalar: return Json{{"scalar", json_of(c.scalar_value())}};
    case Model::FiniteSpectrum: {
      Json vals = Json::array();
      for (const Cplx& v : c.values()) vals.push_back(json_of(v));
      return Json{{"finite", vals}};
    }
    case Model::Standard: {
      Json corr = Json::array();
      for (const auto& [y, v] : c.correction()) {
        corr.push_back(Json{{"y", y}, {"v", json_of(v)}});
      }
      return Json{{"standard", Json{{"background", json_of(c.background())},
                                    {"correction", corr}}}};
    }
  }
  return Json();
}

inline Json json_of(const CrossedElement& f) {
  Json terms = Json::array();
  for (const auto& [x, c] : f.terms) terms.push_back(Json{{"x", x}, {"value", json_of(c)}});
  return Json{{"terms", terms}};
}

inline Json json_of(const KernelElement& K) {
  Json diags = Json::array();
  for (const auto& [a, d] : K.diags) {
    Json window = Json::array();
    for (const auto& [z, v] : d.window) window.push_back(Json{{"z", z}, {"v", json_of(v)}});
    diags.push_back(Json{{"band", a}, {"tail", json_of(d.tail)}, {"window", window}});
  }
  return Json{{"diagonals", diags}};
}

inline Json json_of(const AxiomCheck& c) {
  Json witness = Json::array();
  for (const Elem& x : c.witness) witness.push_back(x);
  return Json{{"name", c.name},
              {"pass", c.pass},
              {"max_violation", c.max_violation},
              {"witness", witness}};
}

inline Json json_of(const SystemReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(json_of(c));
  return Json{{"system", rep.system_name}, {"pass", rep.pass}, {"checks", checks}};
}

inline Json json_of(const LawsReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(json_of(c));
  return Json{{"system", rep.system_name},
              {"pass", rep.pass},
              {"trials", rep.trials},
              {"seed", rep.seed},
              {"checks", checks}};
}

inline Json json_of(const SpectralReport& rep) {
  return Json{{"norms", rep.norms},
              {"rho", rep.rho},
              {"lambda", rep.lambda},
              {"shifted_norms", rep.shifted_norms},
              {"shifted_rho", rep.shifted_rho},
              {"shifted", rep.shifted},
              {"slack", rep.slack},
              {"margin", rep.margin},
              {"symmetric", rep.symmetric},
              {"levels", rep.levels},
              {"budget_exceeded", rep.budget_exceeded}};
}

inline Json json_of(const DecayProfile& prof) {
  return Json{{"radius", prof.R},
              {"min_singular", prof.min_singular},
              {"invertible", prof.invertible},
              {"max_abs", prof.max_abs},
              {"tail_sum", prof.tail_sum},
              {"stability_delta", prof.stability_delta},
              {"stability_radius", prof.stability_radius}};
}

inline Json json_of(const GrsReport& rep) {
  return Json{{"growth", rep.growth.a},
              {"growth_final", rep.growth.final_value},
              {"growth_tail_nonincreasing", rep.growth.nonincreasing_tail},
              {"shell_ratio", rep.shell.ratio},
              {"shell_ratio_max", rep.shell.max_ratio},
              {"n_max", rep.params.n_max},
              {"threshold", rep.params.threshold},
              {"tail_window", rep.params.tail_window},
              {"condition1", rep.condition1},
              {"condition2", rep.condition2},
              {"pass", rep.pass}};
}

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

inline Cplx parse_cplx(const Json& j, const std::string& at) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(at, "expected [re, im]");
  }
  return Cplx(j[0].get<double>(), j[1].get<double>());
}

inline Elem parse_elem(const GroupCtx& G, const Json& j, const std::string& at) {
  if (!j.is_array()) throw ParseError(at, "expected an element as an integer array");
  Elem x;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(at, "element coordinates must be integers");
    x.push_back(v.get<std::int64_t>());
  }
  try {
    G.validate(x);
  } catch (const std::exception& err) {
    throw ParseError(at, err.what());
  }
  return x;
}

inline Coefficient parse_coefficient(const TwistedSystem& sys, const Json& j,
                                     const std::string& at) {
  if (!j.is_object()) throw ParseError(at, "expected a coefficient object");
  if (j.contains("scalar")) {
    if (sys.model != Model::Scalar) throw ParseError(at, "scalar literal on a non-scalar system");
    return Coefficient::scalar(parse_cplx(j["scalar"], at + ".scalar"));
  }
  if (j.contains("finite")) {
    if (sys.model != Model::FiniteSpectrum) {
      throw ParseError(at, "finite literal on a non-finite-spectrum system");
    }
    const Json& vals = j["finite"];
    if (!vals.is_array() || static_cast<int>(vals.size()) != sys.sigma_size) {
      throw ParseError(at + ".finite",
                       "expected " + std::to_string(sys.sigma_size) + " spectrum values");
    }
    std::vector<Cplx> out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out.push_back(parse_cplx(vals[i], at + ".finite[" + std::to_string(i) + "]"));
    }
    return Coefficient::finite(std::move(out));
  }
  if (j.contains("standard")) {
    if (sys.model != Model::Standard) {
      throw ParseError(at, "standard literal on a non-standard system");
    }
    const Json& s = j["standard"];
    if (!s.is_object() || !s.contains("background")) {
      throw ParseError(at + ".standard", "expected background and correction");
    }
    ScalarFn corr;
    if (s.contains("correction")) {
      const Json& c = s["correction"];
      if (!c.is_array()) throw ParseError(at + ".standard.correction", "expected an array");
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string here = at + ".standard.correction[" + std::to_string(i) + "]";
        if (!c[i].is_object() || !c[i].contains("y") || !c[i].contains("v")) {
          throw ParseError(here, "expected {y, v}");
        }
        corr[parse_elem(*sys.G, c[i]["y"], here + ".y")] = parse_cplx(c[i]["v"], here + ".v");
      }
    }
    return Coefficient::standard(parse_cplx(s["background"], at + ".standard.background"),
                                 std::move(corr));
  }
  throw ParseError(at, "coefficient needs one of: scalar, finite, standard");
}

inline CrossedElement parse_crossed(const TwistedSystem& sys, const Json& j,
                                    const std::string& at) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw ParseError(at, "expected {terms: [...]}");
  }
  CrossedElement f;
  const Json& terms = j["terms"];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string here = at + ".terms[" + std::to_string(i) + "]";
    if (!terms[i].is_object() || !terms[i].contains("x") || !terms[i].contains("value")) {
      throw ParseError(here, "expected {x, value}");
    }
    const Elem x = parse_elem(*sys.G, terms[i]["x"], here + ".x");
    crossed_add_term(f, x, parse_coefficient(sys, terms[i]["value"], here + ".value"));
  }
  return f;
}

inline KernelElement parse_kernel(const TwistedSystem& sys, const Json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("diagonals") || !j["diagonals"].is_array()) {
    throw ParseError(at, "expected {diagonals: [...]}");
  }
  KernelElement K;
  const Json& diags = j["diagonals"];
  for (std::size_t i = 0; i < diags.size(); ++i) {
    const std::string here = at + ".diagonals[" + std::to_string(i) + "]";
    if (!diags[i].is_object() || !diags[i].contains("band") || !diags[i].contains("tail")) {
      throw ParseError(here, "expected {band, tail, window}");
    }
    Diagonal d;
    d.tail = parse_coefficient(sys, diags[i]["tail"], here + ".tail");
    if (diags[i].contains("window")) {
      const Json& win = diags[i]["window"];
      if (!win.is_array()) throw ParseError(here + ".window", "expected an array");
      for (std::size_t w = 0; w < win.size(); ++w) {
        const std::string wat = here + ".window[" + std::to_string(w) + "]";
        if (!win[w].is_object() || !win[w].contains("z") || !win[w].contains("v")) {
          throw ParseError(wat, "expected {z, v}");
        }
        const Elem z = parse_elem(*sys.G, win[w]["z"], wat + ".z");
        d.window[z] = parse_coefficient(sys, win[w]["v"], wat + ".v");
      }
    }
    K.diags[parse_elem(*sys.G, diags[i]["band"], here + ".band")] = std::move(d);
  }
  return K;
}

/// Ladder CSV: one row per level; the shifted columns are empty when the
/// report is a plain radius estimate or its ladder stopped earlier.
inline std::string spectral_csv(const SpectralReport& rep) {
  std::string out = "level,norm,rho,shifted_norm,shifted_rho\n";
  const std::size_t rows = std::max(rep.rho.size(), rep.shifted_rho.size());
  for (std::size_t j = 0; j < rows; ++j) {
    out += std::to_string(j);
    out += ",";
    if (j < rep.norms.size()) out += detail::g17(rep.norms[j]);
    out += ",";
    if (j < rep.rho.size()) out += detail::g17(rep.rho[j]);
    out += ",";
    if (j < rep.shifted_norms.size()) out += detail::g17(rep.shifted_norms[j]);
    out += ",";
    if (j < rep.shifted_rho.size()) out += detail::g17(rep.shifted_rho[j]);
    out += "\n";
  }
  return out;
}

/// Decay CSV: one row per word distance; the stability column is empty
/// beyond the stability radius.
inline std::string decay_csv(const DecayProfile& prof) {
  std::string out = "distance,max_abs,tail_sum,stability_delta\n";
  for (std::size_t d = 0; d < prof.max_abs.size(); ++d) {
    out += std::to_string(d);
    out += ",";
    out += detail::g17(prof.max_abs[d]);
    out += ",";
    out += detail::g17(prof.tail_sum[d]);
    out += ",";
    if (d < prof.stability_delta.size()) out += detail::g17(prof.stability_delta[d]);
    out += "\n";
  }
  return out;
}

/// Growth CSV: one row per n; the growth column starts at n = 1.
inline std::string grs_csv(const GrsReport& rep) {
  std::string out = "n,growth,shell_ratio\n";
  for (std::size_t n = 0; n < rep.shell.ratio.size(); ++n) {
    out += std::to_string(n);
    out += ",";
    if (n >= 1 && n - 1 < rep.growth.a.size()) out += detail::g17(rep.growth.a[n - 1]);
    out += ",";
    out += detail::g17(rep.shell.ratio[n]);
    out += "\n";
  }
  return out;
}

inline void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tca
