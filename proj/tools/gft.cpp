// Command-line front end: closed-form coefficient bounds, series inversion,
// the Cesaro mean, membership verification, and the consistency search.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gft/bounds.hpp"
#include "gft/cesaro.hpp"
#include "gft/class_spec.hpp"
#include "gft/construct.hpp"
#include "gft/report_io.hpp"
#include "gft/search.hpp"
#include "gft/series.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStrict = 2;
constexpr int kExitIo = 3;

struct IoError {
  std::string message;
};

struct RunConfig {
  std::string command;
  std::string config_path;
  std::string format = "pretty";
  std::string out;
  int order = gft::kDefaultOrder;
  std::uint64_t seed = 0;
  bool strict = false;
  bool classical = false;
  bool identity = false;

  std::string klass;
  std::string k_range;
  std::string op_alpha_range = "1";
  std::string B1_range;
  std::string B2_range;
  std::string alpha_range;
  std::string lambda_range;
  std::string beta_range;

  int grid_density = 32;
  int restarts = 16;
  int refine_steps = 12;
  double tolerance = 1e-9;
  std::string objective = "both";

  std::string p1, p2, b1, b2;
  double radius = 0.999;
  int samples = 4096;

  std::vector<std::string> coeff_args;
  std::string coeff_list;
  std::string in_path;
};

// One command-line option mirrored by a config-file key. File values apply
// only when the flag was not given on the command line.
struct ConfigBinding {
  std::string key;
  CLI::Option* opt;
  std::function<void(const nlohmann::json&)> apply;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": bad number '" + text + "'");
  }
}

// "v" or "start:stop:step" with step > 0; empty input gives an empty range.
std::vector<double> parse_range(const std::string& text, const std::string& what) {
  if (text.empty()) return {};
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_double(parts[0], what)};
  if (parts.size() != 3)
    throw std::invalid_argument(what + ": expected 'value' or 'start:stop:step'");
  const double start = parse_double(parts[0], what);
  const double stop = parse_double(parts[1], what);
  const double step = parse_double(parts[2], what);
  if (!(step > 0.0)) throw std::invalid_argument(what + ": step must be > 0");
  std::vector<double> values;
  const double span = (stop - start) / step;
  const long long count = span < 0.0 ? 0 : static_cast<long long>(span + 1e-9) + 1;
  for (long long i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  return values;
}

std::vector<int> parse_int_range(const std::string& text, const std::string& what) {
  std::vector<int> values;
  for (double v : parse_range(text, what)) {
    const int n = static_cast<int>(std::llround(v));
    if (std::abs(v - static_cast<double>(n)) > 1e-9)
      throw std::invalid_argument(what + ": expected integers");
    values.push_back(n);
  }
  return values;
}

double parse_single(const std::string& text, const std::string& what) {
  const auto values = parse_range(text, what);
  if (values.size() != 1)
    throw std::invalid_argument(what + ": expected a single value");
  return values[0];
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError{"cannot open '" + path + "' for reading"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError{"failed reading '" + path + "'"};
  return buf.str();
}

int emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << cfg.out << "' for writing\n";
    return kExitIo;
  }
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing '" << cfg.out << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

gft::CesaroFlavor flavor_of(const RunConfig& cfg) {
  return cfg.classical ? gft::CesaroFlavor::Classical : gft::CesaroFlavor::Normalized;
}

// Cartesian expansion of the class/operator ranges, operator loops outermost.
// A required flag that was never given is a usage error; a flag whose range
// parses to nothing (start past stop) just yields an empty grid.
std::vector<gft::ClassSpec> build_specs(const RunConfig& cfg) {
  std::vector<std::pair<std::optional<gft::CesaroParams>, bool>> operators;
  const auto ks = parse_int_range(cfg.k_range, "--k");
  if (cfg.k_range.empty()) {
    // No index given: the operator defaults to the identity.
    operators.emplace_back(std::nullopt, cfg.identity);
  } else if (cfg.identity) {
    for (int k : ks)
      operators.emplace_back(gft::CesaroParams{k, parse_single(cfg.op_alpha_range, "--op-alpha")},
                             true);
  } else {
    const auto alphas = parse_range(cfg.op_alpha_range, "--op-alpha");
    for (int k : ks)
      for (double a : alphas) operators.emplace_back(gft::CesaroParams{k, a}, false);
  }

  std::vector<std::variant<gft::PsiCoefficients, gft::QParams, gft::HBetaParams>> families;
  if (cfg.klass == "psi") {
    if (cfg.B1_range.empty() || cfg.B2_range.empty())
      throw std::invalid_argument("psi class requires --B1 and --B2");
    for (double b1 : parse_range(cfg.B1_range, "--B1"))
      for (double b2 : parse_range(cfg.B2_range, "--B2"))
        families.emplace_back(gft::PsiCoefficients{b1, b2});
  } else if (cfg.klass == "strong") {
    if (cfg.alpha_range.empty() || cfg.lambda_range.empty())
      throw std::invalid_argument("strong class requires --alpha and --lambda");
    for (double a : parse_range(cfg.alpha_range, "--alpha"))
      for (double l : parse_range(cfg.lambda_range, "--lambda"))
        families.emplace_back(gft::QParams{a, l});
  } else if (cfg.klass == "realpart") {
    if (cfg.beta_range.empty() || cfg.lambda_range.empty())
      throw std::invalid_argument("realpart class requires --beta and --lambda");
    for (double b : parse_range(cfg.beta_range, "--beta"))
      for (double l : parse_range(cfg.lambda_range, "--lambda"))
        families.emplace_back(gft::HBetaParams{b, l});
  } else {
    throw std::invalid_argument("--class must be psi, strong, or realpart");
  }

  std::vector<gft::ClassSpec> specs;
  for (const auto& [op, unit] : operators)
    for (const auto& fam : families)
      specs.push_back(gft::ClassSpec{fam, op, unit, flavor_of(cfg)});
  return specs;
}

std::vector<gft::Complex> parse_tail(const RunConfig& cfg) {
  std::vector<std::string> tokens;
  if (!cfg.in_path.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(cfg.in_path));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad input file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("coeffs") || !doc["coeffs"].is_array())
      throw std::invalid_argument("input file must be an object with a 'coeffs' array");
    for (const auto& item : doc["coeffs"]) {
      if (item.is_string())
        tokens.push_back(item.get<std::string>());
      else if (item.is_number())
        tokens.push_back(gft::format_double(item.get<double>()));
      else
        throw std::invalid_argument("'coeffs' entries must be strings or numbers");
    }
  } else if (!cfg.coeff_list.empty()) {
    tokens = split(cfg.coeff_list, ',');
  } else {
    tokens = cfg.coeff_args;
  }
  std::vector<gft::Complex> tail;
  for (const std::string& t : tokens) tail.push_back(gft::parse_complex(t));
  return tail;
}

// --- bounds ---------------------------------------------------------------

struct BoundsRow {
  gft::ClassSpec spec;
  gft::FormulaId formula;
  std::optional<gft::BoundResult> result;
  std::string undefined_reason;
};

std::vector<BoundsRow> compute_bounds(const std::vector<gft::ClassSpec>& specs) {
  std::vector<BoundsRow> rows;
  for (const gft::ClassSpec& spec : specs) {
    for (int which = 0; which < 2; ++which) {
      BoundsRow row{spec,
                    gft::detail::formula_for(spec, which == 0 ? gft::Objective::A2
                                                              : gft::Objective::A3),
                    std::nullopt,
                    ""};
      try {
        row.result = which == 0 ? spec.bound_a2() : spec.bound_a3();
      } catch (const gft::undefined_formula& e) {
        row.undefined_reason = e.reason();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bounds_json(const RunConfig& cfg, const std::vector<BoundsRow>& rows) {
  gft::JsonWriter w;
  w.begin_object();
  w.key("tool_version").value(gft::kToolVersion);
  w.key("config").begin_object();
  w.key("command").value("bounds");
  w.key("class").value(cfg.klass);
  w.key("k").value(cfg.k_range);
  w.key("op_alpha").value(cfg.op_alpha_range);
  w.key("B1").value(cfg.B1_range);
  w.key("B2").value(cfg.B2_range);
  w.key("alpha").value(cfg.alpha_range);
  w.key("lambda").value(cfg.lambda_range);
  w.key("beta").value(cfg.beta_range);
  w.key("identity_operator").value(cfg.identity);
  w.key("classical_cesaro").value(cfg.classical);
  w.end_object();
  w.key("rows").begin_array();
  for (const BoundsRow& row : rows) {
    w.begin_object();
    gft::append_spec_json(w, row.spec);
    w.key("formula").value(gft::to_string(row.formula));
    if (row.result.has_value()) {
      w.key("prefactor").value(row.result->prefactor);
      w.key("core").value(row.result->core);
      w.key("value").value(row.result->value);
    } else {
      w.key("prefactor").null();
      w.key("core").null();
      w.key("value").null();
    }
    w.key("undefined_reason").value(row.undefined_reason);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::string out =
      "class,k,op_alpha,flavor,unit_weights,B1,B2,alpha,lambda,beta,"
      "formula,prefactor,core,value,undefined_reason\n";
  for (const BoundsRow& row : rows) {
    gft::detail::append_spec_csv(out, row.spec);
    out += ',';
    out += gft::to_string(row.formula);
    out += ',';
    if (row.result.has_value()) {
      out += gft::format_double(row.result->prefactor);
      out += ',';
      out += gft::format_double(row.result->core);
      out += ',';
      out += gft::format_double(row.result->value);
    } else {
      out += ",,";
    }
    out += ',';
    out += gft::csv_escape(row.undefined_reason);
    out += '\n';
  }
  return out;
}

std::string describe_spec(const gft::ClassSpec& spec) {
  std::string s = spec.family_name();
  if (spec.cesaro.has_value()) {
    s += " k=" + std::to_string(spec.cesaro->k);
    s += " op_alpha=" + gft::format_double(spec.cesaro->alpha);
  }
  if (spec.identity_operator()) s += " [unit weights]";
  if (spec.flavor == gft::CesaroFlavor::Classical) s += " [classical]";
  switch (spec.family_tag()) {
    case gft::ClassFamily::Psi: {
      const auto& psi = std::get<gft::PsiCoefficients>(spec.family);
      s += " B1=" + gft::format_double(psi.B1) + " B2=" + gft::format_double(psi.B2);
      break;
    }
    case gft::ClassFamily::Strong: {
      const auto& q = std::get<gft::QParams>(spec.family);
      s += " alpha=" + gft::format_double(q.alpha) + " lambda=" + gft::format_double(q.lambda);
      break;
    }
    case gft::ClassFamily::RealPart: {
      const auto& h = std::get<gft::HBetaParams>(spec.family);
      s += " beta=" + gft::format_double(h.beta) + " lambda=" + gft::format_double(h.lambda);
      break;
    }
  }
  return s;
}

std::string bounds_pretty(const std::vector<BoundsRow>& rows) {
  std::string out;
  for (const BoundsRow& row : rows) {
    out += describe_spec(row.spec);
    out += "  ";
    out += gft::to_string(row.formula);
    if (row.result.has_value()) {
      out += "  prefactor=" + gft::format_double(row.result->prefactor);
      out += " core=" + gft::format_double(row.result->core);
      out += " value=" + gft::format_double(row.result->value);
    } else {
      out += "  value=undefined (" + row.undefined_reason + ")";
    }
    out += '\n';
  }
  if (rows.empty()) out += "(empty parameter grid)\n";
  return out;
}

int cmd_bounds(const RunConfig& cfg) {
  const auto rows = compute_bounds(build_specs(cfg));
  if (cfg.format == "json") return emit(cfg, bounds_json(cfg, rows));
  if (cfg.format == "csv") return emit(cfg, bounds_csv(rows));
  return emit(cfg, bounds_pretty(rows));
}

// --- invert / cesaro --------------------------------------------------------

std::string series_json(const RunConfig& cfg, const char* command,
                        const gft::TaylorSeries& s, const gft::CesaroParams* op) {
  gft::JsonWriter w;
  w.begin_object();
  w.key("tool_version").value(gft::kToolVersion);
  w.key("config").begin_object();
  w.key("command").value(command);
  w.key("order").value(s.order());
  if (op != nullptr) {
    w.key("k").value(op->k);
    w.key("op_alpha").value(op->alpha);
    w.key("classical_cesaro").value(cfg.classical);
  }
  if (cfg.identity) w.key("identity_operator").value(true);
  w.end_object();
  w.key("rows").begin_array();
  for (int n = 1; n <= s.order(); ++n) {
    w.begin_object();
    w.key("n").value(n);
    w.key("value").value(gft::format_complex(s.coeff(n)));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string series_csv(const gft::TaylorSeries& s) {
  std::string out = "n,value\n";
  for (int n = 1; n <= s.order(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += gft::format_complex(s.coeff(n));
    out += '\n';
  }
  return out;
}

std::string series_pretty(const gft::TaylorSeries& s, const char* label) {
  std::string out;
  for (int n = 1; n <= s.order(); ++n) {
    out += label;
    out += '[' + std::to_string(n) + "] = " + gft::format_complex(s.coeff(n)) + '\n';
  }
  return out;
}

int cmd_invert(const RunConfig& cfg) {
  const auto tail = parse_tail(cfg);
  const auto f = gft::NormalizedSeries::from_tail(tail, cfg.order);
  const gft::TaylorSeries g = gft::invert(f).series();
  if (cfg.format == "json") return emit(cfg, series_json(cfg, "invert", g, nullptr));
  if (cfg.format == "csv") return emit(cfg, series_csv(g));
  return emit(cfg, series_pretty(g, "g"));
}

int cmd_cesaro(const RunConfig& cfg) {
  const auto tail = parse_tail(cfg);
  const auto f = gft::NormalizedSeries::from_tail(tail, cfg.order);
  if (cfg.identity) {
    const gft::TaylorSeries out = f.series();
    if (cfg.format == "json") return emit(cfg, series_json(cfg, "cesaro", out, nullptr));
    if (cfg.format == "csv") return emit(cfg, series_csv(out));
    return emit(cfg, series_pretty(out, "c"));
  }
  const auto ks = parse_int_range(cfg.k_range, "--k");
  if (ks.size() != 1) throw std::invalid_argument("cesaro requires a single --k");
  const gft::CesaroParams op{ks[0], parse_single(cfg.op_alpha_range, "--op-alpha")};
  const gft::TaylorSeries out = gft::apply_cesaro(f, op, flavor_of(cfg));
  if (cfg.format == "json") return emit(cfg, series_json(cfg, "cesaro", out, &op));
  if (cfg.format == "csv") return emit(cfg, series_csv(out));
  return emit(cfg, series_pretty(out, "c"));
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& cfg) {
  const auto specs = build_specs(cfg);
  if (specs.size() != 1)
    throw std::invalid_argument("verify expects single-valued class parameters");
  const gft::ClassSpec& spec = specs.front();

  std::optional<gft::ClassMember> member;
  if (spec.family_tag() == gft::ClassFamily::Psi) {
    if (cfg.b1.empty() || cfg.b2.empty())
      throw std::invalid_argument("psi verify requires --b1 and --b2");
    const gft::SchwarzPrefix seed{gft::parse_complex(cfg.b1), gft::parse_complex(cfg.b2)};
    member = gft::make_psi_member(seed, spec, cfg.order);
  } else {
    if (cfg.p1.empty() || cfg.p2.empty())
      throw std::invalid_argument("verify requires --p1 and --p2");
    const gft::CaratheodoryPrefix seed{gft::parse_complex(cfg.p1), gft::parse_complex(cfg.p2)};
    member = spec.family_tag() == gft::ClassFamily::Strong
                 ? gft::make_q_member(seed, spec, cfg.order)
                 : gft::make_hbeta_member(seed, spec, cfg.order);
  }

  const gft::VerificationReport rep =
      gft::verify_membership(*member, cfg.radius, cfg.samples, cfg.tolerance);

  if (cfg.format == "json") {
    gft::JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(gft::kToolVersion);
    w.key("config").begin_object();
    w.key("command").value("verify");
    w.key("order").value(cfg.order);
    w.key("radius").value(cfg.radius);
    w.key("samples").value(cfg.samples);
    w.key("tolerance").value(cfg.tolerance);
    w.key("seed1").value(gft::format_complex(member->seed1));
    w.key("seed2").value(gft::format_complex(member->seed2));
    w.end_object();
    w.key("report");
    // verification_json returns a complete document; splice it in raw.
    std::string doc = w.str();
    doc += gft::verification_json(rep);
    doc += ",\"a2\":\"" + gft::format_complex(member->a2) + "\"";
    doc += ",\"a3\":\"" + gft::format_complex(member->a3) + "\"";
    doc += ",\"derived1\":\"" + gft::format_complex(member->derived1) + "\"";
    doc += ",\"derived2\":\"" + gft::format_complex(member->derived2) + "\"";
    doc += ",\"feasible\":";
    doc += member->feasible ? "true" : "false";
    doc += "}\n";
    return emit(cfg, doc);
  }
  if (cfg.format == "csv") {
    std::string out =
        "class,k,op_alpha,flavor,unit_weights,B1,B2,alpha,lambda,beta,"
        "seed1,seed2,a2,a3,derived1,derived2,feasible,radius,samples,"
        "extremal_value,threshold,pass,flags\n";
    gft::detail::append_spec_csv(out, spec);
    out += ',' + gft::format_complex(member->seed1);
    out += ',' + gft::format_complex(member->seed2);
    out += ',' + gft::format_complex(member->a2);
    out += ',' + gft::format_complex(member->a3);
    out += ',' + gft::format_complex(member->derived1);
    out += ',' + gft::format_complex(member->derived2);
    out += member->feasible ? ",true" : ",false";
    out += ',' + gft::format_double(rep.radius);
    out += ',' + std::to_string(rep.samples);
    out += ',' + gft::format_double(rep.extremal_value);
    out += ',' + gft::format_double(rep.threshold);
    out += rep.pass ? ",true" : ",false";
    std::string flags;
    for (const std::string& f : rep.flags) {
      if (!flags.empty()) flags += ';';
      flags += f;
    }
    out += ',' + gft::csv_escape(flags) + '\n';
    return emit(cfg, out);
  }

  std::string out = describe_spec(spec) + '\n';
  out += "seed: " + gft::format_complex(member->seed1) + ", " +
         gft::format_complex(member->seed2) + '\n';
  out += "a2 = " + gft::format_complex(member->a2) +
         ", a3 = " + gft::format_complex(member->a3) + '\n';
  out += "derived prefix: " + gft::format_complex(member->derived1) + ", " +
         gft::format_complex(member->derived2) +
         (member->feasible ? " (feasible)" : " (infeasible)") + '\n';
  out += "extremal value " + gft::format_double(rep.extremal_value) + " vs threshold " +
         gft::format_double(rep.threshold) + " -> " + (rep.pass ? "pass" : "fail") + '\n';
  out += "flags:";
  for (const std::string& f : rep.flags) out += ' ' + f;
  out += '\n';
  return emit(cfg, out);
}

// --- search -----------------------------------------------------------------

int cmd_search(const RunConfig& cfg) {
  const auto specs = build_specs(cfg);
  gft::SearchConfig sc;
  sc.grid_density = cfg.grid_density;
  sc.random_restarts = cfg.restarts;
  sc.refine_steps = cfg.refine_steps;
  sc.seed = cfg.seed;
  sc.tolerance = cfg.tolerance;

  gft::SweepObjective what;
  if (cfg.objective == "a2")
    what = gft::SweepObjective::A2;
  else if (cfg.objective == "a3")
    what = gft::SweepObjective::A3;
  else if (cfg.objective == "both")
    what = gft::SweepObjective::Both;
  else
    throw std::invalid_argument("--objective must be a2, a3, or both");

  const auto reports = gft::sweep(specs, sc, what);

  std::string content;
  if (cfg.format == "json") {
    gft::JsonWriter w;
    w.begin_object();
    w.key("tool_version").value(gft::kToolVersion);
    w.key("config").begin_object();
    w.key("command").value("search");
    w.key("class").value(cfg.klass);
    w.key("k").value(cfg.k_range);
    w.key("op_alpha").value(cfg.op_alpha_range);
    w.key("B1").value(cfg.B1_range);
    w.key("B2").value(cfg.B2_range);
    w.key("alpha").value(cfg.alpha_range);
    w.key("lambda").value(cfg.lambda_range);
    w.key("beta").value(cfg.beta_range);
    w.key("identity_operator").value(cfg.identity);
    w.key("classical_cesaro").value(cfg.classical);
    w.key("grid_density").value(sc.grid_density);
    w.key("random_restarts").value(sc.random_restarts);
    w.key("refine_steps").value(sc.refine_steps);
    w.key("seed").value(sc.seed);
    w.key("tolerance").value(sc.tolerance);
    w.key("objective").value(cfg.objective);
    w.end_object();
    w.key("rows").begin_array();
    for (const auto& rep : reports) gft::append_consistency_json(w, rep);
    w.end_array();
    w.end_object();
    content = w.str() + "\n";
  } else if (cfg.format == "csv") {
    content = std::string(gft::kConsistencyCsvHeader) + "\n";
    for (const auto& rep : reports) content += gft::consistency_csv_row(rep) + "\n";
  } else {
    for (const auto& rep : reports) {
      content += describe_spec(rep.spec);
      content += "  ";
      content += gft::to_string(rep.formula);
      if (rep.verdict == gft::Verdict::FormulaUndefined) {
        content += "  undefined (" + rep.undefined_reason + ")";
        content += "  oracle_max=" + gft::format_double(rep.oracle_max);
      } else {
        content += "  formula=" + gft::format_double(rep.formula_value);
        content += " oracle=" + gft::format_double(rep.oracle_max);
        content += " exceedance=" + gft::format_double(rep.exceedance);
      }
      content += "  verdict=";
      content += gft::to_string(rep.verdict);
      content += '\n';
    }
    if (reports.empty()) content += "(empty parameter grid)\n";
  }

  const int rc = emit(cfg, content);
  if (rc != kExitOk) return rc;
  if (cfg.strict)
    for (const auto& rep : reports)
      if (rep.verdict == gft::Verdict::OracleExceeds) return kExitStrict;
  return kExitOk;
}

// --- wiring -----------------------------------------------------------------

// Bindings are kept per subcommand so a config file can only touch options of
// the subcommand actually being run.
struct Wiring {
  RunConfig& cfg;
  std::map<const CLI::App*, std::vector<ConfigBinding>> bindings;

  template <typename T>
  void bind(CLI::App* sub, const char* name, T& field, const char* help, const char* key) {
    CLI::Option* opt = sub->add_option(name, field, help);
    bindings[sub].push_back(
        {key, opt, [&field](const nlohmann::json& v) { field = v.get<T>(); }});
  }

  void bind_flag(CLI::App* sub, const char* name, bool& field, const char* help,
                 const char* key) {
    CLI::Option* opt = sub->add_flag(name, field, help);
    bindings[sub].push_back(
        {key, opt, [&field](const nlohmann::json& v) { field = v.get<bool>(); }});
  }

  void add_common(CLI::App* sub) {
    sub->add_option("--config", cfg.config_path, "JSON config file; flags win");
    bind(sub, "--format", cfg.format, "pretty, csv, or json", "format");
    sub->get_option("--format")->check(CLI::IsMember({"pretty", "csv", "json"}));
    bind(sub, "--out", cfg.out, "write output to this file", "out");
  }

  void add_class_options(CLI::App* sub) {
    bind(sub, "--class", cfg.klass, "psi, strong, or realpart", "class");
    bind(sub, "--k", cfg.k_range, "operator index or range start:stop:step", "k");
    bind(sub, "--op-alpha", cfg.op_alpha_range, "operator order or range", "op_alpha");
    bind(sub, "--B1", cfg.B1_range, "psi B1 value or range", "B1");
    bind(sub, "--B2", cfg.B2_range, "psi B2 value or range", "B2");
    bind(sub, "--alpha", cfg.alpha_range, "sector alpha value or range", "alpha");
    bind(sub, "--lambda", cfg.lambda_range, "weight lambda value or range", "lambda");
    bind(sub, "--beta", cfg.beta_range, "half-plane beta value or range", "beta");
    bind_flag(sub, "--identity-operator", cfg.identity,
              "unit coefficient weights and prefactors", "identity_operator");
    bind_flag(sub, "--classical-cesaro", cfg.classical,
              "classical mean weights instead of the normalized ones", "classical_cesaro");
  }

  void add_series_options(CLI::App* sub) {
    CLI::Option* positional =
        sub->add_option("tail", cfg.coeff_args, "tail coefficients a2 a3 ... (complex ok)");
    RunConfig* c = &cfg;
    bindings[sub].push_back(
        {"coeffs", positional, [c](const nlohmann::json& v) {
           c->coeff_args.clear();
           for (const auto& item : v) {
             if (item.is_string())
               c->coeff_args.push_back(item.get<std::string>());
             else if (item.is_number())
               c->coeff_args.push_back(gft::format_double(item.get<double>()));
             else
               throw std::invalid_argument("config 'coeffs' entries must be strings or numbers");
           }
         }});
    bind(sub, "--coeffs", cfg.coeff_list, "comma-separated tail coefficients", "coeffs_list");
    bind(sub, "--in", cfg.in_path, "JSON file with a 'coeffs' array", "in");
    bind(sub, "--order", cfg.order, "truncation order", "order");
  }
};

int dispatch(const RunConfig& cfg) {
  if (cfg.command == "bounds") return cmd_bounds(cfg);
  if (cfg.command == "invert") return cmd_invert(cfg);
  if (cfg.command == "cesaro") return cmd_cesaro(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "search") return cmd_search(cfg);
  throw std::invalid_argument("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  CLI::App app{"geometric function theory toolkit: coefficient bounds for "
               "bi-univalent classes under the Cesaro mean"};
  app.require_subcommand(1);
  Wiring wiring{cfg, {}};

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form |a2|, |a3| bounds on a grid");
  wiring.add_common(bounds);
  wiring.add_class_options(bounds);

  CLI::App* invert = app.add_subcommand("invert", "compositional inverse of a normalized series");
  wiring.add_common(invert);
  wiring.add_series_options(invert);

  CLI::App* cesaro = app.add_subcommand("cesaro", "apply the mean to a normalized series");
  wiring.add_common(cesaro);
  wiring.add_series_options(cesaro);
  wiring.bind(cesaro, "--k", cfg.k_range, "operator index", "k");
  wiring.bind(cesaro, "--op-alpha", cfg.op_alpha_range, "operator order", "op_alpha");
  wiring.bind_flag(cesaro, "--identity-operator", cfg.identity, "echo the series",
                   "identity_operator");
  wiring.bind_flag(cesaro, "--classical-cesaro", cfg.classical, "classical mean weights",
                   "classical_cesaro");

  CLI::App* verify = app.add_subcommand("verify", "sample the class condition for one member");
  wiring.add_common(verify);
  wiring.add_class_options(verify);
  wiring.bind(verify, "--p1", cfg.p1, "seed p1 (caratheodory classes)", "p1");
  wiring.bind(verify, "--p2", cfg.p2, "seed p2 (caratheodory classes)", "p2");
  wiring.bind(verify, "--b1", cfg.b1, "seed b1 (psi class)", "b1");
  wiring.bind(verify, "--b2", cfg.b2, "seed b2 (psi class)", "b2");
  wiring.bind(verify, "--radius", cfg.radius, "sampling radius in (0,1)", "radius");
  wiring.bind(verify, "--samples", cfg.samples, "points on the circle", "samples");
  wiring.bind(verify, "--order", cfg.order, "truncation order", "order");
  wiring.bind(verify, "--tolerance", cfg.tolerance, "pass tolerance", "tolerance");

  CLI::App* search = app.add_subcommand("search", "compare bounds against the seed-space oracle");
  wiring.add_common(search);
  wiring.add_class_options(search);
  wiring.bind(search, "--grid-density", cfg.grid_density, "grid points per coordinate",
              "grid_density");
  wiring.bind(search, "--restarts", cfg.restarts, "random restarts", "restarts");
  wiring.bind(search, "--refine-steps", cfg.refine_steps, "refinement rounds", "refine_steps");
  wiring.bind(search, "--seed", cfg.seed, "search RNG seed", "seed");
  wiring.bind(search, "--tolerance", cfg.tolerance, "exceedance tolerance", "tolerance");
  wiring.bind(search, "--objective", cfg.objective, "a2, a3, or both", "objective");
  wiring.bind_flag(search, "--strict", cfg.strict, "exit 2 on any oracle exceedance", "strict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.command = active->get_name();

  try {
    if (!cfg.config_path.empty()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(cfg.config_path));
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config file: ") + e.what());
      }
      if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");
      for (const ConfigBinding& binding : wiring.bindings[active]) {
        if (!doc.contains(binding.key)) continue;
        if (binding.opt->count() > 0) continue;  // command line wins
        try {
          binding.apply(doc[binding.key]);
        } catch (const nlohmann::json::exception&) {
          throw std::invalid_argument("config key '" + binding.key + "' has the wrong type");
        }
      }
    }
    return dispatch(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitIo;
  } catch (const gft::undefined_formula& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
