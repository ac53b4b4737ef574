#include "nillab/cli/cli.hpp"

#include "nillab/catalog/catalog.hpp"
#include "nillab/cli/verify.hpp"
#include "nillab/io/json_io.hpp"
#include "nillab/lie/ideals.hpp"
#include "nillab/spectral/spectral.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace nillab {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string system;
  std::vector<std::string> params;
  std::vector<std::string> observables;
  int lags = 256;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out;
  int grid = 256;
  int k = -1;
  std::vector<int> levels{64};
  std::string part = "full";
  std::string density;
  bool joint = false;
  std::vector<int> direction{1, 0};
  double tolerance = 1e-2;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.out);
  file << text;
}

// Fills options that were not given on the command line from a JSON config.
void apply_config(const std::string& path, CLI::App& cmd, Options& o) {
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw FormatError(path + ": config must be an object");
  static const std::set<std::string> known{"system", "params", "observables", "lags", "samples", "seed", "out", "grid",
                                           "k", "levels", "part", "density", "joint", "direction", "tolerance"};
  for (const auto& [key, value] : cfg.items())
    if (!known.count(key)) throw FormatError(path + ": unknown config key '" + key + "'");
  auto unset = [&](const char* flag) { return cmd.get_option_no_throw(flag) == nullptr || cmd.count(flag) == 0; };
  auto get = [&](const char* key, auto& target, const char* flag) {
    if (!cfg.contains(key) || !unset(flag)) return;
    try {
      target = cfg[key].get<std::remove_reference_t<decltype(target)>>();
    } catch (const Json::exception&) {
      throw FormatError(path + ": config key '" + std::string(key) + "' has the wrong type");
    }
  };
  get("system", o.system, "--system");
  if (cfg.contains("params") && unset("--params")) {
    if (!cfg["params"].is_object()) throw FormatError(path + ": 'params' must be an object");
    for (const auto& [name, value] : cfg["params"].items()) {
      if (!value.is_string()) throw FormatError(path + ": parameter values are strings such as \"1/3\" or \"sym\"");
      o.params.push_back(name + "=" + value.get<std::string>());
    }
  }
  get("observables", o.observables, "--observable");
  get("lags", o.lags, "--lags");
  get("samples", o.samples, "--samples");
  if (cfg.contains("seed") && unset("--seed")) {
    get("seed", o.seed, "--seed");
    o.has_seed = true;
  }
  get("out", o.out, "--out");
  get("grid", o.grid, "--grid");
  get("k", o.k, "--k");
  get("levels", o.levels, "--levels");
  get("part", o.part, "--part");
  get("density", o.density, "--density");
  get("joint", o.joint, "--joint");
  get("direction", o.direction, "--direction");
  get("tolerance", o.tolerance, "--tolerance");
}

AffineNilsystem resolve_system(const Options& o) {
  if (o.system.empty()) throw UsageError("--system is required");
  for (const auto& e : catalog_list()) {
    if (e.name != o.system) continue;
    ParamAssignment params = default_params(e.name);
    for (const auto& kv : o.params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--params expects name=value, got '" + kv + "'");
      const std::string name = kv.substr(0, eq);
      double fallback = 0.0;
      bool known = false;
      for (const auto& p : e.params)
        if (p.name == name) {
          fallback = p.default_value;
          known = true;
        }
      if (!known) throw UsageError(e.name + " has no parameter '" + name + "'");
      params[name] = ParamValue::parse(kv.substr(eq + 1), fallback);
    }
    return catalog_build(e.name, params);
  }
  if (!std::filesystem::exists(o.system)) throw UsageError("'" + o.system + "' is neither a catalog system nor a file");
  if (!o.params.empty()) throw UsageError("--params applies to catalog systems only");
  return load_system_file(o.system);
}

Observable resolve_observable(const Options& o, int dim) {
  if (o.observables.empty()) throw UsageError("--observable is required");
  Observable f;
  for (const auto& t : o.observables) f.terms.push_back(Observable::parse_term(t, dim));
  return f.normalized();
}

void require_seed(const Options& o) {
  if (!o.has_seed) throw UsageError("--seed is mandatory for spectral commands");
}

Json entry_json(const ExtScalar& s) { return s.str(); }

Json subspace_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis()) {
    Json row = Json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(entry_json(v[i]));
    basis.push_back(row);
  }
  return {{"dim", s.dim()}, {"rational", s.is_rational()}, {"basis", basis}};
}

std::string cmd_structure(const Options& o) {
  auto sys = resolve_system(o);
  Json r;
  r["system"] = o.system;
  r["dim"] = sys.dim();
  r["step"] = sys.algebra().step();
  auto tc = tau_commutator_ideal(sys);
  auto j = discrete_factor_subgroup(sys);
  auto h = leibman_identity_component(sys);
  auto hg = leibman_commutator_with_g(sys);
  r["tau_commutator"] = subspace_json(tc);
  Json factor = subspace_json(j);
  try {
    auto q = quotient_system(sys, j);
    Json quotient{{"dim", q.kept}};
    if (q.quotient) {
      auto t = q.quotient->numeric_translation();
      Json tj = Json::array();
      for (int i = 0; i < t.size(); ++i) tj.push_back(t[i]);
      quotient["translation"] = tj;
      quotient["automorphism_is_identity"] = q.quotient->automorphism().is_identity();
      quotient["abelian"] = q.quotient->algebra().is_abelian();
      if (q.quotient->algebra().is_abelian() && q.quotient->automorphism().is_identity()) {
        std::string d = "rotation by (";
        for (int i = 0; i < t.size(); ++i) d += (i ? ", " : "") + num(t[i]);
        quotient["description"] = d + ") on the " + std::to_string(q.kept) + "-torus";
      }
    } else {
      quotient["description"] = "a point";
    }
    factor["quotient"] = quotient;
  } catch (const InvalidFactor& e) {
    factor["quotient"] = {{"error", e.what()}};
  }
  r["discrete_factor"] = factor;
  r["leibman"] = subspace_json(h);
  r["derived_leibman"] = subspace_json(derived_subalgebra(h));
  Json series = Json::array();
  for (int k = 0; k <= sys.algebra().step() + 1; ++k) series.push_back(leibman_lcs(sys, k).dim());
  r["leibman_series_dims"] = series;
  r["commutator_with_g"] = subspace_json(hg);
  r["J_equals_commutator_with_g"] = hg == j;
  if (o.k >= 0) r["factor_level"] = {{"k", o.k}, {"kernel", subspace_json(leibman_lcs(sys, o.k))}};
  auto v = ergodicity_test(sys);
  r["ergodic"] = v.ergodic;
  Json w = Json::array();
  for (const auto& x : v.witness) w.push_back(x.str());
  r["witness"] = w;
  return r.dump(2) + "\n";
}

Observable select_part(const Options& o, const AffineNilsystem& sys, const Observable& f) {
  if (o.part == "full") return f;
  const Subspace kernel = o.k >= 0 ? leibman_lcs(sys, o.k) : discrete_factor_subgroup(sys);
  auto p = project_to_factor(sys, f, kernel);
  if (o.part == "projection") return p.projection;
  if (o.part == "complement") return p.complement;
  throw UsageError("--part must be full, projection or complement");
}

void write_density(const Options& o, const std::vector<double>& d, bool joint) {
  std::ostringstream os;
  if (joint) {
    os << "theta1,theta2,density\n";
    for (int a = 0; a < o.grid; ++a)
      for (int b = 0; b < o.grid; ++b)
        os << num(static_cast<double>(a) / o.grid) << "," << num(static_cast<double>(b) / o.grid) << ","
           << num(d[static_cast<std::size_t>(a * o.grid + b)]) << "\n";
  } else {
    os << "theta,density\n";
    for (int a = 0; a < o.grid; ++a) os << num(static_cast<double>(a) / o.grid) << "," << num(d[static_cast<std::size_t>(a)]) << "\n";
  }
  std::ofstream file(o.density, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.density);
  file << os.str();
}

std::string cmd_spectrum(const Options& o) {
  require_seed(o);
  auto sys = resolve_system(o);
  const Observable f = select_part(o, sys, resolve_observable(o, sys.dim()));
  std::ostringstream os;
  if (o.joint) {
    if (o.direction.size() != 2) throw UsageError("--direction expects k1,k2");
    auto js = joint_autocorrelation(sys, f, o.lags, o.samples, o.seed);
    os << "n1,n2,re,im\n";
    for (int a = -o.lags; a <= o.lags; ++a)
      for (int b = -o.lags; b <= o.lags; ++b)
        os << a << "," << b << "," << num(js.at(a, b).real()) << "," << num(js.at(a, b).imag()) << "\n";
    const bool support = subtorus_support_test(js, o.direction[0], o.direction[1], o.tolerance);
    os << "# observable=" << f.str() << "\n# c0=" << num(js.c0()) << "\n# support_direction=" << o.direction[0] << ","
       << o.direction[1] << "\n# support_test=" << (support ? "pass" : "fail") << "\n# tolerance=" << num(o.tolerance)
       << "\n# N=" << o.samples << "\n# K=" << o.lags << "\n# seed=" << o.seed << "\n";
    if (!o.density.empty()) write_density(o, fejer_density(js, o.grid), true);
    return os.str();
  }
  auto series = autocorrelation(sys, f, o.lags, o.samples, o.seed);
  os << "lag,re,im\n";
  for (int n = -o.lags; n <= o.lags; ++n) os << n << "," << num(series.at(n).real()) << "," << num(series.at(n).imag()) << "\n";
  os << "# observable=" << f.str() << "\n# part=" << o.part << "\n# c0=" << num(series.c0()) << "\n";
  if (o.lags >= 64) {
    auto mass = wiener_atom_mass(series);
    os << "# atom_mass=" << num(mass.mass) << "\n# atom_mass_half_K=" << num(mass.half_mass)
       << "\n# verdict=" << spectral_verdict(series) << "\n";
  } else {
    os << "# atom_mass=unavailable (needs K >= 64)\n";
  }
  const auto& cfg = default_spectral_config();
  os << "# thresholds=" << num(cfg.atom_threshold) << "," << num(cfg.decay_threshold) << "\n# N=" << o.samples
     << "\n# K=" << o.lags << "\n# seed=" << o.seed << "\n# drift_bound=" << num(series.drift) << "\n";
  if (!o.density.empty()) write_density(o, fejer_density(series, o.grid), false);
  return os.str();
}

std::string cmd_useminorm(const Options& o) {
  require_seed(o);
  auto sys = resolve_system(o);
  const Observable f = select_part(o, sys, resolve_observable(o, sys.dim()));
  if (o.levels.empty() || o.levels.size() > 3) throw UsageError("--levels takes 1 to 3 values of H");
  std::ostringstream os;
  os << "s,estimate,stability_delta\n";
  for (std::size_t s = 0; s <= o.levels.size(); ++s) {
    std::vector<int> lv(o.levels.begin(), o.levels.begin() + static_cast<std::ptrdiff_t>(s));
    auto est = uniformity_seminorm(sys, f, static_cast<int>(s), lv, o.samples, o.seed);
    os << s << "," << num(est.value) << "," << num(est.stability_delta) << "\n";
  }
  os << "# observable=" << f.str() << "\n# levels=";
  for (std::size_t i = 0; i < o.levels.size(); ++i) os << (i ? "," : "") << o.levels[i];
  os << "\n# N=" << o.samples << "\n# seed=" << o.seed << "\n";
  return os.str();
}

std::string cmd_catalog(const Options& o) {
  if (!o.system.empty()) return to_json(resolve_system(o)).dump(2) + "\n";
  std::ostringstream os;
  for (const auto& e : catalog_list()) {
    os << e.name << " (dim " << e.coordinate_names.size() << "): " << e.description << "\n";
    for (const auto& p : e.params) os << "  " << p.name << " = " << num(p.default_value) << "  " << p.meaning << "\n";
    for (const auto& ob : e.observables)
      os << "  observable " << ob.name << ": projection " << ob.projection_verdict << ", complement " << ob.complement_verdict
         << "\n";
  }
  return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilsystem structure and spectral laboratory", "nillab"};
  app.require_subcommand(1);
  Options o;
  std::string config;

  auto add_system = [&](CLI::App* c) {
    c->add_option("--system", o.system, "Catalog name or system file");
    c->add_option("--params", o.params, "Catalog parameters name=value (p/q, sym, sym:x)");
    c->add_option("--config", config, "JSON file with default values for the options");
    c->add_option("--out", o.out, "Output file (default stdout)");
  };
  auto add_spectral = [&](CLI::App* c) {
    c->add_option("--observable", o.observables, "Term 'k1,...,km:re[:im]'; repeat to add terms");
    c->add_option("--samples", o.samples, "QMC sample count N")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
    c->add_option("--seed", o.seed, "Sampling seed (mandatory)");
    c->add_option("--part", o.part, "full, projection or complement (against the discrete factor or --k)");
    c->add_option("--k", o.k, "Use the kernel of the Z_k factor (Leibman series term k)")->check(CLI::NonNegativeNumber);
  };

  auto* structure = app.add_subcommand("structure", "Structural report of a system");
  add_system(structure);
  structure->add_option("--k", o.k, "Also report the kernel of the Z_k factor")->check(CLI::NonNegativeNumber);

  auto* spectrum = app.add_subcommand("spectrum", "Autocorrelation series and spectral verdict");
  add_system(spectrum);
  add_spectral(spectrum);
  spectrum->add_option("--lags", o.lags, "Largest lag K")->check(CLI::NonNegativeNumber);
  spectrum->add_option("--grid", o.grid, "Density grid size");
  spectrum->add_option("--density", o.density, "Write the Fejer density grid to this CSV file");
  spectrum->add_flag("--joint", o.joint, "Joint series of a two-generator system");
  spectrum->add_option("--direction", o.direction, "Support direction k1,k2 for --joint")->delimiter(',');
  spectrum->add_option("--tolerance", o.tolerance, "Support test tolerance for --joint");

  auto* useminorm = app.add_subcommand("useminorm", "Uniformity seminorm estimates");
  add_system(useminorm);
  add_spectral(useminorm);
  useminorm->add_option("--levels", o.levels, "H per seminorm level, e.g. 64,64")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Golden and acceptance suite over the catalog");
  verify->add_option("--out", o.out, "Output file (default stdout)");

  auto* catalog = app.add_subcommand("catalog", "List catalog systems, or export one as a system file");
  add_system(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!config.empty()) {
      apply_config(config, *cmd, o);
      o.has_seed = o.has_seed || cmd->count("--seed") > 0;
    } else if (cmd->get_option_no_throw("--seed")) {
      o.has_seed = cmd->count("--seed") > 0;
    }
    if (cmd == structure) emit(o, cmd_structure(o), out);
    else if (cmd == spectrum) emit(o, cmd_spectrum(o), out);
    else if (cmd == useminorm) emit(o, cmd_useminorm(o), out);
    else if (cmd == catalog) emit(o, cmd_catalog(o), out);
    else {
      std::ostringstream os;
      int passed = 0, total = 0;
      for (const auto& r : run_verify_suite()) {
        os << (r.passed ? "PASS " : "FAIL ") << r.group << " " << r.name << ": " << r.detail << "\n";
        passed += r.passed ? 1 : 0;
        ++total;
      }
      os << passed << "/" << total << " checks passed\n";
      emit(o, os.str(), out);
      return passed == total ? 0 : 2;
    }
    return 0;
  } catch (const DriftBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nillab
