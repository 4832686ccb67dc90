#include "mfbose/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mfbose/errors.hpp"

namespace mfbose::cli {

namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : obj.items())
    if (!known.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
}

double number(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

long long integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<long long>();
}

std::vector<double> grid(const Json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError("'" + key + "' must be a number or an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, key));
  return out;
}

ModeIndex mode(const Json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) throw ConfigError("'" + key + "' entries must be integer triples");
  return ModeIndex(static_cast<int>(integer(v[0], key)), static_cast<int>(integer(v[1], key)),
                   static_cast<int>(integer(v[2], key)));
}

Json mode_json(const ModeIndex& n) { return Json::array({n(0), n(1), n(2)}); }

void check(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void check_grid(const std::vector<double>& g, const std::string& key) {
  check(!g.empty(), "'" + key + "' grid is empty");
  for (double v : g) check(std::isfinite(v), "'" + key + "' contains a non-finite value");
}

}  // namespace

double RunConfig::beta_for(double t, double mu_value, double eta_value) const {
  if (!uses_kappa()) return t;
  return t * beta_critical(mu_value, eta_value, vhat.vhat0());
}

ModelParams RunConfig::params(double t, double mu_value, double eta_value) const {
  ModelParams p;
  p.beta = beta_for(t, mu_value, eta_value);
  p.mu = mu_value;
  p.eta = eta_value;
  p.vhat = vhat;
  return p;
}

void RunConfig::validate() const {
  check_grid(temperature_grid(), uses_kappa() ? "kappa" : "beta");
  check_grid(mu, "mu");
  check_grid(eta, "eta");
  check_grid(lambda, "lambda");
  check_grid(delta, "delta");
  for (double t : temperature_grid()) check(t > 0.0, uses_kappa() ? "kappa must be positive" : "beta must be positive");
  for (double e : eta) check(e > 0.0, "eta must be positive");
  if (uses_kappa())
    for (double m : mu) check(m > 0.0, "kappa requires mu > 0 (beta_c is infinite otherwise)");
  try {
    vhat.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("vhat: ") + e.what());
  }
  if (cutoff_norm) check(*cutoff_norm >= 0.0, "lattice.cutoff_norm must be non-negative");
  check(tail_tolerance > 0.0 && tail_tolerance < 1.0, "lattice.tail_tolerance must lie in (0, 1)");
  check(!ed.modes.empty(), "ed.modes is empty");
  check(ed.n_max >= 0 && ed.N_max >= 0, "ed caps must be non-negative");
  check(ed.dim_cap > 0, "ed.dim_cap must be positive");
  check(ed.griffith_step > 0.0, "ed.griffith_step must be positive");
  if (ed.n_ref) check(*ed.n_ref >= 0.0, "ed.n_ref must be non-negative");
  check(quadrature.radial_order > 0 && quadrature.angular_order > 0, "quadrature orders must be positive");
  check(quadrature.z_max > 0.0, "quadrature.z_max must be positive");
  check(quadrature.n_max >= 2, "quadrature.n_max must be at least 2");
  check(policy.K_particles >= 0.0 && policy.K_envelope >= 0.0 && policy.K_surface >= 0.0,
        "policy constants must be non-negative");
  check(surface_resolution >= 3, "surface.resolution must be at least 3");
  check(verify_trials > 0, "verify.trials must be positive");
  check(jobs >= 1, "jobs must be at least 1");
  check(tol > 0.0, "tol must be positive");
}

RunConfig config_from_json(const Json& doc, const std::string& command) {
  reject_unknown(doc,
                 {"command", "beta", "kappa", "mu", "eta", "lambda", "delta", "vhat", "lattice", "ed", "quadrature",
                  "policy", "surface", "verify", "seed", "jobs", "tol", "format", "out"},
                 "config");
  RunConfig cfg;
  cfg.command = command;
  if (doc.contains("command")) {
    check(doc["command"].is_string(), "'command' must be a string");
    check(doc["command"].get<std::string>() == command,
          "config is for command '" + doc["command"].get<std::string>() + "', not '" + command + "'");
  }
  check(!(doc.contains("beta") && doc.contains("kappa")), "give either 'beta' or 'kappa', not both");
  if (doc.contains("beta")) cfg.beta = grid(doc["beta"], "beta");
  if (doc.contains("kappa")) cfg.kappa = grid(doc["kappa"], "kappa");
  if (doc.contains("mu")) cfg.mu = grid(doc["mu"], "mu");
  if (doc.contains("eta")) cfg.eta = grid(doc["eta"], "eta");
  if (doc.contains("lambda")) cfg.lambda = grid(doc["lambda"], "lambda");
  if (doc.contains("delta")) cfg.delta = grid(doc["delta"], "delta");

  if (doc.contains("vhat")) {
    const Json& v = doc["vhat"];
    check(v.is_array(), "'vhat' must be an array of {\"n\": [i, j, k], \"value\": x}");
    cfg.vhat = Interaction();
    for (const auto& entry : v) {
      reject_unknown(entry, {"n", "value"}, "vhat entry");
      check(entry.contains("n") && entry.contains("value"), "vhat entries need 'n' and 'value'");
      cfg.vhat.set(mode(entry["n"], "vhat.n"), number(entry["value"], "vhat.value"));
    }
  }
  if (doc.contains("lattice")) {
    const Json& l = doc["lattice"];
    reject_unknown(l, {"cutoff_norm", "tail_tolerance"}, "lattice");
    if (l.contains("cutoff_norm")) cfg.cutoff_norm = number(l["cutoff_norm"], "lattice.cutoff_norm");
    if (l.contains("tail_tolerance")) cfg.tail_tolerance = number(l["tail_tolerance"], "lattice.tail_tolerance");
  }
  if (doc.contains("ed")) {
    const Json& e = doc["ed"];
    reject_unknown(e, {"modes", "n_max", "N_max", "n_ref", "dim_cap", "griffith_step"}, "ed");
    if (e.contains("modes")) {
      check(e["modes"].is_array(), "'ed.modes' must be an array of integer triples");
      cfg.ed.modes.clear();
      for (const auto& m : e["modes"]) cfg.ed.modes.push_back(mode(m, "ed.modes"));
    }
    if (e.contains("n_max")) cfg.ed.n_max = static_cast<int>(integer(e["n_max"], "ed.n_max"));
    if (e.contains("N_max")) cfg.ed.N_max = static_cast<int>(integer(e["N_max"], "ed.N_max"));
    if (e.contains("n_ref")) cfg.ed.n_ref = number(e["n_ref"], "ed.n_ref");
    if (e.contains("dim_cap")) cfg.ed.dim_cap = static_cast<Index>(integer(e["dim_cap"], "ed.dim_cap"));
    if (e.contains("griffith_step")) cfg.ed.griffith_step = number(e["griffith_step"], "ed.griffith_step");
  }
  if (doc.contains("quadrature")) {
    const Json& q = doc["quadrature"];
    reject_unknown(q, {"radial_order", "angular_order", "z_max", "n_max"}, "quadrature");
    if (q.contains("radial_order"))
      cfg.quadrature.radial_order = static_cast<int>(integer(q["radial_order"], "quadrature.radial_order"));
    if (q.contains("angular_order"))
      cfg.quadrature.angular_order = static_cast<int>(integer(q["angular_order"], "quadrature.angular_order"));
    if (q.contains("z_max")) cfg.quadrature.z_max = number(q["z_max"], "quadrature.z_max");
    if (q.contains("n_max")) cfg.quadrature.n_max = static_cast<int>(integer(q["n_max"], "quadrature.n_max"));
  }
  if (doc.contains("policy")) {
    const Json& p = doc["policy"];
    reject_unknown(p, {"K_particles", "K_envelope", "K_surface"}, "policy");
    if (p.contains("K_particles")) cfg.policy.K_particles = number(p["K_particles"], "policy.K_particles");
    if (p.contains("K_envelope")) cfg.policy.K_envelope = number(p["K_envelope"], "policy.K_envelope");
    if (p.contains("K_surface")) cfg.policy.K_surface = number(p["K_surface"], "policy.K_surface");
  }
  if (doc.contains("surface")) {
    reject_unknown(doc["surface"], {"resolution"}, "surface");
    if (doc["surface"].contains("resolution"))
      cfg.surface_resolution = static_cast<int>(integer(doc["surface"]["resolution"], "surface.resolution"));
  }
  if (doc.contains("verify")) {
    reject_unknown(doc["verify"], {"trials"}, "verify");
    if (doc["verify"].contains("trials"))
      cfg.verify_trials = static_cast<int>(integer(doc["verify"]["trials"], "verify.trials"));
  }
  if (doc.contains("seed")) {
    check(doc["seed"].is_number_unsigned() || (doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0),
          "'seed' must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("jobs")) cfg.jobs = static_cast<int>(integer(doc["jobs"], "jobs"));
  if (doc.contains("tol")) cfg.tol = number(doc["tol"], "tol");
  if (doc.contains("format")) {
    check(doc["format"].is_string(), "'format' must be \"csv\" or \"json\"");
    const std::string f = doc["format"].get<std::string>();
    check(f == "csv" || f == "json", "'format' must be \"csv\" or \"json\"");
    cfg.format = f == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  }
  if (doc.contains("out")) {
    check(doc["out"].is_string(), "'out' must be a path string");
    cfg.out = doc["out"].get<std::string>();
  }
  cfg.validate();
  return cfg;
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  if (cfg.uses_kappa())
    j["kappa"] = cfg.kappa;
  else
    j["beta"] = cfg.beta;
  j["mu"] = cfg.mu;
  j["eta"] = cfg.eta;
  j["lambda"] = cfg.lambda;
  j["delta"] = cfg.delta;
  Json v = Json::array();
  for (const auto& [n, value] : cfg.vhat.coefficients()) v.push_back({{"n", mode_json(n)}, {"value", value}});
  j["vhat"] = v;
  Json lattice;
  if (cfg.cutoff_norm) lattice["cutoff_norm"] = *cfg.cutoff_norm;
  lattice["tail_tolerance"] = cfg.tail_tolerance;
  j["lattice"] = lattice;
  Json ed;
  Json modes = Json::array();
  for (const auto& m : cfg.ed.modes) modes.push_back(mode_json(m));
  ed["modes"] = modes;
  ed["n_max"] = cfg.ed.n_max;
  ed["N_max"] = cfg.ed.N_max;
  if (cfg.ed.n_ref) ed["n_ref"] = *cfg.ed.n_ref;
  ed["dim_cap"] = cfg.ed.dim_cap;
  ed["griffith_step"] = cfg.ed.griffith_step;
  j["ed"] = ed;
  j["quadrature"] = {{"radial_order", cfg.quadrature.radial_order},
                     {"angular_order", cfg.quadrature.angular_order},
                     {"z_max", cfg.quadrature.z_max},
                     {"n_max", cfg.quadrature.n_max}};
  j["policy"] = {{"K_particles", cfg.policy.K_particles},
                 {"K_envelope", cfg.policy.K_envelope},
                 {"K_surface", cfg.policy.K_surface}};
  j["surface"] = {{"resolution", cfg.surface_resolution}};
  j["verify"] = {{"trials", cfg.verify_trials}};
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace mfbose::cli
