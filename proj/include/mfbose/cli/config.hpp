#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfbose/selfconsistent.hpp"

namespace mfbose::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Csv, Json };

struct EdConfig {
  std::vector<ModeIndex> modes{ModeIndex::Zero(), ModeIndex(1, 0, 0)};
  int n_max = 6;
  int N_max = 6;
  std::optional<double> n_ref;  // defaults to the mean-field particle number on the mode set
  Index dim_cap = 20000;
  double griffith_step = 1e-3;
};

struct QuadratureConfig {
  int radial_order = 64;
  int angular_order = 128;
  double z_max = 8.0;
  int n_max = 12;
};

struct PolicyConfig {
  double K_particles = 1.0;
  double K_envelope = 1.0;
  double K_surface = 1.0;
};

/// Everything a command needs. Scan grids are taken in the order given; the
/// cartesian product iterates the first listed grid slowest.
struct RunConfig {
  std::string command;
  std::vector<double> beta{1.0};
  std::vector<double> kappa;  // replaces beta when non-empty: beta = kappa beta_c(mu, eta)
  std::vector<double> mu{1.0};
  std::vector<double> eta{100.0};
  std::vector<double> lambda{0.0};
  std::vector<double> delta{0.0};
  Interaction vhat{1.0};
  std::optional<double> cutoff_norm;  // certified per beta when absent
  double tail_tolerance = kDefaultTailTolerance;
  EdConfig ed;
  QuadratureConfig quadrature;
  PolicyConfig policy;
  int surface_resolution = 401;
  int verify_trials = 20;
  std::uint64_t seed = 0;
  int jobs = 1;
  double tol = kDefaultSolverTolerance;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // stdout when empty

  bool uses_kappa() const { return !kappa.empty(); }
  /// The temperature grid actually scanned (kappa when set, else beta).
  const std::vector<double>& temperature_grid() const { return uses_kappa() ? kappa : beta; }
  /// beta for a grid value t of temperature_grid().
  double beta_for(double t, double mu, double eta) const;
  ModelParams params(double t, double mu, double eta) const;

  /// Throws ConfigError on empty grids or out-of-range values.
  void validate() const;
};

/// Builds a config from a JSON document. Unknown keys throw ConfigError.
RunConfig config_from_json(const Json& doc, const std::string& command);

/// Canonical echo of a config (the meta block of every output).
Json config_to_json(const RunConfig& cfg);

/// Reads and parses a JSON file; throws ConfigError on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace mfbose::cli
