// bosegas: scans and exact-diagonalization experiments for the mean-field Bose gas.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mfbose/cli/commands.hpp"
#include "mfbose/errors.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<double> tol;
  std::vector<double> beta, kappa, mu, eta, lambda, delta;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--out", f.out, "output path (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", f.seed, "seed for randomized suites");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "solver tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--beta", f.beta, "inverse temperatures")->delimiter(',');
  cmd->add_option("--kappa", f.kappa, "beta / beta_c values (replaces --beta)")->delimiter(',');
  cmd->add_option("--mu", f.mu, "chemical potentials")->delimiter(',');
  cmd->add_option("--eta", f.eta, "scaling parameters")->delimiter(',');
  cmd->add_option("--lambda", f.lambda, "symmetry-breaking field strengths")->delimiter(',');
  cmd->add_option("--delta", f.delta, "zero-mode shifts")->delimiter(',');
}

// Flags override config keys; a temperature flag replaces either temperature key.
mfbose::cli::Json merge(mfbose::cli::Json doc, const Flags& f) {
  if (f.out) doc["out"] = *f.out;
  if (f.format) doc["format"] = *f.format;
  if (f.seed) doc["seed"] = *f.seed;
  if (f.jobs) doc["jobs"] = *f.jobs;
  if (f.tol) doc["tol"] = *f.tol;
  if (!f.beta.empty() && !f.kappa.empty()) throw mfbose::ConfigError("give either --beta or --kappa, not both");
  if (!f.beta.empty()) {
    doc.erase("kappa");
    doc["beta"] = f.beta;
  }
  if (!f.kappa.empty()) {
    doc.erase("beta");
    doc["kappa"] = f.kappa;
  }
  if (!f.mu.empty()) doc["mu"] = f.mu;
  if (!f.eta.empty()) doc["eta"] = f.eta;
  if (!f.lambda.empty()) doc["lambda"] = f.lambda;
  if (!f.delta.empty()) doc["delta"] = f.delta;
  return doc;
}

void print_error(const std::string& code, const std::string& message) {
  mfbose::cli::Json e;
  e["error"] = {{"code", code}, {"message", message}};
  std::cerr << e.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field Bose gas: chemical potentials, bounds and exact diagonalization"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"mu-solve", "solve for the effective chemical potential on a (beta|kappa, mu, eta) grid"},
      {"phase", "condensate fraction along an eta scan against its limit law"},
      {"bounds", "grand-potential envelopes for the perturbed model"},
      {"surface", "minimize the variational surface and compare with its lower bound"},
      {"ed", "exact diagonalization over a (lambda, delta) grid"},
      {"verify", "seeded property suite with a JSON report"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    mfbose::cli::Json doc = flags.config.empty() ? mfbose::cli::Json::object() : mfbose::cli::read_json_file(flags.config);
    const auto cfg = mfbose::cli::config_from_json(merge(std::move(doc), flags), command);
    return mfbose::cli::run_command(cfg);
  } catch (const mfbose::Error& e) {
    print_error(e.code(), e.what());
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
  }
  return 2;
}
