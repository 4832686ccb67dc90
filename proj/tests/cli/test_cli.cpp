#include "doctest.h"

#include <cmath>

#include "mfbose/cli/commands.hpp"
#include "mfbose/cli/pool.hpp"
#include "mfbose/errors.hpp"

using namespace mfbose;
using namespace mfbose::cli;

namespace {

RunConfig config(const std::string& text, const std::string& command) {
  return config_from_json(Json::parse(text), command);
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == name) return c;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("config: defaults, unknown keys and validation") {
  const RunConfig d = config("{}", "mu-solve");
  CHECK(d.beta == std::vector<double>{1.0});
  CHECK(d.format == OutputFormat::Csv);
  CHECK(d.vhat.vhat0() == 1.0);

  CHECK_THROWS_AS(config(R"({"betta": [1]})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"ed": {"nmax": 3}})", "ed"), ConfigError);
  CHECK_THROWS_AS(config(R"({"beta": [1], "kappa": [2]})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"beta": []})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"eta": [-1]})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"format": "xml"})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"command": "phase"})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"kappa": [1], "mu": [0]})", "mu-solve"), ConfigError);
  CHECK_THROWS_AS(config(R"({"vhat": [{"n": [0,0,0], "value": 1}, {"n": [1,0,0], "value": -0.2},
                                     {"n": [-1,0,0], "value": -0.2}]})",
                         "verify"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"vhat": [{"n": [0,0,0], "value": 1}, {"n": [1,0,0], "value": 0.2}]})", "verify"),
                  ConfigError);
  CHECK_THROWS_AS(config(R"({"ed": {"modes": [[0,0]]}})", "ed"), ConfigError);

  const RunConfig k = config(R"({"kappa": 2, "mu": 1, "eta": 1000})", "phase");
  CHECK(k.uses_kappa());
  CHECK(k.params(2.0, 1.0, 1000.0).beta == doctest::Approx(2.0 * beta_critical(1.0, 1000.0, 1.0)));
}

TEST_CASE("config echo round-trips") {
  const RunConfig a = config(R"({"kappa": [0.5, 4], "eta": [1e3, 1e4], "lambda": [0.1], "seed": 7,
                                 "vhat": [{"n": [0,0,0], "value": 2}, {"n": [1,0,0], "value": 0.5},
                                          {"n": [-1,0,0], "value": 0.5}],
                                 "ed": {"n_max": 4, "n_ref": 3.5}})",
                             "bounds");
  Json echo = config_to_json(a);
  echo.erase("command");
  const RunConfig b = config_from_json(echo, "bounds");
  CHECK(dump_json(config_to_json(a)) == dump_json(config_to_json(b)));
}

TEST_CASE("output formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-INFINITY) == "-inf");
  const Table t{{"a", "b"}, {{1.0, 0.5}, {2.0, NAN}}};
  CHECK(table_to_csv(t) == "a,b\n1,0.5\n2,nan\n");
  const Json parsed = Json::parse(table_to_json(t, Json{{"k", 1}}));
  CHECK(parsed["rows"].size() == 2);
  CHECK(parsed["rows"][0]["b"].get<double>() == 0.5);
  CHECK(parsed["rows"][1]["b"].is_null());
  CHECK(dump_json(Json{{"x", 0.1}, {"n", 3}, {"s", "t"}}) == R"({"x":0.10000000000000001,"n":3,"s":"t"})");
}

TEST_CASE("parallel_map keeps input order and reports the first failure") {
  const auto r = parallel_map<int>(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < 50; ++i) CHECK(r[i] == static_cast<int>(i * i));
  CHECK_THROWS_WITH(parallel_map<int>(10, 3,
                                      [](std::size_t i) -> int {
                                        if (i == 4 || i == 7) throw std::runtime_error(std::to_string(i));
                                        return 0;
                                      }),
                    "4");
}

TEST_CASE("mu-solve: grid order and determinism") {
  RunConfig cfg = config(R"({"beta": [0.5, 1, 2], "mu": [1], "eta": [10, 100, 1000]})", "mu-solve");
  const Table t = cmd_mu_solve(cfg);
  REQUIRE(t.rows.size() == 9);
  CHECK(t.columns == std::vector<std::string>{"beta", "mu", "eta", "mu_tilde", "gap", "n0", "n_plus", "residual",
                                              "kappa"});
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(t.rows[i][0] == std::vector<double>{0.5, 1, 2}[i / 3]);
    CHECK(t.rows[i][2] == std::vector<double>{10, 100, 1000}[i % 3]);
    CHECK(t.rows[i][3] < 0.0);
  }
  cfg.jobs = 3;
  CHECK(table_to_csv(cmd_mu_solve(cfg)) == table_to_csv(t));
  const RunConfig one = config(R"({"beta": 1, "mu": 1, "eta": 100})", "mu-solve");
  CHECK(table_to_csv(cmd_mu_solve(one)).find('\n') != std::string::npos);
  CHECK(cmd_mu_solve(one).rows.size() == 1);
}

TEST_CASE("phase: limit column and decreasing error") {
  const Table half = cmd_phase(config(R"({"kappa": 0.5, "mu": 1, "eta": [1e3, 1e4, 1e5, 1e6]})", "phase"));
  const Table four = cmd_phase(config(R"({"kappa": 4, "mu": 1, "eta": [1e3, 1e4, 1e5, 1e6]})", "phase"));
  const std::size_t lim = column(half, "frac_limit"), err = column(half, "abs_err");
  for (const auto& r : half.rows) CHECK(r[lim] == 0.0);
  for (const auto& r : four.rows) CHECK(r[lim] == doctest::Approx(0.875).epsilon(1e-15));
  for (const Table* t : {&half, &four})
    for (std::size_t i = 1; i < t->rows.size(); ++i) CHECK(t->rows[i][err] < t->rows[i - 1][err]);
  CHECK_THROWS_AS(cmd_phase(config(R"({"kappa": 2, "mu": [1, 2]})", "phase")), ConfigError);
}

TEST_CASE("bounds and surface commands") {
  const Table b = cmd_bounds(config(R"({"kappa": 2, "mu": 1, "eta": 1000, "lambda": [0, 0.1], "delta": [0]})",
                                    "bounds"));
  REQUIRE(b.rows.size() == 2);
  const std::size_t lo = column(b, "lower"), hi = column(b, "upper"), c = column(b, "center");
  for (const auto& r : b.rows) CHECK(r[lo] <= r[c]);
  for (const auto& r : b.rows) CHECK(r[c] <= r[hi]);

  const Table s = cmd_surface(config(R"({"kappa": 2, "mu": 1, "eta": 1000, "lambda": [0, 0.2], "delta": [-0.1, 0], "policy": {"K_surface": 5}})",
                                     "surface"));
  REQUIRE(s.rows.size() == 4);
  for (const auto& r : s.rows) {
    CHECK(r[column(s, "f_min")] >= r[column(s, "lower_bound")]);
    const double cs = r[column(s, "bound_case")];
    CHECK((cs == 1.0 || cs == 2.0 || cs == 3.0));
  }
}

TEST_CASE("ed: symmetry breaking structure") {
  const RunConfig cfg = config(R"({"beta": 1, "mu": 1.5, "eta": 2,
                                   "lambda": [-0.2, -0.1, 0, 0.1, 0.2], "delta": [0, 0.1],
                                   "ed": {"n_max": 8, "N_max": 8}})",
                               "ed");
  const Table t = cmd_ed(cfg);
  REQUIRE(t.rows.size() == 10);
  const std::size_t re = column(t, "Re_a0"), im = column(t, "Im_a0"), ab = column(t, "abs_a0");
  const std::size_t n0 = column(t, "n0_exp"), glo = column(t, "griffith_lo"), ghi = column(t, "griffith_hi");
  for (const auto& r : t.rows) {
    if (r[0] == 0.0) {
      CHECK(std::abs(r[re]) <= 1e-12);
      CHECK(std::abs(r[im]) <= 1e-12);
    }
    CHECK(r[ab] * r[ab] <= r[n0]);
    CHECK(r[glo] <= r[ghi]);
    if (r[0] != 0.0) CHECK(r[re] * r[0] < 0.0);
  }
  // rows are lambda-major: (lambda_i, delta_j) at 2 i + j
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(t.rows[static_cast<std::size_t>(2 * i + j)][ab] ==
            doctest::Approx(t.rows[static_cast<std::size_t>(2 * (4 - i) + j)][ab]).epsilon(1e-10));
  CHECK_THROWS_AS(cmd_ed(config(R"({"beta": [1, 2]})", "ed")), ConfigError);
  CHECK_THROWS_AS(cmd_ed(config(R"({"ed": {"modes": [[1,0,0]]}})", "ed")), UnknownMode);
  CHECK_THROWS_AS(cmd_ed(config(R"({"ed": {"n_max": 30, "N_max": 30, "dim_cap": 100}})", "ed")), DimensionTooLarge);
}

TEST_CASE("verify: default suite passes and its report round-trips") {
  const RunConfig cfg = config(R"({"verify": {"trials": 5}, "quadrature": {"radial_order": 48, "angular_order": 64}})",
                               "verify");
  const VerifyResult r = cmd_verify(cfg);
  CHECK(r.passed);
  CHECK(r.report["first_failure"].is_null());
  CHECK(r.report["checks"].size() == 7);
  const std::string text = dump_json(r.report);
  const Json once = Json::parse(text);
  CHECK(dump_json(once) == text);
  CHECK(Json::parse(dump_json(once)) == once);
  CHECK(dump_json(cmd_verify(cfg).report) == text);
}

TEST_CASE("verify: an unconverged quadrature fails and names the check") {
  const RunConfig cfg = config(R"({"verify": {"trials": 2}, "quadrature": {"radial_order": 64, "angular_order": 64,
                                   "z_max": 5, "n_max": 12}})",
                               "verify");
  CHECK_THROWS_AS(cmd_verify(cfg), QuadratureNotConverged);
  const RunConfig wide = config(R"({"verify": {"trials": 2}, "quadrature": {"radial_order": 64, "angular_order": 64,
                                    "z_max": 6, "n_max": 12}})",
                                "verify");
  const VerifyResult r = cmd_verify(wide);
  CHECK_FALSE(r.passed);
  CHECK(r.report["first_failure"] == "resolution_of_identity_and_upper_symbols");
}
