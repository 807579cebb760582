#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gdpp/error.hpp"
#include "gdpp/experiments.hpp"

using namespace gdpp;

namespace {

std::string csv_of(const ResultTable& t) {
  std::ostringstream out;
  write_result_csv(t, out);
  return out.str();
}

ExperimentConfig small_known() {
  ExperimentConfig cfg = default_config(Figure::Fig1a);
  cfg.grid = {0.1};
  cfg.graphs = 4;
  cfg.signals = 5;
  cfg.threads = 1;
  return cfg;
}

ExperimentConfig small_unknown(Figure f) {
  ExperimentConfig cfg = default_config(f);
  cfg.graphs = 2;
  cfg.signals = 3;
  cfg.q_runs = 50;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  for (Figure f : {Figure::Fig1a, Figure::Fig1b, Figure::Fig1c}) {
    ExperimentConfig cfg = default_config(f);
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(parse_config_text(format_config(cfg)), cfg);
    apply_full_scale(cfg, f);
    EXPECT_EQ(cfg.graphs, 100);
    EXPECT_EQ(parse_config_text(format_config(cfg)), cfg);
  }
  ExperimentConfig odd = default_config(Figure::Fig1b);
  odd.gamma = 1.0 / 3.0;
  odd.grid = {0.1, 1e-7, 2.0 / 7.0};
  odd.seed = 18446744073709551615ULL;
  EXPECT_EQ(parse_config_text(format_config(odd)), odd);
}

TEST(Config, MinimalFileFillsDefaults) {
  EXPECT_EQ(parse_config_text(""), ExperimentConfig{});
  const ExperimentConfig cfg = parse_config_text("# comment only\n\n  n = 200   # trailing\nsignals=7\n");
  EXPECT_EQ(cfg.n, 200);
  EXPECT_EQ(cfg.signals, 7);
  EXPECT_EQ(cfg.graphs, ExperimentConfig{}.graphs);
}

TEST(Config, UnknownKeyIsNamed) {
  try {
    parse_config_text("n = 100\nbogus_key = 3\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("bogus_key"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  for (const char* bad : {"n = abc\n", "gamma\n", "basis = sideways\n", "grid = 0.1,,0.2\n", "seed = -1\n"}) {
    try {
      parse_config_text(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Config, Validation) {
  const auto invalid = [](const ExperimentConfig& cfg) {
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidParams;
    }
    return false;
  };
  ExperimentConfig cfg;
  cfg.grid.clear();
  EXPECT_TRUE(invalid(cfg));
  cfg = ExperimentConfig{};
  cfg.samplers = {"wilson"};
  EXPECT_TRUE(invalid(cfg));
  cfg = default_config(Figure::Fig1c);
  cfg.samplers = {"maxvol"};
  EXPECT_TRUE(invalid(cfg));
  cfg = default_config(Figure::Fig1c);
  cfg.grid = {2.5};
  EXPECT_TRUE(invalid(cfg));
  cfg = default_config(Figure::Fig1a);
  cfg.sweep = SweepVariable::Gamma;
  EXPECT_TRUE(invalid(cfg));
  cfg = default_config(Figure::Fig1a);
  cfg.signals = 0;
  EXPECT_TRUE(invalid(cfg));
}

TEST(Percentile, NearestRank) {
  std::vector<double> v{10, 1, 9, 2, 8, 3, 7, 4, 6, 5};
  EXPECT_EQ(nearest_rank_percentile(v, 10), 1);
  EXPECT_EQ(nearest_rank_percentile(v, 90), 9);
  EXPECT_EQ(nearest_rank_percentile(v, 0), 1);
  EXPECT_EQ(nearest_rank_percentile(v, 100), 10);
  EXPECT_EQ(nearest_rank_percentile({5, 1, 3, 2, 4}, 50), 3);
  EXPECT_EQ(nearest_rank_percentile({7}, 10), 7);
  EXPECT_THROW(nearest_rank_percentile({}, 50), Error);
}

TEST(ResultCsv, RoundTripsBitExact) {
  ResultTable t;
  t.sweep = SweepVariable::Gamma;
  t.rows.push_back({1e-7, "wilson", 1.0 / 3.0, 0.1 + 0.2, 2.0 / 3.0, 2.25, 35, {}});
  t.rows.push_back({1e2, "iid", 0.7071067811865476, 1e-300, 1.0, 2.0, 1, {}});
  const ResultTable back = [&] {
    std::istringstream in(csv_of(t));
    return read_result_csv(in);
  }();
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.sweep, SweepVariable::Gamma);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.rows[i].sweep_value, t.rows[i].sweep_value);
    EXPECT_EQ(back.rows[i].sampler, t.rows[i].sampler);
    EXPECT_EQ(back.rows[i].mean_error, t.rows[i].mean_error);
    EXPECT_EQ(back.rows[i].p10, t.rows[i].p10);
    EXPECT_EQ(back.rows[i].p90, t.rows[i].p90);
    EXPECT_EQ(back.rows[i].mean_size, t.rows[i].mean_size);
    EXPECT_EQ(back.rows[i].trials, t.rows[i].trials);
  }
  EXPECT_EQ(csv_of(back), csv_of(t));
  EXPECT_EQ(csv_of(t).substr(0, csv_of(t).find('\n')), "sweep,value,sampler,mean_error,p10,p90,mean_size,trials");
  EXPECT_EQ(&t.row(1e2, "iid"), &t.rows[1]);
  EXPECT_THROW(t.row(1e2, "wilson"), Error);

  std::istringstream bad("sweep,value,sampler\n");
  EXPECT_THROW(read_result_csv(bad), Error);
}

TEST(KnownBasisRun, SmallGridAccuracy) {
  ExperimentConfig cfg = small_known();
  cfg.graphs = 10;
  cfg.signals = 10;
  const ResultTable t = run_experiment(cfg);
  ASSERT_EQ(t.rows.size(), 5u);
  for (const ResultRow& row : t.rows) {
    EXPECT_EQ(row.trials, 100);
    EXPECT_EQ(row.errors.size(), 100u);
    EXPECT_LT(row.mean_error, 0.1) << row.sampler;
    EXPECT_LE(row.p10, row.p90);
    EXPECT_DOUBLE_EQ(row.mean_size, 2.0) << row.sampler;
  }
  EXPECT_EQ(t.graphs.size(), 10u);
}

TEST(KnownBasisRun, NoiselessIsExact) {
  ExperimentConfig cfg = small_known();
  cfg.noise_sigma = 0.0;
  cfg.grid = {0.05, 0.4};
  for (const ResultRow& row : run_experiment(cfg).rows) EXPECT_LT(row.mean_error, 1e-9) << row.sampler;
}

TEST(KnownBasisRun, SingleTrialSmoke) {
  ExperimentConfig cfg = small_known();
  cfg.graphs = 1;
  cfg.signals = 1;
  const ResultTable t = run_experiment(cfg);
  EXPECT_EQ(t.rows.size(), 5u);
  for (const ResultRow& row : t.rows) {
    EXPECT_EQ(row.trials, 1);
    EXPECT_EQ(row.p10, row.p90);
    EXPECT_EQ(row.p10, row.mean_error);
  }
}

TEST(Determinism, IdenticalAcrossRunsAndThreadCounts) {
  ExperimentConfig cfg = small_known();
  const std::string a = csv_of(run_experiment(cfg));
  EXPECT_EQ(csv_of(run_experiment(cfg)), a);
  cfg.threads = 3;
  EXPECT_EQ(csv_of(run_experiment(cfg)), a);
  cfg.seed = 2;
  EXPECT_NE(csv_of(run_experiment(cfg)), a);

  ExperimentConfig u = small_unknown(Figure::Fig1c);
  u.grid = {2, 3};
  const std::string ua = csv_of(run_experiment(u));
  u.threads = 2;
  EXPECT_EQ(csv_of(run_experiment(u)), ua);
}

// A sampler's stream depends on its own name only.
TEST(Determinism, AddingSamplersDoesNotPerturbOthers) {
  ExperimentConfig cfg = small_known();
  cfg.samplers = {"dpp-ideal"};
  const ResultRow alone = run_experiment(cfg).rows.at(0);
  cfg.samplers = {"greedy-wce", "maxvol", "dpp-ideal"};
  const ResultTable all = run_experiment(cfg);
  EXPECT_EQ(all.row(0.1, "dpp-ideal").errors, alone.errors);
}

TEST(UnknownBasisRun, GammaSweepSmoke) {
  ExperimentConfig cfg = small_unknown(Figure::Fig1b);
  cfg.graphs = 1;
  cfg.signals = 1;
  const ResultTable t = run_experiment(cfg);
  EXPECT_EQ(t.sweep, SweepVariable::Gamma);
  EXPECT_EQ(t.rows.size(), cfg.grid.size() * 2);
  for (double g : cfg.grid) {
    // Both samplers share the draw size.
    EXPECT_EQ(t.row(g, "wilson").mean_size, t.row(g, "iid").mean_size);
    EXPECT_EQ(t.row(g, "wilson").trials, 1);
  }
}

TEST(UnknownBasisRun, MSweepSmokeAndGraphLog) {
  ExperimentConfig cfg = small_unknown(Figure::Fig1c);
  cfg.grid = {2, 4};
  const ResultTable t = run_experiment(cfg);
  EXPECT_EQ(t.rows.size(), 4u);
  for (const ResultRow& row : t.rows) {
    EXPECT_EQ(row.trials, 6);
    EXPECT_GE(row.mean_size, 1.0);
    EXPECT_TRUE(std::isfinite(row.mean_error));
  }
  EXPECT_EQ(t.graphs.size(), 4u);
  std::ostringstream log;
  write_graph_log_csv(t, log);
  EXPECT_EQ(log.str().substr(0, log.str().find('\n')), "sweep,value,graph,components,spectral_gap");
}

TEST(Scalability, ThousandNodesUnderOneSecond) {
  const ScalabilityResult r = run_scalability_check(1000, 5e-4, 1, 10);
  EXPECT_EQ(r.n, 1000);
  EXPECT_EQ(r.runs, 10);
  EXPECT_LT(r.max_seconds, 1.0);
  EXPECT_GE(r.mean_size, 1.0);
  std::ostringstream out;
  write_scalability_csv(r, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "n,edges,q,runs,mean_size,mean_seconds,max_seconds,generation_seconds");
}

TEST(Scalability, HugeQSamplesEveryNode) {
  const ScalabilityResult r = run_scalability_check(1000, 1e6, 2, 3);
  EXPECT_EQ(r.mean_size, 1000.0);
  EXPECT_THROW(run_scalability_check(1000, 0.0), Error);
}
