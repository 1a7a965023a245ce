#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fcpp/errors.hpp"
#include "fcpp/study.hpp"

namespace fcpp {
namespace {

std::string csv(const StudyResult& r) {
  std::ostringstream os;
  write_study_csv(os, r);
  return os.str();
}

StudyConfig small_config() {
  StudyConfig c;
  c.scenarios = {Scenario{0.8, {WaitingKind::kMittagLeffler, 0.8}, 2000, 0.02},
                 Scenario{0.6, {WaitingKind::kExponential, 0.0}, 2000, 0.02}};
  c.replicates = 4;
  c.estimators = {EstimatorKind::kCmmod, EstimatorKind::kInterval, EstimatorKind::kLogMoment,
                  EstimatorKind::kMle};
  c.seed = 11;
  return c;
}

TEST(RunStudy, IdenticalAcrossParallelism) {
  StudyConfig c = small_config();
  c.jobs = 1;
  const auto serial = run_study(c);
  c.jobs = 8;
  const auto parallel = run_study(c);
  EXPECT_EQ(csv(serial), csv(parallel));
  ASSERT_EQ(serial.estimates.size(), parallel.estimates.size());
  for (std::size_t i = 0; i < serial.estimates.size(); ++i) {
    const auto& a = serial.estimates[i];
    const auto& b = parallel.estimates[i];
    EXPECT_EQ(a.ok, b.ok);
    for (Parameter p : {Parameter::kBeta, Parameter::kTheta, Parameter::kRho}) {
      const double x = a.value(p);
      const double y = b.value(p);
      EXPECT_TRUE((std::isnan(x) && std::isnan(y)) || x == y);
    }
  }
  EXPECT_EQ(csv(run_study(c)), csv(parallel));
}

TEST(RunStudy, CellInvariants) {
  const auto r = run_study(small_config());
  // 2 scenarios x (3 + 2 + 2 + 2) parameters
  EXPECT_EQ(r.cells.size(), 2u * 9u);
  for (const auto& cell : r.cells) {
    EXPECT_EQ(cell.n_replicates + cell.n_failures, 4u);
    if (cell.n_replicates > 0) {
      EXPECT_GE(cell.rmse * cell.rmse, cell.bias * cell.bias);
    }
    EXPECT_TRUE(std::isnan(cell.mean_seconds));
  }
  EXPECT_EQ(r.estimates.size(), 2u * 4u * 4u);
}

TEST(RunStudy, CsvSchema) {
  const auto r = run_study(small_config());
  std::istringstream in(csv(r));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "scenario,estimator,parameter,true_value,bias,rmse,n_replicates,n_failures,mean_seconds");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, r.cells.size());
}

TEST(RunStudy, TimingIsOptIn) {
  StudyConfig c = small_config();
  c.record_timing = true;
  c.estimators = {EstimatorKind::kInterval};
  const auto r = run_study(c);
  for (const auto& cell : r.cells) {
    EXPECT_GE(cell.mean_seconds, 0.0);
  }
}

TEST(Summarize, HandComputedCell) {
  StudyConfig c;
  c.scenarios = {Scenario{0.5, {WaitingKind::kExponential, 0.0}, 1000, 0.02}};
  c.replicates = 4;
  c.estimators = {EstimatorKind::kInterval};
  std::vector<ReplicateEstimate> e(4);
  const double thetas[] = {0.4, 0.6, 0.7, 0.0};
  for (int i = 0; i < 4; ++i) {
    e[i].replicate = i;
    e[i].estimator = EstimatorKind::kInterval;
    e[i].ok = i < 3;
    e[i].theta = thetas[i];
    e[i].rho = 1.0;
    e[i].seconds = std::nan("");
  }
  const auto cells = summarize(c, e);
  ASSERT_EQ(cells.size(), 2u);
  const auto& t = cells[0];
  EXPECT_EQ(t.parameter, Parameter::kTheta);
  EXPECT_EQ(t.n_replicates, 3u);
  EXPECT_EQ(t.n_failures, 1u);
  // errors -0.1, 0.1, 0.2
  EXPECT_NEAR(t.bias, 0.2 / 3.0, 1e-15);
  EXPECT_NEAR(t.rmse, std::sqrt(0.06 / 3.0), 1e-15);
  EXPECT_NEAR(t.mean_abs_error, 0.4 / 3.0, 1e-15);
  EXPECT_EQ(cells[1].rmse, 0.0);
}

TEST(Study, Validation) {
  StudyConfig c = small_config();
  c.replicates = 0;
  EXPECT_THROW(run_study(c), DomainError);
  c = small_config();
  c.lower_bound = 0.6;
  EXPECT_THROW(run_study(c), DomainError);
  c = small_config();
  c.scenarios.clear();
  EXPECT_THROW(run_study(c), DomainError);
  EXPECT_THROW(parse_estimator("bogus"), ParseError);
  EXPECT_EQ(parse_estimator("logmom"), EstimatorKind::kLogMoment);
}

TEST(Study, FailuresAreRecordedNotDropped) {
  StudyConfig c;
  // 3 events above the threshold at most: k = ceil(0.02 * 100) = 2 leaves one
  // IET, which every estimator rejects.
  c.scenarios = {Scenario{0.9, {WaitingKind::kExponential, 0.0}, 100, 0.02}};
  c.replicates = 3;
  c.estimators = {EstimatorKind::kCmmod, EstimatorKind::kInterval};
  const auto r = run_study(c);
  for (const auto& e : r.estimates) {
    EXPECT_FALSE(e.ok);
    EXPECT_FALSE(e.error.empty());
  }
  for (const auto& cell : r.cells) {
    EXPECT_EQ(cell.n_failures, 3u);
    EXPECT_TRUE(std::isnan(cell.bias));
  }
  std::ostringstream os;
  write_study_csv(os, r);
  EXPECT_NE(os.str().find(",NA,NA,0,3,NA"), std::string::npos);
}

TEST(Study, ScenarioNamesAndGrid) {
  EXPECT_EQ((Scenario{0.8, {WaitingKind::kMittagLeffler, 0.8}, 10000, 0.02}.name()),
            "ml:0.8/theta=0.8/n=10000/frac=0.02");
  EXPECT_EQ(full_grid().size(), 19u * 6u);
  EXPECT_EQ(format_number(std::nan("")), "NA");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Study, ScenarioTwoHighParametersRecovered) {
  StudyConfig c;
  c.scenarios = {Scenario{0.9, {WaitingKind::kMittagLeffler, 0.9}, 10000, 0.02}};
  c.replicates = 100;
  const auto r = run_study(c);
  EXPECT_LT(r.cell(0, EstimatorKind::kCmmod, Parameter::kBeta).rmse, 0.15);
  EXPECT_LT(r.cell(0, EstimatorKind::kCmmod, Parameter::kTheta).rmse, 0.15);
}

TEST(Study, ExponentialWaitsThetaRecoveredByBothEstimators) {
  StudyConfig c;
  c.scenarios = {Scenario{0.75, {WaitingKind::kExponential, 0.0}, 10000, 0.02},
                 Scenario{1.0, {WaitingKind::kExponential, 0.0}, 10000, 0.02}};
  c.replicates = 100;
  c.estimators = {EstimatorKind::kCmmod, EstimatorKind::kInterval};
  const auto r = run_study(c);
  for (std::size_t s = 0; s < 2; ++s) {
    for (EstimatorKind e : c.estimators) {
      EXPECT_LT(std::abs(r.cell(s, e, Parameter::kTheta).bias), 0.1) << s << to_string(e);
    }
  }
}

TEST(TimingProfile, SingleRow) {
  const auto t = timing_profile({100}, 2);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].k, 100u);
  EXPECT_GT(t.rows[0].mean_seconds, 0.0);
  EXPECT_TRUE(std::isnan(t.slope));
  EXPECT_THROW(timing_profile({}, 1), DomainError);
}

TEST(TimingProfile, TwoHundredExceedanceFitIsFast) {
  const auto t = timing_profile({200}, 3);
  EXPECT_LT(t.rows[0].mean_seconds, 10.0);
  EXPECT_EQ(t.rows[0].failures, 0u);
}

}  // namespace
}  // namespace fcpp
