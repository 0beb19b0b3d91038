#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "uavlink/errors.hpp"
#include "uavlink/radio.hpp"

using namespace uavlink;

namespace {

const PathLossModel kSimple{-40.0, 2.0, 1.0};

std::vector<RssiSample> exact_samples(const PathLossModel& m, std::initializer_list<double> ds) {
  std::vector<RssiSample> out;
  for (const double d : ds) {
    out.push_back({d, predict_rssi(m, d), Environment::Outdoor});
  }
  return out;
}

}  // namespace

TEST(PredictRssi, Examples) {
  EXPECT_DOUBLE_EQ(predict_rssi(kSimple, 1.0), -40.0);
  EXPECT_DOUBLE_EQ(predict_rssi(kSimple, 100.0), -80.0);
  EXPECT_THROW(predict_rssi(kSimple, 0.0), InputDomainError);
  EXPECT_THROW(predict_rssi(kSimple, -5.0), InputDomainError);
}

TEST(PredictRssi, StrictlyDecreasing) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logd(-1.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    double d1 = std::pow(10.0, logd(rng));
    double d2 = std::pow(10.0, logd(rng));
    if (d1 == d2) continue;
    if (d1 > d2) std::swap(d1, d2);
    ASSERT_GT(predict_rssi(kSimple, d1), predict_rssi(kSimple, d2));
  }
}

TEST(InvertDistance, Examples) {
  EXPECT_NEAR(invert_distance(kSimple, -80.0), 100.0, 1e-9);
  EXPECT_DOUBLE_EQ(invert_distance(kSimple, -40.0), 1.0);
}

TEST(InvertDistance, MutualInverseOverRange) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> logd(-1.0, 5.0);  // 0.1 m .. 100 km
  for (const auto& m : {kSimple, default_indoor_model(), default_outdoor_model(),
                        PathLossModel{-12.0, 3.7, 2.5}}) {
    for (int i = 0; i < 2000; ++i) {
      const double d = std::pow(10.0, logd(rng));
      ASSERT_NEAR(invert_distance(m, predict_rssi(m, d)) / d, 1.0, 1e-9);
    }
  }
}

TEST(FitModel, ExactRecovery) {
  const PathLossModel fit = fit_model(exact_samples(kSimple, {1.0, 10.0, 100.0}));
  EXPECT_NEAR(fit.intercept_dbm, -40.0, 1e-9);
  EXPECT_NEAR(fit.exponent, 2.0, 1e-9);
}

TEST(FitModel, TwoPointsInterpolate) {
  const std::vector<RssiSample> s{{2.0, -50.0, Environment::Indoor}, {20.0, -80.0, Environment::Indoor}};
  const PathLossModel fit = fit_model(s);
  EXPECT_NEAR(predict_rssi(fit, 2.0), -50.0, 1e-9);
  EXPECT_NEAR(predict_rssi(fit, 20.0), -80.0, 1e-9);
  EXPECT_NEAR(fit.exponent, 3.0, 1e-12);
}

TEST(FitModel, DegenerateInputs) {
  EXPECT_THROW(fit_model(std::vector<RssiSample>{}), DegenerateFitError);
  EXPECT_THROW(fit_model(exact_samples(kSimple, {5.0})), DegenerateFitError);
  EXPECT_THROW(fit_model(exact_samples(kSimple, {5.0, 5.0, 5.0})), DegenerateFitError);
  // RSSI rising with distance has no positive exponent.
  const std::vector<RssiSample> rising{{1.0, -60.0, Environment::Outdoor}, {10.0, -50.0, Environment::Outdoor}};
  EXPECT_THROW(fit_model(rising), DegenerateFitError);
}

TEST(FitModel, NoisyExponentWithinTolerance) {
  const PathLossModel truth{-45.0, 2.5, 1.0};
  std::mt19937_64 rng(2012);
  std::uniform_real_distribution<double> noise(-0.5, 0.5);
  std::uniform_real_distribution<double> logd(0.0, 3.0);
  std::vector<RssiSample> s;
  for (int i = 0; i < 50; ++i) {
    const double d = std::pow(10.0, logd(rng));
    s.push_back({d, predict_rssi(truth, d) + noise(rng), Environment::Outdoor});
  }
  EXPECT_NEAR(fit_model(s).exponent, 2.5, 0.15);
}

TEST(FitModel, ResidualNotBeatenByParameterGrid) {
  const PathLossModel truth{-45.0, 2.5, 1.0};
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> noise(-0.5, 0.5);
  std::uniform_real_distribution<double> logd(0.0, 3.0);
  std::vector<RssiSample> s;
  for (int i = 0; i < 50; ++i) {
    const double d = std::pow(10.0, logd(rng));
    s.push_back({d, predict_rssi(truth, d) + noise(rng), Environment::Outdoor});
  }
  const PathLossModel fit = fit_model(s);
  const double best = residual_sum_of_squares(fit, s);
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      const PathLossModel candidate{truth.intercept_dbm - 2.0 + 4.0 * i / 99.0,
                                    truth.exponent - 0.3 + 0.6 * j / 99.0, 1.0};
      ASSERT_LE(best, residual_sum_of_squares(candidate, s) + 1e-9);
    }
  }
}

TEST(Thresholds, DefaultsReproduceBandEdges) {
  EXPECT_NEAR(derive_threshold_distance(default_indoor_model(), kDefaultRssiThresholdDbm), 162.0, 1.0);
  EXPECT_NEAR(derive_threshold_distance(default_outdoor_model(), kDefaultRssiThresholdDbm), 725.0, 1.0);
  const double outdoor = derive_threshold_distance(default_outdoor_model(), kDefaultRssiThresholdDbm);
  EXPECT_GE(outdoor, 700.0);
  EXPECT_LE(outdoor, 750.0);
  EXPECT_EQ(default_indoor_model().exponent, 2.8);
  EXPECT_EQ(default_outdoor_model().exponent, 2.0);
}

TEST(Thresholds, InversionConsistency) {
  const auto m = default_outdoor_model();
  EXPECT_NEAR(derive_threshold_distance(m, predict_rssi(m, 300.0)), 300.0, 1e-9);
}

TEST(Thresholds, Validation) {
  EXPECT_NO_THROW(validate(default_thresholds()));
  EXPECT_THROW(validate(LinkThresholds{-30.0, 725.0, 162.0}), InputDomainError);
  EXPECT_THROW(validate(LinkThresholds{-30.0, 0.0, 162.0}), InputDomainError);
  EXPECT_THROW(derive_thresholds(default_outdoor_model(), default_indoor_model(), -30.0),
               InputDomainError);
}

TEST(Measurements, LoadAndFilter) {
  std::istringstream in(
      "# bench run\n"
      "distance_m,rssi_dbm,environment\n"
      "10,-20.5,indoor\n"
      "\n"
      "50,-12,outdoor\n"
      "100,-25.25,outdoor\n");
  const auto samples = load_measurements(in);
  ASSERT_EQ(samples.size(), 3u);
  EXPECT_EQ(samples[0].environment, Environment::Indoor);
  EXPECT_EQ(filter_environment(samples, Environment::Outdoor).size(), 2u);

  std::ostringstream out;
  write_measurements(out, samples);
  std::istringstream again(out.str());
  const auto reloaded = load_measurements(again);
  ASSERT_EQ(reloaded.size(), samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    EXPECT_EQ(reloaded[i].distance_m, samples[i].distance_m);
    EXPECT_EQ(reloaded[i].rssi_dbm, samples[i].rssi_dbm);
    EXPECT_EQ(reloaded[i].environment, samples[i].environment);
  }
}

TEST(Measurements, Errors) {
  std::istringstream bad_env("distance_m,rssi_dbm,environment\n10,-20,basement\n");
  try {
    load_measurements(bad_env, "m.csv");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream bad_distance("distance_m,rssi_dbm,environment\n0,-20,indoor\n");
  EXPECT_THROW(load_measurements(bad_distance), LoadError);
  std::istringstream bad_header("d,r,e\n1,2,indoor\n");
  EXPECT_THROW(load_measurements(bad_header), LoadError);
}

TEST(Measurements, ShippedFileRefitsNearDefaults) {
  std::ifstream in(UAVLINK_DATA_DIR "/measurements/measurements.csv");
  ASSERT_TRUE(in);
  const auto samples = load_measurements(in);
  const auto indoor = fit_model(filter_environment(samples, Environment::Indoor));
  const auto outdoor = fit_model(filter_environment(samples, Environment::Outdoor));
  EXPECT_NEAR(derive_threshold_distance(indoor, kDefaultRssiThresholdDbm), 162.0, 5.0);
  EXPECT_NEAR(derive_threshold_distance(outdoor, kDefaultRssiThresholdDbm), 725.0, 5.0);
}
