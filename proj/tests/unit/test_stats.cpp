#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "monowave/error.hpp"
#include "monowave/stats.hpp"
#include "oracles.hpp"

using namespace monowave;

namespace {

TopologyType type_of(int k) {
  return k == 0 ? TopologyType::circle() : TopologyType::surface(k - 1);
}

EmpiricalTopologyMeasure from_counts(const std::vector<std::int64_t>& counts) {
  EmpiricalTopologyMeasure m;
  for (std::size_t k = 0; k < counts.size(); ++k) m.add(type_of(static_cast<int>(k)), counts[k]);
  return m;
}

oracle::CountMeasure as_oracle(const std::vector<std::int64_t>& counts) {
  return oracle::CountMeasure{counts};
}

std::vector<std::int64_t> random_counts(std::mt19937_64& rng, int support) {
  std::uniform_int_distribution<std::int64_t> count(0, 50);
  std::vector<std::int64_t> c(static_cast<std::size_t>(support));
  for (auto& x : c) x = count(rng);
  if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) c[0] = 1;
  return c;
}

}  // namespace

TEST(Measure, CountsAndMasses) {
  const std::vector<TopologyType> types = {TopologyType::circle(), TopologyType::circle(),
                                           TopologyType::surface(0),
                                           TopologyType::unclassified("open")};
  const auto m = empirical_measure(types);
  EXPECT_EQ(m.total(), 3);
  EXPECT_EQ(m.unclassified(), 1);
  EXPECT_EQ(m.count(TopologyType::circle()), 2);
  EXPECT_DOUBLE_EQ(m.mass(TopologyType::surface(0)), 1.0 / 3.0);
  EXPECT_EQ(m.mass(TopologyType::surface(4)), 0.0);
  EXPECT_EQ(EmpiricalTopologyMeasure{}.mass(TopologyType::circle()), 0.0);
}

TEST(Measure, MergeIsCommutative) {
  const auto a = from_counts({1, 2, 0, 4});
  const auto b = from_counts({0, 5, 3});
  auto ab = a;
  ab.merge(b);
  auto ba = b;
  ba.merge(a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(ab.total(), 15);
}

TEST(Discrepancy, SimpleValues) {
  EXPECT_EQ(discrepancy(from_counts({1, 1}), from_counts({2, 2})), 0.0);
  EXPECT_EQ(discrepancy(from_counts({1, 0}), from_counts({0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(discrepancy(from_counts({3, 1}), from_counts({1, 1})), 0.25);
}

TEST(Discrepancy, MatchesSubsetSupremumExactly) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> support(1, 12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int s = support(rng);
    const auto a = random_counts(rng, s);
    const auto b = random_counts(rng, s);
    EXPECT_EQ(discrepancy(from_counts(a), from_counts(b)),
              oracle::brute_force_discrepancy(as_oracle(a), as_oracle(b)))
        << "trial " << trial;
  }
}

TEST(Discrepancy, MetricAxioms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = from_counts(random_counts(rng, 6));
    const auto b = from_counts(random_counts(rng, 6));
    const auto c = from_counts(random_counts(rng, 6));
    EXPECT_EQ(discrepancy(a, a), 0.0);
    EXPECT_EQ(discrepancy(a, b), discrepancy(b, a));
    EXPECT_GE(discrepancy(a, b), 0.0);
    EXPECT_LE(discrepancy(a, b), 1.0);
    EXPECT_LE(discrepancy(a, c), discrepancy(a, b) + discrepancy(b, c) + 1e-15);
  }
}

TEST(Discrepancy, ProbabilityVectors) {
  const std::map<TopologyType, double> mu = {{TopologyType::circle(), 0.5},
                                             {TopologyType::surface(0), 0.5}};
  const std::map<TopologyType, double> nu = {{TopologyType::circle(), 1.0}};
  EXPECT_DOUBLE_EQ(discrepancy(mu, nu), 0.5);
  const std::map<TopologyType, double> bad = {{TopologyType::circle(), 0.7}};
  EXPECT_THROW(discrepancy(mu, bad), Error);
  EXPECT_THROW(discrepancy(EmpiricalTopologyMeasure{}, from_counts({1})), Error);
}

TEST(Scaling, RecoversSyntheticPowerLaw) {
  std::vector<ScalingRun> runs;
  for (double v : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    for (double noise : {-0.01, 0.0, 0.01}) runs.push_back({v, 0.3 * v * (1.0 + noise)});
  }
  const ScalingFit fit = ns_scaling(runs);
  ASSERT_EQ(fit.volumes.size(), 5u);
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_NEAR(fit.c_hat, 0.3, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.volumes[2].runs, 3);
  EXPECT_NEAR(fit.volumes[2].std_error, 0.3 * 40.0 * 0.01 / std::sqrt(3.0), 1e-12);
}

TEST(Scaling, SineLatticeCountsAreExactlyLinear) {
  const Field f = make_test_field("sine_lattice").field;
  std::vector<ScalingRun> runs;
  for (int m = 1; m <= 4; ++m) {
    const Box box = Box::cube(2, kPi * m);
    runs.push_back({box.volume(), static_cast<double>(census(f, box, kDefaultSpacing).interior_count())});
  }
  const ScalingFit fit = ns_scaling(runs);
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_NEAR(fit.c_hat, 1.0 / (2.0 * kPi * kPi), 1e-12);
}

TEST(Scaling, NeedsFourVolumes) {
  const std::vector<ScalingRun> runs = {{1, 1}, {2, 2}, {3, 3}, {3, 3}};
  try {
    ns_scaling(runs);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
}

TEST(Quantile, LinearInterpolation) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_DOUBLE_EQ(quantile({0, 10}, 0.9), 9.0);
  EXPECT_EQ(quantile({5}, 0.3), 5.0);
  EXPECT_THROW(quantile({}, 0.5), Error);
}

TEST(Concentration, DeterministicFieldHasZeroDiscrepancy) {
  const Field f = make_test_field("sine_lattice").field;
  const std::vector<Box> windows = {Box::cube(2, kPi), Box::cube(2, 2 * kPi)};
  const auto result = concentration_experiment(
      windows, 20, [&](std::size_t w, std::size_t) { return census(f, windows[w], kDefaultSpacing); },
      2);
  ASSERT_EQ(result.rows.size(), 2u);
  for (const auto& row : result.rows) {
    EXPECT_EQ(row.empty_trials, 0);
    EXPECT_EQ(row.median, 0.0);
    EXPECT_EQ(row.p90, 0.0);
  }
  EXPECT_EQ(result.reference.total(), 20 * sine_lattice_loops(2));
  EXPECT_EQ(result.rows[0].mean_interior, sine_lattice_loops(1));
}

TEST(Concentration, RejectsFewTrialsAndEmptyReference) {
  const std::vector<Box> windows = {Box::cube(2, kPi)};
  const CensusFn empty = [](std::size_t, std::size_t) { return WindowCensus{}; };
  try {
    concentration_experiment(windows, 19, empty);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidSpec);
  }
  try {
    concentration_experiment(windows, 20, empty);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
}

TEST(Bootstrap, MedianOrder) {
  std::vector<double> small(40), large(40);
  for (int k = 0; k < 40; ++k) {
    small[k] = 0.5 + 0.01 * k;
    large[k] = 0.1 + 0.01 * k;
  }
  EXPECT_EQ(bootstrap_median_order(small, large, 500, 1), 1.0);
  EXPECT_EQ(bootstrap_median_order(large, small, 500, 1), 0.0);
  EXPECT_EQ(bootstrap_median_order(small, large, 500, 9), bootstrap_median_order(small, large, 500, 9));
  EXPECT_THROW(bootstrap_median_order({}, large, 10, 1), Error);
}
