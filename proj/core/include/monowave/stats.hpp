#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "monowave/ensemble.hpp"
#include "monowave/nodal.hpp"
#include "monowave/pipeline.hpp"

namespace monowave {

/// Counts of classified component types. Unclassified entries are kept out
/// of the measure and counted on the side. Merging is commutative.
class EmpiricalTopologyMeasure {
 public:
  void add(const TopologyType& type, std::int64_t count = 1);
  void merge(const EmpiricalTopologyMeasure& other);

  std::int64_t total() const { return total_; }
  std::int64_t count(const TopologyType& type) const;
  /// counts[t] / total, or 0 when the measure is empty.
  double mass(const TopologyType& type) const;
  std::int64_t unclassified() const { return unclassified_; }
  const std::map<TopologyType, std::int64_t>& counts() const { return counts_; }

  bool operator==(const EmpiricalTopologyMeasure&) const = default;

 private:
  std::map<TopologyType, std::int64_t> counts_;
  std::int64_t total_ = 0;
  std::int64_t unclassified_ = 0;
};

EmpiricalTopologyMeasure empirical_measure(std::span<const TopologyType> types);

/// (1/2) sum_t |mu(t) - nu(t)|, the supremum of |mu(F) - nu(F)| over finite
/// sets of types. Evaluated in exact integer arithmetic as
/// sum |a_t B - b_t A| / (2 A B) and rounded once. Throws kNonProbability if
/// either measure is empty.
double discrepancy(const EmpiricalTopologyMeasure& mu, const EmpiricalTopologyMeasure& nu);

/// Same for explicit probability vectors; both must be nonnegative and sum to
/// 1 within 1e-12.
double discrepancy(const std::map<TopologyType, double>& mu,
                   const std::map<TopologyType, double>& nu);

struct ScalingRun {
  double volume = 0.0;
  double count = 0.0;
};

struct VolumeSummary {
  double volume = 0.0;
  int runs = 0;
  double mean_count = 0.0;
  double std_error = 0.0;
  double density = 0.0;  // mean_count / volume
};

struct ScalingFit {
  double c_hat = 0.0;          // least squares for count = c volume
  double exponent = 0.0;       // slope of log(mean count) against log(volume)
  double log_prefactor = 0.0;  // intercept of the same fit
  double r_squared = 0.0;      // of the log-log fit
  std::vector<VolumeSummary> volumes;  // ascending volume
};

/// Needs at least 4 distinct volumes and positive mean counts; otherwise
/// throws kInsufficientData.
ScalingFit ns_scaling(std::span<const ScalingRun> runs);

/// Type-7 (linear interpolation) sample quantile, p in [0, 1].
double quantile(std::vector<double> values, double p);
double median(std::vector<double> values);

/// Census of trial `trial` on window `window`.
using CensusFn = std::function<WindowCensus(std::size_t window, std::size_t trial)>;

struct ConcentrationRow {
  Box window;
  int trials = 0;
  int empty_trials = 0;  // no interior component, so mu_f is undefined
  double median = 0.0;
  double p90 = 0.0;
  double mean_interior = 0.0;
  std::vector<double> discrepancies;  // one per non-empty trial, trial order
};

struct ConcentrationResult {
  EmpiricalTopologyMeasure reference;  // pooled over the largest window
  std::vector<ConcentrationRow> rows;  // input window order
  std::vector<std::vector<WindowCensus>> censuses;  // [window][trial]
};

/// Discrepancy of each trial's measure from the pooled measure of the
/// largest window. Throws kInvalidSpec for fewer than 20 trials and
/// kInsufficientData if the reference is empty.
ConcentrationResult concentration_experiment(std::span<const Box> windows, int trials,
                                             const CensusFn& census_of, int threads = 1);

/// Ensemble version: trial t on window w samples stream w * trials + t.
ConcentrationResult concentration_experiment(const FieldSpec& spec,
                                             std::span<const Box> windows, int trials,
                                             double spacing, int threads = 1);

/// Fraction of bootstrap resamples (each sample resampled independently) in
/// which median(large) <= median(small).
double bootstrap_median_order(std::span<const double> small, std::span<const double> large,
                              int resamples, std::uint64_t seed);

}  // namespace monowave
