#include "monowave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "monowave/error.hpp"
#include "monowave/parallel.hpp"
#include "monowave/rng.hpp"

namespace monowave {
namespace {

__extension__ typedef __int128 Wide;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

void check_probability(const std::map<TopologyType, double>& m, const char* name) {
  double sum = 0.0;
  for (const auto& [type, mass] : m) {
    if (!(mass >= 0.0)) {
      throw Error(ErrorKind::kNonProbability, std::string(name) + " has a negative mass");
    }
    sum += mass;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorKind::kNonProbability,
                std::string(name) + " sums to " + std::to_string(sum) + ", not 1");
  }
}

}  // namespace

void EmpiricalTopologyMeasure::add(const TopologyType& type, std::int64_t count) {
  if (count <= 0) return;
  if (!type.classified()) {
    unclassified_ += count;
    return;
  }
  counts_[type] += count;
  total_ += count;
}

void EmpiricalTopologyMeasure::merge(const EmpiricalTopologyMeasure& other) {
  for (const auto& [type, count] : other.counts_) counts_[type] += count;
  total_ += other.total_;
  unclassified_ += other.unclassified_;
}

std::int64_t EmpiricalTopologyMeasure::count(const TopologyType& type) const {
  const auto it = counts_.find(type);
  return it == counts_.end() ? 0 : it->second;
}

double EmpiricalTopologyMeasure::mass(const TopologyType& type) const {
  return total_ == 0 ? 0.0 : static_cast<double>(count(type)) / static_cast<double>(total_);
}

EmpiricalTopologyMeasure empirical_measure(std::span<const TopologyType> types) {
  EmpiricalTopologyMeasure m;
  for (const TopologyType& t : types) m.add(t);
  return m;
}

double discrepancy(const EmpiricalTopologyMeasure& mu, const EmpiricalTopologyMeasure& nu) {
  if (mu.total() == 0 || nu.total() == 0) {
    throw Error(ErrorKind::kNonProbability, "discrepancy of an empty measure");
  }
  const Wide a_total = mu.total();
  const Wide b_total = nu.total();
  Wide numerator = 0;
  auto a = mu.counts().begin();
  auto b = nu.counts().begin();
  while (a != mu.counts().end() || b != nu.counts().end()) {
    Wide ca = 0;
    Wide cb = 0;
    if (b == nu.counts().end() || (a != mu.counts().end() && a->first < b->first)) {
      ca = (a++)->second;
    } else if (a == mu.counts().end() || b->first < a->first) {
      cb = (b++)->second;
    } else {
      ca = (a++)->second;
      cb = (b++)->second;
    }
    numerator += wide_abs(ca * b_total - cb * a_total);
  }
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(2 * a_total * b_total));
}

double discrepancy(const std::map<TopologyType, double>& mu,
                   const std::map<TopologyType, double>& nu) {
  check_probability(mu, "first measure");
  check_probability(nu, "second measure");
  double sum = 0.0;
  for (const auto& [type, mass] : mu) {
    const auto it = nu.find(type);
    sum += std::abs(mass - (it == nu.end() ? 0.0 : it->second));
  }
  for (const auto& [type, mass] : nu) {
    if (!mu.contains(type)) sum += mass;
  }
  return 0.5 * sum;
}

ScalingFit ns_scaling(std::span<const ScalingRun> runs) {
  std::vector<ScalingRun> sorted(runs.begin(), runs.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScalingRun& x, const ScalingRun& y) { return x.volume < y.volume; });
  ScalingFit fit;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() &&
           std::abs(sorted[j].volume - sorted[i].volume) <= 1e-12 * sorted[i].volume) {
      ++j;
    }
    VolumeSummary s;
    s.volume = sorted[i].volume;
    s.runs = static_cast<int>(j - i);
    for (std::size_t k = i; k < j; ++k) s.mean_count += sorted[k].count;
    s.mean_count /= s.runs;
    if (s.runs > 1) {
      double var = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        var += (sorted[k].count - s.mean_count) * (sorted[k].count - s.mean_count);
      }
      s.std_error = std::sqrt(var / (s.runs - 1) / s.runs);
    }
    s.density = s.mean_count / s.volume;
    fit.volumes.push_back(s);
    i = j;
  }
  if (fit.volumes.size() < 4) {
    throw Error(ErrorKind::kInsufficientData,
                "scaling fit needs at least 4 distinct window volumes, got " +
                    std::to_string(fit.volumes.size()));
  }
  double vn = 0.0;
  double vv = 0.0;
  for (const ScalingRun& r : sorted) {
    if (!(r.volume > 0.0)) throw Error(ErrorKind::kInsufficientData, "window volume must be > 0");
    vn += r.volume * r.count;
    vv += r.volume * r.volume;
  }
  fit.c_hat = vn / vv;

  const double k = static_cast<double>(fit.volumes.size());
  double sx = 0.0, sy = 0.0;
  for (const VolumeSummary& s : fit.volumes) {
    if (!(s.mean_count > 0.0)) {
      throw Error(ErrorKind::kInsufficientData, "mean component count must be > 0 for a log fit");
    }
    sx += std::log(s.volume);
    sy += std::log(s.mean_count);
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const VolumeSummary& s : fit.volumes) {
    const double dx = std::log(s.volume) - mx;
    const double dy = std::log(s.mean_count) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  double residual = 0.0;
  for (const VolumeSummary& s : fit.volumes) {
    const double e = std::log(s.mean_count) - fit.log_prefactor - fit.exponent * std::log(s.volume);
    residual += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - residual / syy : 1.0;
  return fit;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::kInsufficientData, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

ConcentrationResult concentration_experiment(std::span<const Box> windows, int trials,
                                             const CensusFn& census_of, int threads) {
  if (trials < 20) {
    throw Error(ErrorKind::kInvalidSpec, "concentration experiments need >= 20 trials per window");
  }
  if (windows.empty()) throw Error(ErrorKind::kInvalidSpec, "no windows given");
  const std::size_t w_count = windows.size();
  const auto t_count = static_cast<std::size_t>(trials);
  ConcentrationResult out;
  out.censuses.assign(w_count, std::vector<WindowCensus>(t_count));
  parallel_for(w_count * t_count, threads, [&](std::size_t job) {
    const std::size_t w = job / t_count;
    const std::size_t t = job % t_count;
    out.censuses[w][t] = census_of(w, t);
  });

  std::size_t largest = 0;
  for (std::size_t w = 1; w < w_count; ++w) {
    if (windows[w].volume() > windows[largest].volume()) largest = w;
  }
  for (const WindowCensus& c : out.censuses[largest]) {
    out.reference.merge(empirical_measure(c.interior));
  }
  if (out.reference.total() == 0) {
    throw Error(ErrorKind::kInsufficientData,
                "no interior components in the largest window; reference measure is empty");
  }
  for (std::size_t w = 0; w < w_count; ++w) {
    ConcentrationRow row;
    row.window = windows[w];
    row.trials = trials;
    double interior = 0.0;
    for (const WindowCensus& c : out.censuses[w]) {
      interior += c.interior_count();
      const EmpiricalTopologyMeasure mu = empirical_measure(c.interior);
      if (mu.total() == 0) {
        ++row.empty_trials;
        continue;
      }
      row.discrepancies.push_back(discrepancy(mu, out.reference));
    }
    row.mean_interior = interior / trials;
    if (!row.discrepancies.empty()) {
      row.median = median(row.discrepancies);
      row.p90 = quantile(row.discrepancies, 0.9);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

ConcentrationResult concentration_experiment(const FieldSpec& spec,
                                             std::span<const Box> windows, int trials,
                                             double spacing, int threads) {
  validate(spec);
  if (spec.kind == FieldKind::kSphere) {
    throw Error(ErrorKind::kInvalidSpec, "concentration experiments use flat ensembles");
  }
  for (const Box& b : windows) check_resolution(b, spacing);
  const auto t_count = static_cast<std::uint64_t>(trials);
  return concentration_experiment(
      windows, trials,
      [&](std::size_t w, std::size_t t) {
        FieldSpec trial = spec;
        trial.stream = w * t_count + t;
        return census(sample(trial), windows[w], spacing, 1);
      },
      threads);
}

double bootstrap_median_order(std::span<const double> small, std::span<const double> large,
                              int resamples, std::uint64_t seed) {
  if (small.empty() || large.empty() || resamples < 1) {
    throw Error(ErrorKind::kInsufficientData, "bootstrap needs two nonempty samples");
  }
  RandomStream stream(seed, 0);
  auto resample_median = [&](std::span<const double> xs) {
    std::vector<double> draw(xs.size());
    for (double& d : draw) {
      const auto pick = static_cast<std::size_t>(stream.uniform() * static_cast<double>(xs.size()));
      d = xs[std::min(pick, xs.size() - 1)];
    }
    return median(std::move(draw));
  };
  int hits = 0;
  for (int r = 0; r < resamples; ++r) {
    const double m_small = resample_median(small);
    const double m_large = resample_median(large);
    if (m_large <= m_small) ++hits;
  }
  return static_cast<double>(hits) / resamples;
}

}  // namespace monowave
