#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace uncoordsim {

/// Nearest-rank quantile: the ceil(p * n)-th smallest sample (1-indexed).
/// Returns nullopt for an empty sample set. p must lie in (0, 1].
std::optional<double> quantile_nearest_rank(std::span<const double> samples, double p);

struct CdfPoint {
  double value = 0;
  double cumulative = 0;
};

/// Step function with one point per distinct sample value; the last point
/// has cumulative exactly 1.
std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

/// Evaluates a step CDF at x (fraction of samples <= x).
double cdf_at(std::span<const CdfPoint> cdf, double x);

/// Request conservation at the end of a run.
struct RequestCounts {
  std::uint64_t generated = 0;
  std::uint64_t completed = 0;
  std::uint64_t in_flight = 0;
  /// Arrivals already drawn but falling after the horizon; never created.
  std::uint64_t past_horizon_discarded = 0;
};

struct MetricsReport {
  std::vector<double> delay_samples;
  std::optional<double> delay_mean;
  std::optional<double> delay_p95;
  std::vector<CdfPoint> cdf;
  double traffic_bytes = 0;
  double traffic_rate = 0;
  std::vector<double> utilization_per_executor;
  double utilization_mean = 0;

  std::uint64_t requests_sent = 0;
  std::uint64_t probes_sent = 0;
  double probes_per_request = 0;
  RequestCounts counts;

  bool has_data() const noexcept { return delay_mean.has_value(); }
};

/// Accumulates post-warmup delay and traffic statistics of one run.
class MetricsCollector {
 public:
  explicit MetricsCollector(double warmup) : warmup_(warmup) {}

  /// Called on the first response of a request, at time `now`. Completions
  /// at or before the warmup boundary are ignored.
  void record_completion(double now, double delay, std::size_t copies_sent,
                         std::uint64_t bytes_in, std::uint64_t bytes_out);

  std::span<const double> delay_samples() const noexcept { return samples_; }
  double traffic_bytes() const noexcept { return traffic_bytes_; }

  /// Computes the summary over the measured interval of the given length.
  MetricsReport finalize(double interval, std::vector<double> utilization) &&;

 private:
  double warmup_;
  std::vector<double> samples_;
  double traffic_bytes_ = 0;
};

}  // namespace uncoordsim
