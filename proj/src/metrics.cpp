#include "uncoordsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uncoordsim/errors.hpp"

namespace uncoordsim {

std::optional<double> quantile_nearest_rank(std::span<const double> samples, double p) {
  if (samples.empty()) return std::nullopt;
  if (!(p > 0 && p <= 1)) throw InternalError("quantile level outside (0,1]");
  std::vector<double> sorted(samples.begin(), samples.end());
  const auto n = sorted.size();
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  return sorted[rank - 1];
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> samples) {
  std::vector<CdfPoint> cdf;
  if (samples.empty()) return cdf;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  cdf.back().cumulative = 1.0;
  return cdf;
}

double cdf_at(std::span<const CdfPoint> cdf, double x) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), x,
                             [](double v, const CdfPoint& p) { return v < p.value; });
  return it == cdf.begin() ? 0.0 : std::prev(it)->cumulative;
}

void MetricsCollector::record_completion(double now, double delay,
                                         std::size_t copies_sent,
                                         std::uint64_t bytes_in,
                                         std::uint64_t bytes_out) {
  if (now <= warmup_) return;
  samples_.push_back(delay);
  traffic_bytes_ += static_cast<double>(copies_sent) *
                    static_cast<double>(bytes_in + bytes_out);
}

MetricsReport MetricsCollector::finalize(double interval,
                                         std::vector<double> utilization) && {
  if (!(interval > 0)) throw InternalError("finalize: empty measurement interval");
  MetricsReport report;
  report.delay_samples = std::move(samples_);
  const auto& s = report.delay_samples;
  if (!s.empty()) {
    report.delay_mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    report.delay_p95 = quantile_nearest_rank(s, 0.95);
    report.cdf = empirical_cdf(s);
  }
  report.traffic_bytes = traffic_bytes_;
  report.traffic_rate = traffic_bytes_ / interval;
  report.utilization_per_executor = std::move(utilization);
  const auto& u = report.utilization_per_executor;
  if (!u.empty()) {
    report.utilization_mean =
        std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(u.size());
  }
  return report;
}

}  // namespace uncoordsim
