#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uncoordsim/metrics.hpp"
#include "uncoordsim/scenario.hpp"

namespace uncoordsim {

enum class SweepParam { chi, k };

std::string_view to_string(SweepParam param);
std::optional<SweepParam> sweep_param_from_string(std::string_view name);

struct SweepSpec {
  SweepParam param = SweepParam::chi;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
};

struct SummaryRow {
  SweepParam param = SweepParam::chi;
  double value = 0;
  std::uint64_t seed = 0;
  std::optional<double> delay_mean;
  std::optional<double> delay_p95;
  double traffic_rate = 0;
  double utilization_mean = 0;
  double probes_per_request = 0;
};

struct SweepPoint {
  SummaryRow row;
  std::vector<CdfPoint> cdf;
};

/// Returns `base` with the swept parameter replaced, re-validated.
/// Throws ValidationError (e.g. fractional or oversized k).
Scenario with_sweep_value(Scenario base, SweepParam param, double value);

/// Checks every value and seed list up front. Throws ValidationError.
void validate_sweep(const Scenario& base, const SweepSpec& spec);

SummaryRow summarize(const MetricsReport& report, SweepParam param, double value,
                     std::uint64_t seed);

/// Runs one replication per (value, seed) and returns the points sorted by
/// (value, seed). Replications run on up to `threads`
/// worker threads (0 = hardware concurrency); the result does not depend on it.
std::vector<SweepPoint> sweep(const Scenario& base, const SweepSpec& spec,
                              unsigned threads = 0);

/// Formats a value the way every CSV artifact does: 9 significant digits.
std::string format_number(double v);

std::string summary_csv(std::span<const SummaryRow> rows);
std::string cdf_csv(std::span<const CdfPoint> cdf);

/// cdf_<policy>_<param>=<value>_seed=<s>.csv
std::string cdf_file_name(PolicyKind policy, SweepParam param, double value,
                          std::uint64_t seed);

/// Throws ValidationError on an empty table and IoError when the file cannot be
/// written; no file is created in either case.
void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path);
void write_cdf(std::span<const CdfPoint> cdf, const std::filesystem::path& path);

/// Writes summary.csv plus one CDF file per point into `dir`.
void write_sweep_outputs(std::span<const SweepPoint> points, PolicyKind policy,
                         const std::filesystem::path& dir);

}  // namespace uncoordsim
