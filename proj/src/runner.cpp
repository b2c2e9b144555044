#include "uncoordsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "uncoordsim/errors.hpp"
#include "uncoordsim/simulation.hpp"

namespace uncoordsim {

std::string_view to_string(SweepParam param) {
  return param == SweepParam::chi ? "chi" : "k";
}

std::optional<SweepParam> sweep_param_from_string(std::string_view name) {
  if (name == "chi") return SweepParam::chi;
  if (name == "k") return SweepParam::k;
  return std::nullopt;
}

Scenario with_sweep_value(Scenario base, SweepParam param, double value) {
  const auto path = std::string("sweep.") + std::string(to_string(param));
  if (param == SweepParam::chi) {
    base.policy.chi = value;
  } else {
    if (!(value >= 1) || value != std::floor(value) || value > 1e9) {
      throw ValidationError(path, "k must be a positive integer, got " + format_number(value));
    }
    base.policy.k = static_cast<int>(value);
  }
  try {
    check_invariants(base);
  } catch (const ValidationError& e) {
    throw ValidationError(path, "value " + format_number(value) + " invalid: " + e.what());
  }
  return base;
}

void validate_sweep(const Scenario& base, const SweepSpec& spec) {
  if (spec.values.empty()) throw ValidationError("sweep.values", "must be nonempty");
  if (spec.seeds.empty()) throw ValidationError("sweep.seeds", "must be nonempty");
  for (double v : spec.values) with_sweep_value(base, spec.param, v);
}

SummaryRow summarize(const MetricsReport& report, SweepParam param, double value,
                     std::uint64_t seed) {
  return SummaryRow{param,
                    value,
                    seed,
                    report.delay_mean,
                    report.delay_p95,
                    report.traffic_rate,
                    report.utilization_mean,
                    report.probes_per_request};
}

std::vector<SweepPoint> sweep(const Scenario& base, const SweepSpec& spec, unsigned threads) {
  validate_sweep(base, spec);

  std::vector<Scenario> scenarios;
  for (double v : spec.values) scenarios.push_back(with_sweep_value(base, spec.param, v));

  const std::size_t total = spec.values.size() * spec.seeds.size();
  std::vector<SweepPoint> points(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto vi = i / spec.seeds.size();
      const auto seed = spec.seeds[i % spec.seeds.size()];
      try {
        auto report = run_simulation(scenarios[vi], seed);
        points[i] = SweepPoint{summarize(report, spec.param, spec.values[vi], seed),
                               std::move(report.cdf)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  std::stable_sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    if (a.row.value != b.row.value) return a.row.value < b.row.value;
    return a.row.seed < b.row.seed;
  });
  return points;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("NA");
}

void write_file(const std::string& content, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out =
      "param,value,seed,delay_mean_s,delay_p95_s,traffic_rate_Bps,util_mean,"
      "probes_per_request\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.param)) + ',' + format_number(r.value) + ',' +
           std::to_string(r.seed) + ',' + format_optional(r.delay_mean) + ',' +
           format_optional(r.delay_p95) + ',' + format_number(r.traffic_rate) + ',' +
           format_number(r.utilization_mean) + ',' + format_number(r.probes_per_request) +
           '\n';
  }
  return out;
}

std::string cdf_csv(std::span<const CdfPoint> cdf) {
  std::string out = "delay_s,cum_prob\n";
  for (const auto& p : cdf) {
    out += format_number(p.value) + ',' + format_number(p.cumulative) + '\n';
  }
  return out;
}

std::string cdf_file_name(PolicyKind policy, SweepParam param, double value,
                          std::uint64_t seed) {
  return "cdf_" + std::string(to_string(policy)) + "_" + std::string(to_string(param)) +
         "=" + format_number(value) + "_seed=" + std::to_string(seed) + ".csv";
}

void write_csv(std::span<const SummaryRow> rows, const std::filesystem::path& path) {
  if (rows.empty()) throw ValidationError("table", "refusing to write an empty results table");
  write_file(summary_csv(rows), path);
}

void write_cdf(std::span<const CdfPoint> cdf, const std::filesystem::path& path) {
  write_file(cdf_csv(cdf), path);
}

void write_sweep_outputs(std::span<const SweepPoint> points, PolicyKind policy,
                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<SummaryRow> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    rows.push_back(p.row);
    write_cdf(p.cdf, dir / cdf_file_name(policy, p.row.param, p.row.value, p.row.seed));
  }
  write_csv(rows, dir / "summary.csv");
}

}  // namespace uncoordsim
