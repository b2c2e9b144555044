// Command-line front end: single replications and parameter sweeps.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uncoordsim/errors.hpp"
#include "uncoordsim/runner.hpp"
#include "uncoordsim/scenario.hpp"
#include "uncoordsim/simulation.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      out.push_back(item);
      item.clear();
    } else if (c != ' ') {
      item += c;
    }
  }
  out.push_back(item);
  return out;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split_commas(text)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw uncoordsim::ValidationError("--values", "not a number: \"" + item + "\"");
    }
  }
  return values;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_commas(text)) {
    std::uint64_t seed = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), seed);
    if (ec != std::errc{} || end != item.data() + item.size() || item.empty()) {
      throw uncoordsim::ValidationError("--seeds", "not a 64-bit unsigned integer: \"" + item + "\"");
    }
    seeds.push_back(seed);
  }
  return seeds;
}

void print_report(const uncoordsim::MetricsReport& r, std::uint64_t seed) {
  using uncoordsim::format_number;
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("NA");
  };
  std::cout << "seed " << seed << '\n'
            << "samples " << r.delay_samples.size() << '\n'
            << "delay_mean_s " << opt(r.delay_mean) << '\n'
            << "delay_p95_s " << opt(r.delay_p95) << '\n'
            << "traffic_bytes " << format_number(r.traffic_bytes) << '\n'
            << "traffic_rate_Bps " << format_number(r.traffic_rate) << '\n'
            << "util_mean " << format_number(r.utilization_mean) << '\n';
  for (std::size_t i = 0; i < r.utilization_per_executor.size(); ++i) {
    std::cout << "util_executor_" << i << ' '
              << format_number(r.utilization_per_executor[i]) << '\n';
  }
  std::cout << "requests_sent " << r.requests_sent << '\n'
            << "probes_sent " << r.probes_sent << '\n'
            << "probes_per_request " << format_number(r.probes_per_request) << '\n'
            << "generated " << r.counts.generated << '\n'
            << "completed " << r.counts.completed << '\n'
            << "in_flight " << r.counts.in_flight << '\n';
  if (!r.has_data()) std::cout << "no data: no post-warmup completions\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncoordinated serverless dispatch simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t seed = 1;
  std::string trace_path;
  auto* simulate = app.add_subcommand("simulate", "Run one seeded replication");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--trace", trace_path, "Write the event trace to this file");

  std::string param_name;
  std::string values_text;
  std::string seeds_text;
  std::string out_dir;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep chi or k over several seeds");
  sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--param", param_name, "chi or k")->required();
  sweep->add_option("--values", values_text, "Comma-separated values")->required();
  sweep->add_option("--seeds", seeds_text, "Comma-separated seeds")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const auto scenario = uncoordsim::load_scenario(scenario_path);

    if (*simulate) {
      std::ofstream trace_file;
      if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file) throw uncoordsim::IoError("cannot write " + trace_path);
      }
      const auto report = uncoordsim::run_simulation(
          scenario, seed, trace_path.empty() ? nullptr : &trace_file);
      print_report(report, seed);
      return 0;
    }

    const auto param = uncoordsim::sweep_param_from_string(param_name);
    if (!param) throw uncoordsim::ValidationError("--param", "expected chi or k");
    const uncoordsim::SweepSpec spec{*param, parse_values(values_text),
                                     parse_seeds(seeds_text)};
    const auto points = uncoordsim::sweep(scenario, spec, threads);
    uncoordsim::write_sweep_outputs(points, scenario.policy.kind, out_dir);

    std::vector<uncoordsim::SummaryRow> rows;
    for (const auto& p : points) rows.push_back(p.row);
    std::cout << uncoordsim::summary_csv(rows);
    return 0;
  } catch (const uncoordsim::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const uncoordsim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
