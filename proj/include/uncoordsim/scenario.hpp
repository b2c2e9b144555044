#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uncoordsim {

struct Position {
  double x = 0;
  double y = 0;
};

struct ExecutorSpec {
  int id = 0;
  double speed = 1;  // operations per second
  Position position;
};

struct DeterministicArrival {
  double period = 1;  // seconds
};

struct PoissonArrival {
  double rate = 1;  // requests per second
};

using ArrivalSpec = std::variant<DeterministicArrival, PoissonArrival>;

enum class OpsDistribution { constant, exponential };

struct OpsSpec {
  OpsDistribution distribution = OpsDistribution::constant;
  double mean = 1;
};

struct WorkloadSpec {
  ArrivalSpec arrival;
  OpsSpec ops;
  std::uint64_t input_bytes = 0;
  std::uint64_t output_bytes = 0;
};

struct ClientSpec {
  int id = 0;
  Position position;
  WorkloadSpec workload;
};

struct NetworkSpec {
  double base_latency = 0;               // one-way, seconds
  double latency_per_unit_distance = 0;  // seconds per distance unit
  // Transmission delay bytes / link_rate is added per hop only when set.
  std::optional<double> link_rate;
};

enum class PolicyKind { uncoordinated, random, round_robin, least_queue_oracle };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> policy_kind_from_string(std::string_view name);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::uncoordinated;
  int k = 1;
  double chi = 0.1;
  double alpha = 0.1;
};

struct Scenario {
  std::vector<ExecutorSpec> executors;
  std::vector<ClientSpec> clients;
  NetworkSpec network;
  PolicyConfig policy;
  double horizon = 1;
  double warmup = 0;
};

/// Throws ValidationError naming the first violated invariant.
void check_invariants(const Scenario& scenario);

/// Builds a Scenario from the JSON text of a scenario document. Unknown keys
/// are rejected. Throws ValidationError.
Scenario parse_scenario(std::string_view json_text);

/// Reads and parses a scenario file. Throws IoError or ValidationError.
Scenario load_scenario(const std::filesystem::path& path);

/// Serializes back to the scenario document format.
std::string to_json_text(const Scenario& scenario);

/// One-way propagation latency between a client and an executor.
double latency(const ClientSpec& client, const ExecutorSpec& executor,
               const NetworkSpec& net);

/// Per-hop transmission delay for a payload; zero unless link_rate is set.
double transmission_delay(std::uint64_t bytes, const NetworkSpec& net);

/// The k executors closest to `client` by latency, ascending, ties by id.
std::vector<int> assign_pool(const ClientSpec& client, int k,
                             const std::vector<ExecutorSpec>& executors,
                             const NetworkSpec& net);

}  // namespace uncoordsim
