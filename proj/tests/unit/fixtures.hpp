#pragma once

#include "uncoordsim/scenario.hpp"

namespace uncoordsim::testing {

inline ClientSpec client_at(int id, Position p, WorkloadSpec w = {}) {
  return ClientSpec{id, p, std::move(w)};
}

inline WorkloadSpec deterministic_workload(double period, double ops,
                                           std::uint64_t in = 1000,
                                           std::uint64_t out = 200) {
  return WorkloadSpec{DeterministicArrival{period}, OpsSpec{OpsDistribution::constant, ops},
                      in, out};
}

inline WorkloadSpec poisson_workload(double rate, double mean_ops,
                                     OpsDistribution d = OpsDistribution::exponential) {
  return WorkloadSpec{PoissonArrival{rate}, OpsSpec{d, mean_ops}, 1000, 200};
}

/// 1 client, period 10 ms, 2e6 ops, 1000/200 B; 1 executor at 1e9 ops/s;
/// one-way latency 1 ms; chi 0; horizon 60 s, warmup 10 s.
inline Scenario one_client_deterministic() {
  Scenario s;
  s.executors = {ExecutorSpec{0, 1e9, {0, 0}}};
  s.clients = {client_at(0, {0, 0}, deterministic_workload(0.01, 2e6))};
  s.network = NetworkSpec{0.001, 0, std::nullopt};
  s.policy = PolicyConfig{PolicyKind::uncoordinated, 1, 0.0, 0.1};
  s.horizon = 60;
  s.warmup = 10;
  return s;
}

/// Poisson client (rate lambda) against one exponential server with service
/// rate mu; one-way latency 1 ms.
inline Scenario mm1(double lambda, double mu, double horizon, double warmup) {
  Scenario s;
  const double speed = 1e8;
  s.executors = {ExecutorSpec{0, speed, {0, 0}}};
  s.clients = {client_at(0, {0, 0}, poisson_workload(lambda, speed / mu))};
  s.network = NetworkSpec{0.001, 0, std::nullopt};
  s.policy = PolicyConfig{PolicyKind::uncoordinated, 1, 0.0, 0.1};
  s.horizon = horizon;
  s.warmup = warmup;
  return s;
}

/// Several clients and executors scattered on a plane, Poisson traffic.
inline Scenario small_world(PolicyKind kind, int k, double chi, double rate = 20,
                            double horizon = 30, double warmup = 3) {
  Scenario s;
  const Position exec_pos[] = {{0, 0}, {4, 0}, {0, 4}, {4, 4}, {8, 2}, {2, 8}};
  for (int i = 0; i < 6; ++i) s.executors.push_back({i, 1e9, exec_pos[i]});
  const Position client_pos[] = {{1, 1}, {3, 1}, {1, 3}, {5, 5}, {7, 1}, {2, 6}, {6, 3}};
  for (int i = 0; i < 7; ++i) {
    s.clients.push_back(client_at(i, client_pos[i], poisson_workload(rate, 1e7)));
  }
  s.network = NetworkSpec{0.001, 0.0005, std::nullopt};
  s.policy = PolicyConfig{kind, k, chi, 0.1};
  s.horizon = horizon;
  s.warmup = warmup;
  return s;
}

}  // namespace uncoordsim::testing
