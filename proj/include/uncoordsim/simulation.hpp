#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "uncoordsim/event_queue.hpp"
#include "uncoordsim/executor.hpp"
#include "uncoordsim/metrics.hpp"
#include "uncoordsim/policy.hpp"
#include "uncoordsim/scenario.hpp"
#include "uncoordsim/workload.hpp"

namespace uncoordsim {

/// One seeded replication of a scenario.
///
/// Clients generate requests, dispatch them through their policy, executors
/// serve the copies FIFO and responses travel back. All randomness comes from
/// per-client substreams of `seed`, so the event trace is a pure function of
/// (scenario, seed).
class Simulation {
 public:
  /// `scenario` must outlive the simulation. `trace`, when set, receives one
  /// tab-separated line per processed event.
  Simulation(const Scenario& scenario, std::uint64_t seed, std::ostream* trace = nullptr);

  /// Processes every event up to `t_end`, which must not exceed the horizon.
  void run_until(double t_end);
  void run() { run_until(scenario_->horizon); }

  /// Summary over (warmup, horizon]. Call after run().
  MetricsReport report() const;

  double clock() const noexcept { return queue_.clock(); }
  const std::vector<ExecutorState>& executors() const noexcept { return executors_; }
  const std::vector<ClientPolicy>& policies() const noexcept { return policies_; }
  const EventQueue& pending() const noexcept { return queue_; }
  std::uint64_t events_processed() const noexcept { return events_processed_; }
  RequestCounts counts() const;

  /// Unanswered requests that still have at least one copy queued, in
  /// service or travelling. Computed by scanning the pending state.
  std::uint64_t unanswered_copies_in_system() const;

  /// Total copies dispatched for requests that have no response yet.
  std::uint64_t copies_of_unanswered_requests() const;

 private:
  struct Outstanding {
    Request request;
    std::size_t copies = 0;
    std::size_t copies_returned = 0;
    bool answered = false;
  };

  void handle(const Event& event);
  void dispatch_event(const Event& event);
  void on_arrival(const events::Arrival& e, const Event& event);
  void on_request_sent(const events::RequestSent& e, const Event& event);
  void on_service_end(const events::ServiceEnd& e, const Event& event);
  void on_response(const events::ResponseReceived& e);
  void trace(const Event& event);

  const Scenario* scenario_;
  std::ostream* trace_;
  EventQueue queue_;
  std::vector<ClientWorkload> workloads_;
  std::vector<ClientPolicy> policies_;
  std::vector<ExecutorState> executors_;
  // latency_[client][executor], one-way.
  std::vector<std::vector<double>> latency_;
  std::unordered_map<RequestId, Outstanding> outstanding_;
  std::vector<std::size_t> queue_lengths_;
  MetricsCollector metrics_;
  RequestId next_request_ = 0;
  std::uint64_t completed_ = 0;
  std::uint64_t events_processed_ = 0;
};

/// Runs one full replication to the horizon and returns its report.
MetricsReport run_simulation(const Scenario& scenario, std::uint64_t seed,
                             std::ostream* trace = nullptr);

}  // namespace uncoordsim
