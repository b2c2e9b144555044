#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "uncoordsim/scenario.hpp"
#include "uncoordsim/workload.hpp"

namespace uncoordsim {

/// Execution time of `ops` operations on a server of the given speed.
constexpr double service_time(double ops, double speed) noexcept { return ops / speed; }

/// Interval over which utilization is reported.
struct MeasurementWindow {
  double begin = 0;
  double end = 0;

  double length() const noexcept { return end - begin; }
  double overlap(double from, double to) const noexcept {
    const double lo = from > begin ? from : begin;
    const double hi = to < end ? to : end;
    return hi > lo ? hi - lo : 0.0;
  }
};

struct QueuedRequest {
  Request request;
  double arrival_time = 0;
  bool is_probe = false;
};

/// Single non-preemptive FIFO server. Probe copies are served like any other
/// request.
class ExecutorState {
 public:
  ExecutorState(const ExecutorSpec& spec, MeasurementWindow window);

  /// Accepts a copy at `now`. Returns the completion time if it went straight
  /// into service; otherwise it waits in the FIFO.
  std::optional<double> enqueue(QueuedRequest item, double now);

  struct Completion {
    QueuedRequest finished;
    double service_duration = 0;
    /// Set when a queued request started service right away.
    std::optional<double> next_completion;
  };

  /// Finishes the request in service at `now`. Throws InternalError when idle.
  Completion complete(double now);

  int id() const noexcept { return spec_.id; }
  double speed() const noexcept { return spec_.speed; }
  bool busy() const noexcept { return in_service_.has_value(); }
  const std::optional<QueuedRequest>& in_service() const noexcept { return in_service_; }
  const std::deque<QueuedRequest>& waiting() const noexcept { return queue_; }
  /// Waiting plus in service.
  std::size_t queue_length() const noexcept { return queue_.size() + (busy() ? 1 : 0); }
  double busy_until() const noexcept { return busy_until_; }

  /// Busy time of every finished service, over the whole run.
  double busy_time_accum() const noexcept { return busy_time_accum_; }
  std::uint64_t served_count() const noexcept { return served_count_; }
  double served_ops() const noexcept { return served_ops_; }

  /// Fraction of the measurement window spent serving, counting the portion
  /// of an ongoing service that falls before `now`.
  double utilization(double now) const;

 private:
  double start_service(QueuedRequest item, double now);

  ExecutorSpec spec_;
  MeasurementWindow window_;
  std::deque<QueuedRequest> queue_;
  std::optional<QueuedRequest> in_service_;
  double service_started_ = 0;
  double busy_until_ = 0;
  double busy_time_accum_ = 0;
  double window_busy_ = 0;
  std::uint64_t served_count_ = 0;
  double served_ops_ = 0;
};

}  // namespace uncoordsim
