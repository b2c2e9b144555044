#include "uncoordsim/executor.hpp"

#include <algorithm>

#include "uncoordsim/errors.hpp"

namespace uncoordsim {

ExecutorState::ExecutorState(const ExecutorSpec& spec, MeasurementWindow window)
    : spec_(spec), window_(window) {}

double ExecutorState::start_service(QueuedRequest item, double now) {
  service_started_ = now;
  busy_until_ = now + service_time(item.request.ops, spec_.speed);
  in_service_ = std::move(item);
  return busy_until_;
}

std::optional<double> ExecutorState::enqueue(QueuedRequest item, double now) {
  if (busy()) {
    queue_.push_back(std::move(item));
    return std::nullopt;
  }
  return start_service(std::move(item), now);
}

ExecutorState::Completion ExecutorState::complete(double now) {
  if (!in_service_) {
    throw InternalError("service_end on idle executor " + std::to_string(spec_.id));
  }
  Completion done{std::move(*in_service_), now - service_started_, std::nullopt};
  in_service_.reset();

  busy_time_accum_ += done.service_duration;
  window_busy_ += window_.overlap(service_started_, now);
  ++served_count_;
  served_ops_ += done.finished.request.ops;

  if (!queue_.empty()) {
    auto next = std::move(queue_.front());
    queue_.pop_front();
    done.next_completion = start_service(std::move(next), now);
  }
  return done;
}

double ExecutorState::utilization(double now) const {
  if (window_.length() <= 0) return 0;
  double busy = window_busy_;
  if (in_service_) busy += window_.overlap(service_started_, std::min(now, busy_until_));
  return std::clamp(busy / window_.length(), 0.0, 1.0);
}

}  // namespace uncoordsim
