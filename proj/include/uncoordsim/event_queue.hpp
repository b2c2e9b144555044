#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <variant>
#include <vector>

namespace uncoordsim {

using RequestId = std::uint64_t;

namespace events {

/// A client generates its next request.
struct Arrival {
  int client;
};
/// A copy of a request reaches an executor.
struct RequestSent {
  RequestId request;
  int client;
  int executor;
  bool is_probe;
};
/// Emitted in traces only: service begins as soon as a server frees up.
struct ServiceStart {
  int executor;
  RequestId request;
};
struct ServiceEnd {
  int executor;
  RequestId request;
};
/// The response of one copy reaches its client.
struct ResponseReceived {
  int client;
  RequestId request;
  int executor;
  bool is_probe;
};

}  // namespace events

using EventPayload =
    std::variant<events::Arrival, events::RequestSent, events::ServiceStart,
                 events::ServiceEnd, events::ResponseReceived>;

struct Event {
  double time = 0;
  std::uint64_t seq = 0;
  EventPayload payload;
};

/// "arrival", "request_sent", ...
std::string_view kind_name(const EventPayload& payload);

/// `time_s \t seq \t kind \t details`
std::string format_trace_line(const Event& event);

/// Pending events ordered by (time, seq); owns the simulation clock.
class EventQueue {
 public:
  /// Assigns the next insertion sequence number. Throws InternalError if
  /// `time` lies before the clock.
  std::uint64_t schedule(double time, EventPayload payload);

  /// Removes the earliest event and advances the clock to its time.
  /// Returns nullopt when drained.
  std::optional<Event> pop_next();

  /// Moves the clock forward without popping. Throws InternalError when an
  /// event earlier than `time` is still pending or `time` < clock.
  void advance_to(double time);

  const Event* peek() const { return pending_.empty() ? nullptr : &pending_.top(); }

  double clock() const noexcept { return clock_; }
  bool empty() const noexcept { return pending_.empty(); }
  std::size_t size() const noexcept { return pending_.size(); }

  /// Copies out what is still pending, in pop order.
  std::vector<Event> snapshot() const;

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> pending_;
  std::uint64_t next_seq_ = 0;
  double clock_ = 0;
};

/// Pops and dispatches every event with time <= t_end in (time, seq) order.
/// Events past t_end stay queued and the clock ends at t_end. Returns the
/// number of events handled.
template <std::invocable<const Event&> Handler>
std::uint64_t run_until(EventQueue& queue, double t_end, Handler&& handler) {
  std::uint64_t handled = 0;
  while (const Event* next = queue.peek()) {
    if (next->time > t_end) break;
    auto event = queue.pop_next();
    handler(*event);
    ++handled;
  }
  queue.advance_to(t_end);
  return handled;
}

}  // namespace uncoordsim
