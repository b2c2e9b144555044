#include "uncoordsim/event_queue.hpp"

#include <cstdio>

#include "uncoordsim/errors.hpp"

namespace uncoordsim {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace

std::string_view kind_name(const EventPayload& payload) {
  return std::visit(
      overloaded{
          [](const events::Arrival&) { return "arrival"; },
          [](const events::RequestSent&) { return "request_sent"; },
          [](const events::ServiceStart&) { return "service_start"; },
          [](const events::ServiceEnd&) { return "service_end"; },
          [](const events::ResponseReceived&) { return "response_received"; },
      },
      payload);
}

std::string format_trace_line(const Event& event) {
  char head[64];
  std::snprintf(head, sizeof head, "%.9f\t%llu\t", event.time,
                static_cast<unsigned long long>(event.seq));
  std::string details = std::visit(
      overloaded{
          [](const events::Arrival& e) { return "client=" + std::to_string(e.client); },
          [](const events::RequestSent& e) {
            return "request=" + std::to_string(e.request) +
                   " client=" + std::to_string(e.client) +
                   " executor=" + std::to_string(e.executor) +
                   " probe=" + (e.is_probe ? "1" : "0");
          },
          [](const events::ServiceStart& e) {
            return "executor=" + std::to_string(e.executor) +
                   " request=" + std::to_string(e.request);
          },
          [](const events::ServiceEnd& e) {
            return "executor=" + std::to_string(e.executor) +
                   " request=" + std::to_string(e.request);
          },
          [](const events::ResponseReceived& e) {
            return "client=" + std::to_string(e.client) +
                   " request=" + std::to_string(e.request) +
                   " executor=" + std::to_string(e.executor) +
                   " probe=" + (e.is_probe ? "1" : "0");
          },
      },
      event.payload);
  return head + std::string(kind_name(event.payload)) + "\t" + details;
}

std::uint64_t EventQueue::schedule(double time, EventPayload payload) {
  if (!(time >= clock_)) {
    throw InternalError("event scheduled in the past: t=" + std::to_string(time) +
                        " clock=" + std::to_string(clock_) + " kind=" +
                        std::string(kind_name(payload)));
  }
  const auto seq = next_seq_++;
  pending_.push(Event{time, seq, std::move(payload)});
  return seq;
}

std::optional<Event> EventQueue::pop_next() {
  if (pending_.empty()) return std::nullopt;
  Event event = pending_.top();
  pending_.pop();
  clock_ = event.time;
  return event;
}

void EventQueue::advance_to(double time) {
  if (time < clock_) throw InternalError("clock cannot move backwards");
  if (!pending_.empty() && pending_.top().time < time) {
    throw InternalError("advance_to would skip a pending event");
  }
  clock_ = time;
}

std::vector<Event> EventQueue::snapshot() const {
  auto copy = pending_;
  std::vector<Event> out;
  out.reserve(copy.size());
  while (!copy.empty()) {
    out.push_back(copy.top());
    copy.pop();
  }
  return out;
}

}  // namespace uncoordsim
