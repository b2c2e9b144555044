#include "uncoordsim/simulation.hpp"

#include <ostream>
#include <unordered_set>

#include "uncoordsim/errors.hpp"

namespace uncoordsim {

Simulation::Simulation(const Scenario& scenario, std::uint64_t seed, std::ostream* trace)
    : scenario_(&scenario), trace_(trace), metrics_(scenario.warmup) {
  const MeasurementWindow window{scenario.warmup, scenario.horizon};
  executors_.reserve(scenario.executors.size());
  for (const auto& e : scenario.executors) executors_.emplace_back(e, window);
  queue_lengths_.assign(executors_.size(), 0);

  workloads_.reserve(scenario.clients.size());
  policies_.reserve(scenario.clients.size());
  for (const auto& c : scenario.clients) {
    auto& row = latency_.emplace_back();
    for (const auto& e : scenario.executors) row.push_back(latency(c, e, scenario.network));

    auto pool = assign_pool(c, scenario.policy.k, scenario.executors, scenario.network);
    std::vector<double> one_way;
    for (int e : pool) one_way.push_back(row[static_cast<std::size_t>(e)]);
    policies_.emplace_back(scenario.policy, std::move(pool), one_way,
                           RngStream(seed, StreamTag::policy, static_cast<std::uint64_t>(c.id)));

    auto& workload = workloads_.emplace_back(c, seed);
    queue_.schedule(workload.first_arrival(), events::Arrival{c.id});
  }
}

void Simulation::run_until(double t_end) {
  if (t_end > scenario_->horizon) throw InternalError("run_until beyond the horizon");
  events_processed_ +=
      uncoordsim::run_until(queue_, t_end, [this](const Event& ev) { handle(ev); });
}

void Simulation::trace(const Event& event) {
  if (trace_) *trace_ << format_trace_line(event) << '\n';
}

void Simulation::handle(const Event& event) {
  trace(event);
  try {
    dispatch_event(event);
  } catch (const InternalError& e) {
    throw InternalError(std::string(e.what()) + " [while processing " +
                        format_trace_line(event) + "]");
  }
}

void Simulation::dispatch_event(const Event& event) {
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, events::Arrival>) {
          on_arrival(payload, event);
        } else if constexpr (std::is_same_v<T, events::RequestSent>) {
          on_request_sent(payload, event);
        } else if constexpr (std::is_same_v<T, events::ServiceEnd>) {
          on_service_end(payload, event);
        } else if constexpr (std::is_same_v<T, events::ResponseReceived>) {
          on_response(payload);
        } else {
          throw InternalError("service_start is never queued");
        }
      },
      event.payload);
}

void Simulation::on_arrival(const events::Arrival& e, const Event& event) {
  const auto client = static_cast<std::size_t>(e.client);
  const double now = event.time;
  auto request = workloads_[client].sample(now, next_request_++);

  if (scenario_->policy.kind == PolicyKind::least_queue_oracle) {
    for (std::size_t i = 0; i < executors_.size(); ++i) {
      queue_lengths_[i] = executors_[i].queue_length();
    }
  }
  const auto decision = policies_[client].dispatch(request, queue_lengths_);

  const double uplink = transmission_delay(request.input_bytes, scenario_->network);
  auto send = [&](int executor, bool is_probe) {
    queue_.schedule(now + latency_[client][static_cast<std::size_t>(executor)] + uplink,
                    events::RequestSent{request.id, e.client, executor, is_probe});
  };
  send(decision.primary, false);
  for (int probe : decision.probes) send(probe, true);

  outstanding_.emplace(request.id, Outstanding{request, decision.copies(), 0, false});
  queue_.schedule(now + workloads_[client].next_interarrival(), events::Arrival{e.client});
}

void Simulation::on_request_sent(const events::RequestSent& e, const Event& event) {
  auto& executor = executors_[static_cast<std::size_t>(e.executor)];
  const auto& request = outstanding_.at(e.request).request;
  if (auto done = executor.enqueue(QueuedRequest{request, event.time, e.is_probe}, event.time)) {
    trace(Event{event.time, event.seq, events::ServiceStart{e.executor, e.request}});
    queue_.schedule(*done, events::ServiceEnd{e.executor, e.request});
  }
}

void Simulation::on_service_end(const events::ServiceEnd& e, const Event& event) {
  auto& executor = executors_[static_cast<std::size_t>(e.executor)];
  auto done = executor.complete(event.time);
  const auto& finished = done.finished.request;
  if (finished.id != e.request) {
    throw InternalError("executor " + std::to_string(e.executor) + " finished request " +
                        std::to_string(finished.id) + " but the event names " +
                        std::to_string(e.request));
  }

  const auto client = static_cast<std::size_t>(finished.client);
  const double downlink = transmission_delay(finished.output_bytes, scenario_->network);
  queue_.schedule(event.time + latency_[client][static_cast<std::size_t>(e.executor)] + downlink,
                  events::ResponseReceived{finished.client, finished.id, e.executor,
                                           done.finished.is_probe});

  if (done.next_completion) {
    const auto next_id = executor.in_service()->request.id;
    trace(Event{event.time, event.seq, events::ServiceStart{e.executor, next_id}});
    queue_.schedule(*done.next_completion, events::ServiceEnd{e.executor, next_id});
  }
}

void Simulation::on_response(const events::ResponseReceived& e) {
  const double now = queue_.clock();
  auto it = outstanding_.find(e.request);
  if (it == outstanding_.end()) {
    throw InternalError("response for unknown request " + std::to_string(e.request));
  }
  auto& entry = it->second;
  const double delay = now - entry.request.created_at;

  const bool first = policies_[static_cast<std::size_t>(e.client)].on_response(
      e.request, e.executor, delay, e.is_probe);
  if (first) {
    entry.answered = true;
    ++completed_;
    metrics_.record_completion(now, delay, entry.copies, entry.request.input_bytes,
                               entry.request.output_bytes);
  }
  if (++entry.copies_returned == entry.copies) outstanding_.erase(it);
}

RequestCounts Simulation::counts() const {
  RequestCounts c;
  c.generated = next_request_;
  c.completed = completed_;
  for (const auto& [id, entry] : outstanding_) {
    if (!entry.answered) ++c.in_flight;
  }
  for (const auto& ev : queue_.snapshot()) {
    if (std::holds_alternative<events::Arrival>(ev.payload)) ++c.past_horizon_discarded;
  }
  return c;
}

std::uint64_t Simulation::unanswered_copies_in_system() const {
  std::unordered_set<RequestId> ids;
  auto note = [&](RequestId id) {
    auto it = outstanding_.find(id);
    if (it != outstanding_.end() && !it->second.answered) ids.insert(id);
  };
  for (const auto& ev : queue_.snapshot()) {
    std::visit(
        [&](const auto& p) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, events::Arrival>) {
            note(p.request);
          }
        },
        ev.payload);
  }
  for (const auto& executor : executors_) {
    if (executor.in_service()) note(executor.in_service()->request.id);
    for (const auto& item : executor.waiting()) note(item.request.id);
  }
  return ids.size();
}

std::uint64_t Simulation::copies_of_unanswered_requests() const {
  std::uint64_t copies = 0;
  for (const auto& [id, entry] : outstanding_) {
    if (!entry.answered) copies += entry.copies;
  }
  return copies;
}

MetricsReport Simulation::report() const {
  std::vector<double> utilization;
  utilization.reserve(executors_.size());
  for (const auto& e : executors_) utilization.push_back(e.utilization(queue_.clock()));

  auto report = MetricsCollector(metrics_).finalize(scenario_->horizon - scenario_->warmup,
                                                     std::move(utilization));
  for (const auto& p : policies_) {
    report.requests_sent += p.requests_sent();
    report.probes_sent += p.probes_sent();
  }
  if (report.requests_sent > 0) {
    report.probes_per_request =
        static_cast<double>(report.probes_sent) / static_cast<double>(report.requests_sent);
  }
  report.counts = counts();
  return report;
}

MetricsReport run_simulation(const Scenario& scenario, std::uint64_t seed,
                             std::ostream* trace) {
  Simulation sim(scenario, seed, trace);
  sim.run();
  return sim.report();
}

}  // namespace uncoordsim
