#include "uncoordsim/policy.hpp"

#include <algorithm>

#include "uncoordsim/errors.hpp"

namespace uncoordsim {

Estimates init_estimates(std::span<const int> pool, std::span<const double> one_way) {
  if (pool.size() != one_way.size()) {
    throw InternalError("init_estimates: pool and latency sizes differ");
  }
  Estimates estimates;
  for (std::size_t i = 0; i < pool.size(); ++i) estimates[pool[i]] = 2 * one_way[i];
  return estimates;
}

int select_primary(const Estimates& estimates) {
  if (estimates.empty()) throw InternalError("select_primary on empty estimates");
  auto best = estimates.begin();
  for (auto it = std::next(best); it != estimates.end(); ++it) {
    if (it->second < best->second) best = it;
  }
  return best->first;
}

int baseline_select(PolicyKind kind, std::span<const int> pool, RngStream& rng,
                    std::size_t& cursor, std::span<const std::size_t> queue_lengths) {
  switch (kind) {
    case PolicyKind::random: {
      const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(pool.size()));
      return pool[std::min(i, pool.size() - 1)];
    }
    case PolicyKind::round_robin:
      return pool[cursor++ % pool.size()];
    case PolicyKind::least_queue_oracle: {
      const auto it = std::min_element(queue_lengths.begin(), queue_lengths.end());
      return static_cast<int>(it - queue_lengths.begin());
    }
    case PolicyKind::uncoordinated:
      break;
  }
  throw InternalError("baseline_select called for the uncoordinated policy");
}

ClientPolicy::ClientPolicy(const PolicyConfig& config, std::vector<int> pool,
                           std::span<const double> one_way_latencies, RngStream rng)
    : config_(config),
      pool_(std::move(pool)),
      estimates_(init_estimates(pool_, one_way_latencies)),
      rng_(rng) {}

DispatchDecision ClientPolicy::dispatch(const Request& request,
                                        std::span<const std::size_t> queue_lengths) {
  DispatchDecision decision;
  if (config_.kind == PolicyKind::uncoordinated) {
    decision.primary = select_primary(estimates_);
    // Draws are keyed by (request ordinal, executor id): the same request
    // sees the same uniforms whatever chi, k or the current primary are.
    const auto ordinal = requests_sent_;
    decision.probes = draw_probe_set(
        pool_, decision.primary, config_.chi, [&](int executor) {
          return rng_.uniform_at(ordinal, static_cast<std::uint64_t>(executor));
        });
  } else {
    decision.primary =
        baseline_select(config_.kind, pool_, rng_, rr_cursor_, queue_lengths);
  }

  ++requests_sent_;
  probes_sent_ += decision.probes.size();
  outstanding_[request.id] = Outstanding{decision.copies(), false};
  return decision;
}

bool ClientPolicy::on_response(RequestId request, int executor,
                               double measured_delay, bool /*is_probe*/) {
  auto it = outstanding_.find(request);
  if (it == outstanding_.end()) {
    throw InternalError("response for unknown request " + std::to_string(request));
  }

  if (config_.kind == PolicyKind::uncoordinated) {
    auto est = estimates_.find(executor);
    if (est == estimates_.end()) {
      throw InternalError("response from executor " + std::to_string(executor) +
                          " outside the pool");
    }
    est->second = ewma_update(est->second, measured_delay, config_.alpha);
  }

  const bool first = !it->second.answered;
  it->second.answered = true;
  if (--it->second.copies_pending == 0) outstanding_.erase(it);
  return first;
}

}  // namespace uncoordsim
