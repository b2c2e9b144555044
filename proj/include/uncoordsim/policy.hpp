#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "uncoordsim/rng.hpp"
#include "uncoordsim/scenario.hpp"
#include "uncoordsim/workload.hpp"

namespace uncoordsim {

/// Executor id -> estimated round-trip delay in seconds. Ordered by id so
/// that iteration order doubles as the tie-break order.
using Estimates = std::map<int, double>;

/// Zero-load round trip: twice the one-way latency of each pool member.
Estimates init_estimates(std::span<const int> pool, std::span<const double> one_way);

/// Executor with the lowest estimate, lowest id on ties. Throws InternalError
/// on an empty table.
int select_primary(const Estimates& estimates);

/// Includes each non-primary pool member independently with probability chi.
/// `uniform_for(executor)` supplies the member's uniform draw; a member is
/// included iff its draw is below chi, so larger chi yields a superset.
template <class UniformFor>
std::vector<int> draw_probe_set(std::span<const int> pool, int primary, double chi,
                                UniformFor&& uniform_for) {
  std::vector<int> probes;
  for (int e : pool) {
    if (e == primary) continue;
    if (uniform_for(e) < chi) probes.push_back(e);
  }
  return probes;
}

constexpr double ewma_update(double estimate, double sample, double alpha) noexcept {
  return (1 - alpha) * estimate + alpha * sample;
}

/// Baseline policies that never probe. `queue_lengths` is indexed by
/// executor id and covers every executor (the oracle looks at all of them).
/// `cursor` is the round-robin position and advances on each call.
int baseline_select(PolicyKind kind, std::span<const int> pool, RngStream& rng,
                    std::size_t& cursor, std::span<const std::size_t> queue_lengths);

struct DispatchDecision {
  int primary = 0;
  std::vector<int> probes;

  std::size_t copies() const noexcept { return 1 + probes.size(); }
};

/// Dispatch state of one client.
class ClientPolicy {
 public:
  ClientPolicy(const PolicyConfig& config, std::vector<int> pool,
               std::span<const double> one_way_latencies, RngStream rng);

  /// Chooses the destinations for a freshly created request.
  DispatchDecision dispatch(const Request& request,
                            std::span<const std::size_t> queue_lengths);

  /// Handles one response. Returns true iff it is the first response for
  /// this request, i.e. the one that defines the experienced delay.
  bool on_response(RequestId request, int executor, double measured_delay,
                   bool is_probe);

  const std::vector<int>& pool() const noexcept { return pool_; }
  const Estimates& estimates() const noexcept { return estimates_; }
  std::uint64_t requests_sent() const noexcept { return requests_sent_; }
  std::uint64_t probes_sent() const noexcept { return probes_sent_; }
  /// Requests with at least one copy still out.
  std::size_t outstanding() const noexcept { return outstanding_.size(); }

 private:
  struct Outstanding {
    std::size_t copies_pending = 0;
    bool answered = false;
  };

  PolicyConfig config_;
  std::vector<int> pool_;
  Estimates estimates_;
  RngStream rng_;
  std::size_t rr_cursor_ = 0;
  std::uint64_t requests_sent_ = 0;
  std::uint64_t probes_sent_ = 0;
  std::unordered_map<RequestId, Outstanding> outstanding_;
};

}  // namespace uncoordsim
