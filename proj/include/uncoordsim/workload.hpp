#pragma once

#include <cstdint>

#include "uncoordsim/event_queue.hpp"
#include "uncoordsim/rng.hpp"
#include "uncoordsim/scenario.hpp"

namespace uncoordsim {

/// One lambda invocation. Probe copies share the original's fields.
struct Request {
  RequestId id = 0;
  int client = 0;
  double created_at = 0;
  double ops = 0;
  std::uint64_t input_bytes = 0;
  std::uint64_t output_bytes = 0;
};

double next_interarrival(const ArrivalSpec& arrival, RngStream& rng);

/// Offset of a client's first arrival: zero for deterministic workloads, one
/// interarrival sample for Poisson ones.
double first_arrival_offset(const ArrivalSpec& arrival, RngStream& rng);

Request sample_request(const WorkloadSpec& workload, int client, double now,
                       RequestId id, RngStream& rng);

/// Per-client arrival and size streams, split from the master seed.
class ClientWorkload {
 public:
  ClientWorkload(const ClientSpec& spec, std::uint64_t seed);

  double first_arrival() { return first_arrival_offset(spec_->workload.arrival, arrivals_); }
  double next_interarrival() { return uncoordsim::next_interarrival(spec_->workload.arrival, arrivals_); }
  Request sample(double now, RequestId id) {
    return sample_request(spec_->workload, spec_->id, now, id, ops_);
  }

 private:
  const ClientSpec* spec_;
  RngStream arrivals_;
  RngStream ops_;
};

}  // namespace uncoordsim
