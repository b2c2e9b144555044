#include "uncoordsim/workload.hpp"

namespace uncoordsim {

double next_interarrival(const ArrivalSpec& arrival, RngStream& rng) {
  if (const auto* d = std::get_if<DeterministicArrival>(&arrival)) return d->period;
  return rng.exponential(1.0 / std::get<PoissonArrival>(arrival).rate);
}

double first_arrival_offset(const ArrivalSpec& arrival, RngStream& rng) {
  if (std::holds_alternative<DeterministicArrival>(arrival)) return 0;
  return next_interarrival(arrival, rng);
}

Request sample_request(const WorkloadSpec& workload, int client, double now,
                       RequestId id, RngStream& rng) {
  const double ops = workload.ops.distribution == OpsDistribution::constant
                         ? workload.ops.mean
                         : rng.exponential(workload.ops.mean);
  return Request{id, client, now, ops, workload.input_bytes, workload.output_bytes};
}

ClientWorkload::ClientWorkload(const ClientSpec& spec, std::uint64_t seed)
    : spec_(&spec),
      arrivals_(seed, StreamTag::arrivals, static_cast<std::uint64_t>(spec.id)),
      ops_(seed, StreamTag::ops, static_cast<std::uint64_t>(spec.id)) {}

}  // namespace uncoordsim
