#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "trace_parse.hpp"
#include "uncoordsim/simulation.hpp"

using namespace uncoordsim;
using namespace uncoordsim::testing;

namespace {

std::string trace_of(const Scenario& s, std::uint64_t seed) {
  std::ostringstream out;
  run_simulation(s, seed, &out);
  return out.str();
}

}  // namespace

TEST_CASE("deterministic single client: 4 ms delays and 20% load") {
  const auto s = one_client_deterministic();
  for (std::uint64_t seed : {1ULL, 2ULL, 12345ULL}) {
    const auto r = run_simulation(s, seed);
    REQUIRE(r.has_data());
    CHECK(std::abs(*r.delay_mean - 0.004) < 1e-9);
    CHECK(std::abs(*r.delay_p95 - 0.004) < 1e-9);
    CHECK(std::abs(r.utilization_mean - 0.2) < 1e-6);
    CHECK(r.delay_samples.size() == 5000);
    CHECK(r.traffic_bytes == 5000 * 1200.0);
  }
}

TEST_CASE("deterministic arrivals start at zero and stop at the horizon") {
  auto s = one_client_deterministic();
  s.clients[0].workload.arrival = DeterministicArrival{10};
  s.horizon = 35;
  s.warmup = 0;
  Simulation sim(s, 1);
  sim.run_until(0);
  CHECK(sim.counts().generated == 1);  // the t = 0 arrival
  sim.run();
  CHECK(sim.counts().generated == 4);  // t = 0, 10, 20, 30
  CHECK(sim.counts().past_horizon_discarded == 1);
  CHECK(sim.clock() == 35);
}

TEST_CASE("nothing happens before the first poisson arrival") {
  const auto s = mm1(80, 100, 10, 1);
  Simulation sim(s, 1);
  sim.run_until(0);
  CHECK(sim.events_processed() == 0);
  CHECK(sim.counts().generated == 0);
}

TEST_CASE("identical seeds give identical traces") {
  const auto s = small_world(PolicyKind::uncoordinated, 3, 0.2, 20, 10, 1);
  const auto a = trace_of(s, 42);
  CHECK(a.size() > 1000);
  CHECK(a == trace_of(s, 42));
  CHECK(a != trace_of(s, 43));
}

TEST_CASE("trace-level invariants") {
  for (auto kind : {PolicyKind::uncoordinated, PolicyKind::random, PolicyKind::round_robin,
                    PolicyKind::least_queue_oracle}) {
    CAPTURE(to_string(kind));
    // Heavy load so that queues actually form.
    const auto s = small_world(kind, 3, 0.3, 60, 8, 1);
    const auto records = parse_trace(trace_of(s, 5));

    double clock = 0;
    std::map<long long, std::vector<long long>> arrived, departed;
    for (const auto& r : records) {
      REQUIRE(r.time >= clock);
      clock = r.time;
      if (r.kind == "request_sent") arrived[r.fields.at("executor")].push_back(r.fields.at("request"));
      if (r.kind == "service_end") departed[r.fields.at("executor")].push_back(r.fields.at("request"));
    }
    CHECK(!departed.empty());
    for (const auto& [executor, order] : departed) {
      const auto& in = arrived[executor];
      REQUIRE(order.size() <= in.size());
      REQUIRE(std::equal(order.begin(), order.end(), in.begin()));
    }
  }
}

TEST_CASE("request and work conservation at the horizon") {
  for (auto kind : {PolicyKind::uncoordinated, PolicyKind::least_queue_oracle}) {
    for (double chi : {0.0, 0.1, 0.5}) {
      CAPTURE(chi);
      const auto s = small_world(kind, 4, chi, 45, 10, 2);
      Simulation sim(s, 11);
      sim.run();
      const auto c = sim.counts();
      CHECK(c.generated > 1000);
      CHECK(c.generated == c.completed + c.in_flight);
      CHECK(c.in_flight == sim.unanswered_copies_in_system());
      CHECK(c.past_horizon_discarded == s.clients.size());

      for (const auto& ex : sim.executors()) {
        const double from_ops = ex.served_ops() / ex.speed();
        CHECK(std::abs(from_ops - ex.busy_time_accum()) <= 1e-9 * from_ops);
      }
    }
  }
}

TEST_CASE("traffic matches the send counters") {
  auto s = small_world(PolicyKind::uncoordinated, 4, 0.3, 20, 10, 0);
  Simulation sim(s, 3);
  sim.run();
  const auto r = sim.report();
  std::uint64_t sends = 0;
  for (const auto& p : sim.policies()) sends += p.requests_sent() + p.probes_sent();
  CHECK(sends == r.requests_sent + r.probes_sent);

  // With no warmup every answered request is counted, with all its copies.
  CHECK(r.traffic_bytes ==
        static_cast<double>(sends - sim.copies_of_unanswered_requests()) * 1200);
}

TEST_CASE("chi = 0 with a single client never leaves the initial primary") {
  // One client, three executors 5 ms apart in one-way latency, light load:
  // the primary's measured round trip stays well below the others' estimates.
  Scenario s;
  s.executors = {{0, 1e9, {1, 0}}, {1, 1e9, {2, 0}}, {2, 1e9, {3, 0}}};
  s.clients = {client_at(0, {0, 0}, poisson_workload(20, 1e6, OpsDistribution::constant))};
  s.network = {0.001, 0.005, std::nullopt};
  s.policy = {PolicyKind::uncoordinated, 3, 0.0, 0.1};
  s.horizon = 200;
  s.warmup = 0;
  const auto records = parse_trace(trace_of(s, 9));
  std::set<long long> destinations;
  for (const auto& r : records) {
    if (r.kind == "request_sent") destinations.insert(r.fields.at("executor"));
  }
  CHECK(destinations == std::set<long long>{0});

  Simulation sim(s, 9);
  sim.run();
  const auto& est = sim.policies()[0].estimates();
  CHECK(est.at(0) < est.at(1));
  CHECK(est.at(1) == doctest::Approx(0.022));
}

TEST_CASE("M/M/1 sojourn time") {
  const double lambda = 80, mu = 100;
  const auto s = mm1(lambda, mu, 1600, 100);
  const auto r = run_simulation(s, 2);
  REQUIRE(r.delay_samples.size() >= 100000);
  const double queueing = *r.delay_mean - 0.002;
  CHECK(std::abs(queueing - 1 / (mu - lambda)) < 0.1 / (mu - lambda));
  CHECK(r.utilization_mean == doctest::Approx(lambda / mu).epsilon(0.02));
}

TEST_CASE("probes add full executions on other executors") {
  const auto plain = run_simulation(small_world(PolicyKind::uncoordinated, 3, 0.0), 4);
  const auto probing = run_simulation(small_world(PolicyKind::uncoordinated, 3, 0.5), 4);
  CHECK(plain.probes_sent == 0);
  CHECK(probing.probes_per_request == doctest::Approx(1.0).epsilon(0.05));
  CHECK(probing.utilization_mean > plain.utilization_mean * 1.5);
  CHECK(probing.traffic_rate > plain.traffic_rate * 1.5);
}

TEST_CASE("transmission delay adds to each hop when a link rate is set") {
  auto s = one_client_deterministic();
  s.network.link_rate = 1e6;  // 1000 B up = 1 ms, 200 B down = 0.2 ms
  const auto r = run_simulation(s, 1);
  CHECK(std::abs(*r.delay_mean - 0.0052) < 1e-9);
}
