#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "uncoordsim/errors.hpp"
#include "uncoordsim/policy.hpp"

using namespace uncoordsim;

namespace {

Request request(RequestId id) { return Request{id, 0, 0, 1e6, 1000, 200}; }

const std::vector<std::size_t> kNoQueues(8, 0);

}  // namespace

TEST_CASE("estimates start at the zero-load round trip") {
  const std::vector<int> pool{0, 1};
  const std::vector<double> one_way{0.001, 0.003};
  const auto est = init_estimates(pool, one_way);
  CHECK(est.at(0) == doctest::Approx(0.002));
  CHECK(est.at(1) == doctest::Approx(0.006));

  const std::vector<int> six{5, 4, 3, 2, 1, 0};
  const std::vector<double> same(6, 0.002);
  const auto est6 = init_estimates(six, same);
  CHECK(est6.size() == 6);
  for (const auto& [id, v] : est6) CHECK(v == 0.004);
}

TEST_CASE("select_primary is the argmin with lowest-id ties") {
  CHECK(select_primary({{0, 0.005}, {1, 0.007}}) == 0);
  CHECK(select_primary({{0, 0.005}, {1, 0.005}}) == 0);
  CHECK(select_primary({{3, 0.009}, {1, 0.005}, {2, 0.004}}) == 2);
  CHECK_THROWS_AS(select_primary({}), InternalError);

  Estimates est{{0, 0.005}, {1, 0.007}};
  est[0] = ewma_update(est[0], 0.1, 0.5);
  CHECK(select_primary(est) == 1);
}

TEST_CASE("select_primary is invariant under shifts and positive scaling") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> v(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    Estimates est;
    for (int i = 0; i < 1 + static_cast<int>(gen() % 6); ++i) est[i] = std::round(v(gen) * 8) / 8;
    const int base = select_primary(est);
    const double shift = v(gen) * 3, scale = 0.25 + v(gen) * 4;
    Estimates shifted = est, scaled = est;
    for (auto& [id, x] : shifted) x += shift;
    for (auto& [id, x] : scaled) x *= scale;
    REQUIRE(select_primary(shifted) == base);
    REQUIRE(select_primary(scaled) == base);
  }
}

TEST_CASE("ewma_update") {
  CHECK(ewma_update(0.010, 0.010, 0.3) == doctest::Approx(0.010));
  CHECK(ewma_update(0.010, 0.042, 1.0) == 0.042);
  CHECK(ewma_update(0.010, 0.020, 0.1) == doctest::Approx(0.011));
}

TEST_CASE("draw_probe_set edge probabilities") {
  const std::vector<int> pool{0, 1, 2, 3};
  RngStream rng(1, StreamTag::policy, 0);
  for (std::uint64_t r = 0; r < 200; ++r) {
    auto u = [&](int e) { return rng.uniform_at(r, static_cast<std::uint64_t>(e)); };
    REQUIRE(draw_probe_set(pool, 2, 0.0, u).empty());
    REQUIRE(draw_probe_set(pool, 2, 1.0, u) == std::vector<int>{0, 1, 3});
  }
}

TEST_CASE("probe set size matches the binomial mean") {
  // chi = 0.1, k = 6: size ~ Binomial(5, 0.1), mean 0.5.
  const std::vector<int> pool{0, 1, 2, 3, 4, 5};
  const double chi = 0.1;
  const int n = 1000000;
  RngStream rng(77, StreamTag::policy, 3);
  double total = 0;
  for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(n); ++r) {
    const auto probes = draw_probe_set(pool, 0, chi, [&](int e) {
      return rng.uniform_at(r, static_cast<std::uint64_t>(e));
    });
    REQUIRE(std::find(probes.begin(), probes.end(), 0) == probes.end());
    total += static_cast<double>(probes.size());
  }
  const double mean = total / n;
  const double sigma = std::sqrt(5 * chi * (1 - chi) / n);
  CHECK(std::abs(mean - 0.5) < 3 * sigma);
}

TEST_CASE("larger chi draws a superset with common random numbers") {
  const std::vector<int> pool{0, 1, 2, 3, 4, 5};
  RngStream rng(5, StreamTag::policy, 1);
  const double chis[] = {0.0, 0.001, 0.01, 0.1, 0.3, 0.5, 1.0};
  for (std::uint64_t r = 0; r < 5000; ++r) {
    auto u = [&](int e) { return rng.uniform_at(r, static_cast<std::uint64_t>(e)); };
    std::vector<int> previous;
    for (double chi : chis) {
      const auto current = draw_probe_set(pool, 1, chi, u);
      REQUIRE(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
      previous = current;
    }
  }
}

TEST_CASE("uncoordinated dispatch sends the primary plus drawn probes") {
  const PolicyConfig no_probe{PolicyKind::uncoordinated, 2, 0.0, 0.1};
  const std::vector<double> lat{0.001, 0.002};

  SUBCASE("chi = 0 means a single send") {
    ClientPolicy p(no_probe, {0, 1}, lat, RngStream(1, StreamTag::policy, 0));
    for (RequestId id = 0; id < 100; ++id) {
      const auto d = p.dispatch(request(id), kNoQueues);
      REQUIRE(d.copies() == 1);
      REQUIRE(d.primary == 0);
    }
    CHECK(p.requests_sent() == 100);
    CHECK(p.probes_sent() == 0);
  }

  SUBCASE("k = 2, chi = 0.5 sends 1.5 copies per request") {
    const PolicyConfig half{PolicyKind::uncoordinated, 2, 0.5, 0.1};
    ClientPolicy p(half, {0, 1}, lat, RngStream(9, StreamTag::policy, 0));
    const int n = 100000;
    for (RequestId id = 0; id < static_cast<RequestId>(n); ++id) p.dispatch(request(id), kNoQueues);
    const double per_request =
        static_cast<double>(p.requests_sent() + p.probes_sent()) / p.requests_sent();
    const double sigma = std::sqrt(0.25 / n);
    CHECK(std::abs(per_request - 1.5) < 3 * sigma);
  }
}

TEST_CASE("on_response keeps only the first delay of a request") {
  const PolicyConfig cfg{PolicyKind::uncoordinated, 2, 1.0, 0.5};
  ClientPolicy p(cfg, {0, 1}, std::vector<double>{0.001, 0.002}, RngStream(1, StreamTag::policy, 0));
  const auto d = p.dispatch(request(7), kNoQueues);
  REQUIRE(d.copies() == 2);

  // probe (executor 1) answers first at 3 ms, primary at 5 ms
  CHECK(p.on_response(7, 1, 0.003, true));
  CHECK_FALSE(p.on_response(7, 0, 0.005, false));
  CHECK(p.estimates().at(1) == doctest::Approx(0.5 * 0.004 + 0.5 * 0.003));
  CHECK(p.estimates().at(0) == doctest::Approx(0.5 * 0.002 + 0.5 * 0.005));
  CHECK(p.outstanding() == 0);

  CHECK_THROWS_AS(p.on_response(7, 0, 0.005, false), InternalError);
}

TEST_CASE("responses from outside the pool are internal errors") {
  const PolicyConfig cfg{PolicyKind::uncoordinated, 1, 0.0, 0.5};
  ClientPolicy p(cfg, {0}, std::vector<double>{0.001}, RngStream(1, StreamTag::policy, 0));
  p.dispatch(request(1), kNoQueues);
  CHECK_THROWS_AS(p.on_response(1, 3, 0.004, false), InternalError);
}

TEST_CASE("baseline policies") {
  const std::vector<int> pool{4, 2};
  RngStream rng(8, StreamTag::policy, 0);
  std::size_t cursor = 0;

  SUBCASE("round robin cycles the pool in order") {
    std::vector<int> seen;
    for (int i = 0; i < 4; ++i) {
      seen.push_back(baseline_select(PolicyKind::round_robin, pool, rng, cursor, kNoQueues));
    }
    CHECK(seen == std::vector<int>{4, 2, 4, 2});
  }
  SUBCASE("oracle picks the globally shortest queue") {
    const std::vector<std::size_t> queues{3, 0};
    CHECK(baseline_select(PolicyKind::least_queue_oracle, std::vector<int>{0, 1}, rng, cursor,
                          queues) == 1);
    const std::vector<std::size_t> tie{2, 1, 1, 5};
    CHECK(baseline_select(PolicyKind::least_queue_oracle, pool, rng, cursor, tie) == 1);
  }
  SUBCASE("random is uniform over the pool") {
    const int n = 100000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
      if (baseline_select(PolicyKind::random, pool, rng, cursor, kNoQueues) == 4) ++first;
    }
    const double sigma = std::sqrt(n * 0.25);
    CHECK(std::abs(first - n / 2.0) < 3 * sigma);
  }
  SUBCASE("baselines never probe") {
    ClientPolicy p({PolicyKind::round_robin, 2, 1.0, 0.1}, {0, 1},
                   std::vector<double>{0.001, 0.001}, RngStream(1, StreamTag::policy, 0));
    for (RequestId id = 0; id < 10; ++id) CHECK(p.dispatch(request(id), kNoQueues).copies() == 1);
  }
}
