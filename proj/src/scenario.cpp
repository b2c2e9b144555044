#include "uncoordsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "uncoordsim/errors.hpp"

namespace uncoordsim {

using nlohmann::json;

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::uncoordinated:
      return "uncoordinated";
    case PolicyKind::random:
      return "random";
    case PolicyKind::round_robin:
      return "round_robin";
    case PolicyKind::least_queue_oracle:
      return "least_queue_oracle";
  }
  return "unknown";
}

std::optional<PolicyKind> policy_kind_from_string(std::string_view name) {
  for (auto kind : {PolicyKind::uncoordinated, PolicyKind::random,
                    PolicyKind::round_robin, PolicyKind::least_queue_oracle}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

std::string join(const std::string& parent, const std::string& child) {
  return parent.empty() ? child : parent + "." + child;
}

std::string index(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ValidationError(path, what);
}

const json& expect_object(const json& node, const std::string& path,
                          std::initializer_list<std::string_view> required,
                          std::initializer_list<std::string_view> optional = {}) {
  require(node.is_object(), path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : node.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    require(known, join(path, key), "unknown key");
  }
  for (auto key : required) {
    require(node.contains(key), join(path, std::string(key)), "missing key");
  }
  return node;
}

double number(const json& node, const std::string& path) {
  require(node.is_number(), path, "expected a number");
  const double v = node.get<double>();
  require(std::isfinite(v), path, "expected a finite number");
  return v;
}

std::int64_t integer(const json& node, const std::string& path) {
  require(node.is_number_integer(), path, "expected an integer");
  return node.get<std::int64_t>();
}

std::uint64_t byte_count(const json& node, const std::string& path) {
  const auto v = integer(node, path);
  require(v >= 0, path, "must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

const std::string& text(const json& node, const std::string& path) {
  require(node.is_string(), path, "expected a string");
  return node.get_ref<const std::string&>();
}

Position parse_position(const json& node, const std::string& path) {
  require(node.is_array() && node.size() == 2, path,
          "expected a two-element array [x, y]");
  return {number(node[0], index(path, 0)), number(node[1], index(path, 1))};
}

ArrivalSpec parse_arrival(const json& node, const std::string& path) {
  require(node.is_object() && node.contains("kind"), join(path, "kind"),
          "missing key");
  const auto& kind = text(node["kind"], join(path, "kind"));
  if (kind == "deterministic") {
    expect_object(node, path, {"kind", "period"});
    return DeterministicArrival{number(node["period"], join(path, "period"))};
  }
  if (kind == "poisson") {
    expect_object(node, path, {"kind", "rate"});
    return PoissonArrival{number(node["rate"], join(path, "rate"))};
  }
  throw ValidationError(join(path, "kind"),
                        "expected \"deterministic\" or \"poisson\"");
}

OpsSpec parse_ops(const json& node, const std::string& path) {
  expect_object(node, path, {"kind", "mean"});
  OpsSpec ops;
  const auto& kind = text(node["kind"], join(path, "kind"));
  if (kind == "constant") {
    ops.distribution = OpsDistribution::constant;
  } else if (kind == "exponential") {
    ops.distribution = OpsDistribution::exponential;
  } else {
    throw ValidationError(join(path, "kind"),
                          "expected \"constant\" or \"exponential\"");
  }
  ops.mean = number(node["mean"], join(path, "mean"));
  return ops;
}

WorkloadSpec parse_workload(const json& node, const std::string& path) {
  expect_object(node, path, {"arrival", "ops", "input_bytes", "output_bytes"});
  return {parse_arrival(node["arrival"], join(path, "arrival")),
          parse_ops(node["ops"], join(path, "ops")),
          byte_count(node["input_bytes"], join(path, "input_bytes")),
          byte_count(node["output_bytes"], join(path, "output_bytes"))};
}

json position_json(const Position& p) { return json::array({p.x, p.y}); }

}  // namespace

void check_invariants(const Scenario& s) {
  require(!s.executors.empty(), "executors", "must be nonempty");
  require(!s.clients.empty(), "clients", "must be nonempty");

  for (std::size_t i = 0; i < s.executors.size(); ++i) {
    const auto& e = s.executors[i];
    const auto path = index("executors", i);
    require(e.id == static_cast<int>(i), join(path, "id"),
            "ids must be unique and contiguous from 0");
    require(e.speed > 0, join(path, "speed"), "must be > 0");
  }

  for (std::size_t i = 0; i < s.clients.size(); ++i) {
    const auto& c = s.clients[i];
    const auto path = index("clients", i);
    require(c.id == static_cast<int>(i), join(path, "id"),
            "ids must be unique and contiguous from 0");
    const auto wpath = join(path, "workload");
    if (const auto* d = std::get_if<DeterministicArrival>(&c.workload.arrival)) {
      require(d->period > 0, join(wpath, "arrival.period"), "must be > 0");
    } else {
      const auto& p = std::get<PoissonArrival>(c.workload.arrival);
      require(p.rate > 0, join(wpath, "arrival.rate"), "must be > 0");
    }
    require(c.workload.ops.mean > 0, join(wpath, "ops.mean"), "must be > 0");
  }

  const auto& n = s.network;
  require(n.base_latency >= 0, "network.base_latency", "must be >= 0");
  require(n.latency_per_unit_distance >= 0, "network.latency_per_unit_distance",
          "must be >= 0");
  if (n.link_rate) require(*n.link_rate > 0, "network.link_rate", "must be > 0");

  const auto& p = s.policy;
  require(p.k >= 1, "policy.k", "must be >= 1");
  require(p.k <= static_cast<int>(s.executors.size()), "policy.k",
          "pool_size exceeds executor count");
  require(p.chi >= 0 && p.chi <= 1, "policy.chi", "chi outside [0,1]");
  require(p.alpha > 0 && p.alpha <= 1, "policy.alpha", "alpha outside (0,1]");

  require(s.horizon > 0, "horizon_s", "must be > 0");
  require(s.warmup >= 0, "warmup_s", "must be >= 0");
  require(s.warmup < s.horizon, "warmup_s", "must be < horizon_s");
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("<root>", std::string("malformed JSON: ") + e.what());
  }
  expect_object(doc, "",
                {"executors", "clients", "network", "policy", "horizon_s"},
                {"warmup_s"});

  Scenario s;
  require(doc["executors"].is_array(), "executors", "expected an array");
  for (std::size_t i = 0; i < doc["executors"].size(); ++i) {
    const auto path = index("executors", i);
    const auto& node =
        expect_object(doc["executors"][i], path, {"id", "speed", "position"});
    s.executors.push_back(
        {static_cast<int>(integer(node["id"], join(path, "id"))),
         number(node["speed"], join(path, "speed")),
         parse_position(node["position"], join(path, "position"))});
  }

  require(doc["clients"].is_array(), "clients", "expected an array");
  for (std::size_t i = 0; i < doc["clients"].size(); ++i) {
    const auto path = index("clients", i);
    const auto& node =
        expect_object(doc["clients"][i], path, {"id", "position", "workload"});
    s.clients.push_back(
        {static_cast<int>(integer(node["id"], join(path, "id"))),
         parse_position(node["position"], join(path, "position")),
         parse_workload(node["workload"], join(path, "workload"))});
  }

  const auto& net = expect_object(
      doc["network"], "network", {"base_latency", "latency_per_unit_distance"},
      {"link_rate"});
  s.network.base_latency = number(net["base_latency"], "network.base_latency");
  s.network.latency_per_unit_distance = number(
      net["latency_per_unit_distance"], "network.latency_per_unit_distance");
  if (net.contains("link_rate")) {
    s.network.link_rate = number(net["link_rate"], "network.link_rate");
  }

  const auto& pol =
      expect_object(doc["policy"], "policy", {"kind"}, {"k", "chi", "alpha"});
  const auto& kind_name = text(pol["kind"], "policy.kind");
  const auto kind = policy_kind_from_string(kind_name);
  require(kind.has_value(), "policy.kind", "unknown policy \"" + kind_name + "\"");
  s.policy.kind = *kind;
  if (pol.contains("k")) s.policy.k = static_cast<int>(integer(pol["k"], "policy.k"));
  if (pol.contains("chi")) s.policy.chi = number(pol["chi"], "policy.chi");
  if (pol.contains("alpha")) s.policy.alpha = number(pol["alpha"], "policy.alpha");

  const auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::stable_sort(s.executors.begin(), s.executors.end(), by_id);
  std::stable_sort(s.clients.begin(), s.clients.end(), by_id);

  s.horizon = number(doc["horizon_s"], "horizon_s");
  if (doc.contains("warmup_s")) s.warmup = number(doc["warmup_s"], "warmup_s");

  check_invariants(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string to_json_text(const Scenario& s) {
  json doc;
  doc["executors"] = json::array();
  for (const auto& e : s.executors) {
    doc["executors"].push_back(
        {{"id", e.id}, {"speed", e.speed}, {"position", position_json(e.position)}});
  }
  doc["clients"] = json::array();
  for (const auto& c : s.clients) {
    json arrival;
    if (const auto* d = std::get_if<DeterministicArrival>(&c.workload.arrival)) {
      arrival = {{"kind", "deterministic"}, {"period", d->period}};
    } else {
      arrival = {{"kind", "poisson"},
                 {"rate", std::get<PoissonArrival>(c.workload.arrival).rate}};
    }
    const auto* ops_kind = c.workload.ops.distribution == OpsDistribution::constant
                               ? "constant"
                               : "exponential";
    doc["clients"].push_back(
        {{"id", c.id},
         {"position", position_json(c.position)},
         {"workload",
          {{"arrival", arrival},
           {"ops", {{"kind", ops_kind}, {"mean", c.workload.ops.mean}}},
           {"input_bytes", c.workload.input_bytes},
           {"output_bytes", c.workload.output_bytes}}}});
  }
  doc["network"] = {{"base_latency", s.network.base_latency},
                    {"latency_per_unit_distance", s.network.latency_per_unit_distance}};
  if (s.network.link_rate) doc["network"]["link_rate"] = *s.network.link_rate;
  doc["policy"] = {{"kind", to_string(s.policy.kind)},
                   {"k", s.policy.k},
                   {"chi", s.policy.chi},
                   {"alpha", s.policy.alpha}};
  doc["horizon_s"] = s.horizon;
  doc["warmup_s"] = s.warmup;
  return doc.dump(2);
}

double latency(const ClientSpec& client, const ExecutorSpec& executor,
               const NetworkSpec& net) {
  const double distance = std::hypot(client.position.x - executor.position.x,
                                     client.position.y - executor.position.y);
  return net.base_latency + net.latency_per_unit_distance * distance;
}

double transmission_delay(std::uint64_t bytes, const NetworkSpec& net) {
  if (!net.link_rate) return 0;
  return static_cast<double>(bytes) / *net.link_rate;
}

std::vector<int> assign_pool(const ClientSpec& client, int k,
                             const std::vector<ExecutorSpec>& executors,
                             const NetworkSpec& net) {
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(executors.size());
  for (const auto& e : executors) ranked.emplace_back(latency(client, e, net), e.id);
  std::sort(ranked.begin(), ranked.end());

  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)),
                                       ranked.size());
  std::vector<int> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.push_back(ranked[i].second);
  return pool;
}

}  // namespace uncoordsim
