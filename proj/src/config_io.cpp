// JSON -> SimConfig. Strict: unknown fields are rejected so typos fail
// loudly instead of silently falling back to defaults.

#include "rsgsim/config_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace rsgsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) fail(ctx + ": unknown field '" + item.key() + "'");
  }
}

const json& get_field(const json& obj, const char* name, const std::string& ctx) {
  const auto it = obj.find(name);
  if (it == obj.end()) fail(ctx + ": missing field '" + name + "'");
  return *it;
}

std::string as_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) fail(ctx + ": expected a string");
  return v.get<std::string>();
}

double as_double(const json& v, const std::string& ctx) {
  if (!v.is_number()) fail(ctx + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ctx + ": must be finite");
  return d;
}

std::int64_t as_int(const json& v, const std::string& ctx) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail(ctx + ": expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_uint(const json& v, const std::string& ctx) {
  const std::int64_t i = as_int(v, ctx);
  if (i < 0) fail(ctx + ": must be non-negative");
  return static_cast<std::uint64_t>(i);
}

std::string indexed(const std::string& ctx, std::size_t i) {
  std::ostringstream os;
  os << ctx << "[" << i << "]";
  return os.str();
}

// A parameter that is either one scalar (broadcast to all links) or a
// length-num_links array.
std::vector<double> broadcast_double(const json& v, std::size_t n, const std::string& ctx) {
  std::vector<double> out;
  if (v.is_array()) {
    if (v.size() != n)
      fail(ctx + ": expected " + std::to_string(n) + " entries, got " +
           std::to_string(v.size()));
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_double(v[i], indexed(ctx, i)));
  } else {
    out.assign(n, as_double(v, ctx));
  }
  return out;
}

std::vector<std::int64_t> broadcast_int(const json& v, std::size_t n, const std::string& ctx) {
  std::vector<std::int64_t> out;
  if (v.is_array()) {
    if (v.size() != n)
      fail(ctx + ": expected " + std::to_string(n) + " entries, got " +
           std::to_string(v.size()));
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_int(v[i], indexed(ctx, i)));
  } else {
    out.assign(n, as_int(v, ctx));
  }
  return out;
}

DiscreteDist parse_general(const json& spec, const std::string& ctx) {
  const json& jv = get_field(spec, "values", ctx);
  const json& jp = get_field(spec, "probs", ctx);
  if (!jv.is_array() || !jp.is_array()) fail(ctx + ": values and probs must be arrays");
  std::vector<std::int64_t> values;
  std::vector<double> probs;
  for (std::size_t i = 0; i < jv.size(); ++i)
    values.push_back(as_int(jv[i], indexed(ctx + ".values", i)));
  for (std::size_t i = 0; i < jp.size(); ++i)
    probs.push_back(as_double(jp[i], indexed(ctx + ".probs", i)));
  return DiscreteDist::general(std::move(values), std::move(probs));
}

enum class Section { Channel, Arrivals };

std::vector<DiscreteDist> parse_dist_spec(const json& spec, std::size_t n, Section sec,
                                          const std::string& ctx) {
  if (!spec.is_object()) fail(ctx + ": expected an object");
  const std::string kind = as_string(get_field(spec, "kind", ctx), ctx + ".kind");
  std::vector<DiscreteDist> out;
  out.reserve(n);
  if (sec == Section::Channel) {
    if (kind == "constant") {
      check_keys(spec, {"kind", "c"}, ctx);
      const auto c = broadcast_int(get_field(spec, "c", ctx), n, ctx + ".c");
      for (std::size_t l = 0; l < n; ++l) out.push_back(DiscreteDist::constant(c[l]));
    } else if (kind == "on_off") {
      check_keys(spec, {"kind", "c", "q"}, ctx);
      const auto c = broadcast_int(get_field(spec, "c", ctx), n, ctx + ".c");
      const auto q = broadcast_double(get_field(spec, "q", ctx), n, ctx + ".q");
      for (std::size_t l = 0; l < n; ++l) out.push_back(DiscreteDist::on_off(c[l], q[l]));
    } else if (kind == "general") {
      check_keys(spec, {"kind", "values", "probs"}, ctx);
      const DiscreteDist d = parse_general(spec, ctx);
      out.assign(n, d);
    } else {
      fail(ctx + ".kind: unknown channel distribution '" + kind +
           "' (expected constant, on_off, or general)");
    }
  } else {
    if (kind == "bernoulli") {
      check_keys(spec, {"kind", "lambda"}, ctx);
      const auto lam = broadcast_double(get_field(spec, "lambda", ctx), n, ctx + ".lambda");
      for (std::size_t l = 0; l < n; ++l) out.push_back(DiscreteDist::bernoulli(lam[l]));
    } else if (kind == "constant") {
      check_keys(spec, {"kind", "a"}, ctx);
      const auto a = broadcast_int(get_field(spec, "a", ctx), n, ctx + ".a");
      for (std::size_t l = 0; l < n; ++l) out.push_back(DiscreteDist::constant(a[l]));
    } else if (kind == "bursty") {
      check_keys(spec, {"kind", "k", "scale"}, ctx);
      const auto k = broadcast_int(get_field(spec, "k", ctx), n, ctx + ".k");
      std::vector<std::int64_t> scale(n, 1);
      if (spec.contains("scale")) scale = broadcast_int(spec["scale"], n, ctx + ".scale");
      for (std::size_t l = 0; l < n; ++l) {
        if (k[l] < 1) fail(indexed(ctx + ".k", l) + ": burst parameter must be >= 1");
        if (scale[l] < 1) fail(indexed(ctx + ".scale", l) + ": scale must be >= 1");
        out.push_back(DiscreteDist::bursty(k[l], scale[l]));
      }
    } else if (kind == "general") {
      check_keys(spec, {"kind", "values", "probs"}, ctx);
      const DiscreteDist d = parse_general(spec, ctx);
      out.assign(n, d);
    } else {
      fail(ctx + ".kind: unknown arrival distribution '" + kind +
           "' (expected bernoulli, constant, bursty, or general)");
    }
  }
  return out;
}

std::vector<DiscreteDist> parse_dists(const json& node, std::size_t n, Section sec,
                                      const std::string& ctx) {
  if (!node.is_object()) fail(ctx + ": expected an object");
  if (node.contains("per_link")) {
    check_keys(node, {"per_link"}, ctx);
    const json& arr = node["per_link"];
    if (!arr.is_array() || arr.size() != n)
      fail(ctx + ".per_link: expected an array of " + std::to_string(n) + " entries");
    std::vector<DiscreteDist> out;
    out.reserve(n);
    for (std::size_t l = 0; l < n; ++l)
      out.push_back(parse_dist_spec(arr[l], 1, sec, indexed(ctx + ".per_link", l)).front());
    return out;
  }
  return parse_dist_spec(node, n, sec, ctx);
}

TopologySpec parse_topology(const json& j) {
  const std::string ctx = "topology";
  if (!j.is_object()) fail(ctx + ": expected an object");
  TopologySpec t;
  const std::string kind = as_string(get_field(j, "kind", ctx), ctx + ".kind");
  if (kind == "single_hop") {
    check_keys(j, {"kind", "links"}, ctx);
    t.kind = TopologyKind::SingleHop;
    t.links = as_uint(get_field(j, "links", ctx), ctx + ".links");
  } else if (kind == "switch") {
    check_keys(j, {"kind", "ports"}, ctx);
    t.kind = TopologyKind::Switch;
    t.ports = static_cast<int>(as_int(get_field(j, "ports", ctx), ctx + ".ports"));
  } else if (kind == "conflict_graph") {
    check_keys(j, {"kind", "links", "edges"}, ctx);
    t.kind = TopologyKind::ConflictGraph;
    t.links = as_uint(get_field(j, "links", ctx), ctx + ".links");
    const json& edges = get_field(j, "edges", ctx);
    if (!edges.is_array()) fail(ctx + ".edges: expected an array of [u, v] pairs");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const json& e = edges[i];
      const std::string ectx = indexed(ctx + ".edges", i);
      if (!e.is_array() || e.size() != 2) fail(ectx + ": expected a [u, v] pair");
      t.conflict_edges.emplace_back(as_uint(e[0], ectx + "[0]"), as_uint(e[1], ectx + "[1]"));
    }
  } else {
    fail(ctx + ".kind: unknown topology '" + kind +
         "' (expected single_hop, switch, or conflict_graph)");
  }
  return t;
}

PolicySpec parse_policy(const json& j, std::size_t n) {
  const std::string ctx = "policy";
  if (!j.is_object()) fail(ctx + ": expected an object");
  check_keys(j, {"kind", "alpha", "beta", "gamma", "tie_rule"}, ctx);
  PolicySpec p;
  const std::string kind = as_string(get_field(j, "kind", ctx), ctx + ".kind");
  if (kind == "mws")
    p.kind = PolicyKind::MaxWeight;
  else if (kind == "rsg")
    p.kind = PolicyKind::Rsg;
  else if (kind == "rsg_variant")
    p.kind = PolicyKind::RsgVariant;
  else if (kind == "round_robin")
    p.kind = PolicyKind::RoundRobin;
  else
    fail(ctx + ".kind: unknown policy '" + kind +
         "' (expected mws, rsg, rsg_variant, or round_robin)");
  if (j.contains("alpha")) p.alpha = broadcast_double(j["alpha"], n, ctx + ".alpha");
  if (j.contains("beta")) p.beta = broadcast_double(j["beta"], n, ctx + ".beta");
  if (j.contains("gamma")) p.gamma = as_double(j["gamma"], ctx + ".gamma");
  if (j.contains("tie_rule")) {
    const std::string rule = as_string(j["tie_rule"], ctx + ".tie_rule");
    if (rule == "lowest_index")
      p.tie_rule = TieRule::LowestIndex;
    else if (rule == "seeded_uniform")
      p.tie_rule = TieRule::SeededUniform;
    else
      fail(ctx + ".tie_rule: unknown rule '" + rule +
           "' (expected lowest_index or seeded_uniform)");
  }
  return p;
}

RunSpec parse_run(const json& j) {
  const std::string ctx = "run";
  RunSpec r;  // defaults: horizon 1e6, warmup 1e4, seed 1, replications 8
  if (j.is_null()) return r;
  if (!j.is_object()) fail(ctx + ": expected an object");
  check_keys(j, {"horizon", "warmup", "seed", "replications"}, ctx);
  if (j.contains("horizon")) r.horizon = as_uint(j["horizon"], ctx + ".horizon");
  if (j.contains("warmup")) r.warmup = as_uint(j["warmup"], ctx + ".warmup");
  if (j.contains("seed")) r.seed = as_uint(j["seed"], ctx + ".seed");
  if (j.contains("replications"))
    r.replications = static_cast<std::uint32_t>(as_uint(j["replications"], ctx + ".replications"));
  return r;
}

SimConfig parse_json(const json& j) {
  if (!j.is_object()) fail("config: top level must be a JSON object");
  check_keys(j, {"topology", "channel", "arrivals", "policy", "run"}, "config");
  SimConfig cfg;
  cfg.topology = parse_topology(get_field(j, "topology", "config"));
  const std::size_t n = cfg.topology.num_links();
  if (n == 0) fail("topology: resolves to zero links");
  cfg.channel.link = parse_dists(get_field(j, "channel", "config"), n, Section::Channel, "channel");
  cfg.arrivals.link =
      parse_dists(get_field(j, "arrivals", "config"), n, Section::Arrivals, "arrivals");
  cfg.policy = parse_policy(get_field(j, "policy", "config"), n);
  cfg.run = parse_run(j.contains("run") ? j["run"] : json());
  return cfg;
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  return parse_json(j);
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading config file: " + path);
  return parse_config_text(buf.str());
}

}  // namespace rsgsim
