#include "hpcmodel/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "hpcmodel/errors.hpp"
#include "nlohmann/json.hpp"

namespace hpcmodel {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseError(path + ": " + message);
}

std::string type_name(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "an object";
    case json::value_t::array: return "an array";
    case json::value_t::string: return "a string";
    case json::value_t::boolean: return "a boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float: return "a number";
    default: return "an unsupported value";
  }
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number, got " + type_name(j));
  return j.get<double>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) {
    fail(path, "expected a nonnegative integer, got " +
                   (j.is_number() ? std::string("a negative or fractional number")
                                  : type_name(j)));
  }
  return j.get<std::uint64_t>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer, got " + type_name(j));
  const auto v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string, got " + type_name(j));
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean, got " + type_name(j));
  return j.get<bool>();
}

// One JSON object with key tracking: strict mode rejects keys nobody asked
// for, so schema drift and typos surface as errors instead of silence.
class Obj {
 public:
  Obj(const json& j, std::string path, bool lenient)
      : j_(j), path_(std::move(path)), lenient_(lenient) {
    if (!j_.is_object()) fail(path_, "expected an object, got " + type_name(j_));
  }

  std::string key_path(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }
  const std::string& path() const { return path_; }
  bool lenient() const { return lenient_; }

  bool has(const char* key) const { return j_.contains(key); }

  const json& req(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) fail(key_path(key), "missing required field");
    return *it;
  }

  const json* opt(const char* key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double req_double(const char* key) { return as_double(req(key), key_path(key)); }
  std::uint64_t req_u64(const char* key) { return as_u64(req(key), key_path(key)); }
  int req_int(const char* key) { return as_int(req(key), key_path(key)); }
  std::string req_string(const char* key) { return as_string(req(key), key_path(key)); }

  std::optional<double> opt_double(const char* key) {
    const json* v = opt(key);
    return v ? std::optional(as_double(*v, key_path(key))) : std::nullopt;
  }
  std::optional<std::uint64_t> opt_u64(const char* key) {
    const json* v = opt(key);
    return v ? std::optional(as_u64(*v, key_path(key))) : std::nullopt;
  }
  std::optional<int> opt_int(const char* key) {
    const json* v = opt(key);
    return v ? std::optional(as_int(*v, key_path(key))) : std::nullopt;
  }
  std::optional<std::string> opt_string(const char* key) {
    const json* v = opt(key);
    return v ? std::optional(as_string(*v, key_path(key))) : std::nullopt;
  }

  int int_or(const char* key, int fallback) { return opt_int(key).value_or(fallback); }
  std::uint64_t u64_or(const char* key, std::uint64_t fallback) {
    return opt_u64(key).value_or(fallback);
  }
  bool bool_or(const char* key, bool fallback) {
    const json* v = opt(key);
    return v ? as_bool(*v, key_path(key)) : fallback;
  }
  std::string string_or(const char* key, std::string fallback) {
    return opt_string(key).value_or(std::move(fallback));
  }

  // Call after every known key has been requested.
  void finish() {
    if (lenient_) return;
    for (const auto& [key, value] : j_.items()) {
      (void)value;
      if (!seen_.contains(key)) fail(key_path(key.c_str()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  bool lenient_;
  std::set<std::string> seen_;
};

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array, got " + type_name(j));
  return j;
}

template <typename T, typename Fn>
std::vector<T> read_array(Obj& parent, const char* key, Fn&& element) {
  std::vector<T> out;
  const json* v = parent.opt(key);
  if (v == nullptr) return out;
  const std::string path = parent.key_path(key);
  const json& arr = as_array(*v, path);
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(element(arr[i], idx(path, i)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

Range read_range(const json& j, const std::string& path) {
  const json& arr = as_array(j, path);
  if (arr.size() != 2) fail(path, "expected an interval [low, high]");
  return Range{as_double(arr[0], idx(path, 0)), as_double(arr[1], idx(path, 1))};
}

LinkRate read_link_rate(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  LinkRate rate;
  rate.label = o.req_string("label");
  rate.gbit_s = o.req_double("gbit_s");
  o.finish();
  return rate;
}

CacheLevel read_cache(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  CacheLevel cache;
  cache.level = o.req_string("level");
  cache.size_bytes = o.req_u64("size_bytes");
  cache.sharing_cores = o.int_or("sharing_cores", 1);
  cache.associativity = o.opt_int("associativity");
  if (const json* v = o.opt("latency_cycles_documented")) {
    cache.latency_cycles_documented = read_range(*v, o.key_path("latency_cycles_documented"));
  }
  if (const json* v = o.opt("latency_cycles_measured")) {
    cache.latency_cycles_measured = read_range(*v, o.key_path("latency_cycles_measured"));
  }
  o.finish();
  return cache;
}

VectorVariant read_variant(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  VectorVariant v;
  v.name = o.req_string("name");
  v.execution_units = o.req_int("execution_units");
  v.elements_per_vector = o.req_int("elements_per_vector");
  v.operations_per_element = o.req_int("operations_per_element");
  o.finish();
  return v;
}

CpuSpec read_cpu(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  CpuSpec cpu;
  cpu.model = o.req_string("model");
  cpu.sockets_per_node = o.req_int("sockets_per_node");
  cpu.cores_per_socket = o.req_int("cores_per_socket");
  cpu.base_frequency_ghz = o.req_double("base_frequency_ghz");
  cpu.boost_frequency_ghz = o.req_double("boost_frequency_ghz");
  cpu.tdp_watts_per_socket = o.req_double("tdp_watts_per_socket");
  cpu.caches = read_array<CacheLevel>(
      o, "caches", [&](const json& e, const std::string& p) { return read_cache(e, p, lenient); });
  cpu.vector_variants = read_array<VectorVariant>(
      o, "vector_variants",
      [&](const json& e, const std::string& p) { return read_variant(e, p, lenient); });
  o.finish();
  return cpu;
}

MemoryConfig read_memory(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  MemoryConfig m;
  m.technology = o.req_string("technology");
  m.capacity_bytes = o.req_u64("capacity_bytes");
  m.channels_per_socket = o.req_int("channels_per_socket");
  m.transfer_rate_gt_s = o.req_double("transfer_rate_gt_s");
  m.bytes_per_transfer = o.int_or("bytes_per_transfer", 8);
  m.numa_mode = o.string_or("numa_mode", "");
  o.finish();
  return m;
}

HbmConfig read_hbm(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  HbmConfig h;
  h.stacks = o.req_int("stacks");
  h.channels_per_stack = o.req_int("channels_per_stack");
  h.pseudo_channels_per_channel = o.req_int("pseudo_channels_per_channel");
  h.bits_per_pseudo_channel = o.req_int("bits_per_pseudo_channel");
  h.controller_clock_mhz = o.req_double("controller_clock_mhz");
  h.data_rate_multiplier = o.int_or("data_rate_multiplier", 2);
  o.finish();
  return h;
}

MemorySystem read_memory_system(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  MemorySystem m;
  m.label = o.req_string("label");
  m.capacity_bytes = o.req_u64("capacity_bytes");
  m.peak_bandwidth_gb_s = o.req_double("peak_bandwidth_gb_s");
  if (const json* v = o.opt("hbm")) m.hbm = read_hbm(*v, o.key_path("hbm"), lenient);
  o.finish();
  return m;
}

BspFraction read_bsp_fraction(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  BspFraction f;
  f.fraction = o.req_double("fraction");
  f.upper_bound = o.bool_or("upper_bound", false);
  o.finish();
  return f;
}

FpgaResources read_fpga_resources(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  FpgaResources r;
  r.luts = o.req_u64("luts");
  r.luts_packed = o.opt_u64("luts_packed");
  {
    Obj d(o.req("dsp_blocks"), o.key_path("dsp_blocks"), lenient);
    r.dsp_blocks.count = d.req_u64("count");
    r.dsp_blocks.architecture = d.string_or("architecture", "");
    d.finish();
  }
  r.ram_blocks =
      read_array<RamBlockGroup>(o, "ram_blocks", [&](const json& e, const std::string& p) {
        Obj b(e, p, lenient);
        RamBlockGroup g;
        g.kind = b.req_string("kind");
        g.count = b.req_u64("count");
        g.kibit_per_block = b.req_u64("kibit_per_block");
        b.finish();
        return g;
      });
  if (const json* v = o.opt("bsp_overhead")) {
    Obj b(*v, o.key_path("bsp_overhead"), lenient);
    BspOverhead overhead;
    if (const json* f = b.opt("logic")) {
      overhead.logic = read_bsp_fraction(*f, b.key_path("logic"), lenient);
    }
    if (const json* f = b.opt("dsp")) {
      overhead.dsp = read_bsp_fraction(*f, b.key_path("dsp"), lenient);
    }
    if (const json* f = b.opt("bram")) {
      overhead.bram = read_bsp_fraction(*f, b.key_path("bram"), lenient);
    }
    b.finish();
    r.bsp_overhead = overhead;
  }
  o.finish();
  return r;
}

AcceleratorSpec read_accelerator(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  AcceleratorSpec a;
  const std::string kind = o.req_string("kind");
  if (kind == "gpu") {
    a.kind = AcceleratorKind::gpu;
  } else if (kind == "fpga") {
    a.kind = AcceleratorKind::fpga;
  } else {
    fail(o.key_path("kind"), "expected \"gpu\" or \"fpga\", got \"" + kind + "\"");
  }
  a.model = o.req_string("model");
  a.tdp_watts = o.req_double("tdp_watts");
  a.memory_systems = read_array<MemorySystem>(
      o, "memory_systems",
      [&](const json& e, const std::string& p) { return read_memory_system(e, p, lenient); });
  if (const json* v = o.opt("throughput_table")) {
    const std::string tp = o.key_path("throughput_table");
    if (!v->is_object()) fail(tp, "expected an object, got " + type_name(*v));
    for (const auto& [precision, value] : v->items()) {
      a.throughput_table[precision] = as_double(value, tp + "." + precision);
    }
  }
  if (const json* v = o.opt("fpga_resources")) {
    a.fpga_resources = read_fpga_resources(*v, o.key_path("fpga_resources"), lenient);
  }
  if (const json* v = o.opt("host_interface")) {
    Obj h(*v, o.key_path("host_interface"), lenient);
    HostInterface hi;
    hi.generation = h.req_string("generation");
    hi.bandwidth_gb_s = h.req_double("bandwidth_gb_s");
    h.finish();
    a.host_interface = hi;
  }
  if (const json* v = o.opt("network_ports")) {
    Obj n(*v, o.key_path("network_ports"), lenient);
    NetworkPorts ports;
    ports.count = n.req_int("count");
    ports.rate_gbit_s = n.req_double("rate_gbit_s");
    n.finish();
    a.network_ports = ports;
  }
  o.finish();
  return a;
}

Partition read_partition(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  Partition p;
  p.name = o.req_string("name");
  p.node_count = o.req_u64("node_count");
  p.nodes_per_blade = o.int_or("nodes_per_blade", 1);
  p.active_nodes = o.opt_u64("active_nodes");
  p.cpu = read_cpu(o.req("cpu"), o.key_path("cpu"), lenient);
  p.memory = read_memory(o.req("memory"), o.key_path("memory"), lenient);
  p.accelerators =
      read_array<AcceleratorGroup>(o, "accelerators", [&](const json& e, const std::string& ap) {
        Obj g(e, ap, lenient);
        AcceleratorGroup group;
        group.per_node = g.req_int("per_node");
        group.spec = read_accelerator(g.req("spec"), g.key_path("spec"), lenient);
        g.finish();
        return group;
      });
  p.local_storage_bytes = o.u64_or("local_storage_bytes", 0);
  if (const json* v = o.opt("link")) {
    Obj l(*v, o.key_path("link"), lenient);
    PartitionLink link;
    link.rate = read_link_rate(l.req("rate"), l.key_path("rate"), lenient);
    link.links_per_blade = l.int_or("links_per_blade", 1);
    link.shared_io = l.bool_or("shared_io", false);
    l.finish();
    p.link = link;
  }
  p.note = o.opt_string("note");
  o.finish();
  return p;
}

FabricSpec read_fabric(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  FabricSpec f;
  f.spine_count = o.req_int("spine_count");
  f.leaf_count = o.req_int("leaf_count");
  f.switch_radix = o.req_int("switch_radix");
  f.port_rate = read_link_rate(o.req("port_rate"), o.key_path("port_rate"), lenient);
  f.uplinks_per_leaf_per_spine = o.req_int("uplinks_per_leaf_per_spine");
  f.endpoint_attachments = read_array<FabricAttachment>(
      o, "endpoint_attachments", [&](const json& e, const std::string& ap) {
        Obj a(e, ap, lenient);
        FabricAttachment att;
        att.partition = a.req_string("partition");
        att.blades = a.req_u64("blades");
        att.links_per_blade = a.int_or("links_per_blade", 1);
        att.rate = read_link_rate(a.req("rate"), a.key_path("rate"), lenient);
        att.shared_io = a.bool_or("shared_io", false);
        a.finish();
        return att;
      });
  f.auxiliary_attachments = read_array<AuxiliaryAttachment>(
      o, "auxiliary_attachments", [&](const json& e, const std::string& ap) {
        Obj a(e, ap, lenient);
        AuxiliaryAttachment aux;
        aux.name = a.req_string("name");
        aux.links = a.req_int("links");
        aux.rate = read_link_rate(a.req("rate"), a.key_path("rate"), lenient);
        a.finish();
        return aux;
      });
  o.finish();
  return f;
}

StorageSpec read_storage(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  StorageSpec s;
  s.filesystem_label = o.req_string("filesystem_label");
  s.usable_capacity_bytes = o.req_u64("usable_capacity_bytes");
  s.pools = read_array<Pool>(o, "pools", [&](const json& e, const std::string& pp) {
    Obj p(e, pp, lenient);
    Pool pool;
    pool.name = p.req_string("name");
    pool.device_count = p.req_u64("device_count");
    pool.device_capacity_bytes = p.req_u64("device_capacity_bytes");
    const std::string medium = p.req_string("medium");
    if (medium == "nvme") {
      pool.medium = Medium::nvme;
    } else if (medium == "hdd") {
      pool.medium = Medium::hdd;
    } else {
      fail(p.key_path("medium"), "expected \"nvme\" or \"hdd\", got \"" + medium + "\"");
    }
    p.finish();
    return pool;
  });
  s.servers = read_array<StorageServer>(o, "servers", [&](const json& e, const std::string& sp) {
    Obj v(e, sp, lenient);
    StorageServer server;
    server.name = v.req_string("name");
    server.canisters = v.int_or("canisters", 1);
    v.finish();
    return server;
  });
  o.finish();
  return s;
}

FacilitySpec read_facility(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  FacilitySpec f;
  f.electrical_capacity_watts = o.req_double("electrical_capacity_watts");
  f.planned_capacity_watts = o.opt_double("planned_capacity_watts");
  f.heat_reuse_fraction_min = o.opt_double("heat_reuse_fraction_min");
  o.finish();
  return f;
}

Orientation read_orientation(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "higher") return Orientation::higher_is_better;
  if (s == "lower") return Orientation::lower_is_better;
  fail(path, "expected \"higher\" or \"lower\", got \"" + s + "\"");
}

MeasurementSet read_measurements(const json& j, const std::string& path, bool lenient) {
  Obj o(j, path, lenient);
  MeasurementSet m;
  m.partition = o.string_or("partition", "");
  m.flops_runs =
      read_array<FlopsRun>(o, "flops_runs", [&](const json& e, const std::string& rp) {
        Obj r(e, rp, lenient);
        FlopsRun run;
        run.variant = r.req_string("variant");
        run.observed_frequency_ghz = r.req_double("observed_frequency_ghz");
        run.tflops = r.req_double("tflops");
        run.source = r.string_or("source", "");
        r.finish();
        return run;
      });
  m.stream_runs =
      read_array<StreamRun>(o, "stream_runs", [&](const json& e, const std::string& rp) {
        Obj r(e, rp, lenient);
        StreamRun run;
        run.numa_mode = r.req_string("numa_mode");
        run.gb_s = r.req_double("gb_s");
        run.source = r.string_or("source", "");
        r.finish();
        return run;
      });
  m.applications =
      read_array<AppResult>(o, "applications", [&](const json& e, const std::string& ap) {
        Obj r(e, ap, lenient);
        AppResult app;
        app.name = r.req_string("name");
        app.value = r.req_double("value");
        app.unit = r.req_string("unit");
        app.better = read_orientation(r.req("better"), r.key_path("better"));
        app.source = r.string_or("source", "");
        r.finish();
        return app;
      });
  m.xbtest = read_array<XbtestSeries>(o, "xbtest", [&](const json& e, const std::string& xp) {
    Obj r(e, xp, lenient);
    XbtestSeries x;
    x.accelerator_model = r.req_string("accelerator_model");
    x.memory_label = r.req_string("memory_label");
    const std::string fp = r.key_path("mode_fractions");
    const json& arr = as_array(r.req("mode_fractions"), fp);
    if (arr.size() != x.mode_fractions.size()) {
      fail(fp, "expected exactly " + std::to_string(x.mode_fractions.size()) + " fractions");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      x.mode_fractions[i] = as_double(arr[i], idx(fp, i));
    }
    x.source = r.string_or("source", "");
    r.finish();
    return x;
  });
  m.scalars = read_array<ScalarMeasurement>(o, "scalars", [&](const json& e, const std::string& sp) {
    Obj r(e, sp, lenient);
    ScalarMeasurement s;
    s.name = r.req_string("name");
    s.value = r.req_double("value");
    s.unit = r.req_string("unit");
    s.source = r.string_or("source", "");
    r.finish();
    return s;
  });
  if (const json* v = o.opt("pue_sample")) {
    Obj r(*v, o.key_path("pue_sample"), lenient);
    EnergySample sample;
    sample.total_energy = r.req_double("total_energy");
    sample.it_energy = r.req_double("it_energy");
    sample.period_label = r.string_or("period_label", "");
    r.finish();
    m.pue_sample = sample;
  }
  o.finish();
  return m;
}

ClusterSpec read_cluster(const json& j, bool lenient) {
  Obj o(j, "", lenient);
  const json& schema = o.req("schema");
  if (!schema.is_number_integer() || schema.get<std::int64_t>() != kSchemaVersion) {
    fail("schema", "unsupported schema version " + schema.dump() + " (expected " +
                       std::to_string(kSchemaVersion) + ")");
  }
  ClusterSpec cluster;
  cluster.name = o.req_string("name");
  cluster.partitions =
      read_array<Partition>(o, "partitions", [&](const json& e, const std::string& pp) {
        return read_partition(e, pp, lenient);
      });
  if (const json* v = o.opt("fabric")) cluster.fabric = read_fabric(*v, "fabric", lenient);
  if (const json* v = o.opt("storage")) cluster.storage = read_storage(*v, "storage", lenient);
  if (const json* v = o.opt("facility")) cluster.facility = read_facility(*v, "facility", lenient);
  if (const json* v = o.opt("measurements")) {
    cluster.measurements = read_measurements(*v, "measurements", lenient);
  }
  o.finish();
  return cluster;
}

// ---------------------------------------------------------------------------
// Writers (field order mirrors the type declarations)
// ---------------------------------------------------------------------------

ordered write_link_rate(const LinkRate& rate) {
  return ordered{{"label", rate.label}, {"gbit_s", rate.gbit_s}};
}

ordered write_range(const Range& r) { return ordered::array({r.low, r.high}); }

ordered write_cache(const CacheLevel& cache) {
  ordered j;
  j["level"] = cache.level;
  j["size_bytes"] = cache.size_bytes;
  j["sharing_cores"] = cache.sharing_cores;
  if (cache.associativity) j["associativity"] = *cache.associativity;
  if (cache.latency_cycles_documented) {
    j["latency_cycles_documented"] = write_range(*cache.latency_cycles_documented);
  }
  if (cache.latency_cycles_measured) {
    j["latency_cycles_measured"] = write_range(*cache.latency_cycles_measured);
  }
  return j;
}

ordered write_cpu(const CpuSpec& cpu) {
  ordered j;
  j["model"] = cpu.model;
  j["sockets_per_node"] = cpu.sockets_per_node;
  j["cores_per_socket"] = cpu.cores_per_socket;
  j["base_frequency_ghz"] = cpu.base_frequency_ghz;
  j["boost_frequency_ghz"] = cpu.boost_frequency_ghz;
  j["tdp_watts_per_socket"] = cpu.tdp_watts_per_socket;
  j["caches"] = ordered::array();
  for (const auto& c : cpu.caches) j["caches"].push_back(write_cache(c));
  j["vector_variants"] = ordered::array();
  for (const auto& v : cpu.vector_variants) {
    j["vector_variants"].push_back(ordered{{"name", v.name},
                                           {"execution_units", v.execution_units},
                                           {"elements_per_vector", v.elements_per_vector},
                                           {"operations_per_element", v.operations_per_element}});
  }
  return j;
}

ordered write_memory(const MemoryConfig& m) {
  ordered j;
  j["technology"] = m.technology;
  j["capacity_bytes"] = m.capacity_bytes;
  j["channels_per_socket"] = m.channels_per_socket;
  j["transfer_rate_gt_s"] = m.transfer_rate_gt_s;
  j["bytes_per_transfer"] = m.bytes_per_transfer;
  if (!m.numa_mode.empty()) j["numa_mode"] = m.numa_mode;
  return j;
}

ordered write_hbm(const HbmConfig& h) {
  ordered j;
  j["stacks"] = h.stacks;
  j["channels_per_stack"] = h.channels_per_stack;
  j["pseudo_channels_per_channel"] = h.pseudo_channels_per_channel;
  j["bits_per_pseudo_channel"] = h.bits_per_pseudo_channel;
  j["controller_clock_mhz"] = h.controller_clock_mhz;
  j["data_rate_multiplier"] = h.data_rate_multiplier;
  return j;
}

ordered write_memory_system(const MemorySystem& m) {
  ordered j;
  j["label"] = m.label;
  j["capacity_bytes"] = m.capacity_bytes;
  j["peak_bandwidth_gb_s"] = m.peak_bandwidth_gb_s;
  if (m.hbm) j["hbm"] = write_hbm(*m.hbm);
  return j;
}

ordered write_bsp_fraction(const BspFraction& f) {
  ordered j;
  j["fraction"] = f.fraction;
  if (f.upper_bound) j["upper_bound"] = true;
  return j;
}

ordered write_fpga_resources(const FpgaResources& r) {
  ordered j;
  j["luts"] = r.luts;
  if (r.luts_packed) j["luts_packed"] = *r.luts_packed;
  j["dsp_blocks"] = ordered{{"count", r.dsp_blocks.count},
                            {"architecture", r.dsp_blocks.architecture}};
  j["ram_blocks"] = ordered::array();
  for (const auto& g : r.ram_blocks) {
    j["ram_blocks"].push_back(ordered{
        {"kind", g.kind}, {"count", g.count}, {"kibit_per_block", g.kibit_per_block}});
  }
  if (r.bsp_overhead) {
    ordered b;
    if (r.bsp_overhead->logic) b["logic"] = write_bsp_fraction(*r.bsp_overhead->logic);
    if (r.bsp_overhead->dsp) b["dsp"] = write_bsp_fraction(*r.bsp_overhead->dsp);
    if (r.bsp_overhead->bram) b["bram"] = write_bsp_fraction(*r.bsp_overhead->bram);
    j["bsp_overhead"] = std::move(b);
  }
  return j;
}

ordered write_accelerator(const AcceleratorSpec& a) {
  ordered j;
  j["kind"] = to_string(a.kind);
  j["model"] = a.model;
  j["tdp_watts"] = a.tdp_watts;
  j["memory_systems"] = ordered::array();
  for (const auto& m : a.memory_systems) j["memory_systems"].push_back(write_memory_system(m));
  if (!a.throughput_table.empty()) {
    ordered t;
    for (const auto& [precision, tflops] : a.throughput_table) t[precision] = tflops;
    j["throughput_table"] = std::move(t);
  }
  if (a.fpga_resources) j["fpga_resources"] = write_fpga_resources(*a.fpga_resources);
  if (a.host_interface) {
    j["host_interface"] = ordered{{"generation", a.host_interface->generation},
                                  {"bandwidth_gb_s", a.host_interface->bandwidth_gb_s}};
  }
  if (a.network_ports) {
    j["network_ports"] = ordered{{"count", a.network_ports->count},
                                 {"rate_gbit_s", a.network_ports->rate_gbit_s}};
  }
  return j;
}

ordered write_partition(const Partition& p) {
  ordered j;
  j["name"] = p.name;
  j["node_count"] = p.node_count;
  j["nodes_per_blade"] = p.nodes_per_blade;
  if (p.active_nodes) j["active_nodes"] = *p.active_nodes;
  j["cpu"] = write_cpu(p.cpu);
  j["memory"] = write_memory(p.memory);
  j["accelerators"] = ordered::array();
  for (const auto& g : p.accelerators) {
    j["accelerators"].push_back(
        ordered{{"per_node", g.per_node}, {"spec", write_accelerator(g.spec)}});
  }
  j["local_storage_bytes"] = p.local_storage_bytes;
  if (p.link) {
    ordered l;
    l["rate"] = write_link_rate(p.link->rate);
    l["links_per_blade"] = p.link->links_per_blade;
    l["shared_io"] = p.link->shared_io;
    j["link"] = std::move(l);
  }
  if (p.note) j["note"] = *p.note;
  return j;
}

ordered write_fabric(const FabricSpec& f) {
  ordered j;
  j["spine_count"] = f.spine_count;
  j["leaf_count"] = f.leaf_count;
  j["switch_radix"] = f.switch_radix;
  j["port_rate"] = write_link_rate(f.port_rate);
  j["uplinks_per_leaf_per_spine"] = f.uplinks_per_leaf_per_spine;
  j["endpoint_attachments"] = ordered::array();
  for (const auto& a : f.endpoint_attachments) {
    ordered e;
    e["partition"] = a.partition;
    e["blades"] = a.blades;
    e["links_per_blade"] = a.links_per_blade;
    e["rate"] = write_link_rate(a.rate);
    e["shared_io"] = a.shared_io;
    j["endpoint_attachments"].push_back(std::move(e));
  }
  if (!f.auxiliary_attachments.empty()) {
    j["auxiliary_attachments"] = ordered::array();
    for (const auto& a : f.auxiliary_attachments) {
      j["auxiliary_attachments"].push_back(ordered{
          {"name", a.name}, {"links", a.links}, {"rate", write_link_rate(a.rate)}});
    }
  }
  return j;
}

ordered write_storage(const StorageSpec& s) {
  ordered j;
  j["filesystem_label"] = s.filesystem_label;
  j["usable_capacity_bytes"] = s.usable_capacity_bytes;
  j["pools"] = ordered::array();
  for (const auto& p : s.pools) {
    j["pools"].push_back(ordered{{"name", p.name},
                                 {"device_count", p.device_count},
                                 {"device_capacity_bytes", p.device_capacity_bytes},
                                 {"medium", to_string(p.medium)}});
  }
  if (!s.servers.empty()) {
    j["servers"] = ordered::array();
    for (const auto& v : s.servers) {
      j["servers"].push_back(ordered{{"name", v.name}, {"canisters", v.canisters}});
    }
  }
  return j;
}

ordered write_facility(const FacilitySpec& f) {
  ordered j;
  j["electrical_capacity_watts"] = f.electrical_capacity_watts;
  if (f.planned_capacity_watts) j["planned_capacity_watts"] = *f.planned_capacity_watts;
  if (f.heat_reuse_fraction_min) j["heat_reuse_fraction_min"] = *f.heat_reuse_fraction_min;
  return j;
}

ordered write_measurements(const MeasurementSet& m) {
  ordered j;
  if (!m.partition.empty()) j["partition"] = m.partition;
  if (!m.flops_runs.empty()) {
    j["flops_runs"] = ordered::array();
    for (const auto& r : m.flops_runs) {
      j["flops_runs"].push_back(ordered{{"variant", r.variant},
                                        {"observed_frequency_ghz", r.observed_frequency_ghz},
                                        {"tflops", r.tflops},
                                        {"source", r.source}});
    }
  }
  if (!m.stream_runs.empty()) {
    j["stream_runs"] = ordered::array();
    for (const auto& r : m.stream_runs) {
      j["stream_runs"].push_back(
          ordered{{"numa_mode", r.numa_mode}, {"gb_s", r.gb_s}, {"source", r.source}});
    }
  }
  if (!m.applications.empty()) {
    j["applications"] = ordered::array();
    for (const auto& a : m.applications) {
      j["applications"].push_back(ordered{{"name", a.name},
                                          {"value", a.value},
                                          {"unit", a.unit},
                                          {"better", to_string(a.better)},
                                          {"source", a.source}});
    }
  }
  if (!m.xbtest.empty()) {
    j["xbtest"] = ordered::array();
    for (const auto& x : m.xbtest) {
      ordered e;
      e["accelerator_model"] = x.accelerator_model;
      e["memory_label"] = x.memory_label;
      e["mode_fractions"] = ordered::array();
      for (double f : x.mode_fractions) e["mode_fractions"].push_back(f);
      e["source"] = x.source;
      j["xbtest"].push_back(std::move(e));
    }
  }
  if (!m.scalars.empty()) {
    j["scalars"] = ordered::array();
    for (const auto& s : m.scalars) {
      j["scalars"].push_back(ordered{
          {"name", s.name}, {"value", s.value}, {"unit", s.unit}, {"source", s.source}});
    }
  }
  if (m.pue_sample) {
    j["pue_sample"] = ordered{{"total_energy", m.pue_sample->total_energy},
                              {"it_energy", m.pue_sample->it_energy},
                              {"period_label", m.pue_sample->period_label}};
  }
  return j;
}

}  // namespace

ClusterSpec parse_cluster(std::string_view text, const LoadOptions& options) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  ClusterSpec cluster = read_cluster(j, options.lenient);
  if (!options.skip_validation) validate(cluster);
  return cluster;
}

ClusterSpec load_cluster(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_cluster(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_cluster(const ClusterSpec& cluster) {
  ordered j;
  j["schema"] = kSchemaVersion;
  j["name"] = cluster.name;
  j["partitions"] = ordered::array();
  for (const auto& p : cluster.partitions) j["partitions"].push_back(write_partition(p));
  if (cluster.fabric) j["fabric"] = write_fabric(*cluster.fabric);
  if (cluster.storage) j["storage"] = write_storage(*cluster.storage);
  if (cluster.facility) j["facility"] = write_facility(*cluster.facility);
  if (cluster.measurements) j["measurements"] = write_measurements(*cluster.measurements);
  return j.dump(2) + "\n";
}

void save_cluster(const ClusterSpec& cluster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path.string());
  out << serialize_cluster(cluster);
}

}  // namespace hpcmodel
