#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "hpcmodel/errors.hpp"
#include "hpcmodel/json_io.hpp"
#include "hpcmodel/model.hpp"

using namespace hpcmodel;
using testutil::Rng;

namespace {

bool has_violation_at(const std::vector<std::string>& violations, const std::string& prefix) {
  return std::any_of(violations.begin(), violations.end(), [&](const std::string& v) {
    return v.rfind(prefix, 0) == 0;
  });
}

// Copy of the main bundled description; every test mutates its own copy.
ClusterSpec otus_copy() { return testutil::otus(); }

void expect_violation(const ClusterSpec& cluster, const std::string& prefix) {
  const auto violations = collect_violations(cluster);
  CAPTURE(prefix);
  CHECK(has_violation_at(violations, prefix));
  CHECK_THROWS_AS(validate(cluster), ValidationError);
}

}  // namespace

TEST_CASE("bundled cluster descriptions load cleanly and total up correctly") {
  const ClusterSpec& otus = testutil::otus();
  CHECK(otus.name == "Otus");
  CHECK(otus.partitions.size() == 4);
  CHECK(total_nodes(otus) == 743);        // 636 + 48 + 27 + 32
  CHECK(total_cores(otus) == 142656);     // 743 x 192
  CHECK(collect_violations(otus).empty());
  CHECK_NOTHROW(validate(otus));

  const ClusterSpec& noctua2 = testutil::noctua2();
  CHECK(noctua2.name == "Noctua 2");
  CHECK(collect_violations(noctua2).empty());

  SUBCASE("per-partition structure of the main description") {
    const Partition& normal = *otus.find_partition("normal");
    CHECK(normal.node_count == 636);
    CHECK(normal.nodes_per_blade == 2);
    CHECK(normal.blade_count() == 318);
    CHECK(normal.effective_nodes() == 636);
    CHECK(normal.cpu.cores_per_node() == 192);

    const Partition& fpga = *otus.find_partition("fpga");
    CHECK(fpga.node_count == 32);
    CHECK(fpga.effective_nodes() == 3);  // pilot subset in service
    CHECK(fpga.accelerators.size() == 1);
    CHECK(fpga.accelerators[0].spec.kind == AcceleratorKind::fpga);

    const Partition& gpu = *otus.find_partition("gpu");
    CHECK(gpu.accelerators[0].per_node == 4);
    CHECK(gpu.accelerators[0].spec.kind == AcceleratorKind::gpu);
    CHECK(otus.find_partition("no-such-partition") == nullptr);
  }

  SUBCASE("lookup helpers answer by name") {
    const CpuSpec& cpu = otus.partitions[0].cpu;
    REQUIRE(cpu.find_variant("AVX-512 FMA+ADD") != nullptr);
    CHECK(cpu.find_variant("AVX-512 FMA+ADD")->elements_per_vector == 8);
    CHECK(cpu.find_variant("nonexistent") == nullptr);

    const AcceleratorSpec& v80 = otus.find_partition("fpga")->accelerators[0].spec;
    REQUIRE(v80.find_memory("HBM2E") != nullptr);
    CHECK(v80.find_memory("HBM2E")->capacity_bytes == 32000000000ull);
    CHECK(v80.find_memory("GDDR6") == nullptr);
  }
}

TEST_CASE("the accelerator-only auxiliary description carries both card partitions") {
  const ClusterSpec cluster = load_cluster(testutil::test_data_path("noctua2-fpga-only.cluster"));
  CHECK(total_nodes(cluster) == 32);
  REQUIRE(cluster.partitions.size() == 2);
  for (const Partition& partition : cluster.partitions) {
    REQUIRE(partition.accelerators.size() == 1);
    CHECK(partition.accelerators[0].spec.kind == AcceleratorKind::fpga);
    CHECK(partition.accelerators[0].spec.fpga_resources.has_value());
  }
  CHECK(collect_violations(cluster).empty());
}

TEST_CASE("semantic validation flags each broken invariant with its field path") {
  SUBCASE("a cluster needs partitions") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions.clear();
    expect_violation(cluster, "partitions");
  }
  SUBCASE("duplicate partition names") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[1].name = "normal";
    expect_violation(cluster, "partitions[1].name");
  }
  SUBCASE("node count must be positive") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].node_count = 0;
    expect_violation(cluster, "partitions[0].node_count");
  }
  SUBCASE("nodes per blade is 1 or 2") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].nodes_per_blade = 3;
    expect_violation(cluster, "partitions[0].nodes_per_blade");
  }
  SUBCASE("node count must divide into whole blades") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].node_count = 635;
    expect_violation(cluster, "partitions[0].node_count");
  }
  SUBCASE("active nodes cannot exceed installed nodes") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[3].active_nodes = 33;
    expect_violation(cluster, "partitions[3].active_nodes");
  }
  SUBCASE("cpu basics") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].cpu.model.clear();
    expect_violation(cluster, "partitions[0].cpu.model");

    cluster = otus_copy();
    cluster.partitions[0].cpu.base_frequency_ghz = 5.0;  // above boost
    expect_violation(cluster, "partitions[0].cpu.base_frequency_ghz");

    cluster = otus_copy();
    cluster.partitions[0].cpu.tdp_watts_per_socket = 0.0;
    expect_violation(cluster, "partitions[0].cpu.tdp_watts_per_socket");
  }
  SUBCASE("cache records") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].cpu.caches[0].size_bytes = 0;
    expect_violation(cluster, "partitions[0].cpu.caches[0].size_bytes");

    cluster = otus_copy();
    cluster.partitions[0].cpu.caches[1].latency_cycles_measured = Range{9.0, 3.0};
    expect_violation(cluster, "partitions[0].cpu.caches[1].latency_cycles_measured");
  }
  SUBCASE("vector variants") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].cpu.vector_variants[1].name =
        cluster.partitions[0].cpu.vector_variants[0].name;
    expect_violation(cluster, "partitions[0].cpu.vector_variants[1].name");

    cluster = otus_copy();
    cluster.partitions[0].cpu.vector_variants[0].execution_units = 0;
    expect_violation(cluster, "partitions[0].cpu.vector_variants[0].execution_units");
  }
  SUBCASE("memory configuration") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].memory.capacity_bytes = 0;
    expect_violation(cluster, "partitions[0].memory.capacity_bytes");

    cluster = otus_copy();
    cluster.partitions[0].memory.transfer_rate_gt_s = -1.0;
    expect_violation(cluster, "partitions[0].memory.transfer_rate_gt_s");
  }
  SUBCASE("gpu records need a throughput table and must not carry fabric resources") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[2].accelerators[0].spec.throughput_table.clear();
    expect_violation(cluster, "partitions[2].accelerators[0].spec.throughput_table");

    cluster = otus_copy();
    cluster.partitions[2].accelerators[0].spec.fpga_resources = FpgaResources{};
    expect_violation(cluster, "partitions[2].accelerators[0].spec.fpga_resources");
  }
  SUBCASE("fpga records need a resource description and no gpu table") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[3].accelerators[0].spec.fpga_resources.reset();
    expect_violation(cluster, "partitions[3].accelerators[0].spec.fpga_resources");

    cluster = otus_copy();
    cluster.partitions[3].accelerators[0].spec.throughput_table["fp64"] = 1.0;
    expect_violation(cluster, "partitions[3].accelerators[0].spec.throughput_table");
  }
  SUBCASE("fpga resource details") {
    ClusterSpec cluster = otus_copy();
    auto& resources = *cluster.partitions[3].accelerators[0].spec.fpga_resources;
    resources.luts_packed = resources.luts - 1;
    expect_violation(cluster, "partitions[3].accelerators[0].spec.fpga_resources.luts_packed");

    cluster = otus_copy();
    cluster.partitions[3].accelerators[0].spec.fpga_resources->bsp_overhead->logic->fraction = 1.5;
    expect_violation(cluster,
                     "partitions[3].accelerators[0].spec.fpga_resources.bsp_overhead.logic");
  }
  SUBCASE("stacked-memory controller layout") {
    ClusterSpec cluster = otus_copy();
    auto& spec = cluster.partitions[3].accelerators[0].spec;
    spec.memory_systems[0].hbm->stacks = 0;
    expect_violation(cluster, "partitions[3].accelerators[0].spec.memory_systems[0].hbm.stacks");
  }
  SUBCASE("a shared adapter requires two nodes per blade") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[3].link->shared_io = true;  // single-node blades
    expect_violation(cluster, "partitions[3].link.shared_io");
  }
  SUBCASE("one label, one rate, cluster-wide") {
    ClusterSpec cluster = otus_copy();
    cluster.fabric->endpoint_attachments[0].rate.gbit_s = 999.0;  // NDR400 elsewhere = 400
    const auto violations = collect_violations(cluster);
    REQUIRE_FALSE(violations.empty());
    CHECK(std::any_of(violations.begin(), violations.end(), [](const std::string& v) {
      return v.find("link rate label") != std::string::npos;
    }));
  }
  SUBCASE("fat-tree shape") {
    ClusterSpec cluster = otus_copy();
    cluster.fabric->spine_count = 0;
    expect_violation(cluster, "fabric.spine_count");

    cluster = otus_copy();
    cluster.fabric->uplinks_per_leaf_per_spine = 10;  // 5 spines x 10 > radix 32
    expect_violation(cluster, "fabric.uplinks_per_leaf_per_spine");

    cluster = otus_copy();
    cluster.fabric->leaf_count = 40;  // 40 x 2 downlinks > radix 32 per spine
    expect_violation(cluster, "fabric.leaf_count");
  }
  SUBCASE("fabric attachments must reference real partitions with matching blade counts") {
    ClusterSpec cluster = otus_copy();
    cluster.fabric->endpoint_attachments[0].partition = "ghost";
    expect_violation(cluster, "fabric.endpoint_attachments[0].partition");

    cluster = otus_copy();
    cluster.fabric->endpoint_attachments[0].blades = 317;  // partition has 318
    expect_violation(cluster, "fabric.endpoint_attachments[0].blades");
  }
  SUBCASE("storage capacities") {
    ClusterSpec cluster = otus_copy();
    cluster.storage->usable_capacity_bytes = 9000000000000000ull;  // above raw
    expect_violation(cluster, "storage.usable_capacity_bytes");

    cluster = otus_copy();
    cluster.storage->pools[0].device_count = 0;
    expect_violation(cluster, "storage.pools[0].device_count");
  }
  SUBCASE("facility envelope") {
    ClusterSpec cluster = otus_copy();
    cluster.facility->electrical_capacity_watts = 0.0;
    expect_violation(cluster, "facility.electrical_capacity_watts");

    cluster = otus_copy();
    cluster.facility->planned_capacity_watts = 1.0;  // below current capacity
    expect_violation(cluster, "facility.planned_capacity_watts");

    cluster = otus_copy();
    cluster.facility->heat_reuse_fraction_min = 1.5;
    expect_violation(cluster, "facility.heat_reuse_fraction_min");
  }
  SUBCASE("measurements must reference entities that exist") {
    ClusterSpec cluster = otus_copy();
    cluster.measurements->partition = "ghost";
    expect_violation(cluster, "measurements.partition");

    cluster = otus_copy();
    cluster.measurements->flops_runs[0].variant = "AVX-1024";
    expect_violation(cluster, "measurements.flops_runs[0].variant");

    cluster = otus_copy();
    cluster.measurements->xbtest[0].accelerator_model = "ghost-card";
    expect_violation(cluster, "measurements.xbtest[0]");

    cluster = otus_copy();
    cluster.measurements->xbtest[0].mode_fractions[2] = 1.75;  // above peak
    expect_violation(cluster, "measurements.xbtest[0].mode_fractions[2]");
  }
  SUBCASE("energy sample consistency") {
    ClusterSpec cluster = otus_copy();
    cluster.measurements->pue_sample->total_energy =
        cluster.measurements->pue_sample->it_energy / 2.0;
    expect_violation(cluster, "measurements.pue_sample.total_energy");

    cluster = otus_copy();
    cluster.measurements->pue_sample->it_energy = 0.0;
    expect_violation(cluster, "measurements.pue_sample.it_energy");
  }
  SUBCASE("the thrown error carries the first violation's field path") {
    ClusterSpec cluster = otus_copy();
    cluster.partitions[0].node_count = 0;
    try {
      validate(cluster);
      FAIL("expected a validation error");
    } catch (const ValidationError& error) {
      CHECK(error.field() == "partitions[0].node_count");
      CHECK(std::string(error.what()).find("node count") != std::string::npos);
    }
  }
}

TEST_CASE("malformed input raises parse errors, semantic problems validation errors") {
  CHECK_THROWS_AS(parse_cluster("this is not json"), ParseError);
  CHECK_THROWS_AS(parse_cluster("[1, 2, 3]"), ParseError);
  CHECK_THROWS_AS(parse_cluster(R"({"schema": 99, "name": "x", "partitions": []})"), ParseError);
  CHECK_THROWS_AS(load_cluster("/nonexistent/path/file.cluster"), ParseError);
  // Well-formed but semantically empty: parses, then fails validation.
  CHECK_THROWS_AS(parse_cluster(R"({"schema": 1, "name": "x", "partitions": []})"),
                  ValidationError);
  // skip_validation defers the semantic check to the caller.
  LoadOptions skip;
  skip.skip_validation = true;
  const ClusterSpec empty = parse_cluster(R"({"schema": 1, "name": "x", "partitions": []})", skip);
  CHECK_FALSE(collect_violations(empty).empty());
}

TEST_CASE("strict mode rejects unknown fields; lenient mode ignores them") {
  const std::string text = serialize_cluster(testutil::otus());
  std::string patched = text;
  patched.insert(patched.find('{') + 1, "\"extraneous_field\": true,");

  CHECK_THROWS_AS(parse_cluster(patched), ParseError);

  LoadOptions lenient;
  lenient.lenient = true;
  const ClusterSpec reloaded = parse_cluster(patched, lenient);
  CHECK(reloaded == testutil::otus());
}

TEST_CASE("property: serialization round-trips every generated description exactly") {
  Rng rng(20240910);
  for (int i = 0; i < 120; ++i) {
    const ClusterSpec cluster = testutil::rand_cluster(rng);
    // The generator only produces semantically valid descriptions.
    const auto violations = collect_violations(cluster);
    CAPTURE(i);
    if (!violations.empty()) CAPTURE(violations.front());
    REQUIRE(violations.empty());

    const std::string text = serialize_cluster(cluster);
    const ClusterSpec reparsed = parse_cluster(text);
    CHECK(reparsed == cluster);
    // A second round trip is byte-identical.
    CHECK(serialize_cluster(reparsed) == text);
  }
}

TEST_CASE("property: totals are additive over partitions") {
  Rng rng(20240911);
  for (int i = 0; i < 150; ++i) {
    const ClusterSpec cluster = testutil::rand_cluster(rng);
    std::uint64_t nodes = 0;
    std::uint64_t cores = 0;
    for (const Partition& partition : cluster.partitions) {
      nodes += partition.node_count;
      cores += partition.node_count * static_cast<std::uint64_t>(partition.cpu.cores_per_node());
      // Blade accounting stays whole by construction.
      CHECK(partition.blade_count() * partition.nodes_per_blade == partition.node_count);
      CHECK(partition.effective_nodes() <= partition.node_count);
    }
    CHECK(total_nodes(cluster) == nodes);
    CHECK(total_cores(cluster) == cores);
  }
}

TEST_CASE("property: the violation collector never throws on corrupted descriptions") {
  Rng rng(20240912);
  for (int i = 0; i < 150; ++i) {
    ClusterSpec cluster = testutil::rand_cluster(rng);
    // Inflict a definitely-invalid mutation chosen at random.
    const std::size_t p = static_cast<std::size_t>(
        testutil::rand_int(rng, 0, static_cast<int>(cluster.partitions.size()) - 1));
    switch (testutil::rand_int(rng, 0, 5)) {
      case 0: cluster.partitions[p].node_count = 0; break;
      case 1: cluster.partitions[p].cpu.model.clear(); break;
      case 2: cluster.partitions[p].cpu.tdp_watts_per_socket = -10.0; break;
      case 3: cluster.partitions[p].memory.capacity_bytes = 0; break;
      case 4: cluster.partitions[p].nodes_per_blade = 7; break;
      case 5: cluster.partitions[p].cpu.vector_variants.front().elements_per_vector = 0; break;
    }
    std::vector<std::string> violations;
    CHECK_NOTHROW(violations = collect_violations(cluster));
    CHECK_FALSE(violations.empty());
    CHECK_THROWS_AS(validate(cluster), ValidationError);
    // Every violation names a field path before its message.
    for (const std::string& violation : violations) {
      CHECK(violation.find(": ") != std::string::npos);
    }
  }
}
