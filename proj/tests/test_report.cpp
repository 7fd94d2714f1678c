#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "hpcmodel/errors.hpp"
#include "hpcmodel/report.hpp"

using namespace hpcmodel;
using testutil::Rng;

TEST_CASE("the content digest matches the published 64-bit FNV-1a vectors") {
  CHECK(report::fnv1a64("") == 0xcbf29ce484222325ull);  // offset basis
  CHECK(report::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(report::fnv1a64("foobar") == 0x85944171f73967e8ull);

  CHECK(report::digest_bytes("") == "fnv1a64:cbf29ce484222325");
  const std::string digest = report::digest_bytes("some input bytes");
  CHECK(digest.size() == 24);  // "fnv1a64:" + 16 hex digits
  CHECK(digest.rfind("fnv1a64:", 0) == 0);

  SUBCASE("file digests hash the raw bytes") {
    const std::string path = "/tmp/hpcmodel-digest-test.txt";
    {
      std::ofstream out(path, std::ios::binary);
      out << "hello\n";
    }
    CHECK(report::digest_file(path) == report::digest_bytes("hello\n"));
    std::remove(path.c_str());
    CHECK_THROWS_AS(report::digest_file("/nonexistent/file.bin"), ParseError);
  }
}

TEST_CASE("six-significant-digit rounding drives all machine-readable numbers") {
  CHECK(report::round_significant(3.2025096, 6) == 3.20251);
  CHECK(report::round_significant(0.6187138671101607, 6) == 0.618714);
  CHECK(report::round_significant(751740.0000000001, 6) == 751740.0);
  CHECK(report::round_significant(123456789.0, 3) == 123000000.0);
  CHECK(report::round_significant(0.0, 6) == 0.0);
  CHECK(report::round_significant(-3.2025096, 6) == -3.20251);

  CHECK(report::format_significant(1228.8, 6) == "1228.8");
  CHECK(report::format_significant(0.904052734375, 6) == "0.904053");
  CHECK(report::format_significant(23.9616, 6) == "23.9616");
  CHECK(report::format_significant(3.202993, 6) == "3.20299");
  CHECK(report::format_significant(751740.0000000001, 6) == "751740");
}

TEST_CASE("reports keep insertion order and answer lookups by key") {
  report::Report r;
  r.add("alpha", 1.0, "GB/s", "first");
  r.add("beta", 2.0, "", "second");
  r.add("gamma", 3.0, "W", "third");

  REQUIRE(r.findings.size() == 3);
  CHECK(r.findings[0].key == "alpha");
  CHECK(r.findings[2].key == "gamma");
  REQUIRE(r.find("beta") != nullptr);
  CHECK(r.find("beta")->value == 2.0);
  CHECK(r.find("beta")->provenance == "second");
  CHECK(r.find("missing") == nullptr);
}

TEST_CASE("machine output is deterministic with a fixed top-level key order") {
  report::Report r;
  r.tool_version = "0.0.0-test";
  r.command = "peak data/example.cluster";
  r.inputs.push_back({"data/example.cluster", report::digest_bytes("fake")});
  r.add("nodes.total", 743.0, "", "sum of partition node counts");
  r.add("membw.peak", 1228.8, "GB/s", "channels x rate x width");
  r.add("storage.usable_fraction", 0.6187138671101607, "", "usable / raw");
  r.violations.push_back("example violation");

  const std::string text = report::to_machine_json(r);
  CHECK(text == report::to_machine_json(r));  // byte-identical repeat render
  CHECK(text.back() == '\n');

  // Fixed envelope order: tool, version, command, inputs, findings, violations.
  const std::size_t p_tool = text.find("\"tool\"");
  const std::size_t p_version = text.find("\"version\"");
  const std::size_t p_command = text.find("\"command\"");
  const std::size_t p_inputs = text.find("\"inputs\"");
  const std::size_t p_findings = text.find("\"findings\"");
  const std::size_t p_violations = text.find("\"violations\"");
  REQUIRE(p_tool != std::string::npos);
  CHECK(p_tool < p_version);
  CHECK(p_version < p_command);
  CHECK(p_command < p_inputs);
  CHECK(p_inputs < p_findings);
  CHECK(p_findings < p_violations);

  // Integral values render as JSON integers, fractional ones at 6 digits.
  CHECK(text.find("\"value\": 743") != std::string::npos);
  CHECK(text.find("\"value\": 1228.8") != std::string::npos);
  CHECK(text.find("\"value\": 0.618714") != std::string::npos);
  CHECK(text.find("743.0") == std::string::npos);

  // Every finding carries its provenance note.
  CHECK(text.find("sum of partition node counts") != std::string::npos);
  CHECK(text.find("\"provenance\"") != std::string::npos);
  CHECK(text.find("example violation") != std::string::npos);

  SUBCASE("findings list their fields in a fixed order too") {
    const std::size_t p_key = text.find("\"key\"");
    const std::size_t p_value = text.find("\"value\"");
    const std::size_t p_unit = text.find("\"unit\"");
    const std::size_t p_prov = text.find("\"provenance\"");
    CHECK(p_key < p_value);
    CHECK(p_value < p_unit);
    CHECK(p_unit < p_prov);
  }
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

TEST_CASE("property: significant-digit rounding is idempotent and tight") {
  Rng rng(20240928);
  for (int i = 0; i < 200; ++i) {
    const double mantissa = testutil::rand_real(rng, -10.0, 10.0);
    const int exponent = testutil::rand_int(rng, -12, 12);
    const double value = mantissa * std::pow(10.0, exponent);
    const double rounded = report::round_significant(value, 6);

    // Idempotent: a second pass changes nothing.
    CHECK(report::round_significant(rounded, 6) == rounded);
    // Tight: the relative error stays within half a unit in the 6th digit.
    if (value != 0.0) {
      CHECK(std::fabs(rounded - value) <= std::fabs(value) * 5.000001e-6);
    }
    // Sign-symmetric.
    CHECK(report::round_significant(-value, 6) == -rounded);
    // The textual form parses back to exactly the rounded value.
    const std::string text = report::format_significant(value, 6);
    CHECK(std::strtod(text.c_str(), nullptr) == rounded);
  }
}

TEST_CASE("property: equal reports render byte-identically, different ones differ") {
  Rng rng(20240929);
  for (int i = 0; i < 120; ++i) {
    report::Report r;
    r.tool_version = "0.0.0-test";
    r.command = testutil::rand_name(rng, "command");
    const int inputs = testutil::rand_int(rng, 0, 3);
    for (int k = 0; k < inputs; ++k) {
      const std::string body = testutil::rand_name(rng, "content");
      r.inputs.push_back({testutil::rand_name(rng, "path"), report::digest_bytes(body)});
    }
    const int findings = testutil::rand_int(rng, 1, 10);
    for (int k = 0; k < findings; ++k) {
      r.add(testutil::rand_name(rng, "key"), testutil::rand_real(rng, -1e6, 1e6),
            testutil::rand_bool(rng) ? "GB/s" : "", testutil::rand_name(rng, "provenance"));
    }
    if (testutil::rand_bool(rng)) r.violations.push_back(testutil::rand_name(rng, "violation"));

    const std::string first = report::to_machine_json(r);
    const report::Report copy = r;
    CHECK(report::to_machine_json(copy) == first);

    // Any value change shows up in the rendering.
    report::Report changed = r;
    changed.findings[0].value += 1.0;
    CHECK(report::to_machine_json(changed) != first);
  }
}

TEST_CASE("property: digests are stable and well-formed for arbitrary bytes") {
  Rng rng(20240930);
  for (int i = 0; i < 200; ++i) {
    std::string bytes;
    const int length = testutil::rand_int(rng, 0, 64);
    for (int k = 0; k < length; ++k) {
      bytes.push_back(static_cast<char>(testutil::rand_int(rng, 0, 255)));
    }
    const std::string digest = report::digest_bytes(bytes);
    CHECK(digest == report::digest_bytes(bytes));  // pure function of the bytes
    CHECK(digest.size() == 24);
    CHECK(digest.rfind("fnv1a64:", 0) == 0);
    for (std::size_t k = 8; k < digest.size(); ++k) {
      const char c = digest[k];
      CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
    }
    // Appending a byte changes the hash (prefix-sensitivity).
    CHECK(report::fnv1a64(bytes + "x") != report::fnv1a64(bytes));
  }
}
