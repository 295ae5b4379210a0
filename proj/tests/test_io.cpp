#include "seqlevy/io.hpp"

#include "doctest.h"

using namespace seqlevy;
using nlohmann::json;

namespace {

json reference_config() {
  return json::parse(R"({
    "triplet": {
      "mean": [1, 0],
      "cov": [[1, 0], [0, 0.25]],
      "levy": {
        "atoms": [{"point": [0, 2], "mass": 0.7}],
        "axes": [{"n": 0, "kind": "power", "c": 1.0, "alpha": 0.5, "xmax": 1.0}]
      },
      "r": 0
    },
    "sim": {"horizon": 1.0, "grid_dt": 0.1, "shells": 6, "truncation": 2,
            "master_seed": 99, "replicas": 50},
    "phis": [[1, 0], [0.5, 0.5]],
    "times": [0.5, 1.0],
    "tests": [{"test": "ecf", "t": 1.0},
              {"test": "jump_count", "t": 1.0,
               "region": {"kind": "complement", "radius": 1.0}}],
    "output_dir": "out"
  })");
}

}  // namespace

TEST_CASE("round-trip: config -> domain -> json is semantically identical") {
  const json original = reference_config();
  const io::RunConfig cfg = io::parse_run_config(original);
  REQUIRE(cfg.triplet.has_value());
  const json back = io::to_json(cfg);

  CHECK(back.at("sim") == original.at("sim"));
  CHECK(back.at("triplet").at("mean") == json(std::vector<double>{1, 0}));
  CHECK(back.at("triplet").at("r") == json(0.0));
  CHECK(back.at("triplet").at("levy").at("atoms") ==
        original.at("triplet").at("levy").at("atoms"));
  CHECK(back.at("triplet").at("levy").at("axes") ==
        original.at("triplet").at("levy").at("axes"));
  CHECK(back.at("phis") == original.at("phis"));
  CHECK(back.at("times") == original.at("times"));
  CHECK(back.at("output_dir") == original.at("output_dir"));
  CHECK(back.at("tests").size() == 2);
  CHECK(back.at("tests")[0].at("test") == "ecf");
  CHECK(back.at("tests")[1].at("region").at("kind") == "complement");

  // Parsing the re-serialized config yields the same domain objects.
  const io::RunConfig again = io::parse_run_config(back);
  CHECK(again.sim.master_seed == cfg.sim.master_seed);
  CHECK(again.triplet->mean.coords == cfg.triplet->mean.coords);
  CHECK(again.phis.size() == cfg.phis.size());
}

TEST_CASE("unknown keys are rejected") {
  json bad = reference_config();
  bad["surprise"] = 1;
  CHECK_THROWS_AS(io::parse_run_config(bad), io::ConfigError);

  json bad2 = reference_config();
  bad2["sim"]["extra"] = true;
  CHECK_THROWS_AS(io::parse_run_config(bad2), io::ConfigError);

  json bad3 = reference_config();
  bad3["triplet"]["levy"]["axes"][0]["spare"] = 0;
  CHECK_THROWS_AS(io::parse_run_config(bad3), io::ConfigError);

  json bad4 = reference_config();
  bad4["tests"][0]["unknown"] = 1;
  CHECK_THROWS_AS(io::parse_run_config(bad4), io::ConfigError);
}

TEST_CASE("schema violations are ConfigError, domain violations are recorded") {
  json bad = reference_config();
  bad["triplet"]["cov"] = json::array({1, 2});
  CHECK_THROWS_AS(io::parse_run_config(bad), io::ConfigError);

  // Atom at the origin: structurally fine, semantically invalid.
  json origin = reference_config();
  origin["triplet"]["levy"]["atoms"][0]["point"] = json::array({0, 0});
  const io::RunConfig cfg = io::parse_run_config(origin);
  CHECK_FALSE(cfg.triplet.has_value());
  CHECK(cfg.triplet_error.find("origin") != std::string::npos);
}

TEST_CASE("vectors pad to the truncation and reject overflow") {
  json j = reference_config();
  j["triplet"]["mean"] = json::array({1.0});  // padded to D = 2
  const io::RunConfig cfg = io::parse_run_config(j);
  CHECK(cfg.triplet->mean.coords == std::vector<double>{1.0, 0.0});

  json over = reference_config();
  over["phis"][0] = json::array({1, 2, 3});
  CHECK_THROWS_AS(io::parse_run_config(over), io::ConfigError);
}

TEST_CASE("csv doubles round-trip") {
  for (const double x : {1.0, -0.1, 1.0 / 3.0, 1e-17, 123456789.123456789}) {
    CHECK(std::stod(io::csv_double(x)) == x);
  }
  CHECK(io::csv_double(0.5) == "0.5");
}

TEST_CASE("region spec resolution") {
  io::RegionSpec spec;
  spec.kind = "shell";
  spec.lo = 0.25;
  spec.hi = 1.0;
  const Region region = spec.resolve(SeminormIndex{0.0});
  CHECK(region.kind == RegionKind::Shell);
  CHECK(region.lo == 0.25);
  spec.kind = "nonsense";
  CHECK_THROWS_AS(spec.resolve(SeminormIndex{0.0}), io::ConfigError);
}
