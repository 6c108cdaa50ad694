#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "frsr/config.hpp"

using namespace frsr;

namespace {

const char* kWorked = R"(# worked example
seed = 7
mc_samples = 1000
timestamp = 2024-01-01T00:00:00Z

[worked]
alloc.L = 100
alloc.beta = 0.5
dist.kind = discrete
dist.atoms = 0.05:0.5, 0.15:0.5
contract.D = 0.10
contract.alpha = 0.25
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse the worked scenario") {
  const RunConfig c = parse_config(kWorked);
  CHECK(c.seed == 7);
  CHECK(c.mc_samples == 1000);
  REQUIRE(c.blocks.size() == 1);
  const ScenarioBlock& b = c.blocks[0];
  CHECK(b.name == "worked");
  CHECK(b.beta == std::vector<double>{0.5});
  CHECK(b.dist.atoms.size() == 2);
  const auto batch = expand(c);
  REQUIRE(batch.size() == 1);
  CHECK(batch[0].id == "worked");
  CHECK(batch[0].share == 0.25);
  CHECK(batch[0].utility.describe() == "cara(10)");
}

TEST_CASE("grid lists expand to the cartesian product") {
  const RunConfig c = parse_config(R"(
[g]
alloc.beta = [0.5, 0.75]
contract.D = [0.1, 0.2, 0.3]
dist.kind = uniform
utility.family = power
utility.param = [0.3, 0.5]
)");
  const auto batch = expand(c);
  CHECK(batch.size() == 12);
  CHECK(batch[0].id == "g#0");
  CHECK(batch[0].seed != batch[1].seed);
  CHECK(batch.back().alloc.beta() == 0.75);
}

TEST_CASE("dump and re-parse round-trips exactly") {
  for (const char* text : {kWorked, "seed = 3\npreset = default_grid\nnoise_scale = 0.01\n",
                           "[b]\nalloc.beta = [0.6, 0.9]\ncontract.D = 0.123456789012345678\n"
                           "dist.kind = beta\ndist.a = 0.5\ndist.b = 3\ndist.nodes = 128\n"
                           "utility.family = quadratic\nutility.param = 0.5\n"
                           "utility.domain = 0, 1.5\n"}) {
    const RunConfig c = parse_config(text);
    const std::string dumped = dump_config(c);
    CHECK(parse_config(dumped) == c);
    CHECK(dump_config(parse_config(dumped)) == dumped);
  }
}

TEST_CASE("preset expands to the default grid") {
  const RunConfig c = parse_config("preset = default_grid\n");
  CHECK(c.blocks.size() == 20);
  CHECK(expand(c).size() == 320);
}

TEST_CASE("errors name the field path") {
  CHECK(error_of("[x]\nalloc.beta = 0.5\ncontract.D = 0.1\n").find("dist.kind") != std::string::npos);
  CHECK(error_of("[x]\nalloc.beta = 0.5\ncontract.D = 0.1\ndist.kind = weird\n").find("dist.kind") !=
        std::string::npos);
  CHECK(error_of("[x]\nalloc.beta = abc\n").find("alloc.beta") != std::string::npos);
  CHECK(error_of("bogus = 1\n").find("bogus") != std::string::npos);
  CHECK(error_of("[x]\nalloc.beta = 0.5\ncontract.D = 0.1\ndist.kind = beta\ndist.a = 2\n")
            .find("dist.b") != std::string::npos);
  CHECK_FALSE(error_of("").empty());
}

TEST_CASE("non-concave utility is rejected at parse time") {
  // quadratic with b = 2 turns decreasing above 0.5, inside the payoff domain
  const std::string msg = error_of(
      "[x]\nalloc.beta = 0.5\ncontract.D = 0.1\ndist.kind = uniform\n"
      "utility.family = quadratic\nutility.param = 2\n");
  CHECK(msg.find("utility") != std::string::npos);
}

TEST_CASE("grid cap") {
  RunConfig c = parse_config("preset = default_grid\nmax_grid = 100\n");
  CHECK_THROWS_AS(expand(c), ConfigError);
  c.max_grid = 320;
  CHECK(expand(c).size() == 320);
}
