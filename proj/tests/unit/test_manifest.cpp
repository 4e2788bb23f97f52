#include <doctest.h>

#include <cmlab/errors.hpp>
#include <cmlab/manifest.hpp>

#include <fstream>
#include <sstream>

using namespace cmlab;

TEST_SUITE("manifest") {
TEST_CASE("defaults round trip") {
    const Grid g;
    CHECK(grid_to_toml(parse_grid(grid_to_toml(g))) == grid_to_toml(g));
}

TEST_CASE("committed default grid matches built-in defaults") {
    std::ifstream in(CMLAB_SOURCE_DIR "/grid/default.toml");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(grid_to_toml(parse_grid(ss.str())) == grid_to_toml(Grid{}));
    CHECK(grid_to_toml(load_grid(CMLAB_SOURCE_DIR "/grid/default.toml")) == grid_to_toml(Grid{}));
}

TEST_CASE("overrides and comments") {
    const Grid g = parse_grid(R"(# small grid
[grid]
discriminants = [-7, -8]   # two fields
conductors = [1]

[classify.max_exponent]
2 = 3
17 = 1

[divpoly]
max_m = 5
)");
    CHECK(g.discriminants == std::vector<i64>{-7, -8});
    CHECK(g.conductors == std::vector<i64>{1});
    CHECK(g.classify_max_exponent.at(2) == 3);
    CHECK(g.classify_max_exponent.at(17) == 1);
    CHECK(g.divpoly_max_m == 5);
    CHECK(g.order_max_level == Grid{}.order_max_level);
}

TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(parse_grid("[grid]\nbogus = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_grid("[nosuch]\nx = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_grid("[grid]\ndiscriminants = [1, 2\n"), UsageError);
    CHECK_THROWS_AS(parse_grid("[grid]\nconductors = abc\n"), UsageError);
    CHECK_THROWS_AS(load_grid("/nonexistent/grid.toml"), UsageError);
}
}
