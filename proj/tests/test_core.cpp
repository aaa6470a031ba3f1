#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ipps/core.hpp"

using namespace ipps;

namespace {

std::vector<std::vector<std::int64_t>> two_disjoint() {
    return {{1, 2, 3, 4}, {5, 6, 7, 8}};
}

}  // namespace

TEST_CASE("validate accepts disjoint blocks") {
    auto sys = validate_set_system(8, 4, std::nullopt, two_disjoint());
    CHECK(sys.blocks.size() == 2);
    CHECK(sys.blocks[0].points == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(sys.blocks[0].mask.test(0));
    CHECK(!sys.blocks[0].mask.test(4));
}

TEST_CASE("validate rejects duplicates, bad sizes, out-of-range points") {
    CHECK_THROWS_WITH_AS(
        validate_set_system(8, 4, std::nullopt, {{1, 2, 3, 4}, {1, 2, 3, 4}}),
        doctest::Contains("duplicate block"), input_error);
    // same set listed in a different order is still a duplicate
    CHECK_THROWS_WITH_AS(
        validate_set_system(8, 4, std::nullopt, {{1, 2, 3, 4}, {4, 3, 2, 1}}),
        doctest::Contains("duplicate block"), input_error);
    CHECK_THROWS_WITH_AS(validate_set_system(6, 4, std::nullopt, {{1, 2, 3, 7}}),
                         doctest::Contains("outside ground set"), input_error);
    CHECK_THROWS_WITH_AS(validate_set_system(8, 4, std::nullopt, {{1, 2, 3}}),
                         doctest::Contains("expected k=4"), input_error);
    CHECK_THROWS_WITH_AS(validate_set_system(8, 4, std::nullopt, {{1, 2, 3, 3}}),
                         doctest::Contains("duplicate point"), input_error);
    CHECK_THROWS_AS(validate_set_system(3, 4, std::nullopt, {}), input_error);
    CHECK_THROWS_WITH_AS(
        validate_set_system(8, 4, ProductShape{2, 3}, two_disjoint()),
        doctest::Contains("L*V"), input_error);
}

TEST_CASE("serialize/parse round-trip is the identity") {
    auto sys = validate_set_system(8, 4, std::nullopt, two_disjoint());
    auto back = parse_set_system(serialize_set_system(sys));
    CHECK(back == sys);

    // with a product shape points travel as [coordinate, value] pairs
    auto prod = validate_set_system(12, 4, ProductShape{4, 3},
                                    {{1, 4, 7, 10}, {2, 5, 8, 11}});
    auto text = serialize_set_system(prod);
    CHECK(text.find("[\n        1,\n        1\n      ]") != std::string::npos);
    CHECK(parse_set_system(text) == prod);
}

TEST_CASE("parse reports schema violations with a path") {
    CHECK_THROWS_WITH_AS(parse_set_system("{"), doctest::Contains("malformed"), input_error);
    CHECK_THROWS_WITH_AS(parse_set_system("[1,2]"), doctest::Contains("top level"),
                         input_error);
    CHECK_THROWS_WITH_AS(parse_set_system(R"({"n": 8, "k": 4})"),
                         doctest::Contains("blocks"), input_error);
    CHECK_THROWS_WITH_AS(
        parse_set_system(R"({"n": 8, "k": 4, "blocks": [[1,2,3,4],[5,6,7]]})"),
        doctest::Contains("blocks[1]"), input_error);
    CHECK_THROWS_WITH_AS(
        parse_set_system(R"({"n": 8, "k": 4, "blocks": [[1,2,3,[4]]]})"),
        doctest::Contains("blocks[0][3]"), input_error);
}

TEST_CASE("a product-universe file parses to 9 blocks over [4] x [3]") {
    const char* text = R"({
      "n": 12, "k": 4, "product": {"L": 4, "V": 3},
      "blocks": [
        [[1,1],[2,1],[3,1],[4,1]], [[1,1],[2,2],[3,2],[4,2]], [[1,1],[2,3],[3,3],[4,3]],
        [[1,2],[2,1],[3,2],[4,3]], [[1,2],[2,2],[3,3],[4,1]], [[1,2],[2,3],[3,1],[4,2]],
        [[1,3],[2,1],[3,3],[4,2]], [[1,3],[2,2],[3,1],[4,3]], [[1,3],[2,3],[3,2],[4,1]]
      ]})";
    auto sys = parse_set_system(text);
    CHECK(sys.blocks.size() == 9);
    CHECK(sys.product == ProductShape{4, 3});
    // flat encoding: (coordinate-1)*V + value
    CHECK(sys.blocks[0].points == std::vector<std::int64_t>{1, 4, 7, 10});
    // flat integers are accepted in product files too
    auto mixed = parse_set_system(
        R"({"n": 12, "k": 4, "product": {"L": 4, "V": 3}, "blocks": [[1, 4, 7, 10]]})");
    CHECK(mixed.blocks[0].points == sys.blocks[0].points);
}

TEST_CASE("single-field corruption hits the matching validation error") {
    auto raw = two_disjoint();
    for (std::size_t bi = 0; bi < raw.size(); ++bi) {
        for (std::size_t pi = 0; pi < raw[bi].size(); ++pi) {
            auto bad = raw;
            bad[bi][pi] = 9;  // outside [1, 8]
            CHECK_THROWS_AS(validate_set_system(8, 4, std::nullopt, bad), input_error);
            bad = raw;
            bad[bi][pi] = bad[bi][(pi + 1) % 4];  // duplicate point in block
            CHECK_THROWS_AS(validate_set_system(8, 4, std::nullopt, bad), input_error);
        }
    }
}

TEST_CASE("pirate point-set files") {
    auto sys = validate_set_system(12, 4, ProductShape{4, 3},
                                   {{1, 4, 7, 10}, {2, 5, 8, 11}});
    auto pts = parse_point_set(R"({"points": [[1,1],[2,1],4]})", sys);
    CHECK(pts == std::vector<std::int64_t>{1, 4});  // deduplicated, sorted
    CHECK_THROWS_AS(parse_point_set(R"({"points": [99]})", sys), input_error);
    CHECK_THROWS_AS(parse_point_set(R"({"nope": []})", sys), input_error);
}
