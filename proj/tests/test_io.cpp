#include <doctest.h>

#include <random>

#include "thompson/errors.hpp"
#include "thompson/io.hpp"

using namespace thompson;

TEST_CASE("element JSON round-trips") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 40; ++i) {
        const VElement g = random_word(rng, 6);
        CHECK(element_from_json(element_to_json(g)) == g);
        CHECK(element_from_json(element_to_json(g, TreeFormat::product)) == g);
        CHECK(element_from_json(nlohmann::json::parse(element_to_json(g).dump())) == g);
    }
    const nlohmann::json x0 = element_to_json(builtin_element("x0"));
    CHECK(x0["domain"] == "(. (. .))");
    CHECK(x0["range"] == "((. .) .)");
    CHECK(x0["perm"] == nlohmann::json::array({1, 2, 3}));
    CHECK(element_from_json("x0") == builtin_element("x0"));
}

TEST_CASE("malformed element JSON") {
    CHECK_THROWS_AS(element_from_json(nlohmann::json::parse(R"j({"domain": "(. .)"})j")), ParseError);
    CHECK_THROWS_AS(element_from_json(nlohmann::json::parse(R"j({"domain": "(. .)", "range": "(. .)", "perm": [1]})j")),
                    ParseError);
    CHECK_THROWS_AS(element_from_json(nlohmann::json::parse("42")), ParseError);
    CHECK_THROWS_AS(element_from_json(nlohmann::json::parse(R"j({"domain": "(. .)", "range": "(. .)", "perm": [1, 1]})j")),
                    ParseError);
}

TEST_CASE("report JSON") {
    const OracleReport r{"parity", 5, 10, 0, {}};
    const nlohmann::json j = report_to_json(r);
    CHECK(j["check"] == "parity");
    CHECK(j["bound"] == 5);
    CHECK(j["instances"] == 10);
    CHECK(j["violations"] == 0);
}

TEST_CASE("element lists") {
    const auto lines = parse_element_list("# header\nx0\n\n(. .)/(. .)~[2,1]\n  rot3  \n");
    REQUIRE(lines.size() == 3);
    CHECK(lines[1] == builtin_element("rot"));
    CHECK(lines[2] == builtin_element("rot3"));

    const auto json = parse_element_list(R"j(["x0", {"domain": "(. .)", "range": "(. .)", "perm": [2, 1]}])j");
    REQUIRE(json.size() == 2);
    CHECK(json[1] == builtin_element("rot"));
    CHECK(parse_element_list("").empty());
    CHECK_THROWS_AS(parse_element_list("x0\nbogus(\n"), ParseError);
}
