#include <doctest.h>

#include <cmlab/classify.hpp>
#include <cmlab/errors.hpp>
#include <cmlab/oracle.hpp>
#include <cmlab/serialize.hpp>

#include <json.hpp>

#include <algorithm>
#include <regex>
#include <sstream>

using namespace cmlab;

namespace {
struct Case {
    OrderDesc o;
    u64 p;
    int n;
};
const std::vector<Case> kCases = {{{-3, 1}, 3, 2}, {{-4, 1}, 2, 3}, {{-8, 1}, 2, 3}, {{-7, 1}, 5, 1}, {{-3, 1}, 7, 1}};

std::vector<CheckReport> checks_of(const std::vector<ImageCandidate>& v) {
    std::vector<CheckReport> out;
    for (const auto& c : v) out.push_back(candidate_check(c));
    return out;
}
}  // namespace

TEST_SUITE("serialize") {
TEST_CASE("candidate JSON round trip") {
    for (const auto& k : kCases) {
        const auto v = classify(k.o, k.p, k.n);
        const std::string text = candidates_to_json(v, checks_of(v), RenderOptions{true, false});
        const auto parsed = parse_candidates_json(text);
        REQUIRE(parsed.size() == v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const auto& pc = parsed[i];
            CHECK(pc.label == v[i].label);
            CHECK(pc.level == v[i].level);
            CHECK(pc.order == v[i].group.order());
            CHECK(pc.cc_element == v[i].cc_element);
            const Subgroup re = Subgroup::closure(pc.generators, pc.level);
            CHECK(re == v[i].group);
            std::vector<u64> keys;
            for (const Mat2& m : pc.elements) keys.push_back(m.key());
            std::sort(keys.begin(), keys.end());
            CHECK(keys == v[i].group.keys());
        }
    }
}

TEST_CASE("text and JSON list the same candidates") {
    for (const auto& k : kCases) {
        const auto v = classify(k.o, k.p, k.n);
        const auto checks = checks_of(v);
        std::vector<std::string> from_json;
        for (const auto& j : nlohmann::json::parse(candidates_to_json(v, checks))) {
            from_json.push_back(j["label"]);
            for (const auto& a : j["aliases"]) from_json.push_back(a);
        }
        std::vector<std::string> from_text;
        std::istringstream in(candidates_to_text(v, checks));
        const std::regex head(R"(^\[\d+\] (\S+)(?: \(also: (.*)\))?$)");
        for (std::string line; std::getline(in, line);) {
            std::smatch m;
            if (!std::regex_match(line, m, head)) continue;
            from_text.push_back(m[1]);
            std::istringstream rest(m[2]);
            for (std::string a; rest >> a;) from_text.push_back(a);
        }
        std::sort(from_json.begin(), from_json.end());
        std::sort(from_text.begin(), from_text.end());
        CHECK(from_json == from_text);
        CHECK(!from_json.empty());
    }
}

TEST_CASE("matrices are nested arrays") {
    const auto v = classify(OrderDesc{-7, 1}, 5, 1);
    const auto j = nlohmann::json::parse(candidates_to_json(v, checks_of(v)));
    const auto& g = j[0]["generators"][0];
    REQUIRE(g.is_array());
    CHECK(g.size() == 2);
    CHECK(g[0].size() == 2);
    CHECK(j[0]["level"] == 5);
    CHECK(j[0]["check"]["pass"] == true);
    CHECK_FALSE(j[0].contains("elements"));
}

TEST_CASE("reports JSON") {
    std::vector<LemmaReport> reps = {verify_weber(OrderDesc{-4, 1}, 2)};
    LemmaReport bad;
    bad.lemma_id = "x";
    bad.fail("because");
    reps.push_back(bad);
    const auto j = nlohmann::json::parse(reports_to_json(reps, RenderOptions{false, false}));
    REQUIRE(j.size() == 2);
    CHECK(j[0]["status"] == "pass");
    CHECK(j[0]["witness"].is_null());
    CHECK(j[1]["status"] == "fail");
    CHECK(j[1]["witness"] == "because");
    CHECK_FALSE(j[0].contains("elapsed_ms"));
}

TEST_CASE("malformed candidate JSON") {
    CHECK_THROWS_AS(parse_candidates_json("{"), UsageError);
    CHECK_THROWS_AS(parse_candidates_json(R"([{"label": "x"}])"), UsageError);
}
}
