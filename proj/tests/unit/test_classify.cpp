#include <doctest.h>

#include <cmlab/classify.hpp>
#include <cmlab/errors.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace cmlab;
using namespace testutil;

namespace {
const ImageCandidate* find(const std::vector<ImageCandidate>& v, const std::string& label) {
    for (const auto& c : v) {
        if (c.label == label) return &c;
        if (std::find(c.aliases.begin(), c.aliases.end(), label) != c.aliases.end()) return &c;
    }
    return nullptr;
}
std::size_t variants(const std::vector<ImageCandidate>& v) {
    std::size_t k = 0;
    for (const auto& c : v) k += 1 + c.aliases.size();
    return k;
}
}  // namespace

TEST_SUITE("classify") {
TEST_CASE("generic good odd prime: one candidate") {
    const auto v = classify(OrderDesc{-7, 1}, 5, 1);
    REQUIRE(v.size() == 1);
    CHECK(v[0].group == N(-7, 1, 5));
    CHECK(v[0].aliases.size() == 1);  // c_{+1} and c_{-1} collapse
    const auto w = classify(OrderDesc{-7, 1}, 5, 2);
    REQUIRE(w.size() == 1);
    CHECK(candidate_check(w[0]).pass);
}

TEST_CASE("j = 0 at p = 3, level 9") {
    const auto v = classify(OrderDesc{-3, 1}, 3, 2);
    CHECK(variants(v) == 16);  // 8 Cartan-part shapes, each with c_{+1} and c_{-1}
    CHECK(v.size() == 12);
    const Subgroup N3 = N(-3, 1, 3);
    int elkies = 0;
    for (const auto& c : v) {
        if (c.label.find("elkies3") == std::string::npos) continue;
        ++elkies;
        CHECK(c.index_in_normalizer == 3);
        CHECK(reduce_mod(c.group, 3) == N3);
    }
    CHECK(elkies == 2);
    // Elkies-analog variants only from level 9 on
    for (const auto& c : classify(OrderDesc{-3, 1}, 3, 1)) CHECK(c.label.find("elkies") == std::string::npos);
}

TEST_CASE("fractional generator resolved at level 9") {
    const auto v = classify(OrderDesc{-3, 1}, 3, 2);
    const auto* c = find(v, "bad-j0.elkies3-i1.c+1");
    REQUIRE(c);
    // (-5/4 1/2; -3/8 -5/4) mod 9
    CHECK(std::find(c->stated_generators.begin(), c->stated_generators.end(), Mat2(1, 5, 3, 1, 9)) !=
          c->stated_generators.end());
    const auto* d = find(v, "bad-j0.elkies3-i0.c+1");
    REQUIRE(d);
    // (1 1; -3/4 1) mod 9
    CHECK(std::find(d->stated_generators.begin(), d->stated_generators.end(), Mat2(1, 1, 6, 1, 9)) !=
          d->stated_generators.end());
}

TEST_CASE("j = 1728 at p = 2") {
    const auto v = classify(OrderDesc{-4, 1}, 2, 4);
    const auto* g1 = find(v, "2adic-j1728.G1.c+1");
    REQUIRE(g1);
    CHECK(find(v, "2adic-j1728.G1.c-1") == g1);
    CHECK(find(v, "2adic-j1728.G1.c'+1") == g1);
    for (const char* part : {"G2a", "G2b", "G4a", "G4b", "G4c", "G4d"})
        CHECK(find(v, std::string("2adic-j1728.") + part + ".c+1"));
}

TEST_CASE("J' groups at p = 2") {
    const auto v = classify(OrderDesc{-8, 1}, 2, 3);
    const Subgroup C8 = C(-8, 1, 8), C4 = C(-8, 1, 4);
    int jp = 0;
    for (const auto& c : v) {
        if (c.label.rfind("2adic.Jp", 0) != 0) continue;
        ++jp;
        CHECK(index_in(c.cartan_part, C8) == 2);
        CHECK(reduce_mod(c.cartan_part, 4) == C4);
    }
    CHECK(jp >= 1);
}

TEST_CASE("j = 0 at p = 2") {
    const auto v = classify(OrderDesc{-3, 1}, 2, 4);
    CHECK(find(v, "2adic-j0.C.c'+1"));
    CHECK(find(v, "2adic-j0.cubes.c'+1"));
}

TEST_CASE("candidate_check") {
    for (const auto& [o, p, n] : std::vector<std::tuple<OrderDesc, u64, int>>{
             {{-3, 1}, 3, 2}, {{-4, 1}, 2, 4}, {{-3, 1}, 2, 4}, {{-8, 1}, 2, 3}, {{-4, 2}, 2, 4},
             {{-7, 1}, 5, 1}, {{-3, 1}, 7, 1}, {{-3, 1}, 5, 1}, {{-15, 2}, 3, 2}, {{-3, 1}, 13, 1}})
        for (const auto& c : classify(o, p, n)) CHECK_MESSAGE(candidate_check(c).pass, c.label);

    auto v = classify(OrderDesc{-7, 1}, 3, 1);
    REQUIRE(!v.empty());
    ImageCandidate bad = v[0];
    bad.cc_element = Mat2::identity(bad.level);
    const auto rep = candidate_check(bad);
    CHECK_FALSE(rep.pass);
    bool cc_failed = false;
    for (const auto& it : rep.items) cc_failed |= it.name.find("cc") != std::string::npos && !it.pass;
    CHECK(cc_failed);

    const auto w = classify(OrderDesc{-3, 1}, 3, 2);
    const auto* e = find(w, "bad-j0.elkies3-i0.c+1");
    REQUIRE(e);
    CHECK(e->index_in_normalizer == 3);
    CHECK(e->stated_index == std::optional<u64>(3));
}

TEST_CASE("split frame at p = 7, j = 0") {
    const auto v = classify(OrderDesc{-3, 1}, 7, 1);
    bool split = false;
    for (const auto& c : v) split |= c.frame == Frame::split_diagonal;
    CHECK(split);
    for (const auto& c : v) CHECK(candidate_check(c).pass);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(classify(OrderDesc{-5, 1}, 3, 1), InvalidOrder);
    CHECK_THROWS_AS(classify(OrderDesc{-7, 1}, 4, 1), InvalidOrder);
    const u64 old = enumeration_cap();
    set_enumeration_cap(1000);
    CHECK_THROWS_AS(classify(OrderDesc{-7, 1}, 3, 4), TooLarge);
    set_enumeration_cap(old);
}

TEST_CASE("deterministic") {
    const auto a = classify(OrderDesc{-4, 2}, 2, 4), b = classify(OrderDesc{-4, 2}, 2, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].group == b[i].group);
    }
}
}
