#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lrc/builder.hpp"
#include "lrc/graph.hpp"
#include "test_util.hpp"

using namespace lrc;

TEST_CASE("params range checks") {
    CHECK(CodeParams{15, 9, 5, 4}.check().empty());
    CHECK(!CodeParams{16, 9, 5, 4}.check().empty());   // (r+1) does not divide n
    CHECK(!CodeParams{15, 0, 5, 4}.check().empty());   // k out of range
    CHECK(!CodeParams{15, 9, 1, 4}.check().empty());   // d too small
    CHECK(!CodeParams{15, 3, 5, 4}.check().empty());   // r > k
}

TEST_CASE("group classification of the example layout") {
    TannerGraph g = algorithm1(nu_params(15, 9, 4));
    auto classes = classify_groups(g);
    CHECK(classes[0] == GroupClass::Plain);
    CHECK(classes[1] == GroupClass::Plain);
    CHECK(classes[2] == GroupClass::Infomixed);
}

TEST_CASE("no global parities means every group is plain") {
    TannerGraph g = algorithm1(nu_params(10, 8, 4));  // d = 2, zero global checks
    for (auto& [gid, cls] : classify_groups(g)) CHECK(cls == GroupClass::Plain);
}

TEST_CASE("a group of global and local parities only is mixed, not infomixed") {
    // (10,4,7,4): the second group is 4 global parities plus the local parity
    TannerGraph g = build_skeleton(nu_params(10, 4, 4));
    auto classes = classify_groups(g);
    CHECK(classes[0] == GroupClass::Plain);
    CHECK(classes[1] == GroupClass::Mixed);
}

TEST_CASE("builder outputs validate cleanly") {
    for (const auto& p : lrctest::full_sweep()) {
        CHECK(validate(build_skeleton(p)).empty());
        CHECK(validate(algorithm1(p)).empty());
        CHECK(validate(baseline_graph(p)).empty());
    }
}

TEST_CASE("validate flags a duplicate local check") {
    TannerGraph g = algorithm1(nu_params(15, 9, 4));
    g.checks[1].neighbors = g.checks[0].neighbors;  // second local check now serves group 0
    auto violations = validate(g);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations)
        if (v.find("duplicate local check") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate flags a global check without its own parity node") {
    TannerGraph g = algorithm1(nu_params(15, 9, 4));
    auto& global = g.checks[3];
    REQUIRE(global.kind == CheckKind::Global);
    std::vector<int> nb;
    for (int v : global.neighbors)
        if (g.variables[v].kind != VarKind::GlobalParity) nb.push_back(v);
    global.neighbors = nb;
    auto violations = validate(g);
    REQUIRE(!violations.empty());
    bool found = false;
    for (const auto& v : violations)
        if (v.find("global parity neighbors") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("check and parity counts match the global-check identity") {
    for (const auto& p : lrctest::full_sweep()) {
        TannerGraph g = algorithm1(p);
        int locals = 0, globals = 0;
        for (const auto& c : g.checks) (c.kind == CheckKind::Local ? locals : globals)++;
        CHECK(locals == p.n / (p.r + 1));
        CHECK(globals == (p.d - 2) - (p.d - 2) / (p.r + 1));
    }
}

TEST_CASE("every variable belongs to exactly one local check") {
    TannerGraph g = algorithm1(nu_params(21, 11, 6));
    std::vector<int> seen(g.params.n, 0);
    for (const auto& c : g.checks) {
        if (c.kind != CheckKind::Local) continue;
        for (int v : c.neighbors) ++seen[v];
    }
    for (int v = 0; v < g.params.n; ++v) CHECK(seen[v] == 1);
}

TEST_CASE("serialization round-trips") {
    for (const auto& p : {nu_params(15, 9, 4), nu_params(12, 5, 2), nu_params(21, 11, 6)}) {
        TannerGraph g = algorithm1(p);
        TannerGraph back = parse_graph(serialize(g));
        CHECK(back == g);
        CHECK(serialize(back) == serialize(g));
    }
}

TEST_CASE("parse rejects malformed documents") {
    CHECK_THROWS_AS(parse_graph("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_graph("{\"version\":\"1\"}"), ParseError);  // missing params

    TannerGraph g = algorithm1(nu_params(15, 9, 4));
    std::string doc = serialize(g);
    // drop one variable: the document then disagrees with n = 15
    auto pos = doc.find("\"variables\"");
    REQUIRE(pos != std::string::npos);
    auto open = doc.find('{', pos);
    auto close = doc.find('}', open);
    std::string broken = doc.substr(0, open) + doc.substr(close + 3);
    CHECK_THROWS_AS(parse_graph(broken), ParseError);

    auto vpos = doc.find("\"version\": \"1\"");
    REQUIRE(vpos != std::string::npos);
    std::string wrong_version = doc;
    wrong_version.replace(vpos, 14, "\"version\": \"9\"");
    CHECK_THROWS_AS(parse_graph(wrong_version), ParseError);
}
