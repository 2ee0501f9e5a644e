#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "olk/io.hpp"
#include "olk/suite.hpp"

using namespace olk;

TEST_CASE("suite runs clean on a fixed seed") {
    const SuiteReport rep = run_suite(42, 24);
    REQUIRE(rep.checks.size() == suite_check_names().size());
    for (const CheckResult& c : rep.checks) {
        INFO(c.name, " worst=", double(c.worst_residual));
        CHECK(c.cases >= 1);
        CHECK(c.failures == 0);
    }
    CHECK(rep.all_passed());
    CHECK(rep.total_failures() == 0);
}

TEST_CASE("suite names are unique and stable") {
    const std::vector<std::string> names = suite_check_names();
    const std::set<std::string> uniq(names.begin(), names.end());
    CHECK(uniq.size() == names.size());
    CHECK(names.front() == "rearrange-equimeasurable");
    CHECK(names.back() == "json-roundtrip-determinism");
    for (const std::string& n : names)
        for (char ch : n)
            CHECK((std::islower((unsigned char)ch) || std::isdigit((unsigned char)ch) ||
                   ch == '-'));
}

TEST_CASE("fixed seed reproduces the report byte for byte") {
    const SuiteReport a = run_suite(0xC0FFEEULL, 10);
    const SuiteReport b = run_suite(0xC0FFEEULL, 10);
    CHECK(to_json(a).dump() == to_json(b).dump());

    const SuiteReport c = run_suite(0xC0FFEF, 10);
    CHECK(to_json(a).dump() != to_json(c).dump());
}

TEST_CASE("zero cases yields an empty summary") {
    const SuiteReport rep = run_suite(7, 0);
    CHECK(rep.checks.empty());
    CHECK(rep.all_passed());
    const json j = to_json(rep);
    CHECK(j.at("checks").empty());
    CHECK(j.at("passed").get<bool>());
}

TEST_CASE("report serialization carries every check") {
    const SuiteReport rep = run_suite(3, 2);
    const json j = to_json(rep);
    CHECK(j.at("seed").get<std::uint64_t>() == 3);
    CHECK(j.at("cases").get<int>() == 2);
    REQUIRE(j.at("checks").size() == rep.checks.size());
    for (std::size_t i = 0; i < rep.checks.size(); ++i) {
        CHECK(j.at("checks")[i].at("name").get<std::string>() == rep.checks[i].name);
        CHECK(j.at("checks")[i].at("cases").get<int>() >= 1);
    }
}
