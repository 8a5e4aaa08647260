#include "p4d/suite.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace p4d;

TEST_CASE("suite names and validation") {
    CHECK(suite_names().size() == 10);
    SuiteConfig c;
    c.suites = {"fields", "all"};
    CHECK_NOTHROW(validate(c));
    c.suites = {"frobnicate"};
    CHECK_THROWS_AS(validate(c), Error);
    c.suites = {"fields"};
    c.mode = CheckMode::random_mode(0, 0);
    CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("reports come back sorted and independent of the job count") {
    SuiteConfig c;
    c.suites = {"fields", "extended"};
    c.mode = CheckMode::random_mode(7, 4);
    c.jobs = 1;
    const auto serial = run_suite(c);
    c.jobs = 4;
    const auto parallel = run_suite(c);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i + 1 < serial.size(); ++i) CHECK(serial[i].check <= serial[i + 1].check);
    CHECK(report_document(c, serial, false) == report_document(c, parallel, false));
    CHECK(all_passed(serial));
}

TEST_CASE("family filter keeps only that family's checks") {
    SuiteConfig c;
    c.suites = {"fields", "symmetry"};
    c.family = Family::B4First;
    for (const auto& r : run_suite(c)) CHECK(r.family == "b4-first");
}

TEST_CASE("report document carries version, config and summary") {
    SuiteConfig c;
    c.suites = {"fields"};
    c.mode = CheckMode::exact_mode();
    const auto reports = run_suite(c);
    const Json with = report_document(c, reports);
    const Json without = report_document(c, reports, false);
    CHECK(with["version"] == version());
    CHECK(with["config"]["mode"] == "exact");
    CHECK(with["summary"]["pass"] == 4);
    CHECK(with["checks"][0].contains("elapsed_ms"));
    CHECK_FALSE(without["checks"][0].contains("elapsed_ms"));
    CHECK(human_report(reports).find("4 passed, 0 failed") != std::string::npos);
}

TEST_CASE("only failures count against the exit status") {
    Report fail{"x", "d4", Status::fail, {}, std::string("w"), 0};
    Report maybe{"y", "d4", Status::inconclusive, {}, std::nullopt, 0};
    CHECK_FALSE(all_passed({fail, maybe}));
    CHECK(all_passed({maybe}));
}

TEST_CASE("P4D_JOBS sets the default job count") {
    setenv("P4D_JOBS", "3", 1);
    CHECK(default_jobs() == 3);
    setenv("P4D_JOBS", "0", 1);
    CHECK(default_jobs() >= 1);
    unsetenv("P4D_JOBS");
}
