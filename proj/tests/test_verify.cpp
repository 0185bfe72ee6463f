#include "distlat/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace distlat;

TEST_CASE("suite registry lists every tag exactly once") {
    const auto& tags = verify_suite_tags();
    CHECK(tags.size() == 21);
    CHECK(std::set<std::string>(tags.begin(), tags.end()).size() == tags.size());

    for (const auto& tag : tags) {
        CHECK(has_suite(tag));
        CHECK(!suite_title(tag).empty());
    }
    CHECK(!has_suite("no-such-suite"));
    CHECK(!has_suite("all"));   // the aggregate selector is not itself a suite

    // The randomized-sweep tags named by the command-line contract.
    for (const char* required : {"L2.11", "P4.3", "P6.6", "L4.1"}) {
        CHECK(has_suite(required));
    }

    // Exactly one suite measures fitted constants; the rest assert theorems.
    std::size_t fitted = 0;
    for (const auto& tag : tags) {
        if (suite_kind(tag) == SuiteKind::Fitted) ++fitted;
    }
    CHECK(fitted == 1);
    CHECK(suite_kind("lens-fit") == SuiteKind::Fitted);
    CHECK(suite_kind("P6.6") == SuiteKind::Theorem);

    CHECK(suite_kind_str(SuiteKind::Theorem) == "theorem");
    CHECK(suite_kind_str(SuiteKind::Fitted) == "fitted");
}

TEST_CASE("unknown tags and bad options are rejected") {
    CHECK_THROWS_AS(run_suite("no-such-suite"), precondition_error);
    CHECK_THROWS_AS(suite_title("no-such-suite"), precondition_error);
    CHECK_THROWS_AS(suite_kind("no-such-suite"), precondition_error);

    SuiteOptions bad;
    bad.trials = 0;
    CHECK_THROWS_AS(run_suite("P6.6", bad), precondition_error);
    bad.trials = 10;
    bad.nmax = 1;
    CHECK_THROWS_AS(run_suite("P6.6", bad), precondition_error);
}

TEST_CASE("equal options reproduce a suite bit for bit") {
    SuiteOptions opts;
    opts.seed = 123;
    opts.trials = 40;
    opts.nmax = 18;

    const auto a = run_suite("P6.6", opts);
    const auto b = run_suite("P6.6", opts);
    CHECK(a.checks == b.checks);
    CHECK(a.failures == b.failures);
    CHECK(a.statistic == b.statistic);
    CHECK(a.detail == b.detail);

    // A suite draws the same instances alone as inside a full run.
    SuiteOptions small;
    small.trials = 10;
    small.nmax = 12;
    const auto solo = run_suite("qord-cs", small);
    const auto all = run_all_suites(small);
    const auto in_all = std::find_if(all.begin(), all.end(),
                                     [](const SuiteResult& r) { return r.tag == "qord-cs"; });
    REQUIRE(in_all != all.end());
    CHECK(solo.statistic == in_all->statistic);
    CHECK(solo.checks == in_all->checks);
}

TEST_CASE("every suite passes at reduced trial counts") {
    SuiteOptions opts;
    opts.trials = 25;
    opts.nmax = 20;

    const auto results = run_all_suites(opts);
    const auto& tags = verify_suite_tags();
    REQUIRE(results.size() == tags.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        INFO("suite ", results[i].tag, ": ", results[i].detail);
        CHECK(results[i].tag == tags[i]);
        CHECK(results[i].checks > 0);
        CHECK(results[i].failures == 0);
        CHECK(results[i].passed);
        CHECK(results[i].seconds >= 0.0);
        CHECK(results[i].kind == suite_kind(results[i].tag));
    }
}

TEST_CASE("headline statistics sit where the mathematics puts them") {
    SuiteOptions opts;
    opts.trials = 30;
    opts.nmax = 16;

    // The moment/floor ratio and the extraction density ratio are at least 1
    // whenever the underlying inequalities hold.
    CHECK(run_suite("qord-cs", opts).statistic >= 1.0);
    CHECK(run_suite("P4.3", opts).statistic >= 1.0);
    CHECK(run_suite("L2.11", opts).statistic >= 1.0);

    // Round-trip inversion converges far below its acceptance tolerance.
    CHECK(run_suite("inversion", opts).statistic <= 1e-6);

    // The energy/bound ratio can reach 1 but never exceed it.
    const auto energy = run_suite("P6.6", opts);
    CHECK(energy.statistic <= 1.0);
    CHECK(energy.statistic > 0.0);

    // Sampling certifies the covering radius is attained up to 2% in square.
    const auto lat = run_suite("lattice", opts);
    CHECK(lat.statistic >= 0.9801);
    CHECK(lat.statistic <= 1.0 + 1e-12);
}
