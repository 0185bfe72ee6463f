#pragma once

#include "distlat/classifier.hpp"
#include "distlat/extremal.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace distlat {

// How a suite's verdict is judged.  Theorem suites assert exact mathematical
// facts and tolerate zero failures; a single miss means the build is broken.
// Fitted suites measure an empirical constant and fail only when it escapes a
// deliberately generous cap or drifts across scales.
enum class SuiteKind { Theorem, Fitted };

std::string suite_kind_str(SuiteKind k);

// Knobs shared by every suite.  All randomness is drawn from one fixed-width
// generator seeded here, so equal options give byte-identical results.
struct SuiteOptions {
    std::uint64_t seed = 20250814;   // generator seed for the property sweeps
    std::uint64_t trials = 200;      // instances per randomized sweep
    std::uint64_t nmax = 40;         // point-set size ceiling for exact oracles

    void validate() const;           // trials >= 1, nmax >= 2
};

struct SuiteResult {
    std::string tag;
    std::string title;
    SuiteKind kind = SuiteKind::Theorem;
    std::uint64_t checks = 0;        // individual assertions evaluated
    std::uint64_t failures = 0;      // assertions that did not hold
    bool passed = false;             // failures == 0 and checks > 0
    double statistic = 0.0;          // suite-specific headline number
    std::string detail;              // one line: statistic meaning or first failure
    double seconds = 0.0;
};

// Registered suite tags, in execution order.
const std::vector<std::string>& verify_suite_tags();

bool has_suite(std::string_view tag);

// Title and kind of a registered suite; throws precondition_error on an
// unknown tag, listing the valid ones.
std::string suite_title(std::string_view tag);
SuiteKind suite_kind(std::string_view tag);

// Run one suite ("all" is not accepted here; use run_all_suites).
SuiteResult run_suite(std::string_view tag, const SuiteOptions& opts = {});

// Run every registered suite in order.
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts = {});

} // namespace distlat
