#pragma once

#include "hpsusp/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hpsusp {

enum class Bound { less, greater, at_least, equal, info };

struct Measurement {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    Bound bound = Bound::info;

    bool ok() const;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Measurement> measurements;
    std::vector<std::string> failures;  // non-numeric checks that did not hold

    bool passed() const;
};

struct CampaignReport {
    std::vector<CriterionResult> criteria;
    double seconds = 0.0;

    bool passed() const;
    std::size_t failed_count() const;
};

struct CampaignOptions {
    RunConfig bench = bench_prototype(30.0);
    RunConfig bench_hot = bench_prototype(50.0);
    RunConfig truck = mining_truck();
    int bench_repetitions = 11;
    double bench_duration_s = 60.0;
    unsigned seed = 20240611u;
    std::vector<int> only;  // criterion ids to run; empty runs all
};

// Runs all twelve acceptance criteria. Timing-sensitive criteria run last and alone.
CampaignReport run_acceptance(const CampaignOptions& opts = {});

// One "C<n> PASS|FAIL <title>" line per criterion followed by its measurements.
void print_report(std::ostream& out, const CampaignReport& report);

} // namespace hpsusp
