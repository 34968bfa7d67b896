#include "hpsusp/validation.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"hpsusp acceptance campaign"};
    hpsusp::CampaignOptions opts;
    app.add_option("--criterion,-c", opts.only, "run only these criteria (1-12)")->check(CLI::Range(1, 12));
    app.add_option("--reps", opts.bench_repetitions, "timing repetitions")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    const hpsusp::CampaignReport report = hpsusp::run_acceptance(opts);
    hpsusp::print_report(std::cout, report);
    return report.passed() ? 0 : 1;
}
