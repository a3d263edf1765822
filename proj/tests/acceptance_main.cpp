// Acceptance harness: runs every acceptance criterion at the pinned
// tolerances and prints one PASS/FAIL line per criterion. Exit code 0 when
// everything holds, 3 on a statistical-acceptance failure.

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "hvlab/acceptance.hpp"
#include "hvlab/runner.hpp"

int main(int argc, char** argv) {
    hvlab::AcceptanceOptions options;
    options.partitions = hvlab::default_partitions();
    options.log = &std::cout;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        auto value = [&]() -> const char* {
            if (i + 1 >= argc) {
                std::cerr << "missing value for " << arg << "\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--seed") {
            options.seed = std::strtoull(value(), nullptr, 10);
        } else if (arg == "--n") {
            options.n_intervals = std::strtoll(value(), nullptr, 10);
        } else if (arg == "--partitions") {
            options.partitions = std::atoi(value());
        } else if (arg == "--help" || arg == "-h") {
            std::cout << "usage: hvlab_acceptance [--seed S] [--n N] [--partitions K]\n";
            return 0;
        } else {
            std::cerr << "unknown argument: " << arg << "\n";
            return 2;
        }
    }

    std::cout << "acceptance suite: seed " << options.seed << ", " << options.n_intervals
              << " intervals per point, " << options.partitions << " partition(s)\n";

    const auto results = hvlab::run_acceptance(options);
    int failed = 0;
    for (const auto& result : results)
        if (!result.passed) ++failed;

    std::cout << (failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " ("
              << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
              << " criteria)\n";
    return failed == 0 ? 0 : 3;
}
