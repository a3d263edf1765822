#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "hvlab/errors.hpp"

namespace hvlab {

inline int default_partitions() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, n) into contiguous ranges, runs `worker(begin, end)` on each
/// (its own thread for partitions > 1) and merges the partials in partition
/// order with Result::merge_from. Interval-keyed random streams make the
/// merged result independent of the partition count for memoryless
/// detectors; integrate-and-fire detectors lose at most their final
/// sub-threshold residual per partition.
template <typename Result, typename Worker>
Result run_partitioned(std::int64_t n, int partitions, Worker&& worker) {
    if (partitions < 1) throw ConfigError("partitions must be >= 1");
    auto count = static_cast<std::int64_t>(partitions);
    count = std::max<std::int64_t>(1, std::min(count, std::max<std::int64_t>(n, 1)));
    if (count == 1) return worker(std::int64_t{0}, n);

    std::vector<Result> parts(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(count));

    const std::int64_t chunk = n / count;
    const std::int64_t remainder = n % count;
    std::int64_t begin = 0;
    for (std::int64_t p = 0; p < count; ++p) {
        const std::int64_t size = chunk + (p < remainder ? 1 : 0);
        const std::int64_t end = begin + size;
        threads.emplace_back([&, p, begin, end] {
            try {
                parts[static_cast<std::size_t>(p)] = worker(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(p)] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Result out = std::move(parts.front());
    for (std::size_t p = 1; p < parts.size(); ++p) out.merge_from(parts[p]);
    return out;
}

}  // namespace hvlab
