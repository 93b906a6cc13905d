#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace nlipm {

std::uint64_t splitmix64(std::uint64_t x);

/// Independent seed for stream `index` of a master seed. Pure function of
/// both arguments, so concurrent runs draw the same numbers in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Worker count from NLIPM_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads.
/// Rethrows the first exception by index after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nlipm
