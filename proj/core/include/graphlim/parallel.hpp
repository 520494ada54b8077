#pragma once

#include <cstddef>
#include <functional>

namespace graphlim {

// Process-wide worker cap used by the parallel loops below; 0 means
// hardware concurrency.
void set_thread_count(int threads);
int thread_count();

// Calls body(begin, end) on disjoint contiguous chunks of [0, n). Chunks
// run concurrently when more than one worker is configured; the first
// exception thrown by any chunk is rethrown after all workers finish.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace graphlim
