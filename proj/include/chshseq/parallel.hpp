#pragma once

#include <cstddef>
#include <functional>

namespace chshseq {

/// Worker count: `requested` if positive, else CHSH_SEQ_THREADS if set and
/// positive, else hardware concurrency (at least 1).
std::size_t resolve_thread_count(std::size_t requested = 0);

/// Calls body(i) for i in [0, count) spread over `threads` workers. Each index
/// is visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace chshseq
