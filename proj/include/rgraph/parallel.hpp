#pragma once

#include <cstddef>
#include <functional>

namespace rgraph {

/// Global cap on worker threads (0 = no explicit cap). Set from the CLI
/// --threads flag; the RGRAPH_THREADS environment variable provides the
/// default when no cap is set.
void set_thread_cap(unsigned n);
unsigned thread_cap();

/// Number of workers parallel_for will actually use for `n` items.
unsigned resolve_threads(std::size_t n);

/// Runs body(i) for i in [0, n). Work is split into static contiguous
/// chunks, so any per-item state must be independent; callers derive
/// per-item seeds so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rgraph
