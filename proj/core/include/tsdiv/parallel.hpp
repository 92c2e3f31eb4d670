#pragma once

#include <cstddef>
#include <functional>

namespace tsdiv {

/// Resolve the default worker count: set_default_threads() if called,
/// else the TSDIV_THREADS environment variable, else hardware concurrency.
int default_threads();

/// Override the process-wide default worker count (0 restores auto).
void set_default_threads(int threads);

/// Run body(i) for i in [0, n). threads == 0 uses the default. Work items
/// must be independent; callers that reduce results should write into
/// index-addressed slots and combine sequentially afterwards so the result
/// does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  int threads = 0);

} // namespace tsdiv
