#pragma once

#include <cstddef>
#include <functional>

namespace dismetrics {

// Worker count for metric evaluation. 0 and 1 both mean "run on the calling
// thread". Results never depend on this value: parallel loops only fill
// per-index slots that are reduced afterwards in index order.
struct EvalOptions {
  unsigned threads = 0;
};

// Calls body(i) for every i in [0, n), distributing indices over up to
// `threads` workers. Exceptions thrown by body are rethrown on the caller
// (the one from the lowest failing index wins).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace dismetrics
