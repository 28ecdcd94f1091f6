#pragma once

#include <cstddef>
#include <functional>

namespace discrim {

/// 0 means "use the hardware concurrency".
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs body(0) .. body(count-1) across at most `threads` workers. Bodies
/// must only write state owned by their own index; under that contract the
/// outcome is identical for every thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

} // namespace discrim
