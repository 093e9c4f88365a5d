#pragma once

#include <cstddef>
#include <functional>

namespace lienuc {

// Worker cap for internal parallel loops. Results never depend on it: work
// is split into fixed chunks and every reduction runs in a fixed order.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n). Each index must write only its own output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lienuc
