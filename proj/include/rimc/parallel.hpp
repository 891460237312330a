#pragma once

#include "rimc/types.hpp"

namespace rimc {

/// Runs body(i) for i in [0, count). threads <= 1 is the serial reference loop;
/// otherwise iterations are spread over an OpenMP team. body must not depend
/// on iteration order.
template <typename Body>
void for_each_index(Index count, int threads, Body&& body) {
  if (threads <= 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (Index i = 0; i < count; ++i) body(i);
}

}  // namespace rimc
