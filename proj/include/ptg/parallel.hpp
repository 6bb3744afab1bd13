#pragma once

namespace ptg::parallel {

// Worker count for OpenMP kernels: PTG_THREADS when set to a positive integer,
// otherwise the OpenMP default.
int thread_count();

}  // namespace ptg::parallel
