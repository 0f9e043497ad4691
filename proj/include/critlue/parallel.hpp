#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace critlue {

/// Worker count: set_thread_count() if called, else CRITLUE_THREADS, else
/// hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). The first exception thrown by any worker is
/// rethrown after all workers finish. threads <= 0 means thread_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

/// sup |F_emp - F| for a sample against a continuous CDF. Sorts a copy.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

}  // namespace critlue
