#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ptlab {

// Worker cap for parallel sections: PTLAB_THREADS if set, otherwise the
// hardware concurrency. Always at least 1.
int thread_cap();

// Splits [0, count) into contiguous chunks of at least min_per_chunk items
// and runs body(begin, end, chunk) on up to thread_cap() workers. Callers
// keep per-chunk state and merge it in chunk order afterwards, so results
// do not depend on the thread count.
void parallel_chunks(std::int64_t count, std::int64_t min_per_chunk,
                     const std::function<void(std::int64_t, std::int64_t, int)>& body);

int parallel_chunk_count(std::int64_t count, std::int64_t min_per_chunk);

// Pearson statistic for two equally sized count vectors:
// sum (a-b)^2/(a+b) over cells with a+b > 0. Degrees of freedom returned
// as used_cells - 1.
double chi2_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                       int* degrees_of_freedom);

// Upper quantile of the chi-squared distribution via the Wilson-Hilferty
// cube approximation; good to a few percent for df >= 10.
double chi2_quantile(int degrees_of_freedom, double probability);

double stderr_of_proportion(double p_hat, std::int64_t trials);

}  // namespace ptlab
