#include "ptlab/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace ptlab {

int thread_cap() {
  if (const char* env = std::getenv("PTLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int parallel_chunk_count(std::int64_t count, std::int64_t min_per_chunk) {
  const int cap = thread_cap();
  if (min_per_chunk < 1) min_per_chunk = 1;
  const std::int64_t by_work = (count + min_per_chunk - 1) / min_per_chunk;
  const auto chunks = std::min<std::int64_t>(cap, std::max<std::int64_t>(std::min<std::int64_t>(by_work, count), 1));
  return static_cast<int>(chunks);
}

void parallel_chunks(std::int64_t count, std::int64_t min_per_chunk,
                     const std::function<void(std::int64_t, std::int64_t, int)>& body) {
  const int chunks = parallel_chunk_count(count, min_per_chunk);
  if (count <= 0) return;
  if (chunks == 1) {
    body(0, count, 0);
    return;
  }
  const std::int64_t per = (count + chunks - 1) / chunks;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    const std::int64_t begin = static_cast<std::int64_t>(c) * per;
    const std::int64_t end = std::min<std::int64_t>(begin + per, count);
    if (begin >= end) break;
    workers.emplace_back([&body, begin, end, c] { body(begin, end, c); });
  }
  for (auto& w : workers) w.join();
}

double chi2_two_sample(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                       int* degrees_of_freedom) {
  if (a.size() != b.size()) throw std::invalid_argument("chi2_two_sample: size mismatch");
  double stat = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = static_cast<double>(a[i] + b[i]);
    if (s <= 0.0) continue;
    const double d = static_cast<double>(a[i] - b[i]);
    stat += d * d / s;
    ++used;
  }
  if (degrees_of_freedom != nullptr) *degrees_of_freedom = used > 1 ? used - 1 : 0;
  return stat;
}

double chi2_quantile(int degrees_of_freedom, double probability) {
  if (degrees_of_freedom < 1) throw std::invalid_argument("chi2_quantile: df < 1");
  // Normal quantiles for the levels used by the harness.
  double z;
  if (probability >= 0.9995) {
    z = 3.2905267314919255;  // 0.9995
  } else if (probability >= 0.999) {
    z = 3.090232306167813;  // 0.999
  } else if (probability >= 0.99) {
    z = 2.3263478740408408;  // 0.99
  } else if (probability >= 0.95) {
    z = 1.6448536269514722;  // 0.95
  } else {
    throw std::invalid_argument("chi2_quantile: unsupported probability level");
  }
  const double df = static_cast<double>(degrees_of_freedom);
  const double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
  return df * t * t * t;
}

double stderr_of_proportion(double p_hat, std::int64_t trials) {
  if (trials <= 0) return 0.0;
  const double v = p_hat * (1.0 - p_hat) / static_cast<double>(trials);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace ptlab
