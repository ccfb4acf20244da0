#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "leviscope/condition_checks.hpp"

namespace leviscope {

namespace {

unsigned threads_from_env() {
  const char* env = std::getenv("LEVI_SCOPE_THREADS");
  if (!env) return 0;
  try {
    const long v = std::stol(env);
    return v > 0 ? static_cast<unsigned>(v) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{threads_from_env()};
  return cap;
}

}  // namespace

void set_max_threads(unsigned threads) { thread_cap() = threads; }

unsigned max_threads() {
  const unsigned cap = thread_cap();
  return cap ? cap : std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

}  // namespace leviscope
