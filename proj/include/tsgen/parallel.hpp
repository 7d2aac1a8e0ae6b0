// Copyright 2026 tsgen contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSGEN_PARALLEL_HPP
#define TSGEN_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tsgen {

// Work is split into fixed-size blocks claimed by worker threads off an
// atomic counter. Because the block layout never depends on the thread
// count, callers that merge per-block partials in block order get the same
// floating-point result for any number of threads.
inline constexpr size_t kDefaultBlockSize = 256;

inline size_t num_blocks(size_t n, size_t block_size) {
  return (n + block_size - 1) / block_size;
}

// fn(block_index, begin, end) runs once per block. Exceptions from workers
// are rethrown on the calling thread (first one wins).
template <typename Fn>
void for_each_block(size_t n, int threads, size_t block_size, Fn&& fn) {
  const size_t blocks = num_blocks(n, block_size);
  if (blocks == 0) return;
  if (threads < 1) threads = 1;

  auto run_block = [&](size_t b) {
    const size_t begin = b * block_size;
    const size_t end = std::min(n, begin + block_size);
    fn(b, begin, end);
  };

  if (threads == 1 || blocks == 1) {
    for (size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        run_block(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const size_t nworkers =
      std::min(static_cast<size_t>(threads), blocks);
  pool.reserve(nworkers);
  for (size_t t = 0; t < nworkers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Applies fn(i) to every index, writing results into a dense vector: output
// order is input order regardless of scheduling.
template <typename R, typename Fn>
std::vector<R> parallel_map(size_t n, int threads, Fn&& fn) {
  std::vector<R> results(n);
  for_each_block(n, threads, kDefaultBlockSize,
                 [&](size_t, size_t begin, size_t end) {
                   for (size_t i = begin; i < end; ++i) results[i] = fn(i);
                 });
  return results;
}

}  // namespace tsgen

#endif  // TSGEN_PARALLEL_HPP
