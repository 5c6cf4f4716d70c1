#include "magnon/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace magnon
{

unsigned DefaultThreadCount()
{
  if (const char *env = std::getenv(kThreadsEnvVar))
  {
    unsigned value = 0;
    const char *end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0)
    {
      return value;
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &body)
{
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      body(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto worker = [&]()
  {
    for (std::size_t i = next++; i < n; i = next++)
    {
      try
      {
        body(i);
      }
      catch (...)
      {
        std::lock_guard lock(error_mutex);
        if (i < error_index)
        {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; t++)
  {
    pool.emplace_back(worker);
  }
  worker();
  pool.clear();

  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace magnon
