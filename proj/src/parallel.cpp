#include "ecs/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ecs {

unsigned effective_jobs(unsigned requested) {
    if (const char* env = std::getenv("ECS_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    if (requested >= 1) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& work) {
    if (n == 0) return;
    std::size_t workers = jobs == 0 ? 1 : jobs;
    if (workers > n) workers = n;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto body = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                work(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ecs
