#include "dicke/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

#include "dicke/error.hpp"

namespace dicke {

unsigned thread_count() {
    unsigned requested = 0;
    if (const char* env = std::getenv("DICKE_PHASE_THREADS"); env != nullptr && *env != '\0') {
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, requested);
        if (ec != std::errc{} || ptr != end) {
            throw ConfigError("DICKE_PHASE_THREADS", "expected a non-negative integer, got '" +
                                                         std::string(env) + "'");
        }
    }
    if (requested == 0) {
        requested = std::max(1u, std::thread::hardware_concurrency());
    }
    return requested;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (n == 0) {
        return;
    }
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(thread_count(), n));
    std::vector<std::exception_ptr> errors(n);

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        auto run = [&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                    failed = true;
                }
            }
        };
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(run);
        }
        run();
    }

    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace dicke
