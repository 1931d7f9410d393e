#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace kh {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kResultSchemaVersion = 1;

// Neumaier-compensated accumulator. Deterministic for a fixed add order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks; callers
// that need deterministic output must write to index i only.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

inline int hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace kh
