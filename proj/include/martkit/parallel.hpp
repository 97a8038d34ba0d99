#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <thread>
#include <vector>

namespace martkit::parallel {

namespace detail {
inline std::atomic<int>& thread_count_slot() {
    static std::atomic<int> count = [] {
        if (const char* s = std::getenv("MARTKIT_THREADS")) {
            const int v = std::atoi(s);
            if (v >= 1 && v <= 256) return v;
        }
        return 1;
    }();
    return count;
}
} // namespace detail

inline int thread_count() { return detail::thread_count_slot().load(); }

/// Overrides MARTKIT_THREADS for this process. Results never depend on it.
inline void set_thread_count(int count) {
    if (count >= 1 && count <= 256) detail::thread_count_slot().store(count);
}

// Smallest index in [0, count) where pred holds, if any. With more than one
// thread the range is split into contiguous chunks scanned concurrently;
// taking the lexicographic minimum of the per-chunk hits makes the answer
// identical to a sequential scan for every thread count.
template <typename Pred>
std::optional<std::uint64_t> find_first(std::uint64_t count, Pred&& pred) {
    const int threads = thread_count();
    if (threads <= 1 || count < 1024) {
        for (std::uint64_t i = 0; i < count; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    }
    const auto chunks = static_cast<std::uint64_t>(threads);
    std::vector<std::optional<std::uint64_t>> hits(chunks);
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t lo = count * c / chunks;
        const std::uint64_t hi = count * (c + 1) / chunks;
        workers.emplace_back([&, c, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (pred(i)) {
                    hits[c] = i;
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& h : hits)
        if (h) return h;
    return std::nullopt;
}

} // namespace martkit::parallel
