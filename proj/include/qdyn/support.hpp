#pragma once

// Small shared building blocks: packed bit vector, exact balance ratio,
// an order-preserving parallel map and number formatting.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qdyn/number_theory.hpp"

namespace qdyn {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= u64{1} << (i & 63); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (u64 w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<u64> words_;
};

/// |2 * size - p| / (2p), i.e. |size/p - 1/2|, held as an unreduced fraction.
struct Balance {
    u64 num = 0;
    u64 den = 1;

    static Balance of(u64 size, u64 p) {
        const u64 twice = 2 * size;
        return {twice > p ? twice - p : p - twice, 2 * p};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend std::strong_ordering operator<=>(const Balance& a, const Balance& b) {
        return static_cast<u128>(a.num) * b.den <=> static_cast<u128>(b.num) * a.den;
    }
    friend bool operator==(const Balance& a, const Balance& b) { return (a <=> b) == 0; }
};

/// printf("%.6g") style formatting used at every reporting boundary.
inline std::string format_sig(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results
/// land in index order so output never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn fn) {
    using R = decltype(fn(std::size_t{}));
    std::vector<R> out(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace qdyn
