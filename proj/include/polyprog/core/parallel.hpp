#pragma once

// Deterministic parallel reductions: the index range is cut into a fixed number of chunks
// that does not depend on the thread count, each chunk is summed sequentially, and chunk
// totals are combined in chunk order. The result is therefore bit-identical for any number
// of worker threads.

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <thread>
#include <vector>

namespace polyprog {

/// Compensated (Kahan) summation.
template <class T>
class KahanSum {
public:
    void add(T x)
    {
        const T y = x - carry_;
        const T t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

private:
    T sum_{};
    T carry_{};
};

class ComplexKahanSum {
public:
    void add(std::complex<double> z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum<double> re_, im_;
};

inline constexpr std::size_t kReductionChunks = 64;

/// Runs body(chunk, begin, end) for every chunk of [0, n) on up to `threads` workers.
template <class Body>
void for_each_chunk(std::size_t n, unsigned threads, Body&& body)
{
    const std::size_t chunks = std::min<std::size_t>(kReductionChunks, std::max<std::size_t>(n, 1));
    auto range = [&](std::size_t c) { return std::pair{c * n / chunks, (c + 1) * n / chunks}; };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            auto [b, e] = range(c);
            body(c, b, e);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                auto [b, e] = range(c);
                body(c, b, e);
            }
        });
    for (auto& th : pool) th.join();
}

/// Sum of term(i) for i in [0, n), deterministic in the thread count.
template <class Term>
std::complex<double> parallel_sum(std::size_t n, unsigned threads, Term&& term)
{
    std::vector<std::complex<double>> partial(kReductionChunks);
    for_each_chunk(n, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
        ComplexKahanSum s;
        for (std::size_t i = b; i < e; ++i) s.add(term(i));
        partial[c] = s.value();
    });
    ComplexKahanSum total;
    for (const auto& p : partial) total.add(p);
    return total.value();
}

/// Real-valued counterpart of parallel_sum.
template <class Term>
double parallel_sum_real(std::size_t n, unsigned threads, Term&& term)
{
    return parallel_sum(n, threads, [&](std::size_t i) { return std::complex<double>(term(i), 0.0); }).real();
}

}  // namespace polyprog
