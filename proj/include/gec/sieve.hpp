#ifndef GEC_SIEVE_HPP
#define GEC_SIEVE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gec/compensated.hpp>

namespace gec {

struct sieve_config {
    std::uint64_t limit = 2;
    std::uint64_t segment_size = 1u << 20; // odd numbers per segment
    std::string checkpoint_path;           // empty: checkpointing disabled

    void validate() const {
        if (limit < 2)
            throw std::invalid_argument("sieve_config: limit must be >= 2");
        if (segment_size < 2)
            throw std::invalid_argument("sieve_config: segment_size must be >= 2");
    }
};

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Plain sieve of Eratosthenes; used for base primes up to sqrt(limit).
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

// Segmented, odd-only sieve over [low, limit].  Memory is
// O(sqrt(limit) + segment_size) so a 10^9 run fits on a desktop.
// Emits primes in increasing order through `f(p)`.
template <class F>
void for_each_prime_in(std::uint64_t low, std::uint64_t limit, F&& f,
                       std::uint64_t segment_size = 1u << 20) {
    if (limit < 2 || low > limit) return;
    if (low <= 2) f(std::uint64_t{2});
    if (limit < 3) return;

    const auto base = small_primes(isqrt_u64(limit));
    std::uint64_t start = std::max<std::uint64_t>(low, 3);
    if (start % 2 == 0) ++start;

    std::vector<bool> seg;
    for (std::uint64_t seg_lo = start; seg_lo <= limit; seg_lo += 2 * segment_size) {
        const std::uint64_t count =
            std::min(segment_size, (limit - seg_lo) / 2 + 1); // odds seg_lo, seg_lo+2, ...
        seg.assign(count, false);
        const std::uint64_t seg_hi = seg_lo + 2 * (count - 1);
        for (std::uint64_t p : base) {
            if (p == 2) continue;
            if (p * p > seg_hi) break;
            std::uint64_t first = std::max(p * p, ((seg_lo + p - 1) / p) * p);
            if (first % 2 == 0) first += p;
            for (std::uint64_t m = first; m <= seg_hi; m += 2 * p)
                seg[(m - seg_lo) / 2] = true;
        }
        for (std::uint64_t i = 0; i < count; ++i)
            if (!seg[i]) f(seg_lo + 2 * i);
    }
}

template <class F>
void for_each_prime(std::uint64_t limit, F&& f, std::uint64_t segment_size = 1u << 20) {
    for_each_prime_in(2, limit, std::forward<F>(f), segment_size);
}

template <class F>
void stream_primes(const sieve_config& cfg, F&& f) {
    cfg.validate();
    for_each_prime_in(2, cfg.limit, std::forward<F>(f), cfg.segment_size);
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit >= 2) {
        const double x = static_cast<double>(limit);
        if (limit >= 17)
            out.reserve(static_cast<std::size_t>(x / (std::log(x) - 1.1)) + 16);
        for_each_prime(limit, [&](std::uint64_t p) { out.push_back(p); });
    }
    return out;
}

// Materialized prime list with Chebyshev-type queries.
class prime_table {
  public:
    explicit prime_table(std::uint64_t limit) : limit_(limit), primes_(primes_up_to(limit)) {}

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }

    // pi(x): exact count of primes <= x.
    std::uint64_t pi_count(double x) const {
        check_range(x);
        if (x < 2) return 0;
        auto bound = static_cast<std::uint64_t>(x);
        auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
        return static_cast<std::uint64_t>(it - primes_.begin());
    }

    // theta(x) = sum of log p over primes <= x, compensated.
    double theta(double x) const {
        check_range(x);
        comp_sum s;
        const std::uint64_t n = pi_count(x);
        for (std::uint64_t i = 0; i < n; ++i) s.add(std::log(static_cast<double>(primes_[i])));
        return s.value();
    }

  private:
    void check_range(double x) const {
        if (!(x >= 0))
            throw std::invalid_argument("prime_table: x must be >= 0");
        if (x > static_cast<double>(limit_))
            throw std::out_of_range("prime_table: x exceeds sieved limit");
    }

    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

} // namespace gec

#endif
