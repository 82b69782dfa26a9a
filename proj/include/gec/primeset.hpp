#ifndef GEC_PRIMESET_HPP
#define GEC_PRIMESET_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gec {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Finite set of distinct primes, kept strictly ascending.
class prime_set {
  public:
    prime_set() = default;

    static prime_set of(std::vector<std::uint64_t> elems) {
        std::sort(elems.begin(), elems.end());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (!is_prime_u64(elems[i]))
                throw std::invalid_argument("prime_set: " + std::to_string(elems[i]) + " is not prime");
            if (i > 0 && elems[i] == elems[i - 1])
                throw std::invalid_argument("prime_set: duplicate element " + std::to_string(elems[i]));
        }
        prime_set ps;
        ps.primes_ = std::move(elems);
        return ps;
    }

    static prime_set of(std::initializer_list<std::uint64_t> elems) {
        return of(std::vector<std::uint64_t>(elems));
    }

    const std::vector<std::uint64_t>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    std::uint64_t largest() const { return primes_.back(); }

    bool contains(std::uint64_t p) const {
        return std::binary_search(primes_.begin(), primes_.end(), p);
    }

    // True iff the set is {p_1, ..., p_k}, the first k primes.
    bool is_initial_segment() const {
        std::uint64_t q = 2;
        for (std::uint64_t p : primes_) {
            if (p != q) return false;
            q = next_prime_after(q);
        }
        return true;
    }

    static std::uint64_t next_prime_after(std::uint64_t p) {
        std::uint64_t q = p + 1;
        while (!is_prime_u64(q)) ++q;
        return q;
    }

    std::uint64_t smallest_absent_prime() const {
        std::uint64_t q = 2;
        while (contains(q)) q = next_prime_after(q);
        return q;
    }

    prime_set without_largest() const {
        prime_set ps = *this;
        ps.primes_.pop_back();
        return ps;
    }

    prime_set with(std::uint64_t p) const {
        prime_set ps = *this;
        auto it = std::lower_bound(ps.primes_.begin(), ps.primes_.end(), p);
        if (it != ps.primes_.end() && *it == p)
            throw std::invalid_argument("prime_set: element already present");
        ps.primes_.insert(it, p);
        return ps;
    }

    bool operator==(const prime_set& o) const { return primes_ == o.primes_; }

  private:
    std::vector<std::uint64_t> primes_;
};

} // namespace gec

#endif
