#pragma once

#include <cstdint>
#include <vector>

namespace motzkin {

// Largest supported prime (exclusive). Keeps every intermediate product of
// two residues inside 64 bits and keeps per-prime factorial tables small.
inline constexpr std::uint32_t kPrimeLimit = 1u << 20;

bool is_prime(std::uint64_t v);

// A validated prime p >= 5 together with its residue class mod 6, carrying
// the arithmetic of GF(p). Residues are plain uint32_t values in [0, p).
class Prime {
public:
    // Throws std::invalid_argument if v is not prime, is below 5, or is
    // outside the supported range.
    static Prime make(std::uint64_t v);

    std::uint32_t value() const noexcept { return p_; }

    // +1 if p = 1 mod 6, -1 if p = 5 mod 6. Every prime >= 5 is one of the two.
    int class6() const noexcept { return class6_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

    // Throws std::domain_error for a = 0.
    std::uint32_t inv(std::uint32_t a) const;

    // Reduces any signed integer into [0, p).
    std::uint32_t reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    bool operator==(const Prime& o) const noexcept { return p_ == o.p_; }

private:
    Prime(std::uint32_t p, int c6) : p_(p), class6_(c6) {}
    std::uint32_t p_;
    int class6_;
};

// Binomial coefficients mod p via base-p digit decomposition (Lucas), backed
// by a factorial table of size p. C(n, m) is 0 whenever m < 0, n < 0 or
// m > n. Exact for n far beyond native factorial range.
class BinomTable {
public:
    explicit BinomTable(const Prime& p);

    const Prime& prime() const noexcept { return p_; }

    std::uint32_t binom(std::int64_t n, std::int64_t m) const;

    // k! mod p for k < p.
    std::uint32_t factorial(std::uint32_t k) const { return fact_[k]; }

private:
    std::uint32_t binom_digit(std::uint32_t n, std::uint32_t m) const;

    Prime p_;
    std::vector<std::uint32_t> fact_;
    std::vector<std::uint32_t> inv_fact_;
};

}  // namespace motzkin
