#include "motzkin/field.hpp"

#include <stdexcept>
#include <string>

namespace motzkin {

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    if (v % 3 == 0) return v == 3;
    for (std::uint64_t d = 5; d * d <= v; d += 6) {
        if (v % d == 0 || v % (d + 2) == 0) return false;
    }
    return true;
}

Prime Prime::make(std::uint64_t v) {
    if (!is_prime(v)) {
        throw std::invalid_argument(std::to_string(v) + " is not prime");
    }
    if (v < 5) {
        throw std::invalid_argument("prime " + std::to_string(v) +
                                    " is below the supported minimum 5");
    }
    if (v >= kPrimeLimit) {
        throw std::invalid_argument("prime " + std::to_string(v) +
                                    " exceeds the supported range (< 2^20)");
    }
    int c6 = (v % 6 == 1) ? +1 : -1;
    return Prime(static_cast<std::uint32_t>(v), c6);
}

std::uint32_t Prime::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint64_t base = a;
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = r * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t Prime::inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p_));
    return pow(a, p_ - 2);
}

BinomTable::BinomTable(const Prime& p) : p_(p) {
    const std::uint32_t n = p.value();
    fact_.resize(n);
    inv_fact_.resize(n);
    fact_[0] = 1;
    for (std::uint32_t k = 1; k < n; ++k) fact_[k] = p.mul(fact_[k - 1], k);
    inv_fact_[n - 1] = p.inv(fact_[n - 1]);
    for (std::uint32_t k = n - 1; k > 0; --k) inv_fact_[k - 1] = p.mul(inv_fact_[k], k);
}

std::uint32_t BinomTable::binom_digit(std::uint32_t n, std::uint32_t m) const {
    if (m > n) return 0;
    return p_.mul(fact_[n], p_.mul(inv_fact_[m], inv_fact_[n - m]));
}

std::uint32_t BinomTable::binom(std::int64_t n, std::int64_t m) const {
    if (n < 0 || m < 0 || m > n) return 0;
    std::uint64_t un = static_cast<std::uint64_t>(n);
    std::uint64_t um = static_cast<std::uint64_t>(m);
    const std::uint32_t p = p_.value();
    std::uint32_t r = 1;
    while (um > 0) {
        std::uint32_t nd = static_cast<std::uint32_t>(un % p);
        std::uint32_t md = static_cast<std::uint32_t>(um % p);
        if (md > nd) return 0;
        r = p_.mul(r, binom_digit(nd, md));
        un /= p;
        um /= p;
    }
    return r;
}

}  // namespace motzkin
