#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "motzkin/field.hpp"

namespace motzkin {

// One row of the three alternating binomial series
//   a_n = sum_k (-1)^k C(n-k, k)
//   b_n = sum_k (-1)^k C(n-k, k) k
//   c_n = sum_k (-1)^k C(n-k, k) k^2
// All values are exact integers; a_n is in {-1, 0, 1}, |b_n| <= n+1 and
// |c_n| <= (n+1)^2, so int64 holds them for every index this library accepts.
struct SeriesValue {
    std::int64_t n;
    std::int64_t a;
    std::int64_t b;
    std::int64_t c;

    bool operator==(const SeriesValue&) const = default;
};

// Coupled three-term recurrences
//   a_{n+1} = a_n - a_{n-1}
//   b_{n+1} = b_n - b_{n-1} - a_{n-1}
//   c_{n+1} = c_n - c_{n-1} - a_{n-1} - 2 b_{n-1}
// with a_0 = a_1 = 1 and b, c starting at 0. Returns rows 0..n_max.
std::vector<SeriesValue> series_recurrence(std::int64_t n_max);

// Closed forms, evaluated exactly through a 6-way case table on n mod 6
// (the trigonometric solutions of the recurrences take rational values with
// denominator dividing 3 on each residue class, and the numerators are
// always divisible, so no rounding is involved).
SeriesValue series_closed(std::int64_t n);

// Direct summation of the defining series with exact big-integer binomials.
// Independent of both paths above; intended as an oracle. O(n) big-int ops.
SeriesValue series_bruteforce(std::int64_t n);

// All rows 0..n_max by direct summation, sharing binomial rows between
// consecutive n (Pascal on the diagonal), so large sweeps stay affordable.
// Blocks of rows are independent (each seeds its own boundary rows), so the
// sweep splits across threads; the result is identical for any thread count.
std::vector<SeriesValue> series_bruteforce_range(std::int64_t n_max, int threads = 1);

// Exact integer identities tying the series to a prime p:
//   alternating:  a_{p-1} - 2 a_p + 1 = 0
//   bc_pair:      b_p + c_p = 0                        (p = +1 mod 6)
//                 b_p + c_p = p(p+1)/3                 (p = -1 mod 6)
//   half_weight:  -a_p - b_p - 1 + (b_{p+1} + c_{p+1})/2 - b_{p+2} - c_{p+2}
//                   = p(p+5)/6                         (p = +1 mod 6)
//                   = p(p+1)/6 - 1                     (p = -1 mod 6)
//   linear_combo: -a_{p-1} + a_p + b_p - 2 b_{p+1} - 2 a_{p+1} + 1
//                   = p + 2                            (p = +1 mod 6)
//                   = -p - 1                           (p = -1 mod 6)
// The half-weight combination is checked doubled so everything stays in
// integers. Returns the list of falsified identities (expected empty).
struct IdentityReport {
    bool alternating = false;
    bool bc_pair = false;
    bool half_weight = false;
    bool linear_combo = false;
    std::vector<std::string> failures;

    bool all_hold() const { return alternating && bc_pair && half_weight && linear_combo; }
};

IdentityReport check_identities(const Prime& p);

}  // namespace motzkin
