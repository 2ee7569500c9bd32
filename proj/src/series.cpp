#include "motzkin/series.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace motzkin {

std::vector<SeriesValue> series_recurrence(std::int64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("series_recurrence requires n_max >= 1");
    std::vector<SeriesValue> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = {0, 1, 0, 0};
    out[1] = {1, 1, 0, 0};
    for (std::int64_t n = 1; n < n_max; ++n) {
        const SeriesValue& cur = out[n];
        const SeriesValue& prev = out[n - 1];
        out[n + 1] = {n + 1,
                      cur.a - prev.a,
                      cur.b - prev.b - prev.a,
                      cur.c - prev.c - prev.a - 2 * prev.b};
    }
    return out;
}

SeriesValue series_closed(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("series index must be nonnegative");
    // Residue class of n mod 6 fixes (cos(pi n/3), sin(pi n/3)/sqrt(3)) as
    // (1,0), (1/2,1/2), (-1/2,1/2), (-1,0), (-1/2,-1/2), (1/2,-1/2); the
    // resulting expressions below are integral on their class.
    switch (n % 6) {
        case 0: return {n, 1, 2 * n / 3, n * (n - 1) / 3};
        case 1: return {n, 1, (n - 1) / 3, -(n - 1) / 3};
        case 2: return {n, 0, -(n + 1) / 3, -(n * n - 1) / 3};
        case 3: return {n, -1, -2 * n / 3, -n * (n - 1) / 3};
        case 4: return {n, -1, -(n - 1) / 3, (n - 1) / 3};
        default: return {n, 0, (n + 1) / 3, (n * n - 1) / 3};
    }
}

namespace {

struct SumAccum {
    mpz_class a{0}, b{0}, c{0};

    void reset() {
        a = 0;
        b = 0;
        c = 0;
    }
    void take(std::size_t k, mpz_srcptr term) {
        const unsigned long uk = static_cast<unsigned long>(k);
        if (k % 2 == 0) {
            mpz_add(a.get_mpz_t(), a.get_mpz_t(), term);
            mpz_addmul_ui(b.get_mpz_t(), term, uk);
            mpz_addmul_ui(c.get_mpz_t(), term, uk * uk);
        } else {
            mpz_sub(a.get_mpz_t(), a.get_mpz_t(), term);
            mpz_submul_ui(b.get_mpz_t(), term, uk);
            mpz_submul_ui(c.get_mpz_t(), term, uk * uk);
        }
    }
    SeriesValue row(std::int64_t n) const {
        return {n, mpz_get_si(a.get_mpz_t()), mpz_get_si(b.get_mpz_t()),
                mpz_get_si(c.get_mpz_t())};
    }
};

SeriesValue sums_from_binomials(std::int64_t n, const std::vector<mpz_class>& row,
                                std::size_t row_len) {
    SumAccum acc;
    for (std::size_t k = 0; k < row_len; ++k) acc.take(k, row[k].get_mpz_t());
    return acc.row(n);
}

}  // namespace

namespace {

// Row of C(n-k, k) for k = 0..n/2, built incrementally:
// C(n-k-1, k+1) = C(n-k, k) * (n-2k)(n-2k-1) / ((n-k)(k+1)).
void fill_row(std::int64_t n, std::vector<mpz_class>& row) {
    mpz_class t = 1;
    row[0] = t;
    for (std::int64_t k = 0; 2 * (k + 1) <= n; ++k) {
        t *= (n - 2 * k);
        t *= (n - 2 * k - 1);
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(n - k));
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k + 1));
        row[k + 1] = t;
    }
}

// Rows lo..hi of the three sums, via row_{n+1}[k] = row_n[k] + row_{n-1}[k-1]
// on three rotating buffers; the two boundary rows are built directly.
void bruteforce_block(std::int64_t lo, std::int64_t hi, SeriesValue* out) {
    const std::size_t width = static_cast<std::size_t>(hi / 2) + 2;
    std::vector<mpz_class> rows[3];
    for (auto& r : rows) r.assign(width, mpz_class(0));

    fill_row(lo, rows[lo % 3]);
    out[lo] = sums_from_binomials(lo, rows[lo % 3], static_cast<std::size_t>(lo / 2) + 1);
    if (lo == hi) return;
    fill_row(lo + 1, rows[(lo + 1) % 3]);
    out[lo + 1] =
        sums_from_binomials(lo + 1, rows[(lo + 1) % 3], static_cast<std::size_t>((lo + 1) / 2) + 1);

    SumAccum acc;
    for (std::int64_t n = lo + 1; n < hi; ++n) {
        const auto& prev = rows[(n - 1) % 3];
        const auto& cur = rows[n % 3];
        auto& next = rows[(n + 1) % 3];
        const std::size_t cur_len = static_cast<std::size_t>(n / 2) + 1;
        const std::size_t next_len = static_cast<std::size_t>((n + 1) / 2) + 1;
        next[0] = 1;
        acc.reset();
        acc.take(0, next[0].get_mpz_t());
        for (std::size_t k = 1; k < next_len; ++k) {
            // next[k] = cur[k] + prev[k-1], with cur[k] = 0 past its row end
            if (k < cur_len) {
                mpz_add(next[k].get_mpz_t(), cur[k].get_mpz_t(), prev[k - 1].get_mpz_t());
            } else {
                mpz_set(next[k].get_mpz_t(), prev[k - 1].get_mpz_t());
            }
            acc.take(k, next[k].get_mpz_t());
        }
        out[n + 1] = acc.row(n + 1);
    }
}

}  // namespace

SeriesValue series_bruteforce(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("series index must be nonnegative");
    std::vector<mpz_class> row(static_cast<std::size_t>(n / 2) + 1);
    fill_row(n, row);
    return sums_from_binomials(n, row, row.size());
}

std::vector<SeriesValue> series_bruteforce_range(std::int64_t n_max, int threads) {
    if (n_max < 0) throw std::invalid_argument("series index must be nonnegative");
    threads = std::clamp(threads, 1, 64);
    std::vector<SeriesValue> out(static_cast<std::size_t>(n_max) + 1);
    const std::int64_t rows_total = n_max + 1;
    if (threads == 1 || rows_total < 4 * threads) {
        bruteforce_block(0, n_max, out.data());
        return out;
    }
    // Row n costs about n * limbs(n) ~ n^2, so equal-width blocks leave the
    // last thread with most of the work; cut at cube-root-balanced points.
    std::vector<std::int64_t> cuts(threads + 1);
    cuts[0] = 0;
    cuts[threads] = rows_total;
    for (int t = 1; t < threads; ++t) {
        double frac = std::cbrt(static_cast<double>(t) / threads);
        cuts[t] = std::clamp<std::int64_t>(static_cast<std::int64_t>(frac * rows_total),
                                           cuts[t - 1] + 1, rows_total);
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        std::int64_t lo = cuts[t];
        std::int64_t hi = cuts[t + 1] - 1;
        if (lo > hi) continue;
        pool.emplace_back([lo, hi, &out] { bruteforce_block(lo, hi, out.data()); });
    }
    for (auto& th : pool) th.join();
    return out;
}

IdentityReport check_identities(const Prime& prime) {
    const std::int64_t p = prime.value();
    const bool plus = prime.class6() == +1;
    std::vector<SeriesValue> s = series_recurrence(p + 2);

    IdentityReport rep;
    auto record = [&rep](bool ok, const std::string& what) {
        if (!ok) rep.failures.push_back(what);
        return ok;
    };

    rep.alternating = record(s[p - 1].a - 2 * s[p].a + 1 == 0, "alternating");

    std::int64_t bc = s[p].b + s[p].c;
    rep.bc_pair = record(bc == (plus ? 0 : p * (p + 1) / 3), "bc_pair");

    // doubled to avoid the half weights
    std::int64_t lhs2 = -2 * s[p].a - 2 * s[p].b - 2 + s[p + 1].b + s[p + 1].c -
                        2 * s[p + 2].b - 2 * s[p + 2].c;
    std::int64_t rhs2 = plus ? p * (p + 5) / 3 : p * (p + 1) / 3 - 2;
    rep.half_weight = record(lhs2 == rhs2, "half_weight");

    std::int64_t combo = -s[p - 1].a + s[p].a + s[p].b - 2 * s[p + 1].b - 2 * s[p + 1].a + 1;
    rep.linear_combo = record(combo == (plus ? p + 2 : -p - 1), "linear_combo");

    return rep;
}

}  // namespace motzkin
