#include "motzkin/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "motzkin/oracle.hpp"

namespace motzkin {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
}

std::int64_t checked_pow(std::int64_t base, std::uint32_t e) {
    std::int64_t r = 1;
    while (e--) r = checked_mul(r, base);
    return r;
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

namespace {

using int128 = __int128;

// Exponents are only ever compared against 64-bit bounds, so they can be
// pinned at 2^100 once they pass every possible bound; this also keeps
// extreme offset/period combinations away from int128 overflow.
constexpr int128 kExpCeiling = static_cast<int128>(1) << 100;

int128 exp_mul(int128 e, std::uint64_t base, std::uint64_t times) {
    while (times--) {
        e *= base;
        if (e >= kExpCeiling) return kExpCeiling;
    }
    return e;
}

// First exponent value base^(offset + period * j_min); steps multiply by
// base^period.
int128 first_exponent(const StructuredSet& s) {
    return exp_mul(1, s.base,
                   static_cast<std::uint64_t>(s.exp_offset) +
                       static_cast<std::uint64_t>(s.exp_period) * s.j_min);
}

int128 step_exponent(const StructuredSet& s, int128 e) {
    return exp_mul(e, s.base, s.exp_period);
}

}  // namespace

bool set_contains(const StructuredSet& s, std::uint64_t n) {
    if (n == 0) return false;
    const int128 target = static_cast<int128>(n) + s.shift;
    if (target == 0) return s.residue == 0;  // u = 0 representation
    if (target < 0) return false;
    for (int128 e = first_exponent(s); e <= target; e = step_exponent(s, e)) {
        if (target % e == 0) {
            int128 u = target / e;
            if (u % s.base == s.residue) return true;
        }
    }
    return false;
}

std::vector<std::uint64_t> set_members(const StructuredSet& s, std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    const int128 hi = static_cast<int128>(limit) + s.shift;
    if (s.residue == 0 && -s.shift >= 1 && static_cast<std::uint64_t>(-s.shift) <= limit) {
        out.push_back(static_cast<std::uint64_t>(-s.shift));  // the u = 0 member
    }
    for (int128 e = first_exponent(s); e <= hi; e = step_exponent(s, e)) {
        for (int128 u = (s.residue == 0 ? s.base : s.residue); u * e <= hi; u += s.base) {
            int128 n = u * e - s.shift;
            if (n >= 1) out.push_back(static_cast<std::uint64_t>(n));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t set_count(const StructuredSet& s, std::uint64_t limit) {
    if (s.residue == 0) {
        // u-values divisible by the base make the same n reachable from
        // several exponents; enumerate and deduplicate instead.
        return set_members(s, limit).size();
    }
    // For residue >= 1 each member has a unique (u, exponent) representation,
    // so the per-exponent counts can simply be summed.
    std::uint64_t count = 0;
    const int128 hi = static_cast<int128>(limit) + s.shift;
    const int128 lo = std::max<int128>(static_cast<int128>(1) + s.shift, 1);
    for (int128 e = first_exponent(s); e <= hi; e = step_exponent(s, e)) {
        int128 u_lo = (lo + e - 1) / e;
        if (u_lo < static_cast<int128>(s.residue)) u_lo = s.residue;
        int128 rem = u_lo % s.base;
        if (rem != static_cast<int128>(s.residue)) {
            u_lo += (static_cast<int128>(s.residue) >= rem) ? s.residue - rem
                                                            : s.base - rem + s.residue;
        }
        int128 u_hi = hi / e;
        if (u_lo <= u_hi) count += static_cast<std::uint64_t>((u_hi - u_lo) / s.base + 1);
    }
    return count;
}

Rational density_formula(const StructuredSet& s) {
    if (s.residue == 0) {
        // With residue 0 the same member arises from several exponents and
        // the closed formula below no longer matches the enumeration.
        throw std::invalid_argument("density formula requires residue >= 1");
    }
    const std::int64_t q = static_cast<std::int64_t>(s.base);
    std::int64_t qs = checked_pow(q, s.exp_period);
    if (s.j_min >= 1) {
        return Rational::make(1, checked_mul(checked_pow(q, s.exp_offset + 1), qs - 1));
    }
    // 1 / (q^(t+1-s) (q^s - 1)); the prefactor moves to the numerator when
    // s > t + 1.
    if (s.exp_period > s.exp_offset + 1) {
        return Rational::make(checked_pow(q, s.exp_period - s.exp_offset - 1), qs - 1);
    }
    return Rational::make(1, checked_mul(checked_pow(q, s.exp_offset + 1 - s.exp_period), qs - 1));
}

std::vector<StructuredSet> zero_residue_forms(const Prime& p) {
    const std::uint64_t q = p.value();
    if (p.class6() == +1) {
        return {
            StructuredSet{q, 1, 1, 0, 1, 2},
            StructuredSet{q, q - 1, 1, 0, 1, 1},
        };
    }
    return {
        StructuredSet{q, 1, 2, 0, 1, 2},
        StructuredSet{q, q - 2, 2, 1, 0, 2},
        StructuredSet{q, 2, 2, 1, 0, 1},
        StructuredSet{q, q - 1, 2, 0, 1, 1},
    };
}

std::vector<std::string> verify_forms(const Prime& p, const Automaton& m, std::uint64_t limit) {
    std::vector<std::string> violations;
    const std::uint64_t oracle_limit = std::min<std::uint64_t>(limit, 10000);
    const MotzkinTable table = motzkin_convolution(p, oracle_limit);
    int form_no = 0;
    for (const StructuredSet& form : zero_residue_forms(p)) {
        ++form_no;
        for (std::uint64_t n : set_members(form, limit)) {
            if (m.eval(n) != 0) {
                violations.push_back("form " + std::to_string(form_no) + " member " +
                                     std::to_string(n) + ": machine value " +
                                     std::to_string(m.eval(n)) + " != 0");
            }
            if (n <= oracle_limit && table.values[n] != 0) {
                violations.push_back("form " + std::to_string(form_no) + " member " +
                                     std::to_string(n) + ": oracle value " +
                                     std::to_string(table.values[n]) + " != 0");
            }
        }
    }
    return violations;
}

namespace {

std::uint64_t count_matching(const Automaton& m, std::uint32_t residue, std::uint64_t lo,
                             std::uint64_t hi) {
    std::uint64_t count = 0;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        if (m.eval(n) == residue) ++count;
    }
    return count;
}

}  // namespace

DensityReport empirical_density(const Prime& p, const Automaton& m, std::uint32_t residue,
                                std::uint64_t limit, int threads) {
    if (limit < 1) throw std::invalid_argument("limit must be >= 1");
    if (residue >= p.value()) throw std::invalid_argument("residue out of range");
    threads = std::clamp(threads, 1, 256);

    std::uint64_t count = 0;
    if (threads == 1 || limit < 4096) {
        count = count_matching(m, residue, 1, limit);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = limit / threads;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t lo = 1 + chunk * t;
            std::uint64_t hi = (t == threads - 1) ? limit : chunk * (t + 1);
            pool.emplace_back(
                [&m, residue, lo, hi, &partial, t] { partial[t] = count_matching(m, residue, lo, hi); });
        }
        for (auto& th : pool) th.join();
        count = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
    }

    DensityReport rep;
    rep.p = p.value();
    rep.residue = residue;
    rep.limit = limit;
    rep.count = count;
    rep.density = static_cast<double>(count) / static_cast<double>(limit);
    if (residue == 0) {
        rep.theory = Rational::make(2, checked_mul(p.value(), p.value() - 1));
        std::uint32_t pv = p.value();
        bool exact = (pv == 5 || pv == 11 || pv == 13 || pv == 23);
        rep.kind = exact ? TheoryKind::exact : TheoryKind::lower_bound;
    } else {
        rep.kind = TheoryKind::none;
    }
    return rep;
}

std::uint32_t cpd(const BinomTable& binom, std::uint32_t d) {
    const Prime& p = binom.prime();
    if (d >= p.value()) throw std::invalid_argument("digit out of range");
    std::uint64_t acc = 0;
    const std::int64_t pd = d;
    for (std::int64_t k = 0; 2 * k <= pd; ++k) {
        acc += p.mul(binom.binom(static_cast<std::int64_t>(p.value()) - 1 - k, pd - 2 * k),
                     binom.binom(pd, k));
    }
    std::uint32_t r = static_cast<std::uint32_t>(acc % p.value());
    return (d % 2 == 1) ? p.neg(r) : r;
}

std::optional<std::uint32_t> density_one_digit(const BinomTable& binom) {
    const std::uint32_t pv = binom.prime().value();
    for (std::uint32_t d = 2; d + 2 <= pv; ++d) {
        if (cpd(binom, d) == 0) return d;
    }
    return std::nullopt;
}

ForbiddenReport forbidden_residues(const Prime& p, const Automaton& m) {
    const std::uint32_t pv = p.value();
    ForbiddenReport rep;

    BinomTable binom(p);
    rep.cpd_values.resize(pv);
    for (std::uint32_t d = 0; d < pv; ++d) rep.cpd_values[d] = cpd(binom, d);

    std::vector<bool> attained(pv, false);
    for (const State& s : m.states()) attained[s.value] = true;
    for (std::uint32_t x = 0; x < pv; ++x) {
        if (!attained[x]) rep.forbidden.push_back(x);
    }

    // subgroup of the unit group generated by the nonzero table constants
    std::vector<bool> in_group(pv, false);
    std::vector<std::uint32_t> frontier = {1};
    in_group[1] = true;
    std::size_t group_size = 1;
    while (!frontier.empty()) {
        std::uint32_t g = frontier.back();
        frontier.pop_back();
        for (std::uint32_t c : rep.cpd_values) {
            if (c == 0) continue;
            std::uint32_t h = p.mul(g, c);
            if (!in_group[h]) {
                in_group[h] = true;
                ++group_size;
                frontier.push_back(h);
            }
        }
    }
    rep.units_generated = (group_size == pv - 1);
    return rep;
}

namespace {

bool digits_only01_base3(std::uint64_t u) {
    while (u > 0) {
        if (u % 3 == 2) return false;
        u /= 3;
    }
    return true;
}

}  // namespace

ClassicalResult classical_predicate(std::uint32_t modulus, std::uint64_t n) {
    switch (modulus) {
        case 2: {
            // even exactly on (4i + e) 4^(j+1) - delta, e in {1,3}, delta in {1,2}
            bool even = false;
            for (std::uint64_t e : {1ull, 3ull}) {
                for (std::int64_t delta : {1, 2}) {
                    if (set_contains(StructuredSet{4, e, 1, 1, 0, delta}, n)) even = true;
                }
            }
            return ClassicalResult{even, even ? 0u : 1u};
        }
        case 3: {
            // Residue by base-3 digit patterns: with T the set of numbers
            // whose base-3 digits are all 0 or 1,
            //   n = 3u,   u in T  ->  1
            //   n = 3u-1, u in T  -> -1
            //   n = 3u-2, u in T  ->  1
            // and 0 otherwise. The three cases split by n mod 3.
            std::uint64_t r = n % 3;
            std::uint64_t u = (n + (r == 0 ? 0 : (r == 2 ? 1 : 2))) / 3;
            bool in_t = digits_only01_base3(u);
            std::uint32_t residue = 0;
            if (in_t) residue = (r == 2) ? 2u : 1u;
            return ClassicalResult{residue == 0, residue};
        }
        case 5: {
            // divisible exactly on the four structural forms
            //   (5i+1) 5^(2j) - 2,   (5i+2) 5^(2j-1) - 1,
            //   (5i+3) 5^(2j-1) - 2, (5i+4) 5^(2j) - 1,   j >= 1.
            bool divisible = false;
            for (const StructuredSet& f : zero_residue_forms(Prime::make(5))) {
                if (set_contains(f, n)) divisible = true;
            }
            ClassicalResult res;
            res.divisible = divisible;
            if (divisible) res.residue = 0;
            return res;
        }
        default:
            throw std::invalid_argument("classical characterisations cover moduli 2, 3, 5 only");
    }
}

}  // namespace motzkin
