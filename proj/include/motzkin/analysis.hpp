#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "motzkin/automaton.hpp"
#include "motzkin/field.hpp"

namespace motzkin {

// Exact rational with reduced numerator/denominator. Arithmetic that would
// overflow 64 bits throws std::overflow_error.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Rational&) const = default;
};

// The digit-scaled progression family (base*i + residue) * base^(period*j +
// offset) - shift, over i >= 0 and j >= j_min. Membership and enumeration
// agree by construction; shifts do not change the asymptotic density.
struct StructuredSet {
    std::uint64_t base = 2;       // q >= 2
    std::uint64_t residue = 0;    // r in [0, q)
    std::uint32_t exp_period = 1; // s > 0
    std::uint32_t exp_offset = 0; // t >= 0
    int j_min = 0;                // 0 or 1
    std::int64_t shift = 0;       // subtracted from (qi+r) q^(sj+t)
};

bool set_contains(const StructuredSet& s, std::uint64_t n);
// Number of members in [1, limit].
std::uint64_t set_count(const StructuredSet& s, std::uint64_t limit);
// Members in [1, limit], ascending.
std::vector<std::uint64_t> set_members(const StructuredSet& s, std::uint64_t limit);

// Asymptotic density: 1 / (q^(t+1-s) (q^s - 1)) for j_min = 0 and
// 1 / (q^(t+1) (q^s - 1)) for j_min = 1, as an exact rational.
Rational density_formula(const StructuredSet& s);

// The structural families of n with M_n = 0 mod p: two for p = 1 mod 6
//   (pi + 1) p^k - 2        and  (pi + p-1) p^k - 1,      k >= 1,
// four for p = -1 mod 6
//   (pi + 1) p^(2k) - 2,    k >= 1;  (pi + p-2) p^(2k+1) - 2,  k >= 0;
//   (pi + 2) p^(2k+1) - 1,  k >= 0;  (pi + p-1) p^(2k) - 1,    k >= 1.
// Their densities sum to 2/(p(p-1)) in both classes.
std::vector<StructuredSet> zero_residue_forms(const Prime& p);

// Every member n <= limit of every zero-residue form must evaluate to 0 on
// the machine; members n <= min(limit, 10^4) are additionally checked
// against the convolution oracle. Returns violations (expected empty).
std::vector<std::string> verify_forms(const Prime& p, const Automaton& m, std::uint64_t limit);

enum class TheoryKind { exact, lower_bound, none };

struct DensityReport {
    std::uint32_t p = 0;
    std::uint32_t residue = 0;
    std::uint64_t limit = 0;
    std::uint64_t count = 0;
    double density = 0.0;
    Rational theory;      // meaningful unless kind == none
    TheoryKind kind = TheoryKind::none;
};

// Counts {1 <= n <= limit : M_n = residue mod p} with the machine; the
// theoretical reference for residue 0 is 2/(p(p-1)), exact for the primes
// with a full characterisation (5, 11, 13, 23) and a lower bound otherwise.
DensityReport empirical_density(const Prime& p, const Automaton& m, std::uint32_t residue,
                                std::uint64_t limit, int threads = 1);

// The constant Lambda_{d,d}(Q^{p-1}) as a digit-indexed table entry:
//   cpd(p, d) = (-1)^d sum_k C(p-1-k, d-2k) C(d, k)  mod p.
// This is what one pass of digit d multiplies a constant state by.
std::uint32_t cpd(const BinomTable& binom, std::uint32_t d);

// Smallest d in [2, p-2] with cpd(p, d) = 0, if any. When such a digit
// exists, every n whose base-p expansion contains d at least twice has
// M_n = 0 mod p, so the zero residue class has asymptotic density 1.
std::optional<std::uint32_t> density_one_digit(const BinomTable& binom);

struct ForbiddenReport {
    std::vector<std::uint32_t> cpd_values;  // indexed by digit
    std::vector<std::uint32_t> forbidden;   // residues no reachable state takes
    bool units_generated = false;           // nonzero cpd values generate all units
};

// (a) residues never attained by any reachable state (hence never attained
// by M_n mod p), and (b) whether the multiplicative closure of the nonzero
// cpd values is the full unit group - a sufficient condition for every
// nonzero residue to occur.
ForbiddenReport forbidden_residues(const Prime& p, const Automaton& m);

// Digit-form characterisations of M_n modulo 2, 3 and 5, independent of the
// machine. For modulus 2 and 3 the residue is fully determined; for 5 only
// divisibility is characterized, so residue is set just when it is 0.
struct ClassicalResult {
    bool divisible = false;
    std::optional<std::uint32_t> residue;
};

ClassicalResult classical_predicate(std::uint32_t modulus, std::uint64_t n);

}  // namespace motzkin
