#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "motzkin/field.hpp"

namespace motzkin {

// Table of M_n mod p for n = 0..n_max, ground truth for every automaton
// claim. values[0] = 1, values[1] = 1, values[2] = 2 mod p.
struct MotzkinTable {
    Prime p;
    std::vector<std::uint32_t> values;
};

// Division-free convolution recurrence
//   M_{n+1} = M_n + sum_{k=0}^{n-1} M_k M_{n-1-k}
// valid for any modulus >= 2, O(n_max^2) multiply-adds. The primary oracle;
// inherently sequential in n.
std::vector<std::uint32_t> motzkin_convolution_mod(std::uint32_t modulus, std::size_t n_max);

MotzkinTable motzkin_convolution(const Prime& p, std::size_t n_max);

// Second, unrelated route: M_n = sum_k C(n, 2k) (C(2k, k) - C(2k, k+1))
// with every binomial through Lucas. The subtraction form of the Catalan
// numbers avoids dividing by k+1, which is not invertible when p | k+1.
// Pure and parallel over n; O(n) binomial evaluations per call.
std::uint32_t motzkin_binomial(const BinomTable& binom, std::uint64_t n);

// Partition of [0, n_max] by residue of M_n. counts[x] and members[x] cover
// residue x; counts always sum to n_max + 1. Member lists are materialized,
// so keep n_max modest (they cost 8 bytes per index).
struct ResidueClasses {
    std::vector<std::uint64_t> counts;
    std::vector<std::vector<std::uint64_t>> members;
};

ResidueClasses classify_residues(const MotzkinTable& table);
ResidueClasses classify_residues(const Prime& p, std::size_t n_max);

struct TableFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat binary cache: 16-byte header (magic "MOTZ", version, p, n_max as
// little-endian u32) followed by n_max+1 little-endian u32 residues.
void write_table(const MotzkinTable& table, const std::filesystem::path& path);
MotzkinTable read_table(const std::filesystem::path& path);  // throws TableFormatError

// MOTZKIN_CACHE_DIR, when set, holds one file per (p, n_max) pair.
std::optional<std::filesystem::path> cache_dir_from_env();

// Returns the table, reusing the on-disk cache when MOTZKIN_CACHE_DIR is set
// (a larger cached table also serves a smaller request).
MotzkinTable cached_table(const Prime& p, std::size_t n_max);

}  // namespace motzkin
