#include "motzkin/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace motzkin {

std::vector<std::uint32_t> motzkin_convolution_mod(std::uint32_t modulus, std::size_t n_max) {
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    std::vector<std::uint32_t> m(n_max + 1);
    m[0] = 1 % modulus;
    // Largest number of product terms that can be accumulated before a
    // reduction is forced; every product is < modulus^2.
    const std::uint64_t sq = static_cast<std::uint64_t>(modulus - 1) * (modulus - 1);
    const std::size_t block = static_cast<std::size_t>(
        std::min<std::uint64_t>(~0ull / (sq + 1), 1ull << 40));
    for (std::size_t n = 0; n < n_max; ++n) {
        std::uint64_t acc = m[n];
        const std::uint32_t* a = m.data();
        std::size_t k = 0;
        while (k < n) {
            std::size_t stop = std::min(n, k + block);
            for (; k < stop; ++k) acc += static_cast<std::uint64_t>(a[k]) * a[n - 1 - k];
            acc %= modulus;
        }
        m[n + 1] = static_cast<std::uint32_t>(acc % modulus);
    }
    return m;
}

MotzkinTable motzkin_convolution(const Prime& p, std::size_t n_max) {
    return MotzkinTable{p, motzkin_convolution_mod(p.value(), n_max)};
}

std::uint32_t motzkin_binomial(const BinomTable& binom, std::uint64_t n) {
    const Prime& p = binom.prime();
    std::uint64_t acc = 0;
    const std::int64_t sn = static_cast<std::int64_t>(n);
    for (std::int64_t k = 0; 2 * k <= sn; ++k) {
        std::uint32_t catalan = p.sub(binom.binom(2 * k, k), binom.binom(2 * k, k + 1));
        acc += p.mul(binom.binom(sn, 2 * k), catalan);
        if (acc >= (1ull << 62)) acc %= p.value();
    }
    return static_cast<std::uint32_t>(acc % p.value());
}

ResidueClasses classify_residues(const MotzkinTable& table) {
    ResidueClasses r;
    r.counts.assign(table.p.value(), 0);
    r.members.assign(table.p.value(), {});
    for (std::size_t n = 0; n < table.values.size(); ++n) {
        r.counts[table.values[n]]++;
        r.members[table.values[n]].push_back(n);
    }
    return r;
}

ResidueClasses classify_residues(const Prime& p, std::size_t n_max) {
    return classify_residues(motzkin_convolution(p, n_max));
}

namespace {

constexpr char kMagic[4] = {'M', 'O', 'T', 'Z'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw TableFormatError("truncated table file");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_table(const MotzkinTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, table.p.value());
    put_u32(os, static_cast<std::uint32_t>(table.values.size() - 1));
    for (std::uint32_t v : table.values) put_u32(os, v);
    if (!os) throw std::runtime_error("short write to " + path.string());
}

MotzkinTable read_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw TableFormatError("cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw TableFormatError("bad magic in " + path.string());
    std::uint32_t version = get_u32(is);
    if (version != kVersion) throw TableFormatError("unsupported table version");
    std::uint32_t pv = get_u32(is);
    std::uint32_t n_max = get_u32(is);
    std::optional<Prime> p;
    try {
        p = Prime::make(pv);
    } catch (const std::invalid_argument& e) {
        throw TableFormatError(std::string("bad modulus in table header: ") + e.what());
    }
    std::error_code ec;
    auto file_size = std::filesystem::file_size(path, ec);
    if (!ec && file_size != 16 + 4 * (static_cast<std::uintmax_t>(n_max) + 1)) {
        throw TableFormatError("length field disagrees with file size in " + path.string());
    }
    MotzkinTable t{*p, {}};
    t.values.resize(static_cast<std::size_t>(n_max) + 1);
    for (auto& v : t.values) {
        v = get_u32(is);
        if (v >= pv) throw TableFormatError("residue out of range in " + path.string());
    }
    return t;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* dir = std::getenv("MOTZKIN_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

MotzkinTable cached_table(const Prime& p, std::size_t n_max) {
    auto dir = cache_dir_from_env();
    if (!dir) return motzkin_convolution(p, n_max);
    std::filesystem::create_directories(*dir);
    const std::string prefix = "motzkin_p" + std::to_string(p.value()) + "_n";

    // shortest cached table that still covers the request
    std::filesystem::path best;
    std::size_t best_n = static_cast<std::size_t>(-1);
    for (const auto& entry : std::filesystem::directory_iterator(*dir)) {
        const std::string name = entry.path().filename().string();
        if (!name.starts_with(prefix) || !name.ends_with(".tbl")) continue;
        std::size_t n = 0;
        try {
            n = std::stoull(name.substr(prefix.size(), name.size() - prefix.size() - 4));
        } catch (...) {
            continue;
        }
        if (n >= n_max && n < best_n) {
            best_n = n;
            best = entry.path();
        }
    }
    if (!best.empty()) {
        try {
            MotzkinTable t = read_table(best);
            if (t.p == p && t.values.size() >= n_max + 1) {
                t.values.resize(n_max + 1);
                return t;
            }
        } catch (const TableFormatError&) {
            // stale or corrupt cache entry; recompute below
        }
    }
    MotzkinTable t = motzkin_convolution(p, n_max);
    write_table(t, *dir / (prefix + std::to_string(n_max) + ".tbl"));
    return t;
}

}  // namespace motzkin
